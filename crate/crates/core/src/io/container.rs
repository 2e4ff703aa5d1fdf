use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::estimate::Target;
use crate::field::{FieldRealization, Grid};
use crate::recover::StrengthGrid;
use crate::scalar::Real;
use crate::waves::WaveKind;

/// File signature of the binary container.
pub const MAGIC: &[u8; 8] = b"GMIGFLD1";
pub const FORMAT_VERSION: u32 = 1;

/// What the payload holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Content {
    /// A source realization, component-major.
    Realization,
    /// Covariance strength grid, entry-major.
    Covariance,
    /// Relation strength grid, entry-major.
    Relation,
}

impl Content {
    fn code(self) -> u8 {
        match self {
            Content::Realization => 1,
            Content::Covariance => 2,
            Content::Relation => 3,
        }
    }

    fn from_code(c: u8) -> Result<Self> {
        match c {
            1 => Ok(Content::Realization),
            2 => Ok(Content::Covariance),
            3 => Ok(Content::Relation),
            _ => Err(Error::Format(format!("unknown content code {c}"))),
        }
    }

    pub fn from_target(t: Target) -> Self {
        match t {
            Target::Covariance => Content::Covariance,
            Target::Relation => Content::Relation,
        }
    }
}

/// Storage precision of the payload: `complex64` (two `f32`) or
/// `complex128` (two `f64`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Single,
    Double,
}

/// Self-describing header. Real parameters are kept in `f64` whatever the
/// payload precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub content: Content,
    pub precision: Precision,
    pub dim: usize,
    pub nodes_per_axis: usize,
    pub extent: f64,
    pub order: f64,
    pub delta: f64,
    pub seed: u64,
    pub kind: WaveKind<f64>,
    /// Source components for realizations, matrix size for strength grids.
    pub components: usize,
}

impl Header {
    fn value_count(&self) -> Result<usize> {
        let nodes = self
            .nodes_per_axis
            .checked_pow(self.dim as u32)
            .ok_or_else(|| Error::Format("grid size overflows".into()))?;
        let per_node = match self.content {
            Content::Realization => self.components,
            _ => self.components * self.components,
        };
        Ok(nodes * per_node)
    }

    pub fn grid<T: Real>(&self) -> Result<Grid<T>> {
        Grid::new(self.dim, self.nodes_per_axis, T::lit(self.extent))
    }
}

fn kind_code(kind: &WaveKind<f64>) -> (u8, f64, f64) {
    match *kind {
        WaveKind::Acoustic => (0, 0.0, 0.0),
        WaveKind::Biharmonic => (1, 0.0, 0.0),
        WaveKind::Electromagnetic => (2, 0.0, 0.0),
        WaveKind::Elastic { lambda, mu } => (3, lambda, mu),
    }
}

fn kind_from_code(code: u8, lambda: f64, mu: f64) -> Result<WaveKind<f64>> {
    match code {
        0 => Ok(WaveKind::Acoustic),
        1 => Ok(WaveKind::Biharmonic),
        2 => Ok(WaveKind::Electromagnetic),
        3 => Ok(WaveKind::Elastic { lambda, mu }),
        _ => Err(Error::Format(format!("unknown wave kind code {code}"))),
    }
}

/// Kind converted to `f64` parameters.
pub fn kind_to_f64<T: Real>(kind: &WaveKind<T>) -> WaveKind<f64> {
    match *kind {
        WaveKind::Acoustic => WaveKind::Acoustic,
        WaveKind::Biharmonic => WaveKind::Biharmonic,
        WaveKind::Electromagnetic => WaveKind::Electromagnetic,
        WaveKind::Elastic { lambda, mu } => WaveKind::Elastic {
            lambda: lambda.as_f64(),
            mu: mu.as_f64(),
        },
    }
}

/// Header plus payload, held in double precision in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Container {
    pub header: Header,
    pub values: Vec<Complex64>,
}

fn widen<T: Real>(v: &[Complex<T>]) -> Vec<Complex64> {
    v.iter().map(|z| Complex64::new(z.re.as_f64(), z.im.as_f64())).collect()
}

impl Container {
    pub fn from_realization<T: Real>(field: &FieldRealization<T>, kind: &WaveKind<T>, precision: Precision) -> Self {
        Self {
            header: Header {
                content: Content::Realization,
                precision,
                dim: field.grid.dim(),
                nodes_per_axis: field.grid.nodes_per_axis(),
                extent: field.grid.extent().as_f64(),
                order: field.order.as_f64(),
                delta: field.delta.as_f64(),
                seed: field.seed,
                kind: kind_to_f64(kind),
                components: field.components,
            },
            values: widen(&field.values),
        }
    }

    /// Strength grid with the model parameters it belongs to; `seed` is the
    /// run seed, or zero for a truth grid.
    pub fn from_strength_grid<T: Real>(
        grid: &StrengthGrid<T>,
        target: Target,
        kind: &WaveKind<T>,
        order: T,
        delta: T,
        seed: u64,
        precision: Precision,
    ) -> Self {
        Self {
            header: Header {
                content: Content::from_target(target),
                precision,
                dim: grid.grid.dim(),
                nodes_per_axis: grid.grid.nodes_per_axis(),
                extent: grid.grid.extent().as_f64(),
                order: order.as_f64(),
                delta: delta.as_f64(),
                seed,
                kind: kind_to_f64(kind),
                components: grid.components,
            },
            values: widen(&grid.values),
        }
    }

    fn narrowed<T: Real>(&self) -> Vec<Complex<T>> {
        self.values.iter().map(|z| Complex::new(T::lit(z.re), T::lit(z.im))).collect()
    }

    pub fn to_realization<T: Real>(&self) -> Result<FieldRealization<T>> {
        if self.header.content != Content::Realization {
            return Err(Error::Format("container does not hold a realization".into()));
        }
        FieldRealization::from_values(
            self.header.grid()?,
            self.header.components,
            self.narrowed(),
            self.header.seed,
            T::lit(self.header.delta),
            T::lit(self.header.order),
        )
    }

    pub fn to_strength_grid<T: Real>(&self) -> Result<StrengthGrid<T>> {
        if self.header.content == Content::Realization {
            return Err(Error::Format("container holds a realization, not a strength grid".into()));
        }
        StrengthGrid::new(self.header.grid()?, self.header.components, self.narrowed())
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        let h = &self.header;
        if self.values.len() != h.value_count()? {
            return Err(Error::Format(format!(
                "payload holds {} values, header describes {}",
                self.values.len(),
                h.value_count()?
            )));
        }
        w.write_all(MAGIC)?;
        w.write_u32::<LittleEndian>(FORMAT_VERSION)?;
        w.write_u8(h.content.code())?;
        w.write_u8(match h.precision {
            Precision::Single => 4,
            Precision::Double => 8,
        })?;
        let (code, lambda, mu) = kind_code(&h.kind);
        w.write_u8(code)?;
        w.write_u8(0)?;
        w.write_u32::<LittleEndian>(h.dim as u32)?;
        w.write_u32::<LittleEndian>(h.nodes_per_axis as u32)?;
        w.write_u32::<LittleEndian>(h.components as u32)?;
        w.write_u32::<LittleEndian>(0)?;
        for v in [h.extent, h.order, h.delta, lambda, mu] {
            w.write_f64::<LittleEndian>(v)?;
        }
        w.write_u64::<LittleEndian>(h.seed)?;
        w.write_u64::<LittleEndian>(self.values.len() as u64)?;
        for z in &self.values {
            match h.precision {
                Precision::Single => {
                    w.write_f32::<LittleEndian>(z.re as f32)?;
                    w.write_f32::<LittleEndian>(z.im as f32)?;
                }
                Precision::Double => {
                    w.write_f64::<LittleEndian>(z.re)?;
                    w.write_f64::<LittleEndian>(z.im)?;
                }
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("not a GMIG field container (bad magic)".into()));
        }
        let version = r.read_u32::<LittleEndian>()?;
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported container version {version}")));
        }
        let content = Content::from_code(r.read_u8()?)?;
        let precision = match r.read_u8()? {
            4 => Precision::Single,
            8 => Precision::Double,
            p => return Err(Error::Format(format!("unknown precision code {p}"))),
        };
        let code = r.read_u8()?;
        r.read_u8()?;
        let dim = r.read_u32::<LittleEndian>()? as usize;
        let nodes_per_axis = r.read_u32::<LittleEndian>()? as usize;
        let components = r.read_u32::<LittleEndian>()? as usize;
        r.read_u32::<LittleEndian>()?;
        let mut reals = [0.0; 5];
        for v in reals.iter_mut() {
            *v = r.read_f64::<LittleEndian>()?;
        }
        let seed = r.read_u64::<LittleEndian>()?;
        let count = r.read_u64::<LittleEndian>()? as usize;
        let header = Header {
            content,
            precision,
            dim,
            nodes_per_axis,
            extent: reals[0],
            order: reals[1],
            delta: reals[2],
            seed,
            kind: kind_from_code(code, reals[3], reals[4])?,
            components,
        };
        if count != header.value_count()? {
            return Err(Error::Format(format!(
                "payload length {count} does not match the header ({})",
                header.value_count()?
            )));
        }
        let mut values = Vec::with_capacity(count);
        for _ in 0..count {
            let z = match precision {
                Precision::Single => Complex64::new(r.read_f32::<LittleEndian>()? as f64, r.read_f32::<LittleEndian>()? as f64),
                Precision::Double => Complex64::new(r.read_f64::<LittleEndian>()?, r.read_f64::<LittleEndian>()?),
            };
            values.push(z);
        }
        Ok(Self { header, values })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }
}
