use crate::error::{Error, Result};
use crate::scalar::Real;

/// Unit observation directions, closed under negation, with the solid-angle
/// weight each direction represents.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet<T> {
    d: usize,
    dirs: Vec<Vec<T>>,
    weights: Vec<T>,
}

impl<T: Real> DirectionSet<T> {
    /// `count` equally spaced angles `2πj/count` on the circle; `count` even.
    pub fn circle(count: usize) -> Result<Self> {
        if count < 2 || !count.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "a negation-closed circle needs an even direction count, got {count}"
            )));
        }
        let dirs = (0..count)
            .map(|j| {
                let t = T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(count);
                vec![t.cos(), t.sin()]
            })
            .collect();
        let w = T::TAU() / T::from_usize_lossy(count);
        Ok(Self {
            d: 2,
            dirs,
            weights: vec![w; count],
        })
    }

    /// Quasi-uniform sphere covering: a Fibonacci lattice of `count/2` points
    /// on the upper hemisphere and their antipodes; `count` even.
    pub fn sphere(count: usize) -> Result<Self> {
        if count < 2 || !count.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "a negation-closed sphere covering needs an even direction count, got {count}"
            )));
        }
        let half = count / 2;
        let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
        let mut upper = Vec::with_capacity(half);
        for j in 0..half {
            let z = 1.0 - (j as f64 + 0.5) / half as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * j as f64;
            upper.push([r * phi.cos(), r * phi.sin(), z]);
        }
        let mut dirs = Vec::with_capacity(count);
        for p in &upper {
            dirs.push(p.iter().map(|&v| T::lit(v)).collect());
        }
        for p in &upper {
            dirs.push(p.iter().map(|&v| T::lit(-v)).collect());
        }
        let w = T::lit(4.0) * T::PI() / T::from_usize_lossy(count);
        Ok(Self {
            d: 3,
            dirs,
            weights: vec![w; count],
        })
    }

    /// Default covering for the dimension.
    pub fn uniform(d: usize, count: usize) -> Result<Self> {
        match d {
            2 => Self::circle(count),
            3 => Self::sphere(count),
            _ => Err(Error::Domain(format!("dimension must be 2 or 3, got {d}"))),
        }
    }

    /// Explicit directions (normalized here) with equal weights summing to
    /// the sphere area. Negation closure is not required.
    pub fn from_vectors(d: usize, vectors: &[Vec<T>]) -> Result<Self> {
        if d != 2 && d != 3 {
            return Err(Error::Domain(format!("dimension must be 2 or 3, got {d}")));
        }
        if vectors.is_empty() {
            return Err(Error::Config("direction set is empty".into()));
        }
        let mut dirs = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != d {
                return Err(Error::Mismatch(format!("direction {v:?} is not {d}-dimensional")));
            }
            let norm = v.iter().map(|&c| c * c).sum::<T>().sqrt();
            if !(norm > T::zero()) {
                return Err(Error::Domain("zero direction vector".into()));
            }
            dirs.push(v.iter().map(|&c| c / norm).collect());
        }
        let area = if d == 2 { T::TAU() } else { T::lit(4.0) * T::PI() };
        let w = area / T::from_usize_lossy(dirs.len());
        Ok(Self {
            d,
            weights: vec![w; dirs.len()],
            dirs,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn get(&self, j: usize) -> &[T] {
        &self.dirs[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.dirs.iter().map(|v| v.as_slice())
    }

    /// Solid-angle weight `ΔΩ_j`.
    pub fn weight(&self, j: usize) -> T {
        self.weights[j]
    }

    /// Index of `-x̂_j` in the set, if present.
    pub fn negation_index(&self, j: usize) -> Option<usize> {
        let tol = T::lit(1e-12);
        self.dirs.iter().position(|v| {
            v.iter()
                .zip(&self.dirs[j])
                .all(|(&a, &b)| (a + b).abs() <= tol)
        })
    }

    pub fn is_negation_closed(&self) -> bool {
        (0..self.len()).all(|j| self.negation_index(j).is_some())
    }
}
