use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::FieldRealization;
use crate::forward::FarFieldValue;
use crate::scalar::Real;
use crate::waves::WaveKind;

fn leading_constant(d: usize) -> Complex64 {
    if d == 2 {
        Complex64::from_polar(1.0 / (8.0 * PI).sqrt(), PI / 4.0)
    } else {
        Complex64::new(1.0 / (4.0 * PI), 0.0)
    }
}

/// `h^d Σ_y f(y) e^{-i s x̂·y}` per component, with exact phases.
fn direct_transform<T: Real>(f: &FieldRealization<T>, xhat: &[f64], s: f64) -> Vec<Complex64> {
    let grid = &f.grid;
    let d = grid.dim();
    let cell = grid.cell_volume().as_f64();
    (0..f.components)
        .map(|c| {
            let vals = f.component(c);
            let mut acc = Complex64::new(0.0, 0.0);
            for (node, v) in vals.iter().enumerate() {
                if v.re == T::zero() && v.im == T::zero() {
                    continue;
                }
                let pos = grid.position(node);
                let phase: f64 = (0..d).map(|a| xhat[a] * pos[a].as_f64()).sum::<f64>() * s;
                acc += Complex64::new(v.re.as_f64(), v.im.as_f64()) * Complex64::from_polar(1.0, -phase);
            }
            acc * cell
        })
        .collect()
}

/// Far field of one realization by a direct double loop over nodes.
pub fn brute_force_farfield<T: Real>(
    kind: &WaveKind<T>,
    f: &FieldRealization<T>,
    xhat: &[f64],
    frequency: f64,
) -> Result<FarFieldValue<f64>> {
    let d = f.grid.dim();
    if xhat.len() != d {
        return Err(Error::Mismatch("direction dimension differs from the grid".into()));
    }
    let cd = leading_constant(d);
    let k = frequency;
    match *kind {
        WaveKind::Acoustic => {
            let fh = direct_transform(f, xhat, k)[0];
            Ok(FarFieldValue::Scalar(-cd * k.powf((d as f64 - 3.0) / 2.0) * fh))
        }
        WaveKind::Biharmonic => {
            let fh = direct_transform(f, xhat, k)[0];
            Ok(FarFieldValue::Scalar(-cd * 0.5 * k.powf((d as f64 - 7.0) / 2.0) * fh))
        }
        WaveKind::Electromagnetic => {
            if d != 3 {
                return Err(Error::Domain("electromagnetic far fields need d = 3".into()));
            }
            let c = Complex64::new(0.0, k / (4.0 * PI));
            Ok(FarFieldValue::Vector(direct_transform(f, xhat, k).into_iter().map(|v| v * c).collect()))
        }
        WaveKind::Elastic { lambda, mu } => {
            let (lambda, mu) = (lambda.as_f64(), mu.as_f64());
            let cp = (lambda + 2.0 * mu).sqrt();
            let cs = mu.sqrt();
            let w = frequency;
            let expo = (d as f64 - 3.0) / 2.0;
            let amp = |c: f64| -cd * (1.0 / c).powf((d as f64 + 1.0) / 2.0) * w.powf(expo);
            let fp = direct_transform(f, xhat, w / cp);
            let fs = direct_transform(f, xhat, w / cs);
            let dot = |v: &[Complex64]| -> Complex64 { v.iter().zip(xhat).map(|(a, &b)| a * b).sum() };
            let dp = dot(&fp);
            let ds = dot(&fs);
            let p = (0..d).map(|a| amp(cp) * dp * xhat[a]).collect();
            let s = (0..d).map(|a| amp(cs) * (fs[a] - ds * xhat[a])).collect();
            Ok(FarFieldValue::Elastic { p, s })
        }
    }
}
