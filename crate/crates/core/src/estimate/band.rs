use num_complex::Complex;

use super::config::{EstimatorConfig, Mode, Target};
use super::products::{slot_product, slot_ray};
use super::result::BandAverageResult;
use crate::error::{Error, Result};
use crate::forward::FarFieldSource;
use crate::scalar::Real;

/// Number of contiguous sub-bands used for jackknife standard errors.
pub const JACKKNIFE_BLOCKS: usize = 16;

pub(crate) fn check_source<T: Real, S: FarFieldSource<T> + ?Sized>(config: &EstimatorConfig<T>, source: &S) -> Result<()> {
    if source.kind() != config.kind || source.dim() != config.dim {
        return Err(Error::Mismatch(format!(
            "source produces {} far fields in d = {}, configuration expects {} in d = {}",
            source.kind().name(),
            source.dim(),
            config.kind.name(),
            config.dim
        )));
    }
    Ok(())
}

/// Jackknife standard errors of a weighted sum `Σ_j t_j P_j` (with
/// `Σ t_j = 1`) over `blocks` contiguous groups of nodes.
pub(crate) fn jackknife<T: Real>(products: &[Vec<Complex<T>>], weights: &[T], blocks: usize) -> Vec<T> {
    let n = products.len();
    let width = products.first().map_or(0, |p| p.len());
    let blocks = blocks.min(n);
    if blocks < 2 {
        return vec![T::nan(); width];
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut total = vec![zero; width];
    let mut sums = vec![vec![zero; width]; blocks];
    let mut masses = vec![T::zero(); blocks];
    for (j, (p, &w)) in products.iter().zip(weights).enumerate() {
        let b = j * blocks / n;
        masses[b] += w;
        for (k, v) in p.iter().enumerate() {
            sums[b][k] += *v * w;
            total[k] += *v * w;
        }
    }
    let mass: T = masses.iter().cloned().sum();
    let leave_out: Vec<Vec<Complex<T>>> = sums
        .iter()
        .zip(&masses)
        .map(|(s, &m)| s.iter().zip(&total).map(|(a, t)| (*t - *a) / (mass - m)).collect())
        .collect();
    let bf = T::from_usize_lossy(blocks);
    (0..width)
        .map(|k| {
            let mean = leave_out.iter().map(|v| v[k]).sum::<Complex<T>>() / bf;
            let ss: T = leave_out.iter().map(|v| (v[k] - mean).norm_sqr()).sum();
            (ss * (bf - T::one()) / bf).sqrt()
        })
        .collect()
}

/// Trapezoid approximation of `(1/Q) ∫_Q^{2Q} w(κ) P(κ, τ) dκ` for one
/// realization, where `P` is the covariance or relation product selected by
/// the configuration and `w` the matching frequency weight.
///
/// For elastic waves the compressional slots are queried at
/// `(c_s/c_p)(ω + τ)` and `(c_s/c_p) ω`, so that both parts sample the
/// source transform at `c_s(ω + τ) x̂` and `c_s ω x̂`.
pub fn band_average<T: Real, S: FarFieldSource<T> + ?Sized>(config: &EstimatorConfig<T>, source: &S) -> Result<BandAverageResult<T>> {
    config.validate()?;
    if config.mode != Mode::Single {
        return Err(Error::Config("band_average needs single-realization mode; use ensemble_limit".into()));
    }
    check_source(config, source)?;
    let band = config.band()?;
    let nodes = band.len();
    let step = band.step();
    let partner = config.partner_direction();
    let shared = match config.target {
        Target::Covariance => band.shift_in_steps(config.tau),
        Target::Relation => None,
    };
    let (first, second) = match shared {
        Some(k) => {
            let long = slot_ray(config, source, &config.xhat, band.q(), step, nodes + k)?;
            (long[k..].to_vec(), long[..nodes].to_vec())
        }
        None => (
            slot_ray(config, source, &config.xhat, band.q() + config.tau, step, nodes)?,
            slot_ray(config, source, &partner, band.q(), step, nodes)?,
        ),
    };
    let weights = band.weights();
    let mut products = Vec::with_capacity(nodes);
    for (j, (a, b)) in first.iter().zip(&second).enumerate() {
        products.push(slot_product(config, a, b, config.weight(band.node(j))?));
    }
    let c = config.components();
    let mut estimate = vec![Complex::new(T::zero(), T::zero()); c * c];
    for (p, &w) in products.iter().zip(&weights) {
        for (e, v) in estimate.iter_mut().zip(p) {
            *e += *v * w;
        }
    }
    Ok(BandAverageResult {
        config: config.clone(),
        components: c,
        std_error: jackknife(&products, &weights, JACKKNIFE_BLOCKS),
        estimate,
        nodes,
        samples: 1,
        seeds: source.seed().into_iter().collect(),
    })
}
