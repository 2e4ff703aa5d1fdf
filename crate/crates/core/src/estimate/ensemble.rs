use num_complex::Complex;

use super::band::{band_average, check_source};
use super::config::{EstimatorConfig, Mode};
use super::products::{slot_product, slot_ray};
use super::result::BandAverageResult;
use crate::error::{Error, Result};
use crate::forward::FarFieldSource;
use crate::scalar::Real;

fn mean_and_error<T: Real>(samples: &[Vec<Complex<T>>]) -> (Vec<Complex<T>>, Vec<T>) {
    let m = T::from_usize_lossy(samples.len());
    let width = samples[0].len();
    let mean: Vec<Complex<T>> = (0..width)
        .map(|k| samples.iter().map(|s| s[k]).sum::<Complex<T>>() / m)
        .collect();
    let se = (0..width)
        .map(|k| {
            let ss: T = samples.iter().map(|s| (s[k] - mean[k]).norm_sqr()).sum();
            (ss / (m * (m - T::one()))).sqrt()
        })
        .collect();
    (mean, se)
}

/// Monte-Carlo mean over `M` realizations of `w(κ_eval) P(κ_eval, τ)`, the
/// finite-frequency version of the high-frequency expectation limit.
///
/// `make(i)` builds the far-field source of realization `i`; realizations
/// are consumed one at a time.
pub fn ensemble_limit<T, S, F>(config: &EstimatorConfig<T>, make: F) -> Result<BandAverageResult<T>>
where
    T: Real,
    S: FarFieldSource<T>,
    F: FnMut(usize) -> Result<S>,
{
    Ok(ensemble_limits(std::slice::from_ref(config), make)?.remove(0))
}

/// `ensemble_limit` for several configurations evaluated on the same
/// realizations. All configurations must request the same ensemble size.
pub fn ensemble_limits<T, S, F>(configs: &[EstimatorConfig<T>], mut make: F) -> Result<Vec<BandAverageResult<T>>>
where
    T: Real,
    S: FarFieldSource<T>,
    F: FnMut(usize) -> Result<S>,
{
    let mut plans = Vec::with_capacity(configs.len());
    let mut size = None;
    for config in configs {
        config.validate()?;
        let (realizations, kappa) = match config.mode {
            Mode::Ensemble { realizations, kappa_eval } => (realizations, kappa_eval),
            Mode::Single => return Err(Error::Config("ensemble_limit needs ensemble mode".into())),
        };
        if *size.get_or_insert(realizations) != realizations {
            return Err(Error::Config("shared-ensemble configurations must use one ensemble size".into()));
        }
        plans.push((kappa, config.weight(kappa)?, config.partner_direction()));
    }
    let Some(realizations) = size else {
        return Ok(Vec::new());
    };
    let mut samples = vec![Vec::with_capacity(realizations); configs.len()];
    let mut seeds = Vec::with_capacity(realizations);
    for i in 0..realizations {
        let source = make(i)?;
        for ((config, (kappa, weight, partner)), out) in configs.iter().zip(&plans).zip(samples.iter_mut()) {
            check_source(config, &source)?;
            let a = slot_ray(config, &source, &config.xhat, *kappa + config.tau, T::zero(), 1)?;
            let b = slot_ray(config, &source, partner, *kappa, T::zero(), 1)?;
            out.push(slot_product(config, &a[0], &b[0], *weight));
        }
        seeds.extend(source.seed());
    }
    Ok(configs
        .iter()
        .zip(samples)
        .map(|(config, s)| {
            let (estimate, std_error) = mean_and_error(&s);
            BandAverageResult {
                config: config.clone(),
                components: config.components(),
                estimate,
                std_error,
                nodes: 1,
                samples: realizations,
                seeds: seeds.clone(),
            }
        })
        .collect())
}

/// Mean of single-realization band averages over `realizations` sources,
/// with the across-realization standard error.
pub fn band_average_ensemble<T, S, F>(config: &EstimatorConfig<T>, realizations: usize, mut make: F) -> Result<BandAverageResult<T>>
where
    T: Real,
    S: FarFieldSource<T>,
    F: FnMut(usize) -> Result<S>,
{
    if realizations < 2 {
        return Err(Error::Config(format!(
            "an ensemble of band averages needs at least 2 realizations, got {realizations}"
        )));
    }
    let mut samples = Vec::with_capacity(realizations);
    let mut seeds = Vec::with_capacity(realizations);
    let mut nodes = 0;
    for i in 0..realizations {
        let r = band_average(config, &make(i)?)?;
        nodes = r.nodes;
        seeds.extend(r.seeds);
        samples.push(r.estimate);
    }
    let (estimate, std_error) = mean_and_error(&samples);
    Ok(BandAverageResult {
        config: config.clone(),
        components: config.components(),
        estimate,
        std_error,
        nodes,
        samples: realizations,
        seeds,
    })
}
