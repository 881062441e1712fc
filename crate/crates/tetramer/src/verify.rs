//! Cross-path verification battery.
//!
//! Each check compares two independent computations (closed form against
//! numeric diagonalization, or an exact reference against the numeric path)
//! and records the largest residual seen.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic_rdm::{pt_spectrum_closed, rdm_closed};
use crate::analytic_spectrum::{partition_function_closed, tetramer_eigenvectors, tetramer_levels};
use crate::eigensolve::eigvalsh;
use crate::error::Result;
use crate::golden::{phase_interiors, transition_points, GoldenPoint};
use crate::negativity::{negativity, negativity_from_spectrum, partial_transpose, PairLabel, Path, Side};
use crate::par::{self, Exec};
use crate::spin_algebra::{build_hamiltonian, ModelParams};
use crate::sweeps::ground_negativities;
use crate::thermal::{partial_trace, ThermalSpectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random thermal samples for the closed-form versus numeric checks.
    pub samples: usize,
    /// Spectrum-identity parameter points.
    pub spectrum_points: usize,
    /// Eigenvector-residual parameter points.
    pub vector_points: usize,
    /// Relative offset added to the closed-form Z; nonzero only for fault injection.
    pub z_perturbation: f64,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20,
            samples: 500,
            spectrum_points: 1000,
            vector_points: 20,
            z_perturbation: 0.0,
            exec: Exec::Parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub residual: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &'static str, tolerance: f64, residual: f64) -> Self {
        // NaN residuals fail.
        Check { name, tolerance, residual, passed: residual <= tolerance }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Uniform thermal sample: J₁/J ∈ [0,3], h/J ∈ [0,4], k_BT/J ∈ [0.02,5].
/// Returns (params, β).
pub fn thermal_samples(seed: u64, n: usize) -> Vec<(ModelParams, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let j1 = rng.gen_range(0.0..=3.0);
            let h = rng.gen_range(0.0..=4.0);
            let t: f64 = rng.gen_range(0.02..=5.0);
            (ModelParams { j: 1.0, j1, h }, 1.0 / t)
        })
        .collect()
}

/// Random parameters with J fixed to 1.
pub fn param_samples(seed: u64, n: usize) -> Vec<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| ModelParams { j: 1.0, j1: rng.gen_range(0.0..=3.0), h: rng.gen_range(-4.0..=4.0) }).collect()
}

fn max_of(xs: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    // f64::max discards NaN; a NaN residual must survive to fail the check.
    xs.into_iter().try_fold(0.0f64, |acc, x| {
        let x = x?;
        Ok(if x.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(x) })
    })
}

/// Largest deviation of T = 0 negativities from a reference table.
pub fn golden_residual(table: &[GoldenPoint]) -> Result<f64> {
    max_of(table.iter().map(|g| {
        let got = ground_negativities(&ModelParams::reduced(g.j1_over_j, g.h_over_j)?)?;
        Ok(got.iter().zip(&g.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }))
}

/// Relative gap between the closed-form Z and Σ exp(−βε) over numeric eigenvalues.
pub fn partition_residual(p: &ModelParams, beta: f64, z_perturbation: f64) -> Result<f64> {
    let closed = partition_function_closed(p, beta) * (1.0 + z_perturbation);
    let numeric: f64 = ThermalSpectrum::new(p)?.energies().iter().map(|e| (-beta * e).exp()).sum();
    Ok((closed - numeric).abs() / numeric)
}

/// Sorted closed-form levels against sorted numeric eigenvalues.
pub fn spectrum_residual(p: &ModelParams) -> Result<f64> {
    let mut closed: Vec<f64> = tetramer_levels(p).iter().map(|l| l.energy).collect();
    closed.sort_by(f64::total_cmp);
    let numeric = ThermalSpectrum::new(p)?.energies();
    Ok(closed.iter().zip(&numeric).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Largest ‖Hv − εv‖ over the closed-form eigenpairs.
pub fn eigenvector_residual(p: &ModelParams) -> Result<f64> {
    let h = build_hamiltonian(p)?;
    let levels = tetramer_levels(p);
    Ok(tetramer_eigenvectors()
        .iter()
        .zip(&levels)
        .map(|(st, lv)| {
            let hv = h.as_matrix().matvec(&st.vector);
            hv.iter().zip(&st.vector).map(|(a, v)| (a - lv.energy * v).powi(2)).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max))
}

/// Residuals of one thermal sample: (RDM max-norm, PT spectrum, negativity).
pub fn dual_path_residuals(p: &ModelParams, beta: f64) -> Result<[f64; 3]> {
    let rho = ThermalSpectrum::new(p)?.gibbs(beta)?;
    let mut out = [0.0f64; 3];
    for pair in PairLabel::ALL {
        let num = partial_trace(&rho, pair);
        let closed = rdm_closed(pair, p, beta)?;
        out[0] = out[0].max(num.matrix.max_abs_diff(&closed.matrix));
        let num_pt = eigvalsh(&partial_transpose(&num, Side::First))?;
        let closed_pt = pt_spectrum_closed(pair, p, beta)?;
        out[1] = out[1].max(num_pt.iter().zip(&closed_pt).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        let n_num = negativity(&num).value;
        let n_closed = negativity_from_spectrum(pair, &closed_pt, Path::ClosedForm).value;
        out[2] = out[2].max((n_num - n_closed).abs());
    }
    Ok(out)
}

/// Runs the whole battery.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    let mut checks = vec![
        Check::new("golden phase interiors", 1e-9, golden_residual(&phase_interiors())?),
        Check::new("golden transition mixtures", 1e-9, golden_residual(&transition_points())?),
    ];

    let thermal = thermal_samples(cfg.seed, cfg.samples);
    let z = max_of(par::map(cfg.exec, &thermal, |(p, b)| partition_residual(p, *b, cfg.z_perturbation)))?;
    checks.push(Check::new("partition function closed vs numeric (relative)", 1e-10, z));

    let params = param_samples(cfg.seed.wrapping_add(1), cfg.spectrum_points);
    let spec = max_of(par::map(cfg.exec, &params, spectrum_residual))?;
    checks.push(Check::new("closed-form levels vs numeric spectrum", 1e-12, spec));

    let params = param_samples(cfg.seed.wrapping_add(2), cfg.vector_points);
    let vecs = max_of(par::map(cfg.exec, &params, eigenvector_residual))?;
    checks.push(Check::new("closed-form eigenvector residual", 1e-11, vecs));

    let dual: Vec<[f64; 3]> =
        par::map(cfg.exec, &thermal, |(p, b)| dual_path_residuals(p, *b)).into_iter().collect::<Result<_>>()?;
    let col = |k: usize| max_of(dual.iter().map(|r| Ok(r[k])));
    checks.push(Check::new("reduced density matrices closed vs numeric", 1e-10, col(0)?));
    checks.push(Check::new("partial-transpose spectra closed vs numeric", 1e-10, col(1)?));
    checks.push(Check::new("negativity closed vs numeric", 1e-9, col(2)?));

    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> VerifyConfig {
        VerifyConfig { seed, samples: 40, spectrum_points: 40, vector_points: 5, ..VerifyConfig::default() }
    }

    #[test]
    fn battery_passes() {
        let r = run(&small(7)).unwrap();
        assert!(r.all_passed(), "{r:#?}");
        assert_eq!(r.checks.len(), 8);
    }

    #[test]
    fn seed_does_not_change_verdict() {
        assert!(run(&small(12345)).unwrap().all_passed());
    }

    #[test]
    fn perturbed_partition_function_is_caught() {
        let r = run(&VerifyConfig { z_perturbation: 1e-6, ..small(7) }).unwrap();
        assert!(!r.all_passed());
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["partition function closed vs numeric (relative)"]);
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::new("x", 1.0, f64::NAN).passed);
        assert!(max_of([Ok(1.0), Ok(f64::NAN), Ok(0.5)]).unwrap().is_nan());
    }

    #[test]
    fn samples_are_reproducible() {
        assert_eq!(thermal_samples(3, 10), thermal_samples(3, 10));
        assert_ne!(thermal_samples(3, 10), thermal_samples(4, 10));
    }
}
