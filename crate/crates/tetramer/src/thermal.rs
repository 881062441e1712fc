//! Gibbs states, zero-temperature ground-manifold mixtures and partial traces.

use crate::eigensolve::{eigh, EigenDecomposition, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::negativity::PairLabel;
use crate::spin_algebra::{build_hamiltonian, sector_blocks, ModelParams, SiteLayout, SymMatrix};

/// Largest inverse temperature accepted by the thermal path.
pub const BETA_MAX: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateTag {
    Thermal { beta: f64 },
    GroundManifold { degeneracy: usize },
}

/// Full 36-dimensional density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub layout: SiteLayout,
    pub matrix: SymMatrix,
    pub tag: StateTag,
}

/// Two-site reduced state, kept sites ordered as named by the pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensityMatrix {
    pub pair: PairLabel,
    pub matrix: SymMatrix,
}

impl ReducedDensityMatrix {
    pub fn dims(&self) -> (usize, usize) {
        self.pair.dims()
    }
}

struct SectorEigen {
    indices: Vec<usize>,
    eig: EigenDecomposition,
}

/// Sector-resolved eigendecomposition of H, reusable across temperatures.
pub struct ThermalSpectrum {
    sectors: Vec<SectorEigen>,
    e_min: f64,
}

impl ThermalSpectrum {
    pub fn new(p: &ModelParams) -> Result<Self> {
        let h = build_hamiltonian(p)?;
        let sectors = sector_blocks(&h, &SiteLayout::TETRAMER)?
            .into_iter()
            .map(|b| Ok(SectorEigen { eig: eigh(&b.block)?, indices: b.indices }))
            .collect::<Result<Vec<_>>>()?;
        let e_min = sectors.iter().map(|s| s.eig.values[0]).fold(f64::INFINITY, f64::min);
        Ok(ThermalSpectrum { sectors, e_min })
    }

    pub fn ground_energy(&self) -> f64 {
        self.e_min
    }

    /// All 36 eigenvalues, ascending.
    pub fn energies(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.sectors.iter().flat_map(|s| s.eig.values.clone()).collect();
        e.sort_by(f64::total_cmp);
        e
    }

    /// Σ_k w_k |k⟩⟨k| with sector-local weights `w(energy)`.
    fn mixture(&self, w: impl Fn(f64) -> f64) -> SymMatrix {
        let mut rho = SymMatrix::zeros(36);
        for s in &self.sectors {
            let n = s.indices.len();
            let weights: Vec<f64> = s.eig.values.iter().map(|&e| w(e)).collect();
            for r in 0..n {
                for c in r..n {
                    let v: f64 = (0..n)
                        .filter(|&k| weights[k] != 0.0)
                        .map(|k| s.eig.vectors[(r, k)] * weights[k] * s.eig.vectors[(c, k)])
                        .sum();
                    rho.set(s.indices[r], s.indices[c], v);
                }
            }
        }
        rho
    }

    /// exp(−βH)/Z with the exponent shifted by the ground energy.
    pub fn gibbs(&self, beta: f64) -> Result<DensityMatrix> {
        if !(0.0..=BETA_MAX).contains(&beta) {
            return Err(Error::BetaOutOfRange(beta));
        }
        let z: f64 =
            self.sectors.iter().flat_map(|s| s.eig.values.iter()).map(|&e| (-beta * (e - self.e_min)).exp()).sum();
        let matrix = self.mixture(|e| (-beta * (e - self.e_min)).exp() / z);
        Ok(DensityMatrix { layout: SiteLayout::TETRAMER, matrix, tag: StateTag::Thermal { beta } })
    }

    /// Number of eigenstates within the degeneracy tolerance of the minimum.
    pub fn ground_degeneracy(&self) -> usize {
        let tol = self.ground_tol();
        self.sectors.iter().flat_map(|s| s.eig.values.iter()).filter(|&&e| e - self.e_min <= tol).count()
    }

    fn ground_tol(&self) -> f64 {
        DEGENERACY_TOL * self.e_min.abs().max(1.0)
    }

    /// Uniform mixture over the degenerate ground manifold.
    pub fn ground_manifold(&self) -> DensityMatrix {
        let tol = self.ground_tol();
        let g = self.ground_degeneracy();
        let e_min = self.e_min;
        let matrix = self.mixture(|e| if e - e_min <= tol { 1.0 / g as f64 } else { 0.0 });
        DensityMatrix { layout: SiteLayout::TETRAMER, matrix, tag: StateTag::GroundManifold { degeneracy: g } }
    }
}

pub fn gibbs_state(p: &ModelParams, beta: f64) -> Result<DensityMatrix> {
    ThermalSpectrum::new(p)?.gibbs(beta)
}

pub fn ground_manifold_state(p: &ModelParams) -> Result<DensityMatrix> {
    Ok(ThermalSpectrum::new(p)?.ground_manifold())
}

/// Reduces `rho` onto the ordered site pair `keep`.
pub fn reduce_to_sites(rho: &DensityMatrix, keep: [usize; 2]) -> SymMatrix {
    let l = rho.layout;
    let d = l.dims();
    let (da, db) = (d[keep[0]], d[keep[1]]);
    let others: Vec<usize> = (0..4).filter(|s| !keep.contains(s)).collect();
    let n = l.total_dim();
    let mut acc = vec![0.0; (da * db) * (da * db)];
    for i in 0..n {
        let ki = l.digits(i);
        let r = ki[keep[0]] * db + ki[keep[1]];
        for j in 0..n {
            let kj = l.digits(j);
            if others.iter().any(|&s| ki[s] != kj[s]) {
                continue;
            }
            let c = kj[keep[0]] * db + kj[keep[1]];
            acc[r * da * db + c] += rho.matrix[(i, j)];
        }
    }
    SymMatrix::from_upper(da * db, |r, c| acc[r * da * db + c])
}

pub fn partial_trace(rho: &DensityMatrix, pair: PairLabel) -> ReducedDensityMatrix {
    ReducedDensityMatrix { pair, matrix: reduce_to_sites(rho, pair.sites()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic_spectrum::tetramer_eigenvectors;
    use crate::eigensolve::eigvalsh;
    use crate::spin_algebra::{dimer_swap_permutation, spin_flip_permutation, total_sz};
    use proptest::prelude::*;

    fn params(j1: f64, h: f64) -> ModelParams {
        ModelParams::new(1.0, j1, h).unwrap()
    }

    fn projector(label: (i8, u8, i8, i8)) -> SymMatrix {
        let v = tetramer_eigenvectors()
            .into_iter()
            .find(|s| (s.label.sigma_t_z, s.label.sigma_t, s.label.sigma_1.0, s.label.sigma_2.0) == label)
            .unwrap()
            .vector;
        SymMatrix::from_upper(36, |r, c| v[r] * v[c])
    }

    #[test]
    fn infinite_temperature() {
        let rho = gibbs_state(&params(0.7, 0.4), 0.0).unwrap();
        assert!(rho.matrix.max_abs_diff(&SymMatrix::identity(36).scaled(1.0 / 36.0)) < 1e-15);
        let r = partial_trace(&rho, PairLabel::S1S2);
        assert!(r.matrix.max_abs_diff(&SymMatrix::identity(9).scaled(1.0 / 9.0)) < 1e-15);
    }

    #[test]
    fn low_temperature_limit_is_ground_projector() {
        let rho = gibbs_state(&params(0.5, 0.2), 200.0).unwrap();
        assert!(rho.matrix.max_abs_diff(&projector((0, 0, 1, 1))) < 1e-10);
        let g = ground_manifold_state(&params(0.5, 0.2)).unwrap();
        assert_eq!(g.tag, StateTag::GroundManifold { degeneracy: 1 });
        assert!(g.matrix.max_abs_diff(&projector((0, 0, 1, 1))) < 1e-12);
    }

    #[test]
    fn boundary_mixture() {
        let g = ground_manifold_state(&params(0.5, 0.5)).unwrap();
        assert_eq!(g.tag, StateTag::GroundManifold { degeneracy: 2 });
        let want = projector((0, 0, 1, 1)).add_scaled(&projector((1, 1, 1, 1)), 1.0).scaled(0.5);
        assert!(g.matrix.max_abs_diff(&want) < 1e-12);
        let g = ground_manifold_state(&params(0.0, 0.0)).unwrap();
        assert_eq!(g.tag, StateTag::GroundManifold { degeneracy: 4 });
    }

    #[test]
    fn mixed_dimer_ground_projector() {
        let g = ground_manifold_state(&params(0.5, 0.8)).unwrap();
        let r = partial_trace(&g, PairLabel::Mu1S1);
        // |1/2,1/2> = (|1/2,0> − √2|−1/2,1>)/√3 in the |μ,S> basis.
        let mut v = [0.0; 6];
        v[1] = 1.0 / 3f64.sqrt();
        v[3] = -(2.0f64 / 3.0).sqrt();
        let want = SymMatrix::from_upper(6, |a, b| v[a] * v[b]);
        assert!(r.matrix.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn energy_matches_log_z_derivative() {
        let p = params(0.9, 1.1);
        let spec = ThermalSpectrum::new(&p).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let beta = 0.8;
        let rho = spec.gibbs(beta).unwrap();
        let u = rho.matrix.as_matrix().matmul(h.as_matrix()).trace();
        let ln_z = |b: f64| spec.energies().iter().map(|e| (-b * e).exp()).sum::<f64>().ln();
        let d = 1e-5;
        let fd = -(ln_z(beta + d) - ln_z(beta - d)) / (2.0 * d);
        assert!((u / fd - 1.0).abs() < 1e-6);
    }

    #[test]
    fn beta_cap() {
        assert!(gibbs_state(&params(0.5, 0.2), 2e4).is_err());
        assert!(gibbs_state(&params(0.5, 0.2), -1.0).is_err());
    }

    proptest! {
        #[test]
        fn thermal_invariants(j1 in 0.0f64..3.0, h in 0.0f64..4.0, t in 0.02f64..5.0) {
            let p = params(j1, h);
            let h_mat = build_hamiltonian(&p).unwrap();
            let rho = gibbs_state(&p, 1.0 / t).unwrap();
            prop_assert!((rho.matrix.trace() - 1.0).abs() < 1e-12);
            prop_assert!(eigvalsh(&rho.matrix).unwrap()[0] >= -1e-11);
            let a = rho.matrix.as_matrix();
            prop_assert!(a.matmul(h_mat.as_matrix()).max_abs_diff(&h_mat.as_matrix().matmul(a)) < 1e-11);
            let purity = a.matmul(a).trace();
            prop_assert!(purity <= 1.0 + 1e-12);

            for pair in PairLabel::ALL {
                let r = partial_trace(&rho, pair);
                prop_assert!((r.matrix.trace() - 1.0).abs() < 1e-12);
                prop_assert!(eigvalsh(&r.matrix).unwrap()[0] >= -1e-11);
            }

            let m1s1 = reduce_to_sites(&rho, [SiteLayout::MU1, SiteLayout::S1]);
            let m2s2 = reduce_to_sites(&rho, [SiteLayout::MU2, SiteLayout::S2]);
            prop_assert!(m1s1.max_abs_diff(&m2s2) < 1e-12);

            // Tracing S₂ out of ρ_{S₁S₂} equals the direct single-site reduction.
            let s1s2 = partial_trace(&rho, PairLabel::S1S2).matrix;
            let direct = reduce_to_sites(&rho, [SiteLayout::S1, SiteLayout::MU1]);
            for a in 0..3 {
                for b in 0..3 {
                    let via: f64 = (0..3).map(|k| s1s2[(a * 3 + k, b * 3 + k)]).sum();
                    let dir: f64 = (0..2).map(|k| direct[(a * 2 + k, b * 2 + k)]).sum();
                    prop_assert!((via - dir).abs() < 1e-13);
                }
            }
        }

        #[test]
        fn field_reversal_flips_spins(j1 in 0.0f64..3.0, h in 0.0f64..4.0, t in 0.05f64..5.0) {
            let up = gibbs_state(&params(j1, h), 1.0 / t).unwrap();
            let down = gibbs_state(&params(j1, -h), 1.0 / t).unwrap();
            for pair in PairLabel::ALL {
                let (da, db) = pair.dims();
                let perm = spin_flip_permutation(&[da, db]);
                let a = partial_trace(&up, pair).matrix;
                let b = partial_trace(&down, pair).matrix;
                for r in 0..da * db {
                    for c in 0..da * db {
                        prop_assert!((a[(r, c)] - b[(perm[r], perm[c])]).abs() < 1e-12);
                    }
                }
            }
        }

        #[test]
        fn hamiltonian_symmetries(j1 in 0.0f64..3.0, h in -4.0f64..4.0) {
            let p = params(j1, h);
            let hm = build_hamiltonian(&p).unwrap();
            let perm = dimer_swap_permutation();
            for r in 0..36 {
                for c in 0..36 {
                    prop_assert_eq!(hm[(perm[r], perm[c])], hm[(r, c)]);
                }
            }
            let zero = build_hamiltonian(&p.with_h(0.0)).unwrap();
            prop_assert_eq!(zero.add_scaled(total_sz(), -h), hm);
        }
    }
}
