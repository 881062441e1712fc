//! Partial transposition and bipartite negativity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::analytic_rdm::pt_spectrum_closed;
use crate::eigensolve::eigvalsh;
use crate::error::{Error, Result};
use crate::spin_algebra::{ModelParams, SiteLayout, SymMatrix};
use crate::thermal::{partial_trace, ReducedDensityMatrix, ThermalSpectrum};

/// Eigenvalues above this are numerical zeros.
pub const NEGATIVE_THRESHOLD: f64 = -1e-11;

/// The four spin pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairLabel {
    S1S2,
    Mu1Mu2,
    Mu1S1,
    Mu1S2,
}

impl PairLabel {
    pub const ALL: [PairLabel; 4] = [PairLabel::S1S2, PairLabel::Mu1Mu2, PairLabel::Mu1S1, PairLabel::Mu1S2];

    /// Kept tetramer sites (first, second).
    pub fn sites(self) -> [usize; 2] {
        match self {
            PairLabel::S1S2 => [SiteLayout::S1, SiteLayout::S2],
            PairLabel::Mu1Mu2 => [SiteLayout::MU1, SiteLayout::MU2],
            PairLabel::Mu1S1 => [SiteLayout::MU1, SiteLayout::S1],
            PairLabel::Mu1S2 => [SiteLayout::MU1, SiteLayout::S2],
        }
    }

    pub fn dims(self) -> (usize, usize) {
        let d = SiteLayout::TETRAMER.dims();
        let [a, b] = self.sites();
        (d[a], d[b])
    }

    /// Column name used in tables.
    pub fn name(self) -> &'static str {
        match self {
            PairLabel::S1S2 => "S1_S2",
            PairLabel::Mu1Mu2 => "mu1_mu2",
            PairLabel::Mu1S1 => "mu1_S1",
            PairLabel::Mu1S2 => "mu1_S2",
        }
    }

    /// Short flag form.
    pub fn flag(self) -> &'static str {
        match self {
            PairLabel::S1S2 => "s1s2",
            PairLabel::Mu1Mu2 => "m1m2",
            PairLabel::Mu1S1 => "m1s1",
            PairLabel::Mu1S2 => "m1s2",
        }
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        PairLabel::ALL
            .into_iter()
            .find(|p| p.flag() == s || p.name() == s)
            .ok_or_else(|| format!("unknown pair '{s}' (expected s1s2, m1m2, m1s1 or m1s2)"))
    }
}

/// Which subsystem is transposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Numeric,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult {
    pub pair: PairLabel,
    pub value: f64,
    pub negative_eigenvalues: Vec<f64>,
    pub path: Path,
}

/// Partial transpose of a `da × db` bipartite matrix.
pub fn partial_transpose_matrix(m: &SymMatrix, da: usize, db: usize, side: Side) -> Result<SymMatrix> {
    if m.n() != da * db {
        return Err(Error::DimensionMismatch { expected: da * db, found: m.n() });
    }
    Ok(SymMatrix::from_upper(da * db, |r, c| {
        let (a, b) = (r / db, r % db);
        let (a2, b2) = (c / db, c % db);
        match side {
            Side::First => m[(a2 * db + b, a * db + b2)],
            Side::Second => m[(a * db + b2, a2 * db + b)],
        }
    }))
}

pub fn partial_transpose(rho: &ReducedDensityMatrix, side: Side) -> SymMatrix {
    let (da, db) = rho.pair.dims();
    partial_transpose_matrix(&rho.matrix, da, db, side).expect("pair dims match matrix")
}

/// Negativity from an already computed partial-transpose spectrum.
pub fn negativity_from_spectrum(pair: PairLabel, spectrum: &[f64], path: Path) -> NegativityResult {
    let negative_eigenvalues: Vec<f64> = spectrum.iter().copied().filter(|&l| l < NEGATIVE_THRESHOLD).collect();
    // An empty f64 sum is −0.0; adding +0.0 normalises it.
    let value = negative_eigenvalues.iter().map(|l| -l).sum::<f64>() + 0.0;
    NegativityResult { pair, value, negative_eigenvalues, path }
}

/// Σ|λ<0| of the partial transpose over the first subsystem.
pub fn negativity(rho: &ReducedDensityMatrix) -> NegativityResult {
    let pt = partial_transpose(rho, Side::First);
    let spectrum = eigvalsh(&pt).expect("Jacobi converges on small symmetric matrices");
    negativity_from_spectrum(rho.pair, &spectrum, Path::Numeric)
}

/// Thermal (finite β) or zero-temperature evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Ground,
    Beta(f64),
}

/// Values of one pair from both paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PairNegativity {
    pub numeric: NegativityResult,
    /// Present only at finite β.
    pub closed: Option<NegativityResult>,
}

/// All four negativities at one parameter point.
pub fn all_negativities(p: &ModelParams, temp: Temperature) -> Result<BTreeMap<PairLabel, PairNegativity>> {
    let spec = ThermalSpectrum::new(p)?;
    let rho = match temp {
        Temperature::Ground => spec.ground_manifold(),
        Temperature::Beta(beta) => spec.gibbs(beta)?,
    };
    let mut out = BTreeMap::new();
    for pair in PairLabel::ALL {
        let numeric = negativity(&partial_trace(&rho, pair));
        let closed = match temp {
            Temperature::Ground => None,
            Temperature::Beta(beta) => {
                Some(negativity_from_spectrum(pair, &pt_spectrum_closed(pair, p, beta)?, Path::ClosedForm))
            }
        };
        out.insert(pair, PairNegativity { numeric, closed });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::{ground_manifold_state, DensityMatrix};
    use proptest::prelude::*;

    fn rdm(pair: PairLabel, m: SymMatrix) -> ReducedDensityMatrix {
        ReducedDensityMatrix { pair, matrix: m }
    }

    fn ground(j1: f64, h: f64) -> DensityMatrix {
        ground_manifold_state(&ModelParams::new(1.0, j1, h).unwrap()).unwrap()
    }

    #[test]
    fn singlet_projector() {
        let s = 0.5f64.sqrt();
        let v = [0.0, s, -s, 0.0];
        let m = SymMatrix::from_upper(4, |r, c| v[r] * v[c]);
        let pt = partial_transpose_matrix(&m, 2, 2, Side::First).unwrap();
        let ev = eigvalsh(&pt).unwrap();
        assert!((ev[0] + 0.5).abs() < 1e-15);
        assert!((negativity(&rdm(PairLabel::Mu1Mu2, m)).value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn product_state_is_separable() {
        let a = [0.7, 0.3];
        let b = [0.5, 0.2, 0.3];
        let m = SymMatrix::from_diagonal(&a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect::<Vec<_>>());
        let r = negativity(&rdm(PairLabel::Mu1S1, m));
        assert_eq!(r.value, 0.0);
        assert!(r.negative_eigenvalues.is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(partial_transpose_matrix(&SymMatrix::zeros(5), 2, 3, Side::First).is_err());
    }

    #[test]
    fn table_one_points() {
        let n = |j1, h, pair| negativity(&partial_trace(&ground(j1, h), pair)).value;
        assert!((n(0.5, 0.8, PairLabel::Mu1S1) - 2f64.sqrt() / 3.0).abs() < 1e-12);
        let want = [0.5, 1.0 / 6.0, 0.0, 2.0 / 9.0];
        for (pair, w) in PairLabel::ALL.into_iter().zip(want) {
            assert!((n(1.5, 0.5, pair) - w).abs() < 1e-12, "{pair}");
        }
        for pair in PairLabel::ALL {
            assert_eq!(n(1.5, 6.0, pair), 0.0);
        }
    }

    #[test]
    fn decoupled_dimers() {
        let n = |pair| negativity(&partial_trace(&ground(0.0, 0.0), pair)).value;
        assert!((n(PairLabel::Mu1S1) - 1.0 / 3.0).abs() < 1e-12);
        for pair in [PairLabel::S1S2, PairLabel::Mu1Mu2, PairLabel::Mu1S2] {
            assert_eq!(n(pair), 0.0);
        }
    }

    #[test]
    fn all_negativities_paths() {
        let p = ModelParams::new(1.0, 0.5, 0.2).unwrap();
        let g = all_negativities(&p, Temperature::Ground).unwrap();
        let want = [1.0 / 9.0, 0.0, 1.0 / 3.0, 0.0];
        for (pair, w) in PairLabel::ALL.into_iter().zip(want) {
            assert!((g[&pair].numeric.value - w).abs() < 1e-12);
            assert!(g[&pair].closed.is_none());
        }
        let t = all_negativities(&p, Temperature::Beta(2.0)).unwrap();
        for pair in PairLabel::ALL {
            let c = t[&pair].closed.as_ref().unwrap();
            assert!((c.value - t[&pair].numeric.value).abs() < 1e-9);
        }
        let hot = all_negativities(&p, Temperature::Beta(0.0)).unwrap();
        for pair in PairLabel::ALL {
            assert_eq!(hot[&pair].numeric.value, 0.0);
        }
    }

    #[test]
    fn pair_parsing() {
        assert_eq!("m1s2".parse::<PairLabel>().unwrap(), PairLabel::Mu1S2);
        assert_eq!("S1_S2".parse::<PairLabel>().unwrap(), PairLabel::S1S2);
        assert!("xx".parse::<PairLabel>().is_err());
    }

    proptest! {
        #[test]
        fn transpose_is_involution(x in proptest::collection::vec(-1.0f64..1.0, 36)) {
            let m = SymMatrix::from_upper(6, |r, c| x[r * 6 + c]);
            for side in [Side::First, Side::Second] {
                let twice = partial_transpose_matrix(
                    &partial_transpose_matrix(&m, 2, 3, side).unwrap(), 2, 3, side).unwrap();
                prop_assert_eq!(&twice, &m);
            }
        }

        #[test]
        fn sides_share_spectrum(x in proptest::collection::vec(-1.0f64..1.0, 81)) {
            let m = SymMatrix::from_upper(9, |r, c| x[r * 9 + c]);
            let a = eigvalsh(&partial_transpose_matrix(&m, 3, 3, Side::First).unwrap()).unwrap();
            let b = eigvalsh(&partial_transpose_matrix(&m, 3, 3, Side::Second).unwrap()).unwrap();
            for (u, v) in a.iter().zip(&b) {
                prop_assert!((u - v).abs() < 1e-12);
            }
        }
    }
}
