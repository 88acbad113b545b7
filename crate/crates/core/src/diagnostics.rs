//! Thermalization diagnostics: pairwise effective temperatures, reference
//! Gibbs states, trace distances between diagonal states, and a
//! thermalized/not-thermalized verdict.
//!
//! A steady state is thermal when one temperature reproduces every
//! population ratio. The two-point effective temperature
//!
//!   T_mn = (E_m - E_n) / (ln p_n - ln p_m)
//!
//! equals that temperature for every level pair of a Gibbs state, so the
//! spread of T_mn over the level grid measures how far a state is from
//! thermal. Pairs where the ratio carries no information are masked:
//! vanishing populations (Invalid) and equal populations, whose ratio only
//! matches an infinite-temperature state (Infinite).

use crate::eigensystem::{enumerate_levels, JCParams};
use crate::error::JcError;
use crate::steady_state::PopulationVector;

/// Classification of one level pair in the effective-temperature grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TeffFlag {
    /// Both populations nonzero and distinguishable; the value is a
    /// finite temperature.
    Valid,
    /// Populations equal within 1e-15; only T -> infinity fits.
    Infinite,
    /// A vanishing population or the diagonal; no temperature fits.
    Invalid,
}

/// Pairwise effective temperatures over the flat level ordering. The grid
/// is symmetric and the diagonal is always masked.
#[derive(Debug, Clone)]
pub struct EffectiveTemperatureGrid {
    dim: usize,
    values: Vec<f64>,
    flags: Vec<TeffFlag>,
}

impl EffectiveTemperatureGrid {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, m: usize, n: usize) -> f64 {
        self.values[m * self.dim + n]
    }

    pub fn flag(&self, m: usize, n: usize) -> TeffFlag {
        self.flags[m * self.dim + n]
    }

    /// Unmasked entries of the upper triangle as (m, n, T_mn) with m < n.
    pub fn iter_valid(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim).flat_map(move |m| {
            (m + 1..self.dim).filter_map(move |n| match self.flag(m, n) {
                TeffFlag::Valid => Some((m, n, self.value(m, n))),
                _ => None,
            })
        })
    }

    /// Smallest and largest unmasked effective temperature, or `None` when
    /// every pair is masked.
    pub fn min_max(&self) -> Option<(f64, f64)> {
        let mut bounds: Option<(f64, f64)> = None;
        for (_, _, t) in self.iter_valid() {
            bounds = Some(match bounds {
                None => (t, t),
                Some((lo, hi)) => (lo.min(t), hi.max(t)),
            });
        }
        bounds
    }

    /// Max minus min over the unmasked entries; zero for a perfectly
    /// thermal state up to rounding in the population logs.
    pub fn spread(&self) -> Option<f64> {
        self.min_max().map(|(lo, hi)| hi - lo)
    }

    /// Population-weighted mean of the unmasked entries with pair weights
    /// p_m p_n, so the best-populated ratios dominate the estimate.
    /// Panics when `populations` has a different dimension.
    pub fn weighted_mean(&self, populations: &PopulationVector) -> Option<f64> {
        assert_eq!(populations.len(), self.dim, "population/grid size mismatch");
        let mut num = 0.0;
        let mut den = 0.0;
        for (m, n, t) in self.iter_valid() {
            let w = populations[m] * populations[n];
            num += w * t;
            den += w;
        }
        if den > 0.0 {
            Some(num / den)
        } else {
            None
        }
    }
}

/// Builds the effective-temperature grid for a population vector, using the
/// dressed energies of `params` at the vector's truncation.
pub fn effective_temperatures(
    p: &PopulationVector,
    params: &JCParams,
) -> Result<EffectiveTemperatureGrid, JcError> {
    params.validate()?;
    let levels = enumerate_levels(params, p.n_d())?;
    let dim = levels.len();
    let mut values = vec![f64::NAN; dim * dim];
    let mut flags = vec![TeffFlag::Invalid; dim * dim];
    for m in 0..dim {
        for n in m + 1..dim {
            let (pm, pn) = (p[m], p[n]);
            let (value, flag) = if pm == 0.0 || pn == 0.0 {
                (f64::NAN, TeffFlag::Invalid)
            } else if (pm - pn).abs() < 1e-15 {
                (f64::INFINITY, TeffFlag::Infinite)
            } else {
                let t = (levels[m].1.energy - levels[n].1.energy) / (pn.ln() - pm.ln());
                (t, TeffFlag::Valid)
            };
            values[m * dim + n] = value;
            values[n * dim + m] = value;
            flags[m * dim + n] = flag;
            flags[n * dim + m] = flag;
        }
    }
    Ok(EffectiveTemperatureGrid { dim, values, flags })
}

/// Thermal state of the dressed spectrum at temperature `t`, truncated to
/// `n_d` excitation subspaces.
#[derive(Debug, Clone)]
pub struct GibbsState {
    t: f64,
    populations: Vec<f64>,
    z: f64,
    n_d: usize,
}

impl GibbsState {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    /// Partition sum over the truncated spectrum. Computed from shifted
    /// exponentials but reported unshifted, so it can overflow to infinity
    /// for extreme E_min / t even when the populations are fine.
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn n_d(&self) -> usize {
        self.n_d
    }

    /// The populations as a vector over the flat level ordering.
    pub fn to_population_vector(&self) -> PopulationVector {
        PopulationVector::new(self.populations.clone(), self.n_d)
            .expect("Gibbs populations are normalized by construction")
    }
}

/// Gibbs populations p_k = exp(-E_k / t) / Z on the flat level ordering.
///
/// Exponentials are shifted by the ground energy before normalization, so
/// the populations stay accurate at any temperature; very cold states can
/// still underflow their high-energy tail to zero.
pub fn gibbs_state(params: &JCParams, t: f64, n_d: usize) -> Result<GibbsState, JcError> {
    params.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "Gibbs temperature must be positive and finite, got {t}"
        )));
    }
    let levels = enumerate_levels(params, n_d)?;
    let e_min = levels
        .iter()
        .map(|(_, l)| l.energy)
        .fold(f64::INFINITY, f64::min);
    let shifted: Vec<f64> = levels
        .iter()
        .map(|(_, l)| (-(l.energy - e_min) / t).exp())
        .collect();
    let norm: f64 = shifted.iter().sum();
    let populations: Vec<f64> = shifted.iter().map(|s| s / norm).collect();
    let sum: f64 = populations.iter().sum();
    debug_assert!((sum - 1.0).abs() < 1e-12);
    Ok(GibbsState {
        t,
        populations,
        z: (-e_min / t).exp() * norm,
        n_d,
    })
}

/// Trace distance between two diagonal states over the same basis,
/// (1/2) sum_k |p_k - q_k|.
pub fn trace_distance_vectors(p: &[f64], q: &[f64]) -> Result<f64, JcError> {
    if p.len() != q.len() {
        return Err(JcError::TruncationMismatch(format!(
            "cannot compare {} populations with {}",
            p.len(),
            q.len()
        )));
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Trace distance between a population vector and a Gibbs reference at the
/// same truncation.
pub fn trace_distance_diag(p: &PopulationVector, gibbs: &GibbsState) -> Result<f64, JcError> {
    if p.n_d() != gibbs.n_d() {
        return Err(JcError::TruncationMismatch(format!(
            "population truncation {} does not match Gibbs truncation {}",
            p.n_d(),
            gibbs.n_d()
        )));
    }
    trace_distance_vectors(p.as_slice(), gibbs.populations())
}

/// Spread tolerance below which a state counts as thermalized.
pub const DEFAULT_VERDICT_TOL: f64 = 1e-6;

/// Outcome of the thermalization test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    /// Every unmasked level pair agrees on one temperature; `t_star` is the
    /// population-weighted estimate of it.
    Thermalized { t_star: f64 },
    NotThermalized,
}

/// Decides whether the populations are a Gibbs state of the dressed
/// spectrum: thermalized when the unmasked effective-temperature spread is
/// below `tol`.
///
/// When every pair is masked the grid carries no ratio information; that
/// happens for a pure ground state, which is the T -> 0 Gibbs limit and
/// counts as thermalized with t_star = 0, while any other fully masked
/// vector does not.
pub fn thermalization_verdict(
    p: &PopulationVector,
    params: &JCParams,
    tol: f64,
) -> Result<Verdict, JcError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "verdict tolerance must be positive and finite, got {tol}"
        )));
    }
    let grid = effective_temperatures(p, params)?;
    match grid.spread() {
        Some(spread) => {
            if spread < tol {
                let t_star = grid
                    .weighted_mean(p)
                    .expect("spread exists, so valid pairs exist");
                Ok(Verdict::Thermalized { t_star })
            } else {
                Ok(Verdict::NotThermalized)
            }
        }
        None => {
            if p.ground() >= 1.0 - 1e-9 {
                Ok(Verdict::Thermalized { t_star: 0.0 })
            } else {
                Ok(Verdict::NotThermalized)
            }
        }
    }
}
