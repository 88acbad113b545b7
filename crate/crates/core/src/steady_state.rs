//! Secular rate equation for the dressed-level populations: assembly of the
//! generator matrix, steady-state solve, and explicit time evolution.
//!
//! In the dressed basis the populations decouple from the coherences, so the
//! open-system dynamics reduces to a classical master equation
//! dp/dt = R p on the 2 n_d + 1 levels. Off-diagonal entries of R are the
//! net flow rates between neighboring excitation subspaces (twice the
//! Lindblad half-rates); each diagonal entry balances its column so that
//! total population is conserved exactly.

use nalgebra::{DMatrix, DVector};

use crate::bath::{channel_rates, BathConfig};
use crate::eigensystem::{enumerate_levels, DressedLevel, JCParams, LevelIndex};
use crate::error::JcError;

/// Rate-equation generator on the flat level ordering, together with the
/// levels it was built from.
#[derive(Debug, Clone)]
pub struct RateGraph {
    levels: Vec<(LevelIndex, DressedLevel)>,
    generator: DMatrix<f64>,
    n_d: usize,
}

impl RateGraph {
    pub fn levels(&self) -> &[(LevelIndex, DressedLevel)] {
        &self.levels
    }

    pub fn generator(&self) -> &DMatrix<f64> {
        &self.generator
    }

    pub fn n_d(&self) -> usize {
        self.n_d
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    /// Largest entry magnitude of the generator. Column balance puts this
    /// on the diagonal, so it is the fastest total escape rate and sets the
    /// stability bound for explicit stepping.
    pub fn max_rate(&self) -> f64 {
        self.generator.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Smallest strictly positive transition rate, or `None` when the
    /// generator vanishes. Its inverse bounds the slowest relaxation
    /// timescale from below.
    pub fn min_positive_rate(&self) -> Option<f64> {
        let mut min = f64::INFINITY;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                let v = self.generator[(i, j)];
                if i != j && v > 0.0 {
                    min = min.min(v);
                }
            }
        }
        if min.is_finite() {
            Some(min)
        } else {
            None
        }
    }
}

/// Populations over the flat level ordering of a given truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationVector {
    p: Vec<f64>,
    n_d: usize,
}

impl PopulationVector {
    /// Wraps a probability vector over the 2 n_d + 1 levels. Entries must
    /// be nonnegative and sum to one within 1e-9.
    pub fn new(p: Vec<f64>, n_d: usize) -> Result<Self, JcError> {
        if n_d == 0 || p.len() != 2 * n_d + 1 {
            return Err(JcError::TruncationMismatch(format!(
                "expected 2 * {n_d} + 1 populations, got {}",
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(JcError::InvalidParams(
                "populations must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(JcError::InvalidParams(format!(
                "populations sum to {sum}, expected 1"
            )));
        }
        Ok(Self { p, n_d })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn n_d(&self) -> usize {
        self.n_d
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Ground-level population.
    pub fn ground(&self) -> f64 {
        self.p[0]
    }

    /// Combined weight of the topmost excitation subspace. A steady state
    /// is only trustworthy when this is small compared to the tolerance of
    /// interest, otherwise the truncation is cutting off occupied levels.
    pub fn top_subspace_weight(&self) -> f64 {
        self.p[2 * self.n_d - 1] + self.p[2 * self.n_d]
    }
}

impl std::ops::Index<usize> for PopulationVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.p[i]
    }
}

/// Assembles the generator R for the given coupling, baths, and truncation.
///
/// For each neighboring pair the Lindblad dissipator moves population at
/// twice the half-rates returned by `channel_rates`, so the generator gets
/// 2 rate_down as downward flow and 2 rate_up as upward flow. Diagonals are
/// set to the negative column sums afterwards, making every column balance
/// exactly.
pub fn build_rate_graph(
    params: &JCParams,
    bath: &BathConfig,
    n_d: usize,
) -> Result<RateGraph, JcError> {
    params.validate()?;
    bath.validate()?;
    let levels = enumerate_levels(params, n_d)?;
    let dim = levels.len();
    let mut r = DMatrix::zeros(dim, dim);
    for (li, (_, lo)) in levels.iter().enumerate() {
        for (ui, (_, up)) in levels.iter().enumerate() {
            if up.n == lo.n + 1 {
                let (rate_up, rate_down) = channel_rates(lo, up, params, bath)?;
                r[(ui, li)] += 2.0 * rate_up;
                r[(li, ui)] += 2.0 * rate_down;
            }
        }
    }
    for j in 0..dim {
        let mut outflow = 0.0;
        for i in 0..dim {
            if i != j {
                outflow += r[(i, j)];
            }
        }
        r[(j, j)] = -outflow;
    }
    Ok(RateGraph {
        levels,
        generator: r,
        n_d,
    })
}

/// Solves R p = 0 with sum(p) = 1.
///
/// The null vector is pinned by replacing the last equation with the
/// normalization row. Before solving, a breadth-first search checks that
/// every level is connected to the ground state through nonzero rates
/// (otherwise the steady state is not unique and the levels left out are
/// reported), and a singular-value decomposition confirms the generator has
/// a one-dimensional null space. The solution is verified against
/// ||R p||_inf < 1e-12; entries above -1e-14 are clamped to zero.
pub fn steady_state(graph: &RateGraph) -> Result<PopulationVector, JcError> {
    let r = graph.generator();
    let dim = graph.dim();

    let mut seen = vec![false; dim];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(j) = queue.pop_front() {
        for i in 0..dim {
            if !seen[i] && (r[(i, j)] > 0.0 || r[(j, i)] > 0.0) {
                seen[i] = true;
                queue.push_back(i);
            }
        }
    }
    let unreachable: Vec<usize> = (0..dim).filter(|&i| !seen[i]).map(|i| i + 1).collect();
    if !unreachable.is_empty() {
        return Err(JcError::NonErgodic(format!(
            "levels {unreachable:?} are not connected to the ground state by any dissipative channel"
        )));
    }

    let svd = r.clone().svd(false, false);
    let max_sv = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    let nullity = svd
        .singular_values
        .iter()
        .filter(|&&s| s < max_sv * 1e-10)
        .count();
    if nullity != 1 {
        return Err(JcError::SolveFailed(format!(
            "generator null space has dimension {nullity}, steady state is not unique"
        )));
    }

    let mut m = r.clone();
    for j in 0..dim {
        m[(dim - 1, j)] = 1.0;
    }
    let mut b = DVector::zeros(dim);
    b[dim - 1] = 1.0;
    let p = m
        .lu()
        .solve(&b)
        .ok_or_else(|| JcError::SolveFailed("normalized rate system is singular".into()))?;

    let residual = (r * &p).amax();
    if residual >= 1e-12 {
        return Err(JcError::SolveFailed(format!(
            "steady-state residual {residual:.3e} exceeds 1e-12"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(JcError::SolveFailed(format!(
            "steady-state populations sum to {sum}, expected 1"
        )));
    }
    let mut out = Vec::with_capacity(dim);
    for &v in p.iter() {
        if v < -1e-14 {
            return Err(JcError::SolveFailed(format!(
                "steady-state population {v:.3e} is negative beyond tolerance"
            )));
        }
        out.push(v.max(0.0));
    }
    Ok(PopulationVector {
        p: out,
        n_d: graph.n_d,
    })
}

/// Integrates dp/dt = R p from `p0` to `t_final` with fixed-step RK4.
///
/// The step must resolve the fastest rate: dt * max_rate < 0.1 is enforced
/// up front. Population conservation is monitored and a drift beyond 1e-9
/// aborts the run.
pub fn evolve_populations(
    graph: &RateGraph,
    p0: &[f64],
    t_final: f64,
    dt: f64,
) -> Result<PopulationVector, JcError> {
    let dim = graph.dim();
    if p0.len() != dim {
        return Err(JcError::TruncationMismatch(format!(
            "initial populations have length {}, generator has dimension {dim}",
            p0.len()
        )));
    }
    if p0.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(JcError::InvalidParams(
            "initial populations must be finite and nonnegative".into(),
        ));
    }
    let sum0: f64 = p0.iter().sum();
    if (sum0 - 1.0).abs() > 1e-9 {
        return Err(JcError::InvalidParams(format!(
            "initial populations sum to {sum0}, expected 1"
        )));
    }
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "final time must be nonnegative and finite, got {t_final}"
        )));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "step size must be positive and finite, got {dt}"
        )));
    }

    let max_rate = graph.max_rate();
    if t_final == 0.0 || max_rate == 0.0 {
        return Ok(PopulationVector {
            p: p0.to_vec(),
            n_d: graph.n_d,
        });
    }
    if dt * max_rate >= 0.1 {
        return Err(JcError::UnstableStep(dt));
    }

    let r = graph.generator();
    let mut p = DVector::from_column_slice(p0);
    let mut t = 0.0;
    while t < t_final {
        let h = dt.min(t_final - t);
        let k1 = r * &p;
        let k2 = r * &(&p + &k1 * (h / 2.0));
        let k3 = r * &(&p + &k2 * (h / 2.0));
        let k4 = r * &(&p + &k3 * h);
        p += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        t += h;
    }

    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(JcError::SolveFailed(format!(
            "population drifted to total {sum} during evolution"
        )));
    }
    let mut out = Vec::with_capacity(dim);
    for &v in p.iter() {
        if v < -1e-14 {
            return Err(JcError::SolveFailed(format!(
                "evolved population {v:.3e} is negative beyond tolerance"
            )));
        }
        out.push(v.max(0.0));
    }
    Ok(PopulationVector {
        p: out,
        n_d: graph.n_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn equal_t_graph(n_d: usize) -> RateGraph {
        let params = JCParams::resonant(0.02).unwrap();
        let bath = BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 1e-4,
            t_sigma: 2.0,
            t_a: 2.0,
        };
        build_rate_graph(&params, &bath, n_d).unwrap()
    }

    #[test]
    fn columns_balance_exactly() {
        let graph = equal_t_graph(5);
        let r = graph.generator();
        for j in 0..graph.dim() {
            let col: f64 = (0..graph.dim()).map(|i| r[(i, j)]).sum();
            assert!(col.abs() < 1e-14, "column {j} sums to {col:e}");
        }
    }

    #[test]
    fn only_neighboring_subspaces_are_coupled() {
        let graph = equal_t_graph(4);
        let r = graph.generator();
        for (i, (_, a)) in graph.levels().iter().enumerate() {
            for (j, (_, b)) in graph.levels().iter().enumerate() {
                if i == j {
                    continue;
                }
                assert!(r[(i, j)] >= 0.0);
                if a.n.abs_diff(b.n) != 1 {
                    assert_eq!(r[(i, j)], 0.0, "levels {i} and {j} should not couple");
                }
            }
        }
    }

    #[test]
    fn generator_entries_are_doubled_half_rates() {
        let graph = equal_t_graph(3);
        let r = graph.generator();
        // ground (flat 0) <-> first upper doublet (flat 2)
        assert_relative_eq!(r[(0, 2)], 2.0 * 1.2515506049056746e-4, max_relative = 1e-13);
        assert_relative_eq!(r[(2, 0)], 2.0 * 7.515506049056746e-5, max_relative = 1e-13);
    }

    #[test]
    fn equal_temperature_steady_state_is_detailed_balanced() {
        let graph = equal_t_graph(6);
        let p = steady_state(&graph).unwrap();
        let t = 2.0;
        for (i, (_, a)) in graph.levels().iter().enumerate() {
            for (j, (_, b)) in graph.levels().iter().enumerate() {
                if b.n == a.n + 1 {
                    let ratio = p[j] / p[i];
                    let boltzmann = (-(b.energy - a.energy) / t).exp();
                    assert_relative_eq!(ratio, boltzmann, max_relative = 1e-9);
                }
            }
        }
    }

    #[test]
    fn steady_state_sums_to_one() {
        let graph = equal_t_graph(17);
        let p = steady_state(&graph).unwrap();
        let sum: f64 = p.as_slice().iter().sum();
        assert_relative_eq!(sum, 1.0, max_relative = 1e-12);
        assert!(p.as_slice().iter().all(|&v| v >= 0.0));
        assert!(p.ground() > 0.2);
        // the thermal tail at T = 2 leaves ~1e-4 in subspace 17
        assert!(p.top_subspace_weight() < 2e-4);
    }

    #[test]
    fn dead_graph_is_rejected() {
        let params = JCParams::resonant(0.02).unwrap();
        let bath = BathConfig::Individual {
            gamma_sigma: 0.0,
            gamma_a: 0.0,
            t_sigma: 1.0,
            t_a: 1.0,
        };
        let graph = build_rate_graph(&params, &bath, 3).unwrap();
        assert!(matches!(steady_state(&graph), Err(JcError::NonErgodic(_))));
    }

    #[test]
    fn evolution_reaches_the_steady_state() {
        let params = JCParams::resonant(0.03).unwrap();
        let bath = BathConfig::Individual {
            gamma_sigma: 5e-3,
            gamma_a: 5e-3,
            t_sigma: 1.5,
            t_a: 2.5,
        };
        let graph = build_rate_graph(&params, &bath, 4).unwrap();
        let target = steady_state(&graph).unwrap();
        let mut p0 = vec![0.0; graph.dim()];
        p0[0] = 1.0;
        let t_final = 100.0 / graph.min_positive_rate().unwrap();
        let dt = 0.05 / graph.max_rate();
        let evolved = evolve_populations(&graph, &p0, t_final, dt).unwrap();
        for (a, b) in evolved.as_slice().iter().zip(target.as_slice()) {
            assert!((a - b).abs() < 1e-10, "evolved {a} vs steady {b}");
        }
    }

    #[test]
    fn evolution_guards() {
        let graph = equal_t_graph(3);
        let mut p0 = vec![0.0; graph.dim()];
        p0[0] = 1.0;
        assert!(matches!(
            evolve_populations(&graph, &p0, 1.0, 1.0 / graph.max_rate()),
            Err(JcError::UnstableStep(_))
        ));
        let same = evolve_populations(&graph, &p0, 0.0, 1.0).unwrap();
        assert_eq!(same.as_slice(), &p0[..]);
        let bad = vec![0.5; graph.dim()];
        assert!(evolve_populations(&graph, &bad, 1.0, 0.1).is_err());
    }

    #[test]
    fn population_vector_validation() {
        assert!(PopulationVector::new(vec![0.5, 0.25, 0.25], 1).is_ok());
        assert!(PopulationVector::new(vec![0.5, 0.5], 1).is_err());
        assert!(PopulationVector::new(vec![0.7, 0.2, 0.2], 1).is_err());
        assert!(PopulationVector::new(vec![1.1, -0.05, -0.05], 1).is_err());
    }
}
