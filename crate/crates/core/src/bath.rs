//! Transition coefficients, thermal occupations, and per-channel rates for
//! the two bath topologies.
//!
//! The TLS couples to its bath through sigma_x and the field through
//! (a + a'), so dissipative transitions only connect neighboring excitation
//! subspaces. Decay rates are flat in frequency: one gamma_sigma for every
//! TLS-induced transition and one gamma_a for every field-induced one.

use serde::{Deserialize, Serialize};

use crate::eigensystem::{DressedLevel, JCParams};
use crate::error::JcError;

/// Bath topology and coupling configuration.
///
/// `Individual`: TLS and field each couple to their own bath, possibly at
/// different temperatures. `Common`: both couple to one bath at a single
/// temperature, which adds a cross damping channel with rate
/// sqrt(gamma_sigma * gamma_a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "topology", deny_unknown_fields)]
pub enum BathConfig {
    #[serde(rename = "ihb")]
    Individual {
        gamma_sigma: f64,
        gamma_a: f64,
        t_sigma: f64,
        t_a: f64,
    },
    #[serde(rename = "chb")]
    Common {
        gamma_sigma: f64,
        gamma_a: f64,
        t: f64,
    },
}

impl BathConfig {
    pub fn validate(&self) -> Result<(), JcError> {
        let check_rate = |name: &str, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(JcError::InvalidParams(format!(
                    "{name} must be nonnegative and finite, got {v}"
                )))
            }
        };
        match *self {
            BathConfig::Individual {
                gamma_sigma,
                gamma_a,
                t_sigma,
                t_a,
            } => {
                check_rate("gamma_sigma", gamma_sigma)?;
                check_rate("gamma_a", gamma_a)?;
                check_rate("t_sigma", t_sigma)?;
                check_rate("t_a", t_a)?;
            }
            BathConfig::Common {
                gamma_sigma,
                gamma_a,
                t,
            } => {
                check_rate("gamma_sigma", gamma_sigma)?;
                check_rate("gamma_a", gamma_a)?;
                check_rate("t", t)?;
            }
        }
        Ok(())
    }

    pub fn gamma_sigma(&self) -> f64 {
        match *self {
            BathConfig::Individual { gamma_sigma, .. } => gamma_sigma,
            BathConfig::Common { gamma_sigma, .. } => gamma_sigma,
        }
    }

    pub fn gamma_a(&self) -> f64 {
        match *self {
            BathConfig::Individual { gamma_a, .. } => gamma_a,
            BathConfig::Common { gamma_a, .. } => gamma_a,
        }
    }
}

/// Matrix elements of the two coupling operators between a pair of
/// neighboring dressed levels, plus the magnitude of the common-bath cross
/// coefficient (chi_x^2 = 2 |chi_sigma chi_a| is what enters the rates;
/// the magnitude convention keeps every rate nonnegative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionCoefficients {
    pub chi_sigma: f64,
    pub chi_a: f64,
    pub chi_x: f64,
}

/// <to| sigma_x |from> for `from` in subspace n and `to` in subspace n+1,
/// evaluated from the bare-basis amplitudes (valid at any detuning).
/// Zero whenever the subspaces are not neighbors in that order.
pub fn chi_sigma(from: &DressedLevel, to: &DressedLevel) -> f64 {
    if to.n != from.n + 1 {
        return 0.0;
    }
    // sigma_x maps |g,n> -> |e,n>, whose only overlap with the upper level
    // is its |e,(n+1)-1> component.
    to.amp_e() * from.amp_g()
}

/// <to| (a + a') |from> for `from` in subspace n and `to` in subspace n+1.
/// Zero whenever the subspaces are not neighbors in that order.
pub fn chi_a(from: &DressedLevel, to: &DressedLevel) -> f64 {
    if to.n != from.n + 1 {
        return 0.0;
    }
    let n = from.n as f64;
    // a' raises |e,n-1> -> sqrt(n)|e,n> and |g,n> -> sqrt(n+1)|g,n+1>.
    to.amp_e() * from.amp_e() * n.sqrt() + to.amp_g() * from.amp_g() * (n + 1.0).sqrt()
}

/// All three coefficients for a neighboring pair.
pub fn transition_coefficients(from: &DressedLevel, to: &DressedLevel) -> TransitionCoefficients {
    let cs = chi_sigma(from, to);
    let ca = chi_a(from, to);
    TransitionCoefficients {
        chi_sigma: cs,
        chi_a: ca,
        chi_x: (2.0 * (cs * ca).abs()).sqrt(),
    }
}

/// Bose-Einstein occupation 1 / (exp(omega/T) - 1); exactly zero at T = 0.
/// Transition frequencies in this model are positive, so omega <= 0 is
/// rejected.
pub fn nbar(omega: f64, t: f64) -> Result<f64, JcError> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "occupation needs a positive transition frequency, got {omega}"
        )));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(JcError::InvalidParams(format!(
            "temperature must be nonnegative and finite, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    // expm1 keeps precision for omega << T, where exp(omega/T) - 1 would
    // cancel catastrophically.
    Ok(1.0 / (omega / t).exp_m1())
}

/// Thermal upward and downward half-rates for one neighboring level pair,
/// summed over the bath channels:
///
///   rate_down = sum_l (gamma_l / 2) chi_l^2 (nbar_l + 1)
///   rate_up   = sum_l (gamma_l / 2) chi_l^2 nbar_l
///
/// with l in {sigma, a} for individual baths (each nbar at its own bath
/// temperature) and l in {sigma, a, X} for the common bath, where
/// gamma_X = sqrt(gamma_sigma gamma_a) and chi_X^2 = 2 |chi_sigma chi_a|.
///
/// These are the Lindblad prefactors; the net population flow in the rate
/// equation is twice each value (see `build_rate_graph`).
pub fn channel_rates(
    lower: &DressedLevel,
    upper: &DressedLevel,
    params: &JCParams,
    bath: &BathConfig,
) -> Result<(f64, f64), JcError> {
    params.validate()?;
    bath.validate()?;
    if upper.n != lower.n + 1 {
        return Err(JcError::NonNeighboring {
            lower: lower.n,
            upper: upper.n,
        });
    }
    let omega = upper.energy - lower.energy;
    if !(omega > 0.0) {
        return Err(JcError::InvalidParams(format!(
            "transition frequency between subspaces {} and {} is {omega:.6e}, not positive; \
             the secular rate picture needs g sqrt(n) < omega_c",
            lower.n, upper.n
        )));
    }
    let cs2 = chi_sigma(lower, upper).powi(2);
    let ca2 = chi_a(lower, upper).powi(2);
    match *bath {
        BathConfig::Individual {
            gamma_sigma,
            gamma_a,
            t_sigma,
            t_a,
        } => {
            let ns = nbar(omega, t_sigma)?;
            let na = nbar(omega, t_a)?;
            let down = 0.5 * (gamma_sigma * cs2 * (ns + 1.0) + gamma_a * ca2 * (na + 1.0));
            let up = 0.5 * (gamma_sigma * cs2 * ns + gamma_a * ca2 * na);
            Ok((up, down))
        }
        BathConfig::Common {
            gamma_sigma,
            gamma_a,
            t,
        } => {
            let nb = nbar(omega, t)?;
            let cx2 = transition_coefficients(lower, upper).chi_x.powi(2);
            let weight = gamma_sigma * cs2 + gamma_a * ca2 + (gamma_sigma * gamma_a).sqrt() * cx2;
            Ok((0.5 * weight * nb, 0.5 * weight * (nb + 1.0)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::{eigen_level, Branch};
    use approx::assert_relative_eq;

    fn level(p: &JCParams, n: usize, b: Branch) -> DressedLevel {
        eigen_level(p, n, b).unwrap()
    }

    #[test]
    fn resonant_ground_coefficients() {
        let p = JCParams::resonant(0.02).unwrap();
        let g0 = level(&p, 0, Branch::Ground);
        let inv_sqrt2 = 0.7071067811865475;
        assert_relative_eq!(
            chi_sigma(&g0, &level(&p, 1, Branch::Plus)),
            inv_sqrt2,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            chi_sigma(&g0, &level(&p, 1, Branch::Minus)),
            -inv_sqrt2,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            chi_a(&g0, &level(&p, 1, Branch::Plus)),
            inv_sqrt2,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            chi_a(&g0, &level(&p, 1, Branch::Minus)),
            inv_sqrt2,
            max_relative = 1e-15
        );
    }

    #[test]
    fn resonant_doublet_coefficients() {
        let p = JCParams::resonant(0.02).unwrap();
        let from = level(&p, 1, Branch::Plus);
        assert_relative_eq!(
            chi_sigma(&from, &level(&p, 2, Branch::Plus)),
            0.5,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            chi_sigma(&from, &level(&p, 2, Branch::Minus)),
            -0.5,
            max_relative = 1e-15
        );
        // (a + a') between upper branches: (sqrt(2) + 1)/2
        assert_relative_eq!(
            chi_a(&from, &level(&p, 2, Branch::Plus)),
            1.2071067811865475,
            max_relative = 1e-14
        );
    }

    #[test]
    fn selection_rule_is_exact() {
        let p = JCParams::new(1.0, 0.95, 0.03).unwrap();
        let a = level(&p, 1, Branch::Plus);
        let b = level(&p, 3, Branch::Minus);
        assert_eq!(chi_sigma(&a, &b), 0.0);
        assert_eq!(chi_a(&a, &b), 0.0);
        let c = level(&p, 1, Branch::Minus);
        assert_eq!(chi_sigma(&a, &c), 0.0);
        assert_eq!(chi_a(&a, &c), 0.0);
    }

    #[test]
    fn decoupled_limit_gives_bare_ladder() {
        // g = 0, delta > 0: plus is |e,n-1>, minus is |g,n>. The field
        // quadrature connects photon-like states with sqrt(n+1) and the
        // cross elements vanish.
        let p = JCParams::new(1.0, 0.9, 0.0).unwrap();
        let gn = level(&p, 2, Branch::Minus);
        let gn1 = level(&p, 3, Branch::Minus);
        let en = level(&p, 3, Branch::Plus);
        assert_relative_eq!(chi_a(&gn, &gn1), 3f64.sqrt(), max_relative = 1e-15);
        assert_eq!(chi_a(&gn, &en), 0.0);
        assert_eq!(chi_sigma(&gn, &gn1), 0.0);
        assert_relative_eq!(chi_sigma(&gn, &en), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn nbar_values() {
        assert_eq!(nbar(1.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(nbar(1.0, 2.0).unwrap(), 1.5414940825367982, max_relative = 1e-15);
        assert_relative_eq!(
            nbar(0.04, 2.0).unwrap(),
            49.5016666555556597,
            max_relative = 1e-14
        );
        assert!(nbar(0.0, 1.0).is_err());
        assert!(nbar(-1.0, 1.0).is_err());
        assert!(nbar(1.0, -0.5).is_err());
    }

    #[test]
    fn individual_rates_match_hand_value() {
        // Ground to upper first doublet at resonance, both baths at T = 2:
        // chi_sigma^2 = chi_a^2 = 1/2 and omega = 1.02, so
        // rate_down = 0.5e-4 (nbar(1.02, 2) + 1).
        let p = JCParams::resonant(0.02).unwrap();
        let bath = BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 1e-4,
            t_sigma: 2.0,
            t_a: 2.0,
        };
        let g0 = level(&p, 0, Branch::Ground);
        let e1p = level(&p, 1, Branch::Plus);
        let (up, down) = channel_rates(&g0, &e1p, &p, &bath).unwrap();
        assert_relative_eq!(down, 1.2515506049056746e-4, max_relative = 1e-13);
        assert_relative_eq!(up, 7.515506049056746e-5, max_relative = 1e-13);
    }

    #[test]
    fn common_bath_adds_cross_channel() {
        let p = JCParams::resonant(0.02).unwrap();
        let bath = BathConfig::Common {
            gamma_sigma: 1e-4,
            gamma_a: 1e-4,
            t: 2.0,
        };
        let g0 = level(&p, 0, Branch::Ground);
        let e1p = level(&p, 1, Branch::Plus);
        let (_, down) = channel_rates(&g0, &e1p, &p, &bath).unwrap();
        // chi_x^2 = 2 |chi_sigma chi_a| = 1 doubles the channel weight.
        assert_relative_eq!(down, 2.5031012098113492e-4, max_relative = 1e-13);
    }

    #[test]
    fn zero_temperature_kills_upward_rates() {
        let p = JCParams::resonant(0.02).unwrap();
        let bath = BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 2e-4,
            t_sigma: 0.0,
            t_a: 0.0,
        };
        let lo = level(&p, 1, Branch::Minus);
        let hi = level(&p, 2, Branch::Plus);
        let (up, down) = channel_rates(&lo, &hi, &p, &bath).unwrap();
        assert_eq!(up, 0.0);
        assert!(down > 0.0);
    }

    #[test]
    fn detailed_balance_per_bath() {
        let p = JCParams::new(1.0, 0.97, 0.04).unwrap();
        let t = 1.7;
        let bath = BathConfig::Individual {
            gamma_sigma: 3e-4,
            gamma_a: 8e-5,
            t_sigma: t,
            t_a: t,
        };
        let lo = level(&p, 2, Branch::Plus);
        let hi = level(&p, 3, Branch::Minus);
        let (up, down) = channel_rates(&lo, &hi, &p, &bath).unwrap();
        let omega = hi.energy - lo.energy;
        assert_relative_eq!(up / down, (-omega / t).exp(), max_relative = 1e-12);
    }

    #[test]
    fn non_neighbors_rejected() {
        let p = JCParams::resonant(0.02).unwrap();
        let a = level(&p, 1, Branch::Plus);
        let b = level(&p, 3, Branch::Minus);
        assert!(matches!(
            channel_rates(&a, &b, &p, &BathConfig::Common {
                gamma_sigma: 1e-4,
                gamma_a: 1e-4,
                t: 1.0,
            }),
            Err(JcError::NonNeighboring { lower: 1, upper: 3 })
        ));
    }
}
