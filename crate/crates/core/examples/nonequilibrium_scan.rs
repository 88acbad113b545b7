//! Steady states between two baths at different temperatures, for three
//! ratios of the damping rates.

use jc_thermo::bath::BathConfig;
use jc_thermo::diagnostics::{
    effective_temperatures, gibbs_state, thermalization_verdict, trace_distance_diag, Verdict,
    DEFAULT_VERDICT_TOL,
};
use jc_thermo::eigensystem::JCParams;
use jc_thermo::steady_state::{build_rate_graph, steady_state, PopulationVector};
use jc_thermo::JcError;

const N_D: usize = 17;

/// Smallest trace distance to a Gibbs state with t_ref on a 101-point
/// grid over [1.5, 2.5], and the temperature where it lands.
fn closest_thermal_state(
    p: &PopulationVector,
    params: &JCParams,
) -> Result<(f64, f64), JcError> {
    let mut best = (f64::INFINITY, f64::NAN);
    for i in 0..=100 {
        let t_ref = 1.5 + 0.01 * i as f64;
        let d = trace_distance_diag(p, &gibbs_state(params, t_ref, N_D)?)?;
        if d < best.0 {
            best = (d, t_ref);
        }
    }
    Ok(best)
}

fn main() -> Result<(), JcError> {
    let params = JCParams::resonant(0.02)?;

    // The qubit bath is hot and the mode bath is cold. Whatever the rate
    // ratio, no single reference temperature reproduces the steady state:
    // the closest Gibbs state stays a finite trace distance away, and the
    // pairwise effective temperatures disagree.
    for ratio in [0.5, 1.0, 2.0] {
        let bath = BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 1e-4 * ratio,
            t_sigma: 2.5,
            t_a: 1.5,
        };
        let graph = build_rate_graph(&params, &bath, N_D)?;
        let p = steady_state(&graph)?;

        let grid = effective_temperatures(&p, &params)?;
        let (lo, hi) = grid.min_max().unwrap();
        let (d_min, t_at) = closest_thermal_state(&p, &params)?;

        println!("gamma_a / gamma_sigma = {ratio}");
        println!("  t_eff range         {lo:.6} .. {hi:.6}");
        println!("  closest Gibbs state d = {d_min:.6} at t_ref = {t_at:.2}");
        match thermalization_verdict(&p, &params, DEFAULT_VERDICT_TOL)? {
            Verdict::Thermalized { t_star } => println!("  thermalized, t* = {t_star:.6}"),
            Verdict::NotThermalized => println!("  not thermalized"),
        }
    }

    // Same machinery at equal temperatures, as a control: the distance
    // minimum drops to numerical zero at the common bath temperature.
    let bath = BathConfig::Individual {
        gamma_sigma: 1e-4,
        gamma_a: 1e-4,
        t_sigma: 2.0,
        t_a: 2.0,
    };
    let p = steady_state(&build_rate_graph(&params, &bath, N_D)?)?;
    let (d_min, t_at) = closest_thermal_state(&p, &params)?;
    println!("equal temperatures");
    println!("  closest Gibbs state d = {d_min:.3e} at t_ref = {t_at:.2}");
    Ok(())
}
