//! Thermalization of the damped JC model when both individual baths sit
//! at the same temperature.
//!
//! The secular rate equation couples dressed levels whose excitation
//! numbers differ by one. With t_sigma = t_a every allowed transition
//! obeys detailed balance against the same Boltzmann factor, so the
//! steady state is the Gibbs state of the dressed Hamiltonian: the
//! two-level effective temperature is flat across all level pairs and
//! the trace distance to the reference thermal state vanishes to solver
//! precision.

use jc_thermo::bath::BathConfig;
use jc_thermo::diagnostics::{
    effective_temperatures, gibbs_state, thermalization_verdict, trace_distance_diag, Verdict,
    DEFAULT_VERDICT_TOL,
};
use jc_thermo::eigensystem::JCParams;
use jc_thermo::steady_state::{build_rate_graph, steady_state};
use jc_thermo::JcError;

fn main() -> Result<(), JcError> {
    let params = JCParams::resonant(0.02)?;
    let bath = BathConfig::Individual {
        gamma_sigma: 1e-4,
        gamma_a: 1e-4,
        t_sigma: 2.0,
        t_a: 2.0,
    };
    let n_d = 17;

    let graph = build_rate_graph(&params, &bath, n_d)?;
    let p = steady_state(&graph)?;
    println!("levels kept                 {}", graph.dim());
    println!("ground population           {:.12}", p.ground());
    println!("top subspace weight         {:.3e}", p.top_subspace_weight());

    let grid = effective_temperatures(&p, &params)?;
    let (lo, hi) = grid.min_max().expect("some pairs are unmasked");
    println!("t_eff over level pairs      {lo:.12} .. {hi:.12}");
    println!("t_eff spread                {:.3e}", grid.spread().unwrap());

    let gibbs = gibbs_state(&params, 2.0, n_d)?;
    let d = trace_distance_diag(&p, &gibbs)?;
    println!("trace distance to Gibbs(2)  {d:.3e}");

    match thermalization_verdict(&p, &params, DEFAULT_VERDICT_TOL)? {
        Verdict::Thermalized { t_star } => println!("verdict: thermalized, t* = {t_star:.9}"),
        Verdict::NotThermalized => println!("verdict: not thermalized"),
    }
    Ok(())
}
