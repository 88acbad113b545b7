// A single heat bath always thermalizes the JC system, however it is
// attached. Individual baths at different temperatures never do, even
// when one of them is at zero temperature. A common bath acts through
// qubit, mode, and interference channels at one temperature, so the
// steady state is Gibbs for any pair of damping rates.

use jc_thermo::bath::BathConfig;
use jc_thermo::diagnostics::{thermalization_verdict, Verdict, DEFAULT_VERDICT_TOL};
use jc_thermo::eigensystem::JCParams;
use jc_thermo::steady_state::{build_rate_graph, steady_state};
use jc_thermo::JcError;

fn report(name: &str, params: &JCParams, bath: &BathConfig) -> Result<(), JcError> {
    let graph = build_rate_graph(params, bath, 17)?;
    let p = steady_state(&graph)?;
    match thermalization_verdict(&p, params, DEFAULT_VERDICT_TOL)? {
        Verdict::Thermalized { t_star } => {
            println!("{name:<34} thermalized, t* = {t_star:.9}");
        }
        Verdict::NotThermalized => println!("{name:<34} not thermalized"),
    }
    Ok(())
}

fn main() -> Result<(), JcError> {
    let params = JCParams::resonant(0.02)?;

    report(
        "qubit bath only, t = 2",
        &params,
        &BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 0.0,
            t_sigma: 2.0,
            t_a: 0.0,
        },
    )?;
    report(
        "mode bath only, t = 1",
        &params,
        &BathConfig::Individual {
            gamma_sigma: 0.0,
            gamma_a: 1e-4,
            t_sigma: 0.0,
            t_a: 1.0,
        },
    )?;
    report(
        "both baths, mode bath at t = 0",
        &params,
        &BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 1e-4,
            t_sigma: 2.0,
            t_a: 0.0,
        },
    )?;
    report(
        "both baths, qubit bath at t = 0",
        &params,
        &BathConfig::Individual {
            gamma_sigma: 1e-4,
            gamma_a: 1e-4,
            t_sigma: 0.0,
            t_a: 1.0,
        },
    )?;
    report(
        "common bath, t = 1.3, uneven rates",
        &params,
        &BathConfig::Common {
            gamma_sigma: 3e-4,
            gamma_a: 7e-5,
            t: 1.3,
        },
    )?;
    Ok(())
}
