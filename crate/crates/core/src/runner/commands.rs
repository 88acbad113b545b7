//! Command entry points shared by the CLI and the examples. Each command
//! turns a configuration into a `ResultTable`.

use rayon::prelude::*;

use crate::diagnostics::{
    effective_temperatures, gibbs_state, thermalization_verdict, trace_distance_diag, TeffFlag,
    Verdict, DEFAULT_VERDICT_TOL,
};
use crate::eigensystem::JCParams;
use crate::error::JcError;
use crate::negativity::{
    crossover_index, log_negativity_analytic, log_negativity_numeric, truncation_index,
    DEFAULT_TRUNCATION_THRESHOLD,
};
use crate::runner::{Column, ExperimentConfig, Metadata, ResultTable, Series};
use crate::steady_state::{build_rate_graph, steady_state, PopulationVector};

use super::table::format_float;

/// Weight in the top excitation subspace above which results get a
/// truncation warning note.
const TRUNCATION_WARNING_WEIGHT: f64 = 1e-6;

/// Applies `JC_THERMO_THREADS` to the global rayon pool, once. Later calls
/// are no-ops, and an unset variable leaves rayon at its default width.
fn init_thread_pool() -> Result<(), JcError> {
    use std::sync::OnceLock;
    static DONE: OnceLock<Result<(), String>> = OnceLock::new();
    DONE.get_or_init(|| match std::env::var("JC_THERMO_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                // failure means a pool exists already, which is fine
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                Ok(())
            }
            _ => Err(format!(
                "JC_THERMO_THREADS must be a positive integer, got {raw:?}"
            )),
        },
    })
    .clone()
    .map_err(JcError::Config)
}

fn reject_sweep(config: &ExperimentConfig, command: &str) -> Result<(), JcError> {
    if config.sweep.is_some() {
        return Err(JcError::Config(format!(
            "{command} takes no sweep; drop the sweep block"
        )));
    }
    Ok(())
}

fn config_value(config: &ExperimentConfig) -> serde_json::Value {
    serde_json::to_value(config).expect("config serializes")
}

fn verdict_note(p: &PopulationVector, params: &JCParams) -> Result<String, JcError> {
    Ok(
        match thermalization_verdict(p, params, DEFAULT_VERDICT_TOL)? {
            Verdict::Thermalized { t_star } => {
                format!("verdict: thermalized t_star={}", format_float(t_star))
            }
            Verdict::NotThermalized => "verdict: not thermalized".into(),
        },
    )
}

fn truncation_note(p: &PopulationVector) -> Option<String> {
    let weight = p.top_subspace_weight();
    (weight > TRUNCATION_WARNING_WEIGHT).then(|| {
        format!(
            "warning: top subspace holds {}, raise the truncation",
            format_float(weight)
        )
    })
}

/// Steady-state populations over the dressed levels, one row per level,
/// with a thermalization verdict in the notes.
pub fn cmd_steady(config: &ExperimentConfig) -> Result<ResultTable, JcError> {
    init_thread_pool()?;
    config.validate()?;
    reject_sweep(config, "steady")?;
    let graph = build_rate_graph(&config.model, &config.bath, config.truncation)?;
    let p = steady_state(&graph)?;

    let dim = graph.dim();
    let mut k = Vec::with_capacity(dim);
    let mut n = Vec::with_capacity(dim);
    let mut branch = Vec::with_capacity(dim);
    let mut energy = Vec::with_capacity(dim);
    let mut population = Vec::with_capacity(dim);
    for (i, (index, level)) in graph.levels().iter().enumerate() {
        k.push(index.k as i64);
        n.push(level.n as i64);
        branch.push(level.branch.label().to_string());
        energy.push(level.energy);
        population.push(p[i]);
    }

    let mut notes = vec![verdict_note(&p, &config.model)?];
    notes.extend(truncation_note(&p));
    ResultTable::new(
        vec![
            Column { name: "k".into(), series: Series::Integer(k) },
            Column { name: "n".into(), series: Series::Integer(n) },
            Column { name: "branch".into(), series: Series::Text(branch) },
            Column { name: "energy".into(), series: Series::Numeric(energy) },
            Column { name: "population".into(), series: Series::Numeric(population) },
        ],
        Metadata::new(config_value(config), notes),
    )
}

/// Pairwise effective temperatures of the steady state in long format:
/// one row per ordered level pair, with the mask as a flag column.
pub fn cmd_teff(config: &ExperimentConfig) -> Result<ResultTable, JcError> {
    init_thread_pool()?;
    config.validate()?;
    reject_sweep(config, "teff")?;
    let graph = build_rate_graph(&config.model, &config.bath, config.truncation)?;
    let p = steady_state(&graph)?;
    let grid = effective_temperatures(&p, &config.model)?;

    let dim = grid.dim();
    let mut m_col = Vec::with_capacity(dim * (dim - 1));
    let mut n_col = Vec::with_capacity(dim * (dim - 1));
    let mut t_eff = Vec::with_capacity(dim * (dim - 1));
    let mut flag = Vec::with_capacity(dim * (dim - 1));
    for m in 0..dim {
        for n in 0..dim {
            if m == n {
                continue;
            }
            m_col.push((m + 1) as i64);
            n_col.push((n + 1) as i64);
            t_eff.push(grid.value(m, n));
            flag.push(
                match grid.flag(m, n) {
                    TeffFlag::Valid => "valid",
                    TeffFlag::Infinite => "infinite",
                    TeffFlag::Invalid => "invalid",
                }
                .to_string(),
            );
        }
    }

    let mut notes = vec![verdict_note(&p, &config.model)?];
    if let Some(spread) = grid.spread() {
        notes.push(format!("spread: {}", format_float(spread)));
    }
    notes.extend(truncation_note(&p));
    ResultTable::new(
        vec![
            Column { name: "m".into(), series: Series::Integer(m_col) },
            Column { name: "n".into(), series: Series::Integer(n_col) },
            Column { name: "t_eff".into(), series: Series::Numeric(t_eff) },
            Column { name: "flag".into(), series: Series::Text(flag) },
        ],
        Metadata::new(config_value(config), notes),
    )
}

/// Trace distance between the steady state and a family of Gibbs
/// references swept over `t_ref`. The steady state is solved once.
pub fn cmd_tracedist(config: &ExperimentConfig) -> Result<ResultTable, JcError> {
    init_thread_pool()?;
    config.validate()?;
    let sweep = config.sweep.as_ref().ok_or_else(|| {
        JcError::Config("tracedist needs a sweep block over t_ref".into())
    })?;
    if sweep.parameter != "t_ref" {
        return Err(JcError::Config(format!(
            "tracedist sweeps t_ref, not {:?}",
            sweep.parameter
        )));
    }
    let graph = build_rate_graph(&config.model, &config.bath, config.truncation)?;
    let p = steady_state(&graph)?;
    let t_refs = sweep.values();
    let distances = t_refs
        .par_iter()
        .map(|&t_ref| {
            let gibbs = gibbs_state(&config.model, t_ref, config.truncation)?;
            trace_distance_diag(&p, &gibbs)
        })
        .collect::<Result<Vec<f64>, JcError>>()?;

    let mut notes = Vec::new();
    if let Some((i, d)) = distances
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
    {
        notes.push(format!(
            "minimum: d={} at t_ref={}",
            format_float(*d),
            format_float(t_refs[i])
        ));
    }
    notes.extend(truncation_note(&p));
    ResultTable::new(
        vec![
            Column { name: "t_ref".into(), series: Series::Numeric(t_refs) },
            Column { name: "d".into(), series: Series::Numeric(distances) },
        ],
        Metadata::new(config_value(config), notes),
    )
}

/// Thermal logarithmic negativity swept over g_r = g / T, with the block
/// route and the dense oracle side by side. Each scaling factor s in
/// `s_values` sets the coupling to omega0 / s; an empty list uses the
/// configured coupling. The crossover column holds -1 where no block sign
/// change exists.
pub fn cmd_negativity(
    config: &ExperimentConfig,
    s_values: &[f64],
) -> Result<ResultTable, JcError> {
    init_thread_pool()?;
    config.validate()?;
    let sweep = config.sweep.as_ref().ok_or_else(|| {
        JcError::Config("negativity needs a sweep block over g_r".into())
    })?;
    if sweep.parameter != "g_r" {
        return Err(JcError::Config(format!(
            "negativity sweeps g_r, not {:?}",
            sweep.parameter
        )));
    }
    let ratios = sweep.values();
    if ratios.iter().any(|&r| r <= 0.0) {
        return Err(JcError::Config(
            "g_r values must be positive, the temperature is g / g_r".into(),
        ));
    }
    let scalings: Vec<f64> = if s_values.is_empty() {
        if config.model.g <= 0.0 {
            return Err(JcError::Config(
                "negativity needs a positive coupling; set model.g or pass s values".into(),
            ));
        }
        vec![config.model.omega0 / config.model.g]
    } else {
        if s_values.iter().any(|&s| s <= 0.0) {
            return Err(JcError::Config("s values must be positive".into()));
        }
        s_values.to_vec()
    };

    let jobs: Vec<(f64, f64)> = scalings
        .iter()
        .flat_map(|&s| ratios.iter().map(move |&g_r| (s, g_r)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(s, g_r)| {
            let params =
                JCParams::new(config.model.omega0, config.model.omega_c, config.model.omega0 / s)?;
            let t = params.g / g_r;
            let analytic = log_negativity_analytic(&params, t)?;
            let numeric = log_negativity_numeric(&params, t, analytic.n_max + 6)?;
            Ok((
                analytic.log_negativity,
                numeric.log_negativity,
                analytic.n0.map_or(-1, |n0| n0 as i64),
                analytic.n_max as i64,
            ))
        })
        .collect::<Result<Vec<_>, JcError>>()?;

    let notes = vec!["n0 = -1 marks no block sign change".into()];
    ResultTable::new(
        vec![
            Column {
                name: "s".into(),
                series: Series::Numeric(jobs.iter().map(|j| j.0).collect()),
            },
            Column {
                name: "g_r".into(),
                series: Series::Numeric(jobs.iter().map(|j| j.1).collect()),
            },
            Column {
                name: "n_analytic".into(),
                series: Series::Numeric(rows.iter().map(|r| r.0).collect()),
            },
            Column {
                name: "n_numeric".into(),
                series: Series::Numeric(rows.iter().map(|r| r.1).collect()),
            },
            Column {
                name: "n0".into(),
                series: Series::Integer(rows.iter().map(|r| r.2).collect()),
            },
            Column {
                name: "n_max".into(),
                series: Series::Integer(rows.iter().map(|r| r.3).collect()),
            },
        ],
        Metadata::new(config_value(config), notes),
    )
}

/// Crossover index and truncation for the weak-coupling benchmark family
/// (omega0 = omega_c = 1, g = 1/11, T = g / g_r) on a fixed g_r grid.
pub fn cmd_table1() -> Result<ResultTable, JcError> {
    let params = JCParams::new(1.0, 1.0, 1.0 / 11.0)?;
    let ratios = [0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4];
    let mut n0_plus_2 = Vec::with_capacity(ratios.len());
    let mut n_max = Vec::with_capacity(ratios.len());
    for &g_r in &ratios {
        let n0 = crossover_index(g_r).ok_or_else(|| {
            JcError::SolveFailed(format!("no block sign change at g_r = {g_r}"))
        })?;
        n0_plus_2.push((n0 + 2) as i64);
        n_max.push(
            truncation_index(&params, params.g / g_r, DEFAULT_TRUNCATION_THRESHOLD)? as i64,
        );
    }
    ResultTable::new(
        vec![
            Column {
                name: "g_r".into(),
                series: Series::Numeric(ratios.to_vec()),
            },
            Column {
                name: "n0_plus_2".into(),
                series: Series::Integer(n0_plus_2),
            },
            Column {
                name: "n_max".into(),
                series: Series::Integer(n_max),
            },
        ],
        Metadata::new(
            serde_json::json!({"model": params}),
            vec!["t = g / g_r".into()],
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::BathConfig;
    use crate::runner::{OutputFormat, SweepSpec};

    fn base_config() -> ExperimentConfig {
        ExperimentConfig {
            model: JCParams::resonant(0.02).unwrap(),
            bath: BathConfig::Individual {
                gamma_sigma: 1e-4,
                gamma_a: 1e-4,
                t_sigma: 2.0,
                t_a: 2.0,
            },
            truncation: 8,
            sweep: None,
            output: None,
        }
    }

    #[test]
    fn steady_table_shape_and_verdict() {
        let table = cmd_steady(&base_config()).unwrap();
        assert_eq!(table.n_rows(), 17);
        let names: Vec<&str> = table.columns.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["k", "n", "branch", "energy", "population"]);
        let note = &table.metadata.notes[0];
        let t_star: f64 = note
            .strip_prefix("verdict: thermalized t_star=")
            .expect("thermalized note")
            .parse()
            .unwrap();
        assert!((t_star - 2.0).abs() < 1e-6);
        let csv = table.render(OutputFormat::Csv);
        assert!(csv.contains("\n1,0,ground,-0.5,"));
    }

    #[test]
    fn steady_rejects_sweeps() {
        let mut config = base_config();
        config.sweep = Some(SweepSpec {
            parameter: "t_a".into(),
            start: 1.0,
            stop: 2.0,
            steps: 3,
        });
        assert!(matches!(cmd_steady(&config), Err(JcError::Config(_))));
        assert!(matches!(cmd_teff(&config), Err(JcError::Config(_))));
    }

    #[test]
    fn teff_long_format() {
        let table = cmd_teff(&base_config()).unwrap();
        let dim = 17;
        assert_eq!(table.n_rows(), dim * (dim - 1));
        match table.column("flag").unwrap() {
            Series::Text(flags) => assert!(flags.iter().all(|f| f == "valid")),
            _ => panic!("flag column should be text"),
        }
    }

    #[test]
    fn tracedist_needs_the_reference_sweep() {
        let mut config = base_config();
        assert!(matches!(cmd_tracedist(&config), Err(JcError::Config(_))));
        config.sweep = Some(SweepSpec {
            parameter: "t_ref".into(),
            start: 1.5,
            stop: 2.5,
            steps: 11,
        });
        let table = cmd_tracedist(&config).unwrap();
        assert_eq!(table.n_rows(), 11);
        // equal bath temperatures: the distance dips at t_ref = 2
        match (table.column("t_ref").unwrap(), table.column("d").unwrap()) {
            (Series::Numeric(t), Series::Numeric(d)) => {
                let (i, _) = d
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .unwrap();
                assert_eq!(t[i], 2.0);
            }
            _ => panic!("numeric columns expected"),
        }
    }

    #[test]
    fn negativity_rows_follow_the_grid() {
        let mut config = base_config();
        config.sweep = Some(SweepSpec {
            parameter: "g_r".into(),
            start: 1.0,
            stop: 2.0,
            steps: 3,
        });
        let table = cmd_negativity(&config, &[2.0, 11.0]).unwrap();
        assert_eq!(table.n_rows(), 6);
        match table.column("s").unwrap() {
            Series::Numeric(s) => assert_eq!(s, &[2.0, 2.0, 2.0, 11.0, 11.0, 11.0]),
            _ => panic!("s column should be numeric"),
        }
        match (table.column("n_analytic").unwrap(), table.column("n_numeric").unwrap()) {
            (Series::Numeric(a), Series::Numeric(b)) => {
                for (x, y) in a.iter().zip(b) {
                    assert!((x - y).abs() < 1e-10);
                }
            }
            _ => panic!("negativity columns should be numeric"),
        }
    }

    #[test]
    fn table1_matches_the_frozen_grid() {
        let table = cmd_table1().unwrap();
        assert_eq!(table.n_rows(), 9);
        match table.column("n0_plus_2").unwrap() {
            Series::Integer(v) => {
                assert_eq!(v, &[8731, 1467, 489, 216, 63, 24, 10, 4, 2]);
            }
            _ => panic!("n0_plus_2 should be integers"),
        }
    }
}
