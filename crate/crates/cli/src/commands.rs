use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use planewave_core::momentum::{hydrogen_momentum_distribution, MomentumDistribution};
use planewave_core::schrodinger::{analytic_hydrogen_ground_state, solve_hydrogen_radial};

use crate::config::{OutputKind, Problem, RunConfig};
use crate::error::{CliError, EXIT_CHECK_FAILED, EXIT_OK};
use crate::output::{amplitudes_csv, load_states, momdist_csv, states_csv, write_file};
use crate::run::{empty_set, evaluate, solve, StateRecord, StateSet, HARTREE_TO_EV};

/// Largest relative error of the computed hydrogen amplitude accepted for
/// `p <= MOMDIST_P_LIMIT`.
pub const MOMDIST_TOLERANCE: f64 = 1e-3;
pub const MOMDIST_ANALYTIC_TOLERANCE: f64 = 1e-6;
pub const MOMDIST_P_LIMIT: f64 = 5.0;

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub program: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub hartree_to_ev: f64,
    pub config: RunConfig,
    pub timings: BTreeMap<&'static str, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentumSummary {
    pub analytic_state: bool,
    pub max_rel_error: f64,
    pub p_limit: f64,
    pub tolerance: f64,
    pub normalization_check: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub metadata: Metadata,
    pub passed: bool,
    pub states: Vec<StateRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub momentum_distribution: Option<MomentumSummary>,
}

fn metadata(cfg: &RunConfig, command: &'static str, timings: BTreeMap<&'static str, f64>) -> Metadata {
    Metadata {
        program: "planewave-qm",
        version: env!("CARGO_PKG_VERSION"),
        command,
        hartree_to_ev: HARTREE_TO_EV,
        config: cfg.clone(),
        timings,
    }
}

fn summarize_momentum(dist: &MomentumDistribution, analytic: bool) -> MomentumSummary {
    let tolerance = if analytic {
        MOMDIST_ANALYTIC_TOLERANCE
    } else {
        MOMDIST_TOLERANCE
    };
    let max_rel_error = dist.max_relative_error(MOMDIST_P_LIMIT);
    MomentumSummary {
        analytic_state: analytic,
        max_rel_error,
        p_limit: MOMDIST_P_LIMIT,
        tolerance,
        normalization_check: dist.normalization_check,
        passed: max_rel_error < tolerance,
    }
}

fn print_states(records: &[StateRecord]) {
    println!(
        "{:>5} {:>22} {:>14} {:>12} {:>12} {:>6}",
        "state", "energy [hartree]", "energy [eV]", "relation", "pointwise", "check"
    );
    for r in records {
        println!(
            "{:>5} {:>22.12} {:>14.6} {:>12.3e} {:>12.3e} {:>6}",
            r.index,
            r.energy_hartree,
            r.energy_ev,
            r.relation_residual,
            r.pointwise_l2,
            if r.passed { "pass" } else { "FAIL" }
        );
    }
}

fn write_outputs(
    cfg: &RunConfig,
    set: &StateSet,
    report: &Report,
    dist: Option<&MomentumDistribution>,
) -> Result<(), CliError> {
    for kind in &cfg.outputs {
        let path = cfg.out_dir.join(kind.file_name());
        let contents = match kind {
            OutputKind::ReportJson => {
                let mut s = serde_json::to_string_pretty(report).expect("report serializes");
                s.push('\n');
                s
            }
            OutputKind::StatesCsv => states_csv(set),
            OutputKind::AmplitudesCsv => amplitudes_csv(set)?,
            OutputKind::MomdistCsv => match dist {
                Some(d) => momdist_csv(d),
                None => continue,
            },
        };
        write_file(&path, &contents)?;
        log::info!("wrote {}", path.display());
    }
    Ok(())
}

fn check_and_report(
    cfg: &RunConfig,
    command: &'static str,
    set: &StateSet,
    mut timings: BTreeMap<&'static str, f64>,
) -> Result<i32, CliError> {
    let t = Instant::now();
    let states = evaluate(set)?;
    let dist = match (cfg.problem, set) {
        (Problem::HydrogenRadial, StateSet::Scalar { states, .. }) if cfg.outputs.contains(&OutputKind::MomdistCsv) => {
            Some(hydrogen_momentum_distribution(&states[0])?)
        }
        _ => None,
    };
    timings.insert("verify_seconds", t.elapsed().as_secs_f64());
    let momentum_distribution = dist.as_ref().map(|d| summarize_momentum(d, false));
    let passed = states.iter().all(|s| s.passed) && momentum_distribution.as_ref().is_none_or(|m| m.passed);
    let report = Report {
        metadata: metadata(cfg, command, timings),
        passed,
        states,
        momentum_distribution,
    };
    print_states(&report.states);
    write_outputs(cfg, set, &report, dist.as_ref())?;
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<i32, CliError> {
    let t = Instant::now();
    let set = solve(cfg)?;
    let timings = BTreeMap::from([("solve_seconds", t.elapsed().as_secs_f64())]);
    check_and_report(cfg, "solve", &set, timings)
}

pub fn cmd_verify(cfg: &RunConfig, states: Option<&Path>) -> Result<i32, CliError> {
    let t = Instant::now();
    let set = match states {
        Some(path) => {
            let mut set = empty_set(cfg)?;
            load_states(path, &mut set)?;
            set
        }
        None => solve(cfg)?,
    };
    let timings = BTreeMap::from([("load_seconds", t.elapsed().as_secs_f64())]);
    check_and_report(cfg, "verify", &set, timings)
}

pub fn cmd_momdist(cfg: &RunConfig, analytic: bool) -> Result<i32, CliError> {
    if cfg.problem != Problem::HydrogenRadial {
        return Err(CliError::Config(format!(
            "problem: momdist requires hydrogen-radial, got `{}`",
            cfg.problem
        )));
    }
    let t = Instant::now();
    let (n, r_max) = (cfg.grid.n, cfg.grid.extent);
    let psi0 = if analytic {
        analytic_hydrogen_ground_state(n, r_max)
    } else {
        solve_hydrogen_radial(n, r_max, 1).map(|s| s.states()[0].clone())
    }
    .map_err(|e| CliError::Config(format!("grid: {e}")))?;
    let dist = hydrogen_momentum_distribution(&psi0)?;
    let summary = summarize_momentum(&dist, analytic);
    let elapsed = t.elapsed().as_secs_f64();

    let path = cfg.out_dir.join(OutputKind::MomdistCsv.file_name());
    write_file(&path, &momdist_csv(&dist))?;
    if cfg.outputs.contains(&OutputKind::ReportJson) {
        let report = Report {
            metadata: metadata(cfg, "momdist", BTreeMap::from([("momdist_seconds", elapsed)])),
            passed: summary.passed,
            states: Vec::new(),
            momentum_distribution: Some(summary.clone()),
        };
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        write_file(&cfg.out_dir.join(OutputKind::ReportJson.file_name()), &s)?;
    }
    Ok(finish_momdist(&summary, &path))
}

fn finish_momdist(summary: &MomentumSummary, path: &Path) -> i32 {
    println!(
        "max relative error (p <= {}): {:.3e} (tolerance {:.0e}), normalization {:.8}, {}",
        summary.p_limit,
        summary.max_rel_error,
        summary.tolerance,
        summary.normalization_check,
        if summary.passed { "pass" } else { "FAIL" }
    );
    println!("wrote {}", path.display());
    if summary.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
