//! The `rdv` binary: argument parsing, command dispatch, exit codes.
//!
//! Exit codes are part of the contract:
//! * `0` success, and (for solver/simulator runs) the run converged;
//! * `2` the input failed validation, with a message naming the offending
//!   field and the violated assumption;
//! * `3` the run completed but did not converge. A simulation still writes
//!   its trace file before reporting this.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rdv_core::{
    centralized_min_time_with, consensus_estimate, oracle_solve, run_ring, ConeCaseSplit,
    ResetStyle, DEFAULT_BREGMAN_STEPS, DEFAULT_DYKSTRA_CYCLES, DEFAULT_ORACLE_TOL, DEFAULT_TOL,
};
use thiserror::Error;

use crate::report::{AlgorithmOutcome, RunReport};
use crate::scenario::{resolve_path, ScenarioFile, ScenarioFileError};
use crate::trace_csv::render_trace;

#[derive(Debug, Parser)]
#[command(
    name = "rdv",
    version,
    about = "Minimum-time rendezvous for planar vehicles: brute-force oracle, \
             centralized projection solver, and a ring-protocol simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brute-force the optimum and audit any optimum the scenario declares
    Oracle {
        /// Scenario file (JSON); relative names also resolve under $RDV_SCENARIO_DIR
        scenario: String,
        /// Positioning tolerance of the search, in meters
        #[arg(long, default_value_t = DEFAULT_ORACLE_TOL)]
        tol: f64,
    },
    /// Solve with alternating projections and compare against the oracle
    Solve {
        scenario: String,
        /// Inner projection cycles spent on the cone intersection per step
        #[arg(long, default_value_t = DEFAULT_DYKSTRA_CYCLES)]
        dykstra_cycles: usize,
        /// Outer alternation step budget
        #[arg(long, default_value_t = DEFAULT_BREGMAN_STEPS)]
        max_steps: usize,
        /// Stop once an outer step moves less than this, in meters
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Use the mirrored-apex cone case split instead of the corrected polar test
        #[arg(long)]
        paper_case_split: bool,
    },
    /// Run the ring protocol and export the per-activation trace as CSV
    Simulate {
        scenario: String,
        /// Where to write the trace CSV
        #[arg(long, default_value = "trace.csv")]
        output: PathBuf,
        /// Which point the trace's error column measures distance to
        #[arg(long, value_enum, default_value_t = Reference::Oracle)]
        reference: Reference,
        /// Collapse every non-head reset to the space-time origin
        #[arg(long)]
        paper_literal_reset: bool,
        /// How many trailing reset records form the consensus estimate
        #[arg(long, default_value_t = 5)]
        window: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    /// Distance to the point the brute-force oracle finds
    Oracle,
    /// Distance to the optimum declared in the scenario file
    Declared,
}

/// Why a command could not produce a report. Every variant is an input
/// problem, so the binary maps all of them to exit code 2.
#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Scenario(#[from] ScenarioFileError),
    #[error("--window: must be >= 1")]
    ZeroWindow,
    #[error("declared_optimum: --reference declared requires the scenario to declare an optimum")]
    MissingDeclared,
    #[error("cannot write trace to {path}: {message}")]
    Output { path: String, message: String },
}

fn load_scenario(path: &str) -> Result<ScenarioFile, CommandError> {
    Ok(ScenarioFile::load(&resolve_path(path))?)
}

fn base_report(file: &ScenarioFile, oracle_tol: f64) -> Result<RunReport, CommandError> {
    let problem = file.to_problem()?;
    let oracle = oracle_solve(&problem, oracle_tol);
    let mut report = RunReport::new(&problem, oracle);
    if let Some(d) = file.declared_optimum {
        report = report.with_declared(&problem, d);
    }
    Ok(report)
}

pub fn cmd_oracle(path: &str, tol: f64) -> Result<RunReport, CommandError> {
    let file = load_scenario(path)?;
    base_report(&file, tol)
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub dykstra_cycles: usize,
    pub max_steps: usize,
    pub tol: f64,
    pub mirrored_case_split: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            dykstra_cycles: DEFAULT_DYKSTRA_CYCLES,
            max_steps: DEFAULT_BREGMAN_STEPS,
            tol: DEFAULT_TOL,
            mirrored_case_split: false,
        }
    }
}

pub fn cmd_solve(path: &str, opts: SolveOptions) -> Result<RunReport, CommandError> {
    let file = load_scenario(path)?;
    let problem = file.to_problem()?;
    let split = if opts.mirrored_case_split {
        ConeCaseSplit::MirroredApex
    } else {
        ConeCaseSplit::PolarApex
    };
    let solution = centralized_min_time_with(
        &problem,
        opts.dykstra_cycles,
        opts.max_steps,
        opts.tol,
        split,
    );
    let mut report = base_report(&file, DEFAULT_ORACLE_TOL)?.with_algorithm(AlgorithmOutcome {
        label: "centralized solver".into(),
        point: solution.point,
        time: solution.time,
        converged: solution.converged,
        iterations: Some(solution.iterations_used),
        interactions: None,
        spread: None,
    });
    if opts.mirrored_case_split {
        report.push_note("cone case split: mirrored apex (--paper-case-split)");
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub output: PathBuf,
    pub reference: Reference,
    pub literal_reset: bool,
    pub window: usize,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        SimulateOptions {
            output: PathBuf::from("trace.csv"),
            reference: Reference::Oracle,
            literal_reset: false,
            window: 5,
        }
    }
}

pub fn cmd_simulate(path: &str, opts: SimulateOptions) -> Result<RunReport, CommandError> {
    if opts.window == 0 {
        return Err(CommandError::ZeroWindow);
    }
    let file = load_scenario(path)?;
    let style = if opts.literal_reset {
        ResetStyle::OriginCollapse
    } else {
        ResetStyle::HeadOnly
    };
    let config = file.to_config(style)?;
    let oracle = oracle_solve(&config.problem, DEFAULT_ORACLE_TOL);
    let reference_point = match opts.reference {
        Reference::Oracle => oracle.point,
        Reference::Declared => match file.declared_optimum {
            Some(d) => d.point(),
            None => return Err(CommandError::MissingDeclared),
        },
    };

    let trace = run_ring(&config, reference_point)
        .map_err(|e| CommandError::Scenario(ScenarioFileError::Invalid(e.to_string())))?;

    // The trace goes to disk before convergence is judged, so a stalled run
    // still leaves its evidence behind.
    std::fs::write(&opts.output, render_trace(&trace)).map_err(|e| CommandError::Output {
        path: opts.output.display().to_string(),
        message: e.to_string(),
    })?;

    let est = consensus_estimate(&trace, opts.window);
    let mut report = RunReport::new(&config.problem, oracle);
    if let Some(d) = file.declared_optimum {
        report = report.with_declared(&config.problem, d);
    }
    let mut report = report.with_algorithm(AlgorithmOutcome {
        label: "ring simulation".into(),
        point: est.point,
        time: est.time,
        converged: est.spread <= config.tol_consensus,
        iterations: None,
        interactions: Some(trace.records.len() as u64),
        spread: Some(est.spread),
    });
    report.push_note(match style {
        ResetStyle::OriginCollapse => "reset style: origin collapse (--paper-literal-reset)",
        _ => "reset style: head only",
    });
    report.push_note(match opts.reference {
        Reference::Oracle => "trace error column: distance to the oracle point",
        Reference::Declared => "trace error column: distance to the declared point",
    });
    report.push_note(format!(
        "trace written: {} ({} records)",
        opts.output.display(),
        trace.records.len()
    ));
    Ok(report)
}

fn dispatch(cli: Cli) -> Result<RunReport, CommandError> {
    match cli.command {
        Command::Oracle { scenario, tol } => cmd_oracle(&scenario, tol),
        Command::Solve {
            scenario,
            dykstra_cycles,
            max_steps,
            tol,
            paper_case_split,
        } => cmd_solve(
            &scenario,
            SolveOptions {
                dykstra_cycles,
                max_steps,
                tol,
                mirrored_case_split: paper_case_split,
            },
        ),
        Command::Simulate {
            scenario,
            output,
            reference,
            paper_literal_reset,
            window,
        } => cmd_simulate(
            &scenario,
            SimulateOptions {
                output,
                reference,
                literal_reset: paper_literal_reset,
                window,
            },
        ),
    }
}

/// Parse arguments, run, print the report, return the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(report) => {
            print!("{}", report.render());
            if report.converged() {
                0
            } else {
                eprintln!("error: run did not converge; see the report above");
                3
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
