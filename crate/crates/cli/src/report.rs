//! Human-readable run reports.
//!
//! Every command ends by printing one of these. The line formats are
//! stable on purpose: numbers always carry a unit, key quantities live on
//! their own `label: value` line, and comparisons print as explicit
//! deltas, so both a human and a grep can read a run's outcome.

use rdv_core::{active_vehicles, objective, OracleSolution, PlanePoint, RendezvousProblem, Vehicle};

use crate::scenario::DeclaredOptimum;

/// A claimed optimum whose own objective value disagrees with the claimed
/// time by more than this is flagged in the report.
pub const DECLARED_INCONSISTENCY_TOL_S: f64 = 0.05;

/// Tolerance for listing a vehicle as binding at the oracle point.
const ACTIVE_TOL_S: f64 = 1e-6;

/// What a solver or simulation produced, normalized for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmOutcome {
    /// Short name of the producer, e.g. "centralized solver".
    pub label: String,
    pub point: PlanePoint,
    pub time: f64,
    pub converged: bool,
    /// Bregman steps for the centralized solver.
    pub iterations: Option<u64>,
    /// Interaction count for ring runs.
    pub interactions: Option<u64>,
    /// Consensus spread for ring runs, in meters.
    pub spread: Option<f64>,
}

/// Everything a command learned about one instance, ready to render.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    vehicles: Vec<Vehicle>,
    oracle: OracleSolution,
    active: Vec<u32>,
    declared: Option<(DeclaredOptimum, f64)>,
    algorithm: Option<AlgorithmOutcome>,
    notes: Vec<String>,
}

fn fmt_point(p: PlanePoint) -> String {
    format!("({:.6} m, {:.6} m)", p.x, p.y)
}

impl RunReport {
    pub fn new(problem: &RendezvousProblem, oracle: OracleSolution) -> Self {
        let active = active_vehicles(problem, oracle.point, oracle.time, ACTIVE_TOL_S);
        RunReport {
            vehicles: problem.vehicles().to_vec(),
            oracle,
            active,
            declared: None,
            algorithm: None,
            notes: Vec::new(),
        }
    }

    pub fn with_declared(mut self, problem: &RendezvousProblem, declared: DeclaredOptimum) -> Self {
        let value = objective(problem, declared.point());
        self.declared = Some((declared, value));
        self
    }

    pub fn with_algorithm(mut self, outcome: AlgorithmOutcome) -> Self {
        self.algorithm = Some(outcome);
        self
    }

    pub fn push_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn oracle(&self) -> &OracleSolution {
        &self.oracle
    }

    pub fn algorithm(&self) -> Option<&AlgorithmOutcome> {
        self.algorithm.as_ref()
    }

    /// A report only counts as converged when its algorithm (if any) did.
    pub fn converged(&self) -> bool {
        self.algorithm.as_ref().map_or(true, |a| a.converged)
    }

    /// Whether the declared optimum fails its own consistency check.
    pub fn declared_inconsistent(&self) -> bool {
        self.declared
            .as_ref()
            .map_or(false, |(d, value)| (value - d.time).abs() > DECLARED_INCONSISTENCY_TOL_S)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };

        line(format!("instance: {} vehicles", self.vehicles.len()));
        for v in &self.vehicles {
            line(format!(
                "  vehicle {}: start ({:.6} m, {:.6} m), speed {:.6} m/s",
                v.id, v.position.x, v.position.y, v.speed
            ));
        }

        line(format!("oracle point: {}", fmt_point(self.oracle.point)));
        line(format!("oracle time: {:.6} s", self.oracle.time));
        let ids: Vec<String> = self.active.iter().map(|id| id.to_string()).collect();
        line(format!("active vehicles at the oracle point: {}", ids.join(", ")));

        if let Some((d, value)) = &self.declared {
            line(format!("declared point: {}", fmt_point(d.point())));
            line(format!("declared time: {:.6} s", d.time));
            line(format!("objective at declared point: {:.6} s", *value));
            line(format!(
                "declared vs oracle: {:.6} m, {:.6} s",
                d.point().distance_to(self.oracle.point),
                (d.time - self.oracle.time).abs()
            ));
            if self.declared_inconsistent() {
                line(format!(
                    "WARNING: declared optimum is inconsistent: the slowest vehicle needs {:.6} s at the declared point, not the claimed {:.6} s",
                    *value, d.time
                ));
            }
        }

        if let Some(a) = &self.algorithm {
            line(format!("algorithm: {}", a.label));
            line(format!("algorithm point: {}", fmt_point(a.point)));
            line(format!("algorithm time: {:.6} s", a.time));
            line(format!(
                "algorithm vs oracle: {:.6} m, {:.6} s",
                a.point.distance_to(self.oracle.point),
                (a.time - self.oracle.time).abs()
            ));
            if let Some(iters) = a.iterations {
                line(format!("iterations used: {iters}"));
            }
            if let Some(n) = a.interactions {
                line(format!("interactions used: {n}"));
            }
            if let Some(s) = a.spread {
                line(format!("consensus spread: {:.6} m", s));
            }
            line(format!("converged: {}", if a.converged { "yes" } else { "no" }));
        }

        line("travel times:".to_string());
        for v in &self.vehicles {
            let mut row = format!("  vehicle {}: {:.6} s at oracle", v.id, v.time_to(self.oracle.point));
            if let Some((d, _)) = &self.declared {
                row.push_str(&format!(", {:.6} s at declared", v.time_to(d.point())));
            }
            if let Some(a) = &self.algorithm {
                row.push_str(&format!(", {:.6} s at algorithm", v.time_to(a.point)));
            }
            line(row);
        }

        for n in &self.notes {
            line(format!("note: {n}"));
        }
        out
    }
}
