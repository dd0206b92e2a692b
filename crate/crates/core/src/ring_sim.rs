//! Deterministic simulation of the distributed protocol: N agents on a
//! directed ring, each owning one reachability cone and a Dykstra
//! correction increment, passing a position-time estimate around and
//! periodically applying the zero-time-plane reset.

use crate::geometry::{project_plane, PlanePoint, SpaceTimePoint};
use crate::rendezvous::{RendezvousProblem, Vehicle};
use thiserror::Error;

/// What happens when an agent's activation count hits its reset period.
///
/// Measured on the 5-vehicle reference instance (synchronous periods 50),
/// the styles behave very differently; see the trade-offs on each variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResetStyle {
    /// Only the ring head (vehicle id 1) resets: it zeroes its own
    /// increment and projects its outgoing estimate onto the zero-time
    /// plane. Other agents' periods are inert. This is the one style that
    /// converges to the true optimum (sub-millimeter by ~6,000
    /// interactions on the reference instance), because the plane
    /// projection happens at exactly one seam per revolution and the other
    /// agents' increments keep their correction role.
    #[default]
    HeadOnly,
    /// Every agent, at its own period boundary, zeroes its increment and
    /// plane-projects its outgoing estimate. Reaches an exact spurious
    /// fixed point 27.75 m from the optimum on the reference instance and
    /// stays there; kept selectable so the stall is reproducible.
    EveryAgent,
    /// Every agent zeroes its increment and its outgoing time coordinate;
    /// agents other than the head also zero the position coordinates,
    /// collapsing the estimate to the origin. Stalls far from the optimum
    /// (93 m on the reference instance). Exposed on the CLI as
    /// `--paper-literal-reset` for comparison runs.
    OriginCollapse,
}

/// Reset scheduling across agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// All periods equal; resets align across the ring.
    Synchronous,
    /// Per-agent periods may differ.
    Asynchronous,
}

/// One agent's entire private state. An activation reads only this struct
/// and the incoming estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub vehicle: Vehicle,
    pub increment: SpaceTimePoint,
    pub activation_count: u64,
    pub bregman_period: u64,
    pub last_sent: SpaceTimePoint,
}

impl AgentState {
    pub fn new(vehicle: Vehicle, bregman_period: u64) -> Self {
        Self {
            vehicle,
            increment: SpaceTimePoint::ZERO,
            activation_count: 0,
            bregman_period,
            last_sent: vehicle.position.at_time(0.0),
        }
    }
}

/// The estimate in flight between two neighbors on the ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingMessage {
    pub estimate: SpaceTimePoint,
    /// Global interaction counter at send time (0 for the bootstrap
    /// message), for tracing.
    pub hop_index: u64,
}

/// What a single activation did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepEvent {
    ConeProjection,
    BregmanReset,
}

impl StepEvent {
    pub fn as_str(self) -> &'static str {
        match self {
            StepEvent::ConeProjection => "cone_projection",
            StepEvent::BregmanReset => "bregman_reset",
        }
    }
}

/// One activation's outcome: which agent ran, what it sent, its increment
/// after the step, and the planar error to the run's reference point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub interaction: u64,
    pub agent_id: u32,
    pub sent: SpaceTimePoint,
    pub increment: SpaceTimePoint,
    pub error_to_reference: f64,
    pub event: StepEvent,
}

/// Full per-activation history of a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// A complete simulation setup.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub problem: RendezvousProblem,
    /// One reset period per vehicle, in the vehicles' ring order.
    pub periods: Vec<u64>,
    pub max_interactions: u64,
    pub mode: Mode,
    /// Consensus gate: the spread of the final window must come in under
    /// this for a run to count as converged.
    pub tol_consensus: f64,
    pub reset_style: ResetStyle,
}

/// Why a scenario cannot run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("periods: expected one reset period per vehicle ({vehicles}), found {periods}")]
    PeriodCountMismatch { vehicles: usize, periods: usize },
    #[error("periods[{index}]: reset period must be >= 1")]
    ZeroPeriod { index: usize },
    #[error("mode: synchronous mode requires all reset periods equal")]
    SyncPeriodsUnequal,
    #[error("max_interactions: must be >= 1")]
    NoInteractions,
    #[error("tol_consensus: must be finite and > 0, got {value}")]
    BadConsensusTolerance { value: f64 },
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.periods.len() != self.problem.len() {
            return Err(ScenarioError::PeriodCountMismatch {
                vehicles: self.problem.len(),
                periods: self.periods.len(),
            });
        }
        if let Some(index) = self.periods.iter().position(|&p| p == 0) {
            return Err(ScenarioError::ZeroPeriod { index });
        }
        if self.mode == Mode::Synchronous && self.periods.windows(2).any(|w| w[0] != w[1]) {
            return Err(ScenarioError::SyncPeriodsUnequal);
        }
        if self.max_interactions == 0 {
            return Err(ScenarioError::NoInteractions);
        }
        if !(self.tol_consensus.is_finite() && self.tol_consensus > 0.0) {
            return Err(ScenarioError::BadConsensusTolerance { value: self.tol_consensus });
        }
        Ok(())
    }
}

/// One activation: subtract the stored increment from the incoming
/// estimate, project onto the agent's own cone, store the new increment,
/// then apply the reset rule if this activation hits the agent's period.
/// Returns what the agent sends on, and whether this step reset.
///
/// Reads nothing but `state` and `incoming`, so any record of a run can be
/// replayed from its inputs alone.
pub fn agent_step(
    state: &mut AgentState,
    incoming: SpaceTimePoint,
    style: ResetStyle,
) -> (SpaceTimePoint, StepEvent) {
    let y = incoming - state.increment;
    let mut out = state.vehicle.cone().project(y);
    state.increment = out - y;
    state.activation_count += 1;

    let due = state.activation_count % state.bregman_period == 0;
    let resets = match style {
        ResetStyle::HeadOnly => due && state.vehicle.id == 1,
        ResetStyle::EveryAgent | ResetStyle::OriginCollapse => due,
    };
    let event = if resets {
        state.increment = SpaceTimePoint::ZERO;
        out = match style {
            ResetStyle::HeadOnly | ResetStyle::EveryAgent => project_plane(out),
            ResetStyle::OriginCollapse => {
                if state.vehicle.id == 1 {
                    project_plane(out)
                } else {
                    SpaceTimePoint::ZERO
                }
            }
        };
        StepEvent::BregmanReset
    } else {
        StepEvent::ConeProjection
    };
    state.last_sent = out;
    (out, event)
}

/// Runs the ring to completion: agents activate strictly in ring order
/// starting from agent 1, which is bootstrapped with agent N's initial
/// estimate (its own start position at time zero). One trace record per
/// activation; no randomness anywhere, so identical configs produce
/// identical traces. `reference` is only used for the per-record error
/// column.
pub fn run_ring(config: &ScenarioConfig, reference: PlanePoint) -> Result<Trace, ScenarioError> {
    config.validate()?;
    let vehicles = config.problem.vehicles();
    let n = vehicles.len();
    let mut agents: Vec<AgentState> = vehicles
        .iter()
        .zip(&config.periods)
        .map(|(v, &p)| AgentState::new(*v, p))
        .collect();

    let mut msg = RingMessage { estimate: agents[n - 1].last_sent, hop_index: 0 };
    let mut records = Vec::with_capacity(config.max_interactions as usize);
    for interaction in 1..=config.max_interactions {
        let i = ((interaction - 1) % n as u64) as usize;
        let (sent, event) = agent_step(&mut agents[i], msg.estimate, config.reset_style);
        records.push(TraceRecord {
            interaction,
            agent_id: agents[i].vehicle.id,
            sent,
            increment: agents[i].increment,
            error_to_reference: sent.plane().distance_to(reference),
            event,
        });
        msg = RingMessage { estimate: sent, hop_index: interaction };
    }
    Ok(Trace { records })
}

/// The agreement extracted from the end of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsensusEstimate {
    pub point: PlanePoint,
    /// Mean time coordinate of the cone-projection outputs immediately
    /// preceding the counted resets: the protocol's own estimate of the
    /// minimum rendezvous time.
    pub time: f64,
    /// Largest pairwise planar distance among the counted records.
    pub spread: f64,
}

/// Averages the planar components of the last `window` reset records.
/// When a run produced fewer resets than `window`, all of them count; a
/// run with no resets at all falls back to its last `window` records.
pub fn consensus_estimate(trace: &Trace, window: usize) -> ConsensusEstimate {
    assert!(window >= 1, "window must be >= 1");
    assert!(!trace.is_empty(), "trace must be nonempty");
    let reset_indices: Vec<usize> = trace
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.event == StepEvent::BregmanReset)
        .map(|(i, _)| i)
        .collect();
    let selected: Vec<usize> = if reset_indices.is_empty() {
        let start = trace.len().saturating_sub(window);
        (start..trace.len()).collect()
    } else {
        let start = reset_indices.len().saturating_sub(window);
        reset_indices[start..].to_vec()
    };

    let k = selected.len() as f64;
    let point = PlanePoint::new(
        selected.iter().map(|&i| trace.records[i].sent.x).sum::<f64>() / k,
        selected.iter().map(|&i| trace.records[i].sent.y).sum::<f64>() / k,
    );
    let mut spread = 0.0_f64;
    for (a, &i) in selected.iter().enumerate() {
        for &j in &selected[a + 1..] {
            spread = spread.max(
                trace.records[i].sent.plane().distance_to(trace.records[j].sent.plane()),
            );
        }
    }
    let mut times = Vec::with_capacity(selected.len());
    for &i in &selected {
        if let Some(prev) = trace.records[..i]
            .iter()
            .rev()
            .find(|r| r.event == StepEvent::ConeProjection)
        {
            times.push(prev.sent.t);
        }
    }
    let time = if times.is_empty() {
        0.0
    } else {
        times.iter().sum::<f64>() / times.len() as f64
    };
    ConsensusEstimate { point, time, spread }
}

/// Planar distance from each record's sent estimate to `reference`,
/// recomputed so any reference can be used after the fact.
pub fn error_series(trace: &Trace, reference: PlanePoint) -> Vec<(u64, f64)> {
    trace
        .records
        .iter()
        .map(|r| (r.interaction, r.sent.plane().distance_to(reference)))
        .collect()
}
