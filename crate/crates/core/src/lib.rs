//! Minimum-time planar rendezvous for speed-limited vehicles.
//!
//! Each vehicle's reachable positions form a second-order cone in
//! position-time space (apex at its start, slope set by its top speed).
//! The point minimizing the worst arrival time is where the intersection
//! of those cones comes closest to the zero-time plane. This crate finds
//! it three independent ways:
//!
//! * [`projections`] — generic alternating-projection engines (Dykstra's
//!   increments for the intersection, two-set alternation for the plane
//!   vs. intersection distance) composed into a centralized solver;
//! * [`ring_sim`] — a deterministic simulation of the same scheme run as
//!   a message-passing protocol on a directed ring of agents;
//! * [`rendezvous`] — a brute-force min-max oracle used as ground truth
//!   for both.

pub mod geometry;
pub mod projections;
pub mod rendezvous;
pub mod ring_sim;

pub use geometry::{project_plane, ConeCaseSplit, PlanePoint, ReachabilityCone, SpaceTimePoint};
pub use projections::{
    bregman_alternate, centralized_min_time, centralized_min_time_with, dykstra_cycle,
    dykstra_project, AlternationResult, Ball, CentralizedSolution, DykstraIntersection,
    DykstraOutcome, DykstraState, HalfSpace, Projector, SplitCone, ZeroTimePlane,
    DEFAULT_BREGMAN_STEPS, DEFAULT_DYKSTRA_CYCLES, DEFAULT_TOL,
};
pub use rendezvous::{
    active_vehicles, objective, oracle_solve, two_vehicle_optimum, OracleSolution, ProblemError,
    RendezvousProblem, Vehicle, DEFAULT_ORACLE_TOL,
};
pub use ring_sim::{
    agent_step, consensus_estimate, error_series, run_ring, AgentState, ConsensusEstimate, Mode,
    ResetStyle, RingMessage, ScenarioConfig, ScenarioError, StepEvent, Trace, TraceRecord,
};
