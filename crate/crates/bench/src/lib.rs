//! Shared fixtures for the benchmark targets. The crate exists only to
//! host `benches/`; it re-exports the instance the benchmarks measure so
//! the numbers stay comparable across runs.

use rdv_core::{RendezvousProblem, Vehicle};

/// The five-vehicle instance used throughout the test suites, so benchmark
/// numbers line up with the scenarios shipped in `scenarios/`.
pub fn reference_instance() -> RendezvousProblem {
    RendezvousProblem::new(vec![
        Vehicle::new(1, 0.0, 0.0, 5.0),
        Vehicle::new(2, 100.0, 20.0, 7.0),
        Vehicle::new(3, 150.0, 200.0, 10.0),
        Vehicle::new(4, 50.0, 50.0, 6.0),
        Vehicle::new(5, 20.0, 170.0, 4.0),
    ])
    .expect("reference instance is valid")
}
