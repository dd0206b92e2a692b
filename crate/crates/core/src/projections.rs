//! Alternating-projection engines: Dykstra's algorithm with per-set
//! correction increments, two-set alternation, and the centralized
//! minimum-time solver composed from the two.

use crate::geometry::{project_plane, ConeCaseSplit, PlanePoint, ReachabilityCone, SpaceTimePoint};
use crate::rendezvous::RendezvousProblem;

/// Default inner Dykstra budget per alternation step.
pub const DEFAULT_DYKSTRA_CYCLES: usize = 100;
/// Default alternation step cap.
pub const DEFAULT_BREGMAN_STEPS: usize = 200;
/// Default convergence tolerance, meters (mixed-unit norm).
pub const DEFAULT_TOL: f64 = 1e-6;

/// A closed convex set represented solely by its metric projection.
///
/// Implementations must be idempotent, non-expansive, and stateless; the
/// engines below never inspect set internals.
pub trait Projector {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint;
}

/// The zero-time plane `{t = 0}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroTimePlane;

impl Projector for ZeroTimePlane {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        project_plane(q)
    }
}

/// The half-space `{q : normal . q >= offset}`.
#[derive(Debug, Clone, Copy)]
pub struct HalfSpace {
    pub normal: SpaceTimePoint,
    pub offset: f64,
}

impl HalfSpace {
    pub fn new(normal: SpaceTimePoint, offset: f64) -> Self {
        let n2 = normal.norm();
        assert!(n2.is_finite() && n2 > 0.0, "half-space normal must be nonzero");
        Self { normal, offset }
    }
}

impl Projector for HalfSpace {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        let n = self.normal;
        let dot = n.x * q.x + n.y * q.y + n.t * q.t;
        if dot >= self.offset {
            return q;
        }
        let shift = (self.offset - dot) / (n.x * n.x + n.y * n.y + n.t * n.t);
        SpaceTimePoint::new(q.x + shift * n.x, q.y + shift * n.y, q.t + shift * n.t)
    }
}

/// The closed ball of radius `radius` around `center`.
#[derive(Debug, Clone, Copy)]
pub struct Ball {
    pub center: SpaceTimePoint,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: SpaceTimePoint, radius: f64) -> Self {
        assert!(radius.is_finite() && radius > 0.0, "ball radius must be > 0");
        Self { center, radius }
    }
}

impl Projector for Ball {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        let d = q.distance_to(self.center);
        if d <= self.radius {
            return q;
        }
        let k = self.radius / d;
        SpaceTimePoint::new(
            self.center.x + (q.x - self.center.x) * k,
            self.center.y + (q.y - self.center.y) * k,
            self.center.t + (q.t - self.center.t) * k,
        )
    }
}

impl Projector for ReachabilityCone {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        ReachabilityCone::project(*self, q)
    }
}

/// A reachability cone projected under an explicit apex-case split,
/// for comparison runs against the corrected split.
#[derive(Debug, Clone, Copy)]
pub struct SplitCone {
    pub cone: ReachabilityCone,
    pub split: ConeCaseSplit,
}

impl Projector for SplitCone {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        self.cone.project_with(self.split, q)
    }
}

/// State threaded through Dykstra cycles: the running point, one correction
/// increment per set (all zero at initialization), and the cycle counter.
#[derive(Debug, Clone)]
pub struct DykstraState {
    pub current: SpaceTimePoint,
    pub increments: Vec<SpaceTimePoint>,
    pub cycle_count: u64,
}

impl DykstraState {
    pub fn new(start: SpaceTimePoint, set_count: usize) -> Self {
        Self {
            current: start,
            increments: vec![SpaceTimePoint::ZERO; set_count],
            cycle_count: 0,
        }
    }
}

/// One full Dykstra pass over `sets`, in order: for each set i,
/// `y = current - increments[i]`, `current = P_i(y)`,
/// `increments[i] = current - y`. Increments the cycle counter.
pub fn dykstra_cycle(state: &mut DykstraState, sets: &[&dyn Projector]) {
    assert_eq!(
        state.increments.len(),
        sets.len(),
        "increment list must match set count"
    );
    for (i, set) in sets.iter().enumerate() {
        let y = state.current - state.increments[i];
        let x = set.project(y);
        state.increments[i] = x - y;
        state.current = x;
    }
    state.cycle_count += 1;
}

/// Result of [`dykstra_project`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DykstraOutcome {
    pub point: SpaceTimePoint,
    pub cycles_used: u64,
    pub converged: bool,
}

/// Projects `start` onto the intersection of `sets` by repeating
/// [`dykstra_cycle`] until the point moves less than `tol` over a full
/// cycle or `max_cycles` is reached. With `tol = 0` the displacement test
/// never fires and exactly `max_cycles` cycles run.
///
/// Non-convergence is reported through `converged`, not an error, so
/// callers with fixed budgets can decide for themselves.
pub fn dykstra_project(
    sets: &[&dyn Projector],
    start: SpaceTimePoint,
    max_cycles: usize,
    tol: f64,
) -> DykstraOutcome {
    assert!(!sets.is_empty(), "need at least one set");
    let mut state = DykstraState::new(start, sets.len());
    let mut converged = false;
    for _ in 0..max_cycles {
        let before = state.current;
        dykstra_cycle(&mut state, sets);
        if (state.current - before).norm() < tol {
            converged = true;
            break;
        }
    }
    DykstraOutcome {
        point: state.current,
        cycles_used: state.cycle_count,
        converged,
    }
}

/// Limits of the two-set alternation `a_n = P_A(b_{n-1})`, `b_n = P_B(a_n)`.
///
/// For intersecting sets the two points coincide; for disjoint sets they
/// realize the distance between the sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternationResult {
    pub point_a: SpaceTimePoint,
    pub point_b: SpaceTimePoint,
    /// `||point_a - point_b||` in the mixed-unit norm.
    pub distance: f64,
    pub iterations_used: u64,
    pub converged: bool,
}

/// Alternates projections between `proj_a` and `proj_b` starting from
/// `a_1 = P_A(start)`, stopping when `||a_n - a_{n-1}|| < tol` or after
/// `max_iter` iterations (reported via `converged`).
pub fn bregman_alternate(
    proj_a: &dyn Projector,
    proj_b: &dyn Projector,
    start: SpaceTimePoint,
    max_iter: usize,
    tol: f64,
) -> AlternationResult {
    assert!(max_iter >= 1, "need at least one iteration");
    let mut a = proj_a.project(start);
    let mut b = proj_b.project(a);
    let mut iterations_used = 1u64;
    let mut converged = false;
    for n in 2..=max_iter as u64 {
        let a_next = proj_a.project(b);
        let b_next = proj_b.project(a_next);
        let moved = (a_next - a).norm();
        a = a_next;
        b = b_next;
        iterations_used = n;
        if moved < tol {
            converged = true;
            break;
        }
    }
    AlternationResult {
        point_a: a,
        point_b: b,
        distance: (a - b).norm(),
        iterations_used,
        converged,
    }
}

/// The intersection of a family of sets, realized as a projector by running
/// a fixed-budget Dykstra pass from scratch on every call (increments are
/// not carried between calls).
pub struct DykstraIntersection {
    pub sets: Vec<Box<dyn Projector>>,
    pub cycles: usize,
}

impl Projector for DykstraIntersection {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        let refs: Vec<&dyn Projector> = self.sets.iter().map(|s| s.as_ref()).collect();
        dykstra_project(&refs, q, self.cycles, 0.0).point
    }
}

/// Result of the centralized minimum-time solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralizedSolution {
    pub point: PlanePoint,
    /// The limit distance between the zero-time plane and the cone
    /// intersection, i.e. the minimum rendezvous time in seconds.
    pub time: f64,
    pub iterations_used: u64,
    pub converged: bool,
}

/// Centralized solver: alternates between the zero-time plane and the
/// intersection of all reachability cones (the latter realized by a
/// fixed-budget Dykstra projection per step). Starts from the centroid of
/// the vehicle positions at `t = 0`.
pub fn centralized_min_time(
    problem: &RendezvousProblem,
    dykstra_cycles_per_step: usize,
    max_bregman_steps: usize,
    tol: f64,
) -> CentralizedSolution {
    centralized_min_time_with(
        problem,
        dykstra_cycles_per_step,
        max_bregman_steps,
        tol,
        ConeCaseSplit::PolarApex,
    )
}

/// [`centralized_min_time`] with an explicit cone case split, so the
/// mirrored-apex variant can be compared end to end.
pub fn centralized_min_time_with(
    problem: &RendezvousProblem,
    dykstra_cycles_per_step: usize,
    max_bregman_steps: usize,
    tol: f64,
    split: ConeCaseSplit,
) -> CentralizedSolution {
    let vehicles = problem.vehicles();
    let intersection = DykstraIntersection {
        sets: vehicles
            .iter()
            .map(|v| Box::new(SplitCone { cone: v.cone(), split }) as Box<dyn Projector>)
            .collect(),
        cycles: dykstra_cycles_per_step,
    };
    let n = vehicles.len() as f64;
    let start = SpaceTimePoint::new(
        vehicles.iter().map(|v| v.position.x).sum::<f64>() / n,
        vehicles.iter().map(|v| v.position.y).sum::<f64>() / n,
        0.0,
    );
    let result = bregman_alternate(&ZeroTimePlane, &intersection, start, max_bregman_steps, tol);
    CentralizedSolution {
        point: result.point_a.plane(),
        time: result.distance,
        iterations_used: result.iterations_used,
        converged: result.converged,
    }
}
