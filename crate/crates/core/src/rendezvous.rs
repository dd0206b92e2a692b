//! The min-max rendezvous model: worst-arrival-time objective, the
//! two-vehicle closed form, and a brute-force oracle that independently
//! validates every other solver in the crate.

use crate::geometry::{PlanePoint, ReachabilityCone};
use thiserror::Error;

/// Default oracle tolerance, meters.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-4;

/// One vehicle: ring position (ids are consecutive from 1), start point,
/// and fixed top speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vehicle {
    pub id: u32,
    pub position: PlanePoint,
    pub speed: f64,
}

impl Vehicle {
    pub const fn new(id: u32, x: f64, y: f64, speed: f64) -> Self {
        Self { id, position: PlanePoint::new(x, y), speed }
    }

    /// The vehicle's reachable set in position-time space.
    pub fn cone(&self) -> ReachabilityCone {
        ReachabilityCone::new(self.position, self.speed)
    }

    /// Travel time from the start position to `p` at top speed.
    pub fn time_to(&self, p: PlanePoint) -> f64 {
        self.cone().min_time_to(p)
    }
}

/// Why a vehicle set cannot form a valid problem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("vehicles: problem requires at least 2 vehicles, found {found}")]
    TooFewVehicles { found: usize },
    #[error(
        "vehicles[{index}].id: expected {expected} (ids must be consecutive from 1 around \
         the directed ring, Assumption 3), found {found}"
    )]
    NonConsecutiveIds { index: usize, expected: u32, found: u32 },
    #[error("vehicles[id {id}].position: coordinates must be finite")]
    NonFinitePosition { id: u32 },
    #[error(
        "vehicles[id {id}].speed: must be finite and > 0 \
         (Assumption 1: every vehicle moves at a fixed positive speed), got {speed}"
    )]
    InvalidSpeed { id: u32, speed: f64 },
    #[error(
        "vehicles id {id_a} and id {id_b} share a start position \
         (Assumption 1: vehicles cannot start from the same position)"
    )]
    DuplicatePosition { id_a: u32, id_b: u32 },
}

/// A validated vehicle set. Construction is the only place invariants are
/// checked, so every operation downstream is total.
#[derive(Debug, Clone, PartialEq)]
pub struct RendezvousProblem {
    vehicles: Vec<Vehicle>,
}

impl RendezvousProblem {
    pub fn new(vehicles: Vec<Vehicle>) -> Result<Self, ProblemError> {
        if vehicles.len() < 2 {
            return Err(ProblemError::TooFewVehicles { found: vehicles.len() });
        }
        for (index, v) in vehicles.iter().enumerate() {
            let expected = index as u32 + 1;
            if v.id != expected {
                return Err(ProblemError::NonConsecutiveIds { index, expected, found: v.id });
            }
            if !(v.position.x.is_finite() && v.position.y.is_finite()) {
                return Err(ProblemError::NonFinitePosition { id: v.id });
            }
            if !(v.speed.is_finite() && v.speed > 0.0) {
                return Err(ProblemError::InvalidSpeed { id: v.id, speed: v.speed });
            }
        }
        for i in 0..vehicles.len() {
            for j in i + 1..vehicles.len() {
                if vehicles[i].position == vehicles[j].position {
                    return Err(ProblemError::DuplicatePosition {
                        id_a: vehicles[i].id,
                        id_b: vehicles[j].id,
                    });
                }
            }
        }
        Ok(Self { vehicles })
    }

    pub fn vehicles(&self) -> &[Vehicle] {
        &self.vehicles
    }

    pub fn len(&self) -> usize {
        self.vehicles.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least 2 vehicles
    }
}

/// Worst arrival time over all vehicles if everyone drives straight to `p`.
/// Convex in `p` (a max of scaled distances).
pub fn objective(problem: &RendezvousProblem, p: PlanePoint) -> f64 {
    problem
        .vehicles
        .iter()
        .map(|v| v.time_to(p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Exact optimum for two vehicles: the point on the segment between them
/// that equalizes the travel times, reached in `||p2 - p1|| / (v1 + v2)`
/// seconds.
pub fn two_vehicle_optimum(a: &Vehicle, b: &Vehicle) -> (PlanePoint, f64) {
    let w = a.speed + b.speed;
    let point = PlanePoint::new(
        (a.speed * b.position.x + b.speed * a.position.x) / w,
        (a.speed * b.position.y + b.speed * a.position.y) / w,
    );
    (point, a.position.distance_to(b.position) / w)
}

/// Oracle output: the minimizing point and the objective value there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSolution {
    pub point: PlanePoint,
    pub time: f64,
}

/// Brute-force minimization of [`objective`], independent of the
/// projection machinery. Three deterministic stages:
///
/// 1. multi-resolution grid over the positions' bounding square (64 cells
///    per axis, recentered on the incumbent and shrunk by 4 per level until
///    the cell is below `tol`);
/// 2. compass polish stepping from `tol` down to `tol / 100`;
/// 3. equal-time curve refinement for the two worst vehicles: their
///    equal-time locus is parameterized by the common travel time and
///    scanned by a 1-D multi-resolution search. The grid and compass stages
///    stall on the quadratically flat valley this curve traces, so this
///    stage is what brings two-active optima to closed-form accuracy.
///
/// Ties break toward smaller x, then smaller y. Output depends only on the
/// problem and `tol`.
pub fn oracle_solve(problem: &RendezvousProblem, tol: f64) -> OracleSolution {
    assert!(tol.is_finite() && tol > 0.0, "oracle tol must be finite and > 0");
    let f = |p: PlanePoint| objective(problem, p);

    let (mut best_p, mut best_v) = grid_stage(problem, tol);
    let (p, v) = compass_polish(&f, best_p, best_v, tol);
    best_p = p;
    best_v = v;
    for _ in 0..2 {
        let (p, v) = pair_curve_refine(problem, best_p, best_v);
        if v < best_v {
            best_p = p;
            best_v = v;
        }
    }
    OracleSolution { point: best_p, time: best_v }
}

/// Vehicle ids whose travel time to `p` is within `tol` seconds of `t_ref`,
/// ascending.
pub fn active_vehicles(problem: &RendezvousProblem, p: PlanePoint, t_ref: f64, tol: f64) -> Vec<u32> {
    problem
        .vehicles
        .iter()
        .filter(|v| (v.time_to(p) - t_ref).abs() <= tol)
        .map(|v| v.id)
        .collect()
}

const GRID_CELLS: usize = 64;

fn grid_stage(problem: &RendezvousProblem, tol: f64) -> (PlanePoint, f64) {
    let xs = problem.vehicles.iter().map(|v| v.position.x);
    let ys = problem.vehicles.iter().map(|v| v.position.y);
    let (min_x, max_x) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (min_y, max_y) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let mut center = PlanePoint::new((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
    // Positions are distinct, so the bounding square is never degenerate.
    let mut half = ((max_x - min_x).max(max_y - min_y)) / 2.0;

    let (mut best_p, mut best_v) = scan_square(problem, center, half, None);
    loop {
        let cell = half / (GRID_CELLS as f64 / 2.0);
        if cell < tol {
            break;
        }
        half /= 4.0;
        center = best_p;
        let (p, v) = scan_square(problem, center, half, Some((best_p, best_v)));
        best_p = p;
        best_v = v;
    }
    (best_p, best_v)
}

/// Scans a (2*half)² square on a 65x65 lattice, x ascending in the outer
/// loop and y in the inner one; only strictly better values replace the
/// incumbent, which makes ties resolve toward smaller x, then smaller y.
fn scan_square(
    problem: &RendezvousProblem,
    center: PlanePoint,
    half: f64,
    incumbent: Option<(PlanePoint, f64)>,
) -> (PlanePoint, f64) {
    let step = half / (GRID_CELLS as f64 / 2.0);
    let (mut best_p, mut best_v) =
        incumbent.unwrap_or((PlanePoint::new(f64::NAN, f64::NAN), f64::INFINITY));
    for ix in 0..=GRID_CELLS {
        let x = center.x - half + ix as f64 * step;
        for iy in 0..=GRID_CELLS {
            let p = PlanePoint::new(x, center.y - half + iy as f64 * step);
            let v = objective(problem, p);
            if v < best_v {
                best_p = p;
                best_v = v;
            }
        }
    }
    (best_p, best_v)
}

const COMPASS: [(f64, f64); 8] = [
    (1.0, 0.0),
    (-1.0, 0.0),
    (0.0, 1.0),
    (0.0, -1.0),
    (1.0, 1.0),
    (1.0, -1.0),
    (-1.0, 1.0),
    (-1.0, -1.0),
];

fn compass_polish(
    f: &dyn Fn(PlanePoint) -> f64,
    mut p: PlanePoint,
    mut v: f64,
    tol: f64,
) -> (PlanePoint, f64) {
    let mut step = tol;
    while step >= tol / 100.0 {
        let mut improved = false;
        for (dx, dy) in COMPASS {
            let cand = PlanePoint::new(p.x + dx * step, p.y + dy * step);
            let cv = f(cand);
            if cv < v {
                p = cand;
                v = cv;
                improved = true;
                break;
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (p, v)
}

const CURVE_SAMPLES: usize = 128;

/// Refines the incumbent along the equal-time curve of the two currently
/// worst vehicles. For common time tau, the candidate points are the
/// intersections of the circles of radius `v_i * tau` around the two
/// starts; tau is scanned from the tangency time (the exact two-vehicle
/// optimum) up to the incumbent value.
fn pair_curve_refine(
    problem: &RendezvousProblem,
    incumbent: PlanePoint,
    incumbent_v: f64,
) -> (PlanePoint, f64) {
    let mut order: Vec<usize> = (0..problem.vehicles.len()).collect();
    let times: Vec<f64> = problem.vehicles.iter().map(|v| v.time_to(incumbent)).collect();
    order.sort_by(|&i, &j| times[j].partial_cmp(&times[i]).unwrap().then(i.cmp(&j)));
    let a = &problem.vehicles[order[0]];
    let b = &problem.vehicles[order[1]];

    let d = a.position.distance_to(b.position);
    let tau_lo = d / (a.speed + b.speed);
    let tau_hi = incumbent_v;
    let mut best_p = incumbent;
    let mut best_v = incumbent_v;
    let mut best_tau = tau_hi;

    let eval_tau = |tau: f64, best: &mut (PlanePoint, f64, f64)| {
        let ra = a.speed * tau;
        let rb = b.speed * tau;
        let along = (d * d + ra * ra - rb * rb) / (2.0 * d);
        let h = (ra * ra - along * along).max(0.0).sqrt();
        let ux = (b.position.x - a.position.x) / d;
        let uy = (b.position.y - a.position.y) / d;
        for sign in [1.0, -1.0] {
            let p = PlanePoint::new(
                a.position.x + ux * along - uy * h * sign,
                a.position.y + uy * along + ux * h * sign,
            );
            let v = objective(problem, p);
            if v < best.1 {
                *best = (p, v, tau);
            }
        }
    };

    let mut lo = tau_lo;
    let mut hi = tau_hi.max(tau_lo);
    for _ in 0..48 {
        let span = hi - lo;
        let mut best = (best_p, best_v, best_tau);
        for i in 0..=CURVE_SAMPLES {
            let tau = lo + span * i as f64 / CURVE_SAMPLES as f64;
            eval_tau(tau, &mut best);
        }
        (best_p, best_v, best_tau) = best;
        let new_span = span / 4.0;
        if new_span < 1e-13 * tau_hi.max(1.0) {
            break;
        }
        lo = (best_tau - new_span / 2.0).max(tau_lo);
        hi = (lo + new_span).min(tau_hi.max(tau_lo));
    }
    (best_p, best_v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: u32, x: f64, y: f64, speed: f64) -> Vehicle {
        Vehicle::new(id, x, y, speed)
    }

    fn two_vehicle_problem() -> RendezvousProblem {
        RendezvousProblem::new(vec![v(1, 0.0, 0.0, 5.0), v(2, 90.0, 0.0, 4.0)]).unwrap()
    }

    #[test]
    fn equal_speeds_meet_in_the_middle() {
        let (p, t) = two_vehicle_optimum(&v(1, 0.0, 0.0, 3.0), &v(2, 10.0, 6.0, 3.0));
        assert!(p.distance_to(PlanePoint::new(5.0, 3.0)) < 1e-12);
        assert!((t - PlanePoint::new(0.0, 0.0).distance_to(PlanePoint::new(10.0, 6.0)) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let (p, t) = two_vehicle_optimum(&v(1, 0.0, 0.0, 5.0), &v(2, 90.0, 0.0, 4.0));
        assert_eq!(p, PlanePoint::new(50.0, 0.0));
        assert_eq!(t, 10.0);

        let (p, t) = two_vehicle_optimum(&v(1, 0.0, 0.0, 1.0), &v(2, 0.0, 8.0, 3.0));
        assert!(p.distance_to(PlanePoint::new(0.0, 2.0)) < 1e-12);
        assert!((t - 2.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_equalizes_travel_times() {
        let a = v(1, -3.0, 7.0, 2.5);
        let b = v(2, 12.0, -4.0, 6.5);
        let (p, t) = two_vehicle_optimum(&a, &b);
        let ta = a.time_to(p);
        let tb = b.time_to(p);
        assert!((ta - tb).abs() <= 1e-12 * ta.max(tb));
        assert!((ta - t).abs() <= 1e-12 * t);
    }

    #[test]
    fn objective_examples() {
        let pr = two_vehicle_problem();
        assert!((objective(&pr, PlanePoint::new(50.0, 0.0)) - 10.0).abs() < 1e-12);
        // At a vehicle's own start its term vanishes and the other dominates.
        assert!((objective(&pr, PlanePoint::new(0.0, 0.0)) - 22.5).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        assert_eq!(
            RendezvousProblem::new(vec![v(1, 0.0, 0.0, 1.0)]),
            Err(ProblemError::TooFewVehicles { found: 1 })
        );
        assert_eq!(
            RendezvousProblem::new(vec![v(1, 0.0, 0.0, 1.0), v(3, 1.0, 0.0, 1.0)]),
            Err(ProblemError::NonConsecutiveIds { index: 1, expected: 2, found: 3 })
        );
        assert_eq!(
            RendezvousProblem::new(vec![v(1, 0.0, 0.0, 1.0), v(2, 1.0, 0.0, 0.0)]),
            Err(ProblemError::InvalidSpeed { id: 2, speed: 0.0 })
        );
        assert_eq!(
            RendezvousProblem::new(vec![v(1, 2.0, 3.0, 1.0), v(2, 2.0, 3.0, 2.0)]),
            Err(ProblemError::DuplicatePosition { id_a: 1, id_b: 2 })
        );
        assert_eq!(
            RendezvousProblem::new(vec![v(1, f64::NAN, 0.0, 1.0), v(2, 1.0, 0.0, 1.0)]),
            Err(ProblemError::NonFinitePosition { id: 1 })
        );
    }

    #[test]
    fn error_messages_cite_the_violated_assumption() {
        let e = RendezvousProblem::new(vec![v(1, 0.0, 0.0, 1.0), v(2, 1.0, 0.0, -2.0)]).unwrap_err();
        assert!(e.to_string().contains("Assumption 1"));
        let e = RendezvousProblem::new(vec![v(2, 0.0, 0.0, 1.0), v(1, 1.0, 0.0, 2.0)]).unwrap_err();
        assert!(e.to_string().contains("Assumption 3"));
    }

    #[test]
    fn oracle_matches_two_vehicle_closed_form() {
        let pr = two_vehicle_problem();
        let sol = oracle_solve(&pr, 1e-4);
        assert!(sol.point.distance_to(PlanePoint::new(50.0, 0.0)) < 1e-3);
        assert!((sol.time - 10.0).abs() < 1e-3);
    }

    #[test]
    fn oracle_finds_the_circumcenter_of_an_equilateral_triangle() {
        let pr = RendezvousProblem::new(vec![
            v(1, 0.0, 0.0, 1.0),
            v(2, 2.0, 0.0, 1.0),
            v(3, 1.0, 3.0_f64.sqrt(), 1.0),
        ])
        .unwrap();
        let sol = oracle_solve(&pr, 1e-4);
        let center = PlanePoint::new(1.0, 1.0 / 3.0_f64.sqrt());
        assert!(sol.point.distance_to(center) < 1e-3);
        assert!((sol.time - 2.0 / 3.0_f64.sqrt()).abs() < 1e-3);
    }

    #[test]
    fn active_set_examples() {
        let pr = two_vehicle_problem();
        assert_eq!(active_vehicles(&pr, PlanePoint::new(50.0, 0.0), 10.0, 1e-9), vec![1, 2]);
        assert!(active_vehicles(&pr, PlanePoint::new(50.0, 0.0), 1e6, 1e-3).is_empty());
    }

    #[test]
    fn oracle_is_deterministic() {
        let pr = RendezvousProblem::new(vec![
            v(1, 0.0, 0.0, 5.0),
            v(2, 100.0, 20.0, 7.0),
            v(3, 150.0, 200.0, 10.0),
        ])
        .unwrap();
        let a = oracle_solve(&pr, 1e-4);
        let b = oracle_solve(&pr, 1e-4);
        assert_eq!(a, b);
    }
}
