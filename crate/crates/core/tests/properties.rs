//! Randomized law checks for the projection primitives and the engines
//! built on top of them.

use proptest::prelude::*;
use rdv_core::{
    bregman_alternate, dykstra_project, objective, oracle_solve, two_vehicle_optimum, Ball,
    ConeCaseSplit, HalfSpace, PlanePoint, Projector, ReachabilityCone, RendezvousProblem,
    SpaceTimePoint, Vehicle, ZeroTimePlane,
};

fn cones() -> impl Strategy<Value = ReachabilityCone> {
    (-500.0..500.0, -500.0..500.0, 0.1..20.0)
        .prop_map(|(x, y, v)| ReachabilityCone::new(PlanePoint::new(x, y), v))
}

fn points() -> impl Strategy<Value = SpaceTimePoint> {
    (-500.0..500.0, -500.0..500.0, -500.0..500.0).prop_map(|(x, y, t)| SpaceTimePoint::new(x, y, t))
}

/// Deterministic fan of feasible points around the projection output,
/// dense enough to catch any non-minimal projection.
fn feasible_samples(cone: ReachabilityCone, near: SpaceTimePoint) -> Vec<SpaceTimePoint> {
    let apex = cone.apex();
    let base_r = (near.plane().distance_to(apex)).max(1e-3);
    let mut out = Vec::with_capacity(64 * 5 + 1);
    out.push(apex.at_time(0.0));
    for k in 0..64 {
        let theta = k as f64 * std::f64::consts::TAU / 64.0;
        for scale in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let r = base_r * scale;
            let p = PlanePoint::new(apex.x + r * theta.cos(), apex.y + r * theta.sin());
            // Exactly reachable surface point lifted a hair to stay feasible
            // under floating-point rounding.
            let t = cone.min_time_to(p) * (1.0 + 1e-12) + 1e-12;
            out.push(p.at_time(t));
        }
    }
    out
}

proptest! {
    #[test]
    fn cone_projection_is_idempotent(c in cones(), q in points()) {
        let p1 = c.project(q);
        let p2 = c.project(p1);
        prop_assert!((p2.x - p1.x).abs() <= 1e-9);
        prop_assert!((p2.y - p1.y).abs() <= 1e-9);
        prop_assert!((p2.t - p1.t).abs() <= 1e-9);
    }

    #[test]
    fn cone_projection_lands_in_the_cone(c in cones(), q in points()) {
        prop_assert!(c.contains(c.project(q), 1e-9));
    }

    #[test]
    fn cone_projection_is_non_expansive(c in cones(), a in points(), b in points()) {
        let d_in = a.distance_to(b);
        let d_out = c.project(a).distance_to(c.project(b));
        prop_assert!(d_out <= d_in + 1e-12);
    }

    #[test]
    fn cone_projection_is_minimal(c in cones(), q in points()) {
        let p = c.project(q);
        let dp = q.distance_to(p);
        for z in feasible_samples(c, p) {
            prop_assert!(
                dp <= q.distance_to(z) + 1e-9,
                "sampled feasible point {:?} is closer to {:?} than projection {:?}",
                z, q, p
            );
        }
    }

    #[test]
    fn feasible_points_are_fixed_points(c in cones(), q in points()) {
        // Lift q until it is strictly inside, then require exact fixity.
        let inside = SpaceTimePoint::new(
            q.x,
            q.y,
            c.min_time_to(q.plane()) * (1.0 + 1e-9) + 0.1,
        );
        prop_assert!(c.contains(inside, 0.0));
        prop_assert_eq!(c.project(inside), inside);
    }

    #[test]
    fn case_splits_agree_at_unit_speed(x in -500.0..500.0, y in -500.0..500.0, q in points()) {
        let c = ReachabilityCone::new(PlanePoint::new(x, y), 1.0);
        prop_assert_eq!(
            c.project_with(ConeCaseSplit::PolarApex, q),
            c.project_with(ConeCaseSplit::MirroredApex, q)
        );
    }

    #[test]
    fn ball_and_halfspace_projectors_obey_the_laws(q in points(), a in points()) {
        let sets: [&dyn Projector; 3] = [
            &Ball { center: SpaceTimePoint::new(3.0, -2.0, 1.0), radius: 4.0 },
            &HalfSpace { normal: SpaceTimePoint::new(1.0, 2.0, -1.0), offset: 3.0 },
            &ZeroTimePlane,
        ];
        for s in sets {
            let p = s.project(q);
            let pp = s.project(p);
            prop_assert!(pp.distance_to(p) <= 1e-9);
            prop_assert!(s.project(q).distance_to(s.project(a)) <= q.distance_to(a) + 1e-12);
        }
    }

    #[test]
    fn objective_is_convex(
        seeds in proptest::collection::vec((-100.0..100.0, -100.0..100.0, 0.5..8.0), 2..6),
        px in -200.0..200.0, py in -200.0..200.0,
        qx in -200.0..200.0, qy in -200.0..200.0,
        lambda in 0.0..1.0,
    ) {
        let vehicles: Vec<Vehicle> = seeds
            .iter()
            .enumerate()
            .map(|(i, &(x, y, v))| Vehicle::new(i as u32 + 1, x + i as f64 * 1e-3, y, v))
            .collect();
        let problem = match RendezvousProblem::new(vehicles) {
            Ok(p) => p,
            Err(_) => return Ok(()), // coincident starts: not a valid instance
        };
        let p = PlanePoint::new(px, py);
        let q = PlanePoint::new(qx, qy);
        let mid = PlanePoint::new(
            lambda * p.x + (1.0 - lambda) * q.x,
            lambda * p.y + (1.0 - lambda) * q.y,
        );
        prop_assert!(
            objective(&problem, mid)
                <= lambda * objective(&problem, p) + (1.0 - lambda) * objective(&problem, q) + 1e-9
        );
    }

    #[test]
    fn closed_form_equalizes_times(
        ax in -300.0f64..300.0, ay in -300.0f64..300.0, av in 0.1f64..20.0,
        bx in -300.0f64..300.0, by in -300.0f64..300.0, bv in 0.1f64..20.0,
    ) {
        prop_assume!((ax - bx).abs() > 1e-6 || (ay - by).abs() > 1e-6);
        let a = Vehicle::new(1, ax, ay, av);
        let b = Vehicle::new(2, bx, by, bv);
        let (p, t) = two_vehicle_optimum(&a, &b);
        let (ta, tb) = (a.time_to(p), b.time_to(p));
        let scale = ta.max(tb).max(1e-12);
        prop_assert!((ta - tb).abs() <= 1e-12 * scale);
        prop_assert!((ta - t).abs() <= 1e-12 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_matches_the_closed_form(
        ax in -100.0..100.0, ay in -100.0..100.0, av in 1.0..6.0,
        bx in -100.0..100.0, by in -100.0..100.0, bv in 1.0..6.0,
    ) {
        let a = Vehicle::new(1, ax, ay, av);
        let b = Vehicle::new(2, bx, by, bv);
        prop_assume!(a.position.distance_to(b.position) > 1.0);
        let problem = RendezvousProblem::new(vec![a, b]).unwrap();
        let tol = 1e-4;
        let sol = oracle_solve(&problem, tol);
        let (p, t) = two_vehicle_optimum(&a, &b);
        prop_assert!(sol.point.distance_to(p) <= 10.0 * tol);
        prop_assert!((sol.time - t).abs() <= 10.0 * tol);
    }

    #[test]
    fn alternation_gap_is_monotone_for_exact_projectors(
        cx in -20.0..20.0, cy in -20.0..20.0, ct in -20.0..20.0, r in 0.5..5.0,
        q in points(),
    ) {
        // Exact projectors only: a finite-budget intersection projector is
        // allowed transient growth, so the law is asserted where it holds.
        let a = Ball { center: SpaceTimePoint::new(cx, cy, ct), radius: r };
        let b = ZeroTimePlane;
        let mut x = a.project(q);
        let mut y = b.project(x);
        let mut gap = x.distance_to(y);
        for _ in 0..200 {
            x = a.project(y);
            y = b.project(x);
            let next = x.distance_to(y);
            prop_assert!(next <= gap + 1e-12);
            gap = next;
        }
    }
}

/// A projector the geometry module knows nothing about: the plane holding
/// the x coordinate fixed. The engines must work against it purely through
/// the trait.
struct FixX(f64);

impl Projector for FixX {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        SpaceTimePoint::new(self.0, q.y, q.t)
    }
}

struct FixY(f64);

impl Projector for FixY {
    fn project(&self, q: SpaceTimePoint) -> SpaceTimePoint {
        SpaceTimePoint::new(q.x, self.0, q.t)
    }
}

#[test]
fn engines_run_against_mock_projectors() {
    let fx = FixX(2.0);
    let fy = FixY(-3.0);
    let start = SpaceTimePoint::new(10.0, 10.0, 7.0);

    let out = dykstra_project(&[&fx as &dyn Projector, &fy], start, 50, 1e-12);
    assert!(out.converged);
    assert!(out.point.distance_to(SpaceTimePoint::new(2.0, -3.0, 7.0)) < 1e-12);

    let alt = bregman_alternate(&fx, &fy, start, 50, 1e-12);
    assert!(alt.converged);
    // The two planes intersect, so both limits coincide on the line.
    assert!(alt.distance < 1e-9);
    assert!(alt.point_a.distance_to(SpaceTimePoint::new(2.0, -3.0, 7.0)) < 1e-9);
}
