//! Position-time geometry: reachability cones, membership tests, and exact
//! metric projections onto a single cone and onto the zero-time plane.

use std::ops::{Add, Neg, Sub};

/// A point in the x-y plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Euclidean distance to `other`, overflow-safe.
    pub fn distance_to(self, other: PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Lift onto the zero-time plane.
    pub const fn at_time(self, t: f64) -> SpaceTimePoint {
        SpaceTimePoint { x: self.x, y: self.y, t }
    }
}

/// A point of position-time space: meters, meters, seconds.
///
/// `t` may be negative; intermediate iterates of the projection algorithms
/// legitimately leave the feasible region. The type doubles as the 3-vector
/// of differences and Dykstra increments, so it supports vector arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimePoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl SpaceTimePoint {
    pub const ZERO: Self = Self { x: 0.0, y: 0.0, t: 0.0 };

    pub const fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    /// Planar part, dropping the time coordinate.
    pub const fn plane(self) -> PlanePoint {
        PlanePoint { x: self.x, y: self.y }
    }

    /// Mixed-unit Euclidean norm, seconds weighted 1:1 against meters.
    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.t * self.t).sqrt()
    }

    pub fn distance_to(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.t.is_finite()
    }
}

impl Add for SpaceTimePoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.t + rhs.t)
    }
}

impl Sub for SpaceTimePoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.t - rhs.t)
    }
}

impl Neg for SpaceTimePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.t)
    }
}

/// Which case split `ReachabilityCone::project_with` uses to route a point
/// to the apex instead of the cone surface.
///
/// The two splits agree everywhere when `speed == 1` and share the same
/// surface formulas; they differ only in which wedge of points collapses to
/// the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConeCaseSplit {
    /// Apex when the point lies in the cone's polar cone (`v*s <= -t`).
    /// This is the exact metric projection for every speed.
    #[default]
    PolarApex,
    /// Apex when the point lies in the cone mirrored through the zero-time
    /// plane (`s <= -v*t`). Kept for comparison runs; for `speed != 1` it
    /// misclassifies a wedge of inputs and the result is not the nearest
    /// feasible point. Example at speed 5: (1, 0, -1) maps to the apex at
    /// distance 1.414 although the surface point (0.76923, 0, 0.15385) is
    /// at distance 1.178.
    MirroredApex,
}

/// A vehicle's reachable set `{(p, t) : ||p - apex|| <= speed * t}`, a
/// second-order cone in position-time space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReachabilityCone {
    apex: PlanePoint,
    speed: f64,
}

impl ReachabilityCone {
    /// Panics if `speed` is not strictly positive and finite, or the apex
    /// is not finite; validated problem types construct cones only from
    /// checked vehicles.
    pub fn new(apex: PlanePoint, speed: f64) -> Self {
        assert!(
            speed.is_finite() && speed > 0.0,
            "cone speed must be finite and > 0, got {speed}"
        );
        assert!(
            apex.x.is_finite() && apex.y.is_finite(),
            "cone apex must be finite"
        );
        Self { apex, speed }
    }

    pub const fn apex(self) -> PlanePoint {
        self.apex
    }

    pub const fn speed(self) -> f64 {
        self.speed
    }

    /// Minimum travel time from the apex to `p`: distance over speed.
    /// Zero exactly when `p` equals the apex.
    pub fn min_time_to(self, p: PlanePoint) -> f64 {
        self.apex.distance_to(p) / self.speed
    }

    /// Whether `q` is reachable within slack `tol`:
    /// `q.t >= min_time_to(q.plane()) - tol`.
    pub fn contains(self, q: SpaceTimePoint, tol: f64) -> bool {
        q.t >= self.min_time_to(q.plane()) - tol
    }

    /// Euclidean metric projection onto the cone.
    pub fn project(self, q: SpaceTimePoint) -> SpaceTimePoint {
        self.project_with(ConeCaseSplit::PolarApex, q)
    }

    /// Projection with an explicit apex-case split; see [`ConeCaseSplit`].
    ///
    /// Case order is inside, then apex, then surface: boundary equalities
    /// resolve to the earlier case, and the order keeps the surface formula
    /// (which divides by `s`) away from `s == 0`.
    pub fn project_with(self, split: ConeCaseSplit, q: SpaceTimePoint) -> SpaceTimePoint {
        let v = self.speed;
        let dx = q.x - self.apex.x;
        let dy = q.y - self.apex.y;
        let s = dx.hypot(dy);
        if s <= v * q.t {
            return q;
        }
        let at_apex = match split {
            ConeCaseSplit::PolarApex => v * s <= -q.t,
            ConeCaseSplit::MirroredApex => s <= -v * q.t,
        };
        if at_apex {
            return self.apex.at_time(0.0);
        }
        // Surface case: s > 0 here, since s == 0 with any t lands in one of
        // the branches above for either split.
        let scale = (v * v * s + v * q.t) / ((v * v + 1.0) * s);
        SpaceTimePoint::new(
            self.apex.x + dx * scale,
            self.apex.y + dy * scale,
            (v * s + q.t) / (v * v + 1.0),
        )
    }
}

/// Metric projection onto the zero-time plane `{t = 0}`: drops the time
/// coordinate. Exact and idempotent.
pub fn project_plane(q: SpaceTimePoint) -> SpaceTimePoint {
    SpaceTimePoint::new(q.x, q.y, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const C5: f64 = 5.0;

    fn cone(x: f64, y: f64, v: f64) -> ReachabilityCone {
        ReachabilityCone::new(PlanePoint::new(x, y), v)
    }

    #[test]
    fn min_time_apex_is_zero() {
        assert_eq!(cone(0.0, 0.0, C5).min_time_to(PlanePoint::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn min_time_three_four_five() {
        assert_eq!(cone(0.0, 0.0, C5).min_time_to(PlanePoint::new(3.0, 4.0)), 1.0);
    }

    #[test]
    fn min_time_to_distant_point() {
        let t = cone(0.0, 0.0, C5).min_time_to(PlanePoint::new(50.0, 66.0));
        assert!((t - 6856.0_f64.sqrt() / 5.0).abs() < 1e-12);
        assert!((t - 16.5602).abs() < 1e-4);
    }

    #[test]
    fn contains_apex_boundary_and_outside() {
        let c = cone(0.0, 0.0, C5);
        assert!(c.contains(SpaceTimePoint::new(0.0, 0.0, 0.0), 0.0));
        assert!(!c.contains(SpaceTimePoint::new(3.0, 4.0, 0.5), 0.0));
        assert!(c.contains(SpaceTimePoint::new(3.0, 4.0, 1.0), 1e-12));
    }

    #[test]
    fn project_keeps_interior_point() {
        let q = SpaceTimePoint::new(3.0, 4.0, 2.0);
        assert_eq!(cone(0.0, 0.0, C5).project(q), q);
    }

    #[test]
    fn project_sends_polar_point_to_apex() {
        let got = cone(0.0, 0.0, 1.0).project(SpaceTimePoint::new(0.0, 0.0, -1.0));
        assert_eq!(got, SpaceTimePoint::new(0.0, 0.0, 0.0));
    }

    #[test]
    fn project_surface_halves_unit_slope_point() {
        let got = cone(0.0, 0.0, 1.0).project(SpaceTimePoint::new(1.0, 0.0, 0.0));
        assert!(got.distance_to(SpaceTimePoint::new(0.5, 0.0, 0.5)) < 1e-15);
    }

    #[test]
    fn project_handles_zero_radius_negative_time() {
        // s == 0 with t < 0 must route to the apex, not the surface formula.
        let got = cone(2.0, 3.0, C5).project(SpaceTimePoint::new(2.0, 3.0, -4.0));
        assert_eq!(got, SpaceTimePoint::new(2.0, 3.0, 0.0));
    }

    #[test]
    fn project_plane_examples() {
        assert_eq!(
            project_plane(SpaceTimePoint::new(50.0, 66.0, 16.7)),
            SpaceTimePoint::new(50.0, 66.0, 0.0)
        );
        assert_eq!(project_plane(SpaceTimePoint::ZERO), SpaceTimePoint::ZERO);
        assert_eq!(
            project_plane(SpaceTimePoint::new(-3.0, 2.0, -9.0)),
            SpaceTimePoint::new(-3.0, 2.0, 0.0)
        );
    }

    #[test]
    fn splits_agree_at_unit_speed() {
        let c = cone(0.4, -1.2, 1.0);
        let mut q = SpaceTimePoint::new(-7.3, 2.2, -5.1);
        for _ in 0..100 {
            let a = c.project_with(ConeCaseSplit::PolarApex, q);
            let b = c.project_with(ConeCaseSplit::MirroredApex, q);
            assert_eq!(a, b);
            // March the probe through all three regions.
            q = SpaceTimePoint::new(q.x * -0.93 + 0.1, q.y * 0.9 - 0.2, q.t + 0.11);
        }
    }

    #[test]
    fn splits_diverge_off_unit_speed() {
        let c = cone(0.0, 0.0, 5.0);
        let q = SpaceTimePoint::new(1.0, 0.0, -1.0);
        let polar = c.project_with(ConeCaseSplit::PolarApex, q);
        let mirrored = c.project_with(ConeCaseSplit::MirroredApex, q);
        assert_eq!(mirrored, SpaceTimePoint::ZERO);
        assert!(polar.distance_to(SpaceTimePoint::new(0.76923076923, 0.0, 0.15384615384)) < 1e-9);
        // The corrected branch lands strictly closer to the query.
        assert!(q.distance_to(polar) < q.distance_to(mirrored) - 0.2);
    }

    #[test]
    #[should_panic(expected = "speed must be finite and > 0")]
    fn zero_speed_is_rejected() {
        cone(0.0, 0.0, 0.0);
    }
}
