//! Planar primitives: points, orientation tests, segment and ray
//! intersections. Everything downstream funnels through these few
//! predicates.

#[allow(unused_imports)]
use num_traits::Float;

use core::ops::{Add, Div, Mul, Neg, Sub};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, treating both as vectors.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction; `None` for (near-)zero vectors.
    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        if n <= f64::MIN_POSITIVE.sqrt() {
            None
        } else {
            Some(self / n)
        }
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic (x, y) comparison, the crate-wide tie-break order.
    pub fn lex_cmp(self, other: Point) -> core::cmp::Ordering {
        self.x
            .total_cmp(&other.x)
            .then(self.y.total_cmp(&other.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, rhs: f64) -> Point {
        Point::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Twice the signed area of the triangle (a, b, c). Positive when c lies
/// to the left of the directed line a -> b.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Interpolate along a segment: t = 0 gives `a`, t = 1 gives `b`.
pub fn lerp(a: Point, b: Point, t: f64) -> Point {
    a + (b - a) * t
}

/// Closest point of segment [a, b] to p, returned with its parameter.
pub fn project_on_segment(p: Point, a: Point, b: Point) -> (Point, f64) {
    let ab = b - a;
    let denom = ab.dot(ab);
    if denom <= 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / denom).clamp(0.0, 1.0);
    (lerp(a, b, t), t)
}

/// Euclidean distance from p to segment [a, b].
pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    project_on_segment(p, a, b).0.dist(p)
}

/// Proper or touching intersection of segments [a, b] and [c, d].
///
/// Returns the intersection parameters (t along ab, u along cd) when the
/// segments meet at a single point within `eps` slack at the ends.
/// Collinear overlaps return `None`; callers that care handle those
/// separately.
pub fn segment_intersection(a: Point, b: Point, c: Point, d: Point, eps: f64) -> Option<(f64, f64)> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let qp = c - a;
    if denom.abs() <= f64::MIN_POSITIVE.sqrt() {
        return None;
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    let slack_t = if r.norm() > 0.0 { eps / r.norm() } else { 0.0 };
    let slack_u = if s.norm() > 0.0 { eps / s.norm() } else { 0.0 };
    if t >= -slack_t && t <= 1.0 + slack_t && u >= -slack_u && u <= 1.0 + slack_u {
        Some((t, u))
    } else {
        None
    }
}

/// True when the open interiors of [a, b] and [c, d] cross properly.
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// First intersection of the ray `origin + t*dir` (t >= t_min) with
/// segment [a, b]. Returns (t along the ray, u along the segment).
pub fn ray_segment_intersection(
    origin: Point,
    dir: Point,
    a: Point,
    b: Point,
    t_min: f64,
    eps: f64,
) -> Option<(f64, f64)> {
    let s = b - a;
    let denom = dir.cross(s);
    if denom.abs() <= f64::MIN_POSITIVE.sqrt() {
        return None;
    }
    let qp = a - origin;
    let t = qp.cross(s) / denom;
    let u = qp.cross(dir) / denom;
    let slack_u = if s.norm() > 0.0 { eps / s.norm() } else { 0.0 };
    if t >= t_min && u >= -slack_u && u <= 1.0 + slack_u {
        Some((t, u))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        assert!(orient(a, b, Point::new(0.5, 1.0)) > 0.0);
        assert!(orient(a, b, Point::new(0.5, -1.0)) < 0.0);
        assert_eq!(orient(a, b, Point::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn segment_intersection_basic() {
        let (t, u) = segment_intersection(
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 0.0),
            1e-12,
        )
        .unwrap();
        assert!((t - 0.5).abs() < 1e-12);
        assert!((u - 0.5).abs() < 1e-12);
    }

    #[test]
    fn projection_clamps() {
        let (p, t) = project_on_segment(Point::new(-1.0, 1.0), Point::new(0.0, 0.0), Point::new(2.0, 0.0));
        assert_eq!(t, 0.0);
        assert_eq!(p, Point::new(0.0, 0.0));
    }
}
