//! Simple polygons: validation, containment tests and ear-clipping
//! triangulation. The triangulation feeds the funnel engine in
//! [`crate::kernel`].

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use crate::geom::{dist_point_segment, orient, segments_properly_cross, Point};
use crate::{Error, Result};

/// A simple polygon stored as a counterclockwise vertex chain, closed
/// implicitly.
#[derive(Debug, Clone)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    bbox: (Point, Point),
}

impl SimplePolygon {
    /// Validates and wraps a counterclockwise vertex chain.
    ///
    /// Rejects chains with fewer than three vertices, non-finite or
    /// repeated vertices, negative signed area, or crossing edges.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than 3 vertices"));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex"));
        }
        let n = vertices.len();
        let mut lo = vertices[0];
        let mut hi = vertices[0];
        for v in &vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        let scale = (hi - lo).norm().max(f64::MIN_POSITIVE);
        let eps = 1e-12 * scale;
        for i in 0..n {
            if vertices[i].dist(vertices[(i + 1) % n]) <= eps {
                return Err(Error::InvalidPolygon("repeated consecutive vertices"));
            }
        }
        let area2: f64 = (0..n)
            .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
            .sum();
        if area2 <= 0.0 {
            return Err(Error::InvalidPolygon("not counterclockwise (signed area <= 0)"));
        }
        // Non-adjacent edges must not intersect.
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            for j in i + 1..n {
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_properly_cross(a, b, c, d) {
                    return Err(Error::InvalidPolygon("edges intersect"));
                }
                // Degenerate touch: an endpoint lying on a non-adjacent edge.
                if dist_point_segment(c, a, b) <= eps && c.dist(a) > eps && c.dist(b) > eps {
                    return Err(Error::InvalidPolygon("vertex touches non-adjacent edge"));
                }
            }
        }
        Ok(SimplePolygon {
            vertices,
            bbox: (lo, hi),
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Directed edge i: from vertex i to vertex i+1 (counterclockwise).
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn bbox(&self) -> (Point, Point) {
        self.bbox
    }

    /// Bounding-box diagonal; the crate's reference scale for tolerances.
    pub fn diameter(&self) -> f64 {
        (self.bbox.1 - self.bbox.0).norm()
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n).map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n])).sum()
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let area2: f64 = (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum();
        area2 / 2.0
    }

    /// True when vertex i is reflex (interior angle > pi).
    pub fn is_reflex(&self, i: usize) -> bool {
        let n = self.vertices.len();
        let prev = self.vertices[(i + n - 1) % n];
        let cur = self.vertices[i % n];
        let next = self.vertices[(i + 1) % n];
        orient(prev, cur, next) < 0.0
    }

    /// Distance from p to the boundary chain.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                dist_point_segment(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Containment with an `eps` shell: boundary points count as inside.
    pub fn contains(&self, p: Point, eps: f64) -> bool {
        if p.x < self.bbox.0.x - eps
            || p.x > self.bbox.1.x + eps
            || p.y < self.bbox.0.y - eps
            || p.y > self.bbox.1.y + eps
        {
            return false;
        }
        if self.boundary_distance(p) <= eps {
            return true;
        }
        self.contains_strict(p)
    }

    /// Crossing-parity test; meaningful for points off the boundary.
    pub fn contains_strict(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Ear-clipping triangulation. Returns index triples (CCW).
    pub fn triangulate(&self) -> Vec<[usize; 3]> {
        let n = self.vertices.len();
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut triangles = Vec::with_capacity(n - 2);
        let eps = 1e-12 * self.diameter();

        let is_ear = |chain: &[usize], k: usize, verts: &[Point]| -> bool {
            let m = chain.len();
            let ia = chain[(k + m - 1) % m];
            let ib = chain[k];
            let ic = chain[(k + 1) % m];
            let (a, b, c) = (verts[ia], verts[ib], verts[ic]);
            if orient(a, b, c) <= eps * eps {
                return false;
            }
            // No other remaining vertex inside the candidate ear.
            for &j in chain {
                if j == ia || j == ib || j == ic {
                    continue;
                }
                let p = verts[j];
                if orient(a, b, p) >= -eps
                    && orient(b, c, p) >= -eps
                    && orient(c, a, p) >= -eps
                {
                    return false;
                }
            }
            true
        };

        let mut k = 0;
        let mut since_clip = 0usize;
        while remaining.len() > 3 {
            let m = remaining.len();
            if is_ear(&remaining, k % m, &self.vertices) {
                let kk = k % m;
                let ia = remaining[(kk + m - 1) % m];
                let ib = remaining[kk];
                let ic = remaining[(kk + 1) % m];
                triangles.push([ia, ib, ic]);
                remaining.remove(kk);
                since_clip = 0;
                k = kk;
            } else {
                k += 1;
                since_clip += 1;
                if since_clip > 2 * m {
                    // Numerically stuck (collinear chains); clip the least
                    // degenerate remaining ear to make progress.
                    let mut best = 0;
                    let mut best_area = f64::NEG_INFINITY;
                    for cand in 0..m {
                        let ia = remaining[(cand + m - 1) % m];
                        let ib = remaining[cand];
                        let ic = remaining[(cand + 1) % m];
                        let ar = orient(self.vertices[ia], self.vertices[ib], self.vertices[ic]);
                        let mut ok = true;
                        for &j in &remaining {
                            if j == ia || j == ib || j == ic {
                                continue;
                            }
                            let p = self.vertices[j];
                            if orient(self.vertices[ia], self.vertices[ib], p) > eps
                                && orient(self.vertices[ib], self.vertices[ic], p) > eps
                                && orient(self.vertices[ic], self.vertices[ia], p) > eps
                            {
                                ok = false;
                                break;
                            }
                        }
                        if ok && ar > best_area {
                            best_area = ar;
                            best = cand;
                        }
                    }
                    let ia = remaining[(best + m - 1) % m];
                    let ib = remaining[best];
                    let ic = remaining[(best + 1) % m];
                    triangles.push([ia, ib, ic]);
                    remaining.remove(best);
                    since_clip = 0;
                    k = best;
                }
            }
        }
        triangles.push([remaining[0], remaining[1], remaining[2]]);
        triangles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn square() -> SimplePolygon {
        SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn l_polygon() -> SimplePolygon {
        SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(SimplePolygon::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).is_err());
        // Clockwise square.
        assert!(SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ])
        .is_err());
        // Self-intersecting bowtie.
        assert!(SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .is_err());
    }

    #[test]
    fn containment() {
        let sq = square();
        assert!(sq.contains(Point::new(0.5, 0.5), 1e-12));
        assert!(sq.contains(Point::new(0.0, 0.5), 1e-9));
        assert!(!sq.contains(Point::new(1.5, 0.5), 1e-9));
        let lp = l_polygon();
        assert!(lp.contains(Point::new(0.5, 1.5), 1e-12));
        assert!(!lp.contains(Point::new(1.5, 1.5), 1e-12));
    }

    #[test]
    fn triangulation_covers_polygon() {
        for poly in [square(), l_polygon()] {
            let tris = poly.triangulate();
            assert_eq!(tris.len(), poly.len() - 2);
            let total: f64 = tris
                .iter()
                .map(|t| orient(poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2])) / 2.0)
                .sum();
            assert!((total - poly.area()).abs() < 1e-9 * poly.area());
        }
    }

    #[test]
    fn reflex_detection() {
        let lp = l_polygon();
        let reflex: Vec<usize> = (0..lp.len()).filter(|&i| lp.is_reflex(i)).collect();
        assert_eq!(reflex, vec![3]);
    }
}
