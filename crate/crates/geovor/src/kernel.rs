//! Geodesic primitives inside a simple polygon: shortest paths through a
//! triangulation (funnel algorithm), distances, junctions, shafts,
//! boundary parameterization and a shortest-path map from a boundary
//! point.
//!
//! The funnel engine answers two-point queries in O(n) after an O(n^2)
//! triangulation, trading the O(log n) bound of hierarchical
//! preprocessing for a searchable explicit path, which is the contract
//! every downstream algorithm relies on.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{lerp, orient, project_on_segment, ray_segment_intersection, Point};
use crate::polygon::SimplePolygon;
use crate::{Error, Result};

/// A shortest polyline between two points, staying inside the polygon.
/// Interior vertices are reflex polygon vertices.
#[derive(Debug, Clone)]
pub struct GeodesicPath {
    vertices: Vec<Point>,
    cumulative: Vec<f64>,
}

impl GeodesicPath {
    fn from_vertices(vertices: Vec<Point>) -> Self {
        let mut cumulative = Vec::with_capacity(vertices.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in vertices.windows(2) {
            acc += w[0].dist(w[1]);
            cumulative.push(acc);
        }
        GeodesicPath { vertices, cumulative }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Prefix arc-lengths, one per vertex.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn endpoints(&self) -> (Point, Point) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    /// Point at arc-length `s` from the start (clamped).
    pub fn point_at(&self, s: f64) -> Point {
        if self.vertices.len() == 1 || s <= 0.0 {
            return self.vertices[0];
        }
        let s = s.min(self.length());
        let i = match self
            .cumulative
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        if i + 1 >= self.vertices.len() {
            return *self.vertices.last().unwrap();
        }
        let seg = self.cumulative[i + 1] - self.cumulative[i];
        if seg <= 0.0 {
            return self.vertices[i];
        }
        lerp(self.vertices[i], self.vertices[i + 1], (s - self.cumulative[i]) / seg)
    }

    /// Last interior vertex before the endpoint, with its prefix length.
    /// For a single-segment path this is the start point itself.
    pub fn final_anchor(&self) -> (Point, f64) {
        let m = self.vertices.len();
        if m <= 1 {
            (self.vertices[0], 0.0)
        } else {
            (self.vertices[m - 2], self.cumulative[m - 2])
        }
    }
}

/// A point on the polygon boundary: edge index, parameter along that
/// edge, and clockwise arc-length from a sweep origin.
///
/// Two boundary points compare equal iff they are the same geometric
/// point; the parameterization is normalized so vertices are represented
/// as (edge, 0).
#[derive(Debug, Clone, Copy)]
pub struct BoundaryPoint {
    pub edge_index: usize,
    pub t: f64,
    pub arc: f64,
}

impl PartialEq for BoundaryPoint {
    fn eq(&self, other: &Self) -> bool {
        self.edge_index == other.edge_index && self.t == other.t
    }
}

/// Shortest-path tree from a fixed boundary point to every polygon
/// vertex.
#[derive(Debug, Clone)]
pub struct ShortestPathMap {
    pub source: Point,
    pub origin: (usize, f64),
    /// Geodesic distance from the source to each polygon vertex.
    pub distance: Vec<f64>,
    /// Parent polygon-vertex index on the path from the source; `None`
    /// when the vertex sees the source directly.
    pub parent: Vec<Option<usize>>,
}

/// Simple-polygon representation plus all geodesic machinery: the
/// triangulation, its dual tree and the derived query operations.
///
/// Built once, immutable afterwards; concurrent read-only queries are
/// safe.
#[derive(Debug, Clone)]
pub struct GeodesicKernel {
    polygon: SimplePolygon,
    eps: f64,
    triangles: Vec<[usize; 3]>,
    /// Neighbor across edge slot j (vertices j, j+1 of the triangle).
    tri_adj: Vec<[Option<usize>; 3]>,
    /// Dual-tree parent of each triangle (root 0) with depth.
    tri_parent: Vec<Option<usize>>,
    tri_depth: Vec<u32>,
    /// Prefix boundary lengths per vertex (counterclockwise).
    boundary_prefix: Vec<f64>,
    perimeter: f64,
}

impl GeodesicKernel {
    pub fn new(polygon: SimplePolygon) -> Self {
        let eps = 1e-9 * polygon.diameter();
        let triangles = polygon.triangulate();
        let mut edge_map: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        let mut tri_adj = vec![[None; 3]; triangles.len()];
        for (ti, t) in triangles.iter().enumerate() {
            for j in 0..3 {
                let a = t[j];
                let b = t[(j + 1) % 3];
                let key = (a.min(b), a.max(b));
                if let Some(&(tj, slot)) = edge_map.get(&key) {
                    tri_adj[ti][j] = Some(tj);
                    tri_adj[tj][slot] = Some(ti);
                } else {
                    edge_map.insert(key, (ti, j));
                }
            }
        }
        // Root the dual tree at triangle 0 (the dual of a simple-polygon
        // triangulation is a tree).
        let mut tri_parent = vec![None; triangles.len()];
        let mut tri_depth = vec![0u32; triangles.len()];
        let mut stack = vec![0usize];
        let mut seen = vec![false; triangles.len()];
        seen[0] = true;
        while let Some(ti) = stack.pop() {
            for j in 0..3 {
                if let Some(tj) = tri_adj[ti][j] {
                    if !seen[tj] {
                        seen[tj] = true;
                        tri_parent[tj] = Some(ti);
                        tri_depth[tj] = tri_depth[ti] + 1;
                        stack.push(tj);
                    }
                }
            }
        }
        let n = polygon.len();
        let mut boundary_prefix = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        boundary_prefix.push(0.0);
        for i in 0..n {
            let (a, b) = polygon.edge(i);
            acc += a.dist(b);
            boundary_prefix.push(acc);
        }
        GeodesicKernel {
            polygon,
            eps,
            triangles,
            tri_adj,
            tri_parent,
            tri_depth,
            boundary_prefix,
            perimeter: acc,
        }
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.polygon
    }

    /// Tolerance used for coincidence tests: 1e-9 x bounding-box diagonal.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn diameter(&self) -> f64 {
        self.polygon.diameter()
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Triangle index triples of the internal triangulation.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Neighbor triangle across each triangle edge slot.
    pub fn triangle_neighbors(&self) -> &[[Option<usize>; 3]] {
        &self.tri_adj
    }

    fn check_inside(&self, p: Point) -> Result<()> {
        if self.polygon.contains(p, self.eps) {
            Ok(())
        } else {
            Err(Error::PointOutsidePolygon(p))
        }
    }

    fn tri_points(&self, ti: usize) -> [Point; 3] {
        let t = self.triangles[ti];
        [
            self.polygon.vertex(t[0]),
            self.polygon.vertex(t[1]),
            self.polygon.vertex(t[2]),
        ]
    }

    /// Triangle containing p; for points within tolerance of a shared
    /// edge either side may be returned.
    fn locate(&self, p: Point) -> usize {
        let mut best = 0;
        let mut best_score = f64::NEG_INFINITY;
        for ti in 0..self.triangles.len() {
            let [a, b, c] = self.tri_points(ti);
            let mut score = f64::INFINITY;
            for (u, v) in [(a, b), (b, c), (c, a)] {
                let len = u.dist(v).max(f64::MIN_POSITIVE);
                score = score.min(orient(u, v, p) / len);
            }
            if score >= 0.0 {
                return ti;
            }
            if score > best_score {
                best_score = score;
                best = ti;
            }
        }
        best
    }

    /// Portal sequence (left, right) crossed when walking from triangle
    /// `ta` to `tb` through the dual tree.
    fn portals_between(&self, ta: usize, tb: usize) -> Vec<(Point, Point)> {
        if ta == tb {
            return Vec::new();
        }
        // Climb both triangles to their lowest common ancestor.
        let mut up_a = Vec::new();
        let mut up_b = Vec::new();
        let (mut x, mut y) = (ta, tb);
        while self.tri_depth[x] > self.tri_depth[y] {
            up_a.push(x);
            x = self.tri_parent[x].unwrap();
        }
        while self.tri_depth[y] > self.tri_depth[x] {
            up_b.push(y);
            y = self.tri_parent[y].unwrap();
        }
        while x != y {
            up_a.push(x);
            up_b.push(y);
            x = self.tri_parent[x].unwrap();
            y = self.tri_parent[y].unwrap();
        }
        let mut portals = Vec::with_capacity(up_a.len() + up_b.len());
        // Crossings child -> parent: the shared edge directed CCW in the child.
        for &child in &up_a {
            let parent = self.tri_parent[child].unwrap();
            let (p, q) = self.shared_edge_ccw(child, parent);
            portals.push((q, p));
        }
        // Crossings parent -> child, walked top-down: shared edge CCW in the parent.
        for &child in up_b.iter().rev() {
            let parent = self.tri_parent[child].unwrap();
            let (p, q) = self.shared_edge_ccw(parent, child);
            portals.push((q, p));
        }
        portals
    }

    /// Shared edge of two adjacent triangles, directed CCW in `ti`.
    fn shared_edge_ccw(&self, ti: usize, tj: usize) -> (Point, Point) {
        for j in 0..3 {
            if self.tri_adj[ti][j] == Some(tj) {
                let t = self.triangles[ti];
                return (self.polygon.vertex(t[j]), self.polygon.vertex(t[(j + 1) % 3]));
            }
        }
        unreachable!("triangles are not adjacent");
    }

    /// Shortest path between two points inside (or on) the polygon.
    pub fn geodesic_path(&self, a: Point, b: Point) -> Result<GeodesicPath> {
        self.check_inside(a)?;
        self.check_inside(b)?;
        if a.dist(b) <= f64::MIN_POSITIVE {
            return Ok(GeodesicPath::from_vertices(vec![a]));
        }
        let ta = self.locate(a);
        let tb = self.locate(b);
        let mut portals = Vec::with_capacity(self.tri_depth[ta] as usize + self.tri_depth[tb] as usize + 2);
        portals.push((a, a));
        portals.extend(self.portals_between(ta, tb));
        portals.push((b, b));
        let raw = string_pull(&portals);
        Ok(GeodesicPath::from_vertices(canonicalize(raw, self.eps)))
    }

    pub fn geodesic_distance(&self, a: Point, b: Point) -> Result<f64> {
        Ok(self.geodesic_path(a, b)?.length())
    }

    /// Last turn vertex of pi(p, q) before q, with the geodesic distance
    /// from p to that vertex. For a straight path the anchor is p itself.
    pub fn anchor(&self, p: Point, q: Point) -> Result<(Point, f64)> {
        Ok(self.geodesic_path(p, q)?.final_anchor())
    }

    /// The junction of pi(x, y) and pi(x, z): the point x' such that
    /// pi(x, x') is the maximal common prefix of the two paths.
    pub fn junction(&self, x: Point, y: Point, z: Point) -> Result<Point> {
        let py = self.geodesic_path(x, y)?;
        let pz = self.geodesic_path(x, z)?;
        let vy = py.vertices();
        let vz = pz.vertices();
        let mut k = 0;
        while k < vy.len() && k < vz.len() && vy[k].dist(vz[k]) <= self.eps {
            k += 1;
        }
        if k == 0 {
            // Paths should at least share x.
            return Ok(x);
        }
        let mut junction = vy[k - 1];
        // One path may pass straight through a vertex where the other
        // turns; the junction then lies on the longer segment.
        if k < vy.len() && k < vz.len() {
            let (sy, sz) = (vy[k], vz[k]);
            let base = junction;
            let dy = sy - base;
            let dz = sz - base;
            if dy.cross(dz).abs() <= self.eps * (dy.norm() + dz.norm()).max(1.0) && dy.dot(dz) > 0.0 {
                junction = if dy.norm() < dz.norm() { sy } else { sz };
            }
        } else if k < vy.len() {
            // pi(x,z) ended at vz[k-1]; z itself may lie on the next segment of pi(x,y).
            junction = vy[k - 1];
        }
        Ok(junction)
    }

    /// Segment from p to the first boundary intersection of the ray from
    /// p along `dir`. A ray grazing a vertex reports the vertex.
    pub fn shaft(&self, p: Point, dir: Point) -> (Point, Point) {
        let Some(d) = dir.normalized() else {
            return (p, p);
        };
        let n = self.polygon.len();
        let t_min = self.eps;
        let mut best_t = f64::INFINITY;
        let mut best_pt = p;
        for i in 0..n {
            let (a, b) = self.polygon.edge(i);
            if let Some((t, u)) = ray_segment_intersection(p, d, a, b, t_min, self.eps) {
                if t < best_t {
                    best_t = t;
                    // Snap grazed endpoints onto the vertex.
                    best_pt = if u <= self.eps / a.dist(b).max(f64::MIN_POSITIVE) {
                        a
                    } else if u >= 1.0 - self.eps / a.dist(b).max(f64::MIN_POSITIVE) {
                        b
                    } else {
                        p + d * t
                    };
                }
            }
        }
        if best_t.is_finite() {
            (p, best_pt)
        } else {
            (p, p)
        }
    }

    /// Geodesically closest point of `path` to p: (point, distance,
    /// arc-length parameter on the path).
    pub fn closest_point_on_path(&self, p: Point, path: &GeodesicPath) -> Result<(Point, f64, f64)> {
        let verts = path.vertices();
        if verts.len() == 1 {
            let d = self.geodesic_distance(p, verts[0])?;
            return Ok((verts[0], d, 0.0));
        }
        // d(p, .) is convex along a geodesic; ternary search on the vertex
        // index first, then refine inside the two incident edges.
        let mut lo = 0usize;
        let mut hi = verts.len() - 1;
        let mut dist_cache: BTreeMap<usize, f64> = BTreeMap::new();
        let mut eval = |k: usize, s: &Self| -> Result<f64> {
            if let Some(&d) = dist_cache.get(&k) {
                return Ok(d);
            }
            let d = s.geodesic_distance(p, verts[k])?;
            dist_cache.insert(k, d);
            Ok(d)
        };
        while hi - lo > 2 {
            let m1 = lo + (hi - lo) / 3;
            let m2 = hi - (hi - lo) / 3;
            if eval(m1, self)? <= eval(m2, self)? {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let mut best_k = lo;
        let mut best_d = eval(lo, self)?;
        for k in lo + 1..=hi {
            let d = eval(k, self)?;
            if d < best_d {
                best_d = d;
                best_k = k;
            }
        }
        let mut best = (verts[best_k], best_d, path.cumulative()[best_k]);
        let lo_edge = best_k.saturating_sub(1);
        let hi_edge = (best_k + 1).min(verts.len() - 1);
        for e in lo_edge..hi_edge {
            let (a, b) = (verts[e], verts[e + 1]);
            if let Some(cand) = self.refine_on_segment(p, a, b)? {
                if cand.1 < best.1 {
                    let t = cand.2;
                    best = (
                        cand.0,
                        cand.1,
                        path.cumulative()[e] + t * a.dist(b),
                    );
                }
            }
        }
        Ok(best)
    }

    /// Minimize d(p, .) over segment [a, b] via anchored projection with
    /// a ternary fallback; returns (point, distance, t). Valid because
    /// d(p, .) is convex along any segment inside the polygon.
    fn refine_on_segment(&self, p: Point, a: Point, b: Point) -> Result<Option<(Point, f64, f64)>> {
        let len = a.dist(b);
        if len <= f64::MIN_POSITIVE {
            return Ok(None);
        }
        let mut t = 0.5;
        let mut converged = false;
        for _ in 0..10 {
            let q = lerp(a, b, t);
            let path = self.geodesic_path(p, q)?;
            let (anchor, _) = path.final_anchor();
            // Within a fixed-anchor piece d(p, x) = offset + |x - anchor|;
            // the minimizer is the anchor's projection.
            let (_, t_new) = project_on_segment(anchor, a, b);
            if (t_new - t).abs() <= 1e-14 {
                t = t_new;
                converged = true;
                break;
            }
            // Damp oscillation between anchor pieces.
            t = 0.5 * (t + t_new);
        }
        if !converged {
            let mut lo = 0.0f64;
            let mut hi = 1.0f64;
            for _ in 0..45 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                let d1 = self.geodesic_distance(p, lerp(a, b, m1))?;
                let d2 = self.geodesic_distance(p, lerp(a, b, m2))?;
                if d1 <= d2 {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            t = 0.5 * (lo + hi);
            // Snap into the local anchor piece.
            let path = self.geodesic_path(p, lerp(a, b, t))?;
            let (anchor, _) = path.final_anchor();
            let (_, t_snap) = project_on_segment(anchor, a, b);
            let d_snap = self.geodesic_distance(p, lerp(a, b, t_snap))?;
            if d_snap <= self.geodesic_distance(p, lerp(a, b, t))? {
                t = t_snap;
            }
        }
        let q = lerp(a, b, t);
        let d = self.geodesic_distance(p, q)?;
        let da = self.geodesic_distance(p, a)?;
        let db = self.geodesic_distance(p, b)?;
        let mut out = (q, d, t);
        if da < out.1 {
            out = (a, da, 0.0);
        }
        if db < out.1 {
            out = (b, db, 1.0);
        }
        Ok(Some(out))
    }

    // ----- boundary parameterization -----

    /// Counterclockwise boundary position of (edge, t) from vertex 0.
    fn ccw_pos(&self, edge: usize, t: f64) -> f64 {
        let (a, b) = self.polygon.edge(edge);
        self.boundary_prefix[edge] + t * a.dist(b)
    }

    /// Clockwise arc-length from `from` to `to` (both (edge, t) coords).
    pub fn cw_arc(&self, from: (usize, f64), to: (usize, f64)) -> f64 {
        let d = self.ccw_pos(from.0, from.1) - self.ccw_pos(to.0, to.1);
        d.rem_euclid(self.perimeter)
    }

    /// Nearest boundary coordinate of p; ties broken by lexicographic
    /// (edge_index, t). Vertices normalize to (edge, 0).
    pub fn boundary_coord(&self, p: Point) -> (usize, f64) {
        let n = self.polygon.len();
        let mut best = (0usize, 0.0f64);
        let mut best_d = f64::INFINITY;
        for i in 0..n {
            let (a, b) = self.polygon.edge(i);
            let (q, t) = project_on_segment(p, a, b);
            let d = q.dist(p);
            if d + self.eps < best_d || (d < best_d + self.eps && (i, t) < (best.0, best.1)) {
                if d < best_d {
                    best_d = d;
                }
                best = (i, t);
            }
        }
        let (a, b) = self.polygon.edge(best.0);
        let len = a.dist(b);
        if best.1 >= 1.0 - self.eps / len.max(f64::MIN_POSITIVE) {
            ((best.0 + 1) % n, 0.0)
        } else {
            best
        }
    }

    /// Boundary point for p relative to a sweep origin.
    pub fn boundary_point(&self, p: Point, origin: (usize, f64)) -> BoundaryPoint {
        let coord = self.boundary_coord(p);
        BoundaryPoint {
            edge_index: coord.0,
            t: coord.1,
            arc: self.cw_arc(origin, coord),
        }
    }

    pub fn boundary_point_from_coord(&self, coord: (usize, f64), origin: (usize, f64)) -> BoundaryPoint {
        let n = self.polygon.len();
        let (a, b) = self.polygon.edge(coord.0);
        let len = a.dist(b);
        let coord = if coord.1 >= 1.0 - 1e-15 {
            ((coord.0 + 1) % n, 0.0)
        } else {
            coord
        };
        let _ = len;
        BoundaryPoint {
            edge_index: coord.0,
            t: coord.1,
            arc: self.cw_arc(origin, coord),
        }
    }

    pub fn boundary_to_point(&self, bp: &BoundaryPoint) -> Point {
        let (a, b) = self.polygon.edge(bp.edge_index);
        lerp(a, b, bp.t)
    }

    pub fn coord_to_point(&self, coord: (usize, f64)) -> Point {
        let (a, b) = self.polygon.edge(coord.0);
        lerp(a, b, coord.1)
    }

    /// The boundary point one clockwise step of arc-length `arc` from the
    /// origin.
    pub fn coord_at_cw_arc(&self, origin: (usize, f64), arc: f64) -> (usize, f64) {
        let pos = (self.ccw_pos(origin.0, origin.1) - arc).rem_euclid(self.perimeter);
        // Find edge containing ccw position `pos`.
        let n = self.polygon.len();
        let mut lo = 0usize;
        let mut hi = n;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.boundary_prefix[mid] <= pos {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (a, b) = self.polygon.edge(lo);
        let len = a.dist(b);
        (lo, ((pos - self.boundary_prefix[lo]) / len).clamp(0.0, 1.0))
    }

    // ----- shortest path map -----

    /// Shortest-path tree from a boundary point o to every polygon
    /// vertex.
    pub fn build_spm(&self, origin: (usize, f64)) -> Result<ShortestPathMap> {
        let source = self.coord_to_point(origin);
        let n = self.polygon.len();
        let mut distance = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        for i in 0..n {
            let path = self.geodesic_path(source, self.polygon.vertex(i))?;
            distance.push(path.length());
            let verts = path.vertices();
            if verts.len() <= 2 {
                parent.push(None);
            } else {
                let anchor = verts[verts.len() - 2];
                parent.push(self.vertex_index_of(anchor));
            }
        }
        Ok(ShortestPathMap {
            source,
            origin,
            distance,
            parent,
        })
    }

    fn vertex_index_of(&self, p: Point) -> Option<usize> {
        (0..self.polygon.len()).find(|&i| self.polygon.vertex(i).dist(p) <= self.eps)
    }

    /// The boundary point that comes first from the origin in clockwise
    /// order among points x' with `s` on pi(o, x'): the site-event key.
    ///
    /// Found by extending the last edge of pi(o, s) beyond s to the
    /// boundary; for s on the boundary the key is s itself.
    pub fn first_boundary_containing(&self, spm: &ShortestPathMap, s: Point) -> Result<BoundaryPoint> {
        let origin = spm.origin;
        if s.dist(spm.source) <= self.eps {
            return Ok(self.boundary_point_from_coord(origin, origin));
        }
        if self.polygon.boundary_distance(s) <= self.eps {
            return Ok(self.boundary_point(s, origin));
        }
        let path = self.geodesic_path(spm.source, s)?;
        let (anchor, _) = path.final_anchor();
        let dir = s - anchor;
        let (_, hit) = self.shaft(s, dir);
        Ok(self.boundary_point(hit, origin))
    }
}

/// The string-pulling pass over a portal corridor. Portals include the
/// degenerate start and end pairs.
fn string_pull(portals: &[(Point, Point)]) -> Vec<Point> {
    let mut path = Vec::new();
    if portals.is_empty() {
        return path;
    }
    let mut apex = portals[0].0;
    let (mut left, mut right) = portals[0];
    let (mut left_idx, mut right_idx) = (0usize, 0usize);
    path.push(apex);

    let mut i = 1;
    while i < portals.len() {
        let (pl, pr) = portals[i];
        // Right leg: tighten when the new right is left-of-or-on the leg.
        if orient(apex, right, pr) >= 0.0 {
            if apex == right || orient(apex, left, pr) < 0.0 {
                right = pr;
                right_idx = i;
            } else {
                // Right leg swept past the left leg: corner at left.
                apex = left;
                path.push(apex);
                right = apex;
                left = apex;
                i = left_idx + 1;
                left_idx = i;
                right_idx = i;
                continue;
            }
        }
        // Left leg.
        if orient(apex, left, pl) <= 0.0 {
            if apex == left || orient(apex, right, pl) > 0.0 {
                left = pl;
                left_idx = i;
            } else {
                apex = right;
                path.push(apex);
                left = apex;
                right = apex;
                i = right_idx + 1;
                left_idx = i;
                right_idx = i;
                continue;
            }
        }
        i += 1;
    }
    let goal = portals.last().unwrap().0;
    if path.last().map(|p| p.dist(goal) > 0.0).unwrap_or(true) {
        path.push(goal);
    }
    path
}

/// Drop repeated points and merge collinear segments so vertices are
/// strict turns.
fn canonicalize(raw: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(raw.len());
    for p in raw {
        if let Some(&last) = out.last() {
            if last.dist(p) <= 1e-3 * eps {
                continue;
            }
        }
        while out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            let ab = b - a;
            let bp = p - b;
            if ab.cross(bp).abs() <= 1e-3 * eps * (ab.norm() + bp.norm()).max(f64::MIN_POSITIVE)
                && ab.dot(bp) >= 0.0
            {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::SimplePolygon;
    use alloc::vec;

    fn square() -> GeodesicKernel {
        GeodesicKernel::new(
            SimplePolygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ])
            .unwrap(),
        )
    }

    fn l_polygon() -> GeodesicKernel {
        GeodesicKernel::new(
            SimplePolygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 1.0),
                Point::new(1.0, 1.0),
                Point::new(1.0, 2.0),
                Point::new(0.0, 2.0),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn straight_path_in_square() {
        let k = square();
        let p = k
            .geodesic_path(Point::new(0.1, 0.1), Point::new(0.9, 0.9))
            .unwrap();
        assert_eq!(p.vertices().len(), 2);
        assert!((p.length() - 1.28f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bent_path_in_l_polygon() {
        let k = l_polygon();
        let p = k
            .geodesic_path(Point::new(0.5, 1.75), Point::new(1.75, 0.5))
            .unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(p.vertices()[1].dist(Point::new(1.0, 1.0)) < 1e-12);
        assert!((p.length() - 1.8027756377319946).abs() < 1e-9);
    }

    #[test]
    fn degenerate_path() {
        let k = square();
        let a = Point::new(0.3, 0.7);
        let p = k.geodesic_path(a, a).unwrap();
        assert_eq!(p.length(), 0.0);
    }

    #[test]
    fn distance_examples() {
        let k = square();
        let d = k
            .geodesic_distance(Point::new(0.0, 0.0), Point::new(1.0, 1.0))
            .unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn outside_point_rejected() {
        let k = square();
        assert!(matches!(
            k.geodesic_distance(Point::new(2.0, 0.5), Point::new(0.5, 0.5)),
            Err(Error::PointOutsidePolygon(_))
        ));
    }

    #[test]
    fn junction_examples() {
        let k = square();
        let x = Point::new(0.5, 0.5);
        let j = k
            .junction(x, Point::new(0.9, 0.9), Point::new(0.1, 0.9))
            .unwrap();
        assert!(j.dist(x) < 1e-12);

        let lk = l_polygon();
        let j2 = lk
            .junction(
                Point::new(0.2, 1.8),
                Point::new(1.75, 0.5),
                Point::new(1.9, 0.2),
            )
            .unwrap();
        assert!(j2.dist(Point::new(1.0, 1.0)) < 1e-12);

        let y = Point::new(0.9, 0.9);
        let j3 = k.junction(Point::new(0.1, 0.1), y, y).unwrap();
        assert!(j3.dist(y) < 1e-12);
    }

    #[test]
    fn shaft_examples() {
        let k = square();
        let (_, hit) = k.shaft(Point::new(0.5, 0.5), Point::new(0.0, 1.0));
        assert!(hit.dist(Point::new(0.5, 1.0)) < 1e-12);

        let lk = l_polygon();
        let (_, corner) = lk.shaft(Point::new(0.5, 0.5), Point::new(1.0, 1.0));
        assert!(corner.dist(Point::new(1.0, 1.0)) < 1e-9);

        // Boundary point aiming outward: zero-length shaft.
        let (p, q) = k.shaft(Point::new(0.5, 0.0), Point::new(0.0, -1.0));
        assert!(p.dist(q) < 1e-12);
    }

    #[test]
    fn closest_point_on_segment_path() {
        let k = square();
        let path = k
            .geodesic_path(Point::new(0.0, 0.0), Point::new(0.0, 1.0))
            .unwrap();
        let (q, d, _) = k
            .closest_point_on_path(Point::new(0.5, 0.5), &path)
            .unwrap();
        assert!(q.dist(Point::new(0.0, 0.5)) < 1e-9);
        assert!((d - 0.5).abs() < 1e-9);

        let diag = k
            .geodesic_path(Point::new(0.0, 0.0), Point::new(1.0, 1.0))
            .unwrap();
        let (_, d0, _) = k
            .closest_point_on_path(Point::new(0.5, 0.5), &diag)
            .unwrap();
        assert!(d0 < 1e-9);
    }

    #[test]
    fn boundary_parameterization() {
        let k = square();
        // Clockwise from (0,0) goes up the left edge.
        let origin = (0usize, 0.0f64);
        let bp = k.boundary_point(Point::new(0.0, 0.5), origin);
        assert!((bp.arc - 0.5).abs() < 1e-12);
        let bp2 = k.boundary_point(Point::new(0.5, 0.0), origin);
        assert!((bp2.arc - 3.5).abs() < 1e-12);
    }

    #[test]
    fn spm_and_site_keys() {
        let k = square();
        let origin = (0usize, 0.0f64);
        let spm = k.build_spm(origin).unwrap();
        assert!(spm.distance[2] - 2f64.sqrt() < 1e-12);
        // Site event key for the center: the far corner (1,1).
        let key = k
            .first_boundary_containing(&spm, Point::new(0.5, 0.5))
            .unwrap();
        assert!(k.boundary_to_point(&key).dist(Point::new(1.0, 1.0)) < 1e-9);
        // Site at the origin.
        let key0 = k
            .first_boundary_containing(&spm, Point::new(0.0, 0.0))
            .unwrap();
        assert!((key0.arc - 0.0).abs() < 1e-12);
        // Site on an edge interior: key is the site itself.
        let s = Point::new(1.0, 0.4);
        let key1 = k.first_boundary_containing(&spm, s).unwrap();
        assert!(k.boundary_to_point(&key1).dist(s) < 1e-9);
    }
}
