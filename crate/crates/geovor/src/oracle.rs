//! Brute-force ground truth: a visibility-graph Dijkstra distance oracle
//! implemented independently of the funnel kernel, sample labelers for
//! nearest / order-k / farthest checks, a grid equidistant finder, and
//! the worst-case instance generator.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{dist_point_segment, lerp, segments_properly_cross, Point};
use crate::polygon::SimplePolygon;
use crate::{Error, Result};

/// Visibility-graph shortest-path oracle over a fixed polygon.
///
/// Distances are computed by Dijkstra over the visibility graph of the
/// polygon vertices plus the two query points; no code is shared with
/// the funnel engine so kernel bugs cannot self-confirm.
pub struct VisibilityOracle {
    polygon: SimplePolygon,
    eps: f64,
    /// Per-vertex visibility adjacency (indices into polygon vertices).
    adj: Vec<Vec<(usize, f64)>>,
}

impl VisibilityOracle {
    pub fn new(polygon: SimplePolygon) -> Self {
        let eps = 1e-9 * polygon.diameter();
        let n = polygon.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (polygon.vertex(i), polygon.vertex(j));
                if segment_inside(&polygon, a, b, eps) {
                    let d = a.dist(b);
                    adj[i].push((j, d));
                    adj[j].push((i, d));
                }
            }
        }
        VisibilityOracle { polygon, eps, adj }
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.polygon
    }

    /// Vertices of the polygon visible from p.
    fn visible_vertices(&self, p: Point) -> Vec<usize> {
        (0..self.polygon.len())
            .filter(|&i| segment_inside(&self.polygon, p, self.polygon.vertex(i), self.eps))
            .collect()
    }

    /// Geodesic distance between two points, via Dijkstra on the
    /// visibility graph of {vertices, a, b}.
    pub fn distance(&self, a: Point, b: Point) -> Result<f64> {
        if !self.polygon.contains(a, self.eps) {
            return Err(Error::PointOutsidePolygon(a));
        }
        if !self.polygon.contains(b, self.eps) {
            return Err(Error::PointOutsidePolygon(b));
        }
        if segment_inside(&self.polygon, a, b, self.eps) {
            return Ok(a.dist(b));
        }
        let n = self.polygon.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
        for i in self.visible_vertices(a) {
            let d = a.dist(self.polygon.vertex(i));
            if d < dist[i] {
                dist[i] = d;
                heap.push(HeapEntry { d, node: i });
            }
        }
        let vis_b = self.visible_vertices(b);
        let mut vis_b_flag = vec![false; n];
        for &i in &vis_b {
            vis_b_flag[i] = true;
        }
        let mut best = f64::INFINITY;
        while let Some(HeapEntry { d, node }) = heap.pop() {
            if d > dist[node] + self.eps {
                continue;
            }
            if d >= best {
                break;
            }
            if vis_b_flag[node] {
                best = best.min(d + self.polygon.vertex(node).dist(b));
            }
            for &(next, w) in &self.adj[node] {
                let nd = d + w;
                if nd < dist[next] {
                    dist[next] = nd;
                    heap.push(HeapEntry { d: nd, node: next });
                }
            }
        }
        if best.is_infinite() {
            // a or b squeezed into a corner where only direct sight works.
            return Err(Error::PointOutsidePolygon(a));
        }
        Ok(best)
    }

    /// Distances from one source to many targets; shares the Dijkstra
    /// pass over the vertex graph.
    pub fn distances_from(&self, src: Point, targets: &[Point]) -> Result<Vec<f64>> {
        if !self.polygon.contains(src, self.eps) {
            return Err(Error::PointOutsidePolygon(src));
        }
        let n = self.polygon.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
        for i in self.visible_vertices(src) {
            let d = src.dist(self.polygon.vertex(i));
            if d < dist[i] {
                dist[i] = d;
                heap.push(HeapEntry { d, node: i });
            }
        }
        while let Some(HeapEntry { d, node }) = heap.pop() {
            if d > dist[node] + self.eps {
                continue;
            }
            for &(next, w) in &self.adj[node] {
                let nd = d + w;
                if nd < dist[next] {
                    dist[next] = nd;
                    heap.push(HeapEntry { d: nd, node: next });
                }
            }
        }
        targets
            .iter()
            .map(|&t| {
                if segment_inside(&self.polygon, src, t, self.eps) {
                    return Ok(src.dist(t));
                }
                let mut best = f64::INFINITY;
                for i in self.visible_vertices(t) {
                    let cand = dist[i] + self.polygon.vertex(i).dist(t);
                    if cand < best {
                        best = cand;
                    }
                }
                if best.is_infinite() {
                    Err(Error::PointOutsidePolygon(t))
                } else {
                    Ok(best)
                }
            })
            .collect()
    }
}

#[derive(PartialEq)]
struct HeapEntry {
    d: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance.
        other.d.total_cmp(&self.d).then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// True when segment [a, b] stays inside the polygon.
fn segment_inside(polygon: &SimplePolygon, a: Point, b: Point, eps: f64) -> bool {
    if a.dist(b) <= eps {
        return true;
    }
    let n = polygon.len();
    for i in 0..n {
        let (c, d) = polygon.edge(i);
        if segments_properly_cross(a, b, c, d) {
            return false;
        }
    }
    // No proper crossing: the segment is either fully inside or fully
    // outside (possibly grazing the boundary); vertices touching the
    // segment can still fold it outside, so probe between touch points.
    let mut params = vec![0.0f64, 1.0];
    let ab = b - a;
    let len2 = ab.dot(ab);
    for i in 0..n {
        let v = polygon.vertex(i);
        if dist_point_segment(v, a, b) <= eps {
            params.push(((v - a).dot(ab) / len2).clamp(0.0, 1.0));
        }
    }
    params.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for w in params.windows(2) {
        if w[1] - w[0] <= 1e-12 {
            continue;
        }
        let mid = lerp(a, b, 0.5 * (w[0] + w[1]));
        if polygon.boundary_distance(mid) > eps && !polygon.contains_strict(mid) {
            return false;
        }
    }
    true
}

/// Query mode for labels and the dynamic index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Nearest,
    Farthest,
}

/// Interior sample points with brute-force site labels.
#[derive(Debug, Clone)]
pub struct LabeledSampleSet {
    /// (sample, sorted label site indices).
    pub samples: Vec<(Point, Vec<usize>)>,
    /// Per-sample gap between the selected label and the next-best one.
    pub margins: Vec<f64>,
}

/// Rejection-sample `count` interior points and label each with its k
/// nearest (or farthest) sites by oracle distance.
///
/// Samples with zero margin are filtered; determinism is per-sample
/// (seed, index) so parallel evaluation cannot change results.
pub fn brute_labels(
    oracle: &VisibilityOracle,
    sites: &[Point],
    k: usize,
    mode: Mode,
    count: usize,
    seed: u64,
) -> Result<LabeledSampleSet> {
    let m = sites.len();
    assert!(k >= 1 && k <= m, "label order out of range");
    let mut samples = Vec::with_capacity(count);
    let mut margins = Vec::with_capacity(count);
    let diam = oracle.polygon.diameter();
    for idx in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(idx as u64 + 1)));
        let p = loop {
            let cand = random_interior_point(&oracle.polygon, &mut rng);
            if oracle.polygon.boundary_distance(cand) > 1e-7 * diam {
                break cand;
            }
        };
        let dists = oracle.distances_from(p, sites)?;
        let mut order: Vec<usize> = (0..m).collect();
        match mode {
            Mode::Nearest => order.sort_by(|&i, &j| dists[i].total_cmp(&dists[j]).then(i.cmp(&j))),
            Mode::Farthest => order.sort_by(|&i, &j| dists[j].total_cmp(&dists[i]).then(i.cmp(&j))),
        }
        let margin = if k < m {
            (dists[order[k]] - dists[order[k - 1]]).abs()
        } else {
            f64::INFINITY
        };
        if margin <= 0.0 {
            continue;
        }
        let mut label: Vec<usize> = order[..k].to_vec();
        label.sort_unstable();
        samples.push((p, label));
        margins.push(margin);
    }
    Ok(LabeledSampleSet { samples, margins })
}

/// Uniform rejection sampling of an interior point.
pub fn random_interior_point<R: Rng>(polygon: &SimplePolygon, rng: &mut R) -> Point {
    let (lo, hi) = polygon.bbox();
    loop {
        let p = Point::new(rng.random_range(lo.x..=hi.x), rng.random_range(lo.y..=hi.y));
        if polygon.contains_strict(p) {
            return p;
        }
    }
}

/// Grid argmin of the max pairwise distance discrepancy among 2-3
/// generators (points, or two points and a segment), refined by local
/// descent. Returns `None` when the best discrepancy stays above
/// 1e-3 x diameter.
pub fn brute_equidistant(
    oracle: &VisibilityOracle,
    points: &[Point],
    segment: Option<(Point, Point)>,
    grid: usize,
) -> Result<Option<Point>> {
    let polygon = &oracle.polygon;
    let (lo, hi) = polygon.bbox();
    let diam = polygon.diameter();
    let disc = |q: Point, o: &VisibilityOracle| -> Result<f64> {
        let mut ds: Vec<f64> = Vec::with_capacity(points.len() + 1);
        for &p in points {
            ds.push(o.distance(q, p)?);
        }
        if let Some((s0, s1)) = segment {
            // Distance to the segment: dense parametric minimum.
            let mut best = f64::INFINITY;
            for i in 0..=64 {
                let t = i as f64 / 64.0;
                best = best.min(o.distance(q, lerp(s0, s1, t))?);
            }
            ds.push(best);
        }
        let mut worst = 0.0f64;
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                worst = worst.max((ds[i] - ds[j]).abs());
            }
        }
        Ok(worst)
    };
    let mut best = (f64::INFINITY, Point::new(0.0, 0.0));
    for iy in 0..grid {
        for ix in 0..grid {
            let q = Point::new(
                lo.x + (hi.x - lo.x) * (ix as f64 + 0.5) / grid as f64,
                lo.y + (hi.y - lo.y) * (iy as f64 + 0.5) / grid as f64,
            );
            if !polygon.contains_strict(q) {
                continue;
            }
            let v = disc(q, oracle)?;
            if v < best.0 {
                best = (v, q);
            }
        }
    }
    if !best.0.is_finite() {
        return Ok(None);
    }
    // Local pattern-search refinement.
    let mut step = diam / grid as f64;
    let mut cur = best;
    for _ in 0..60 {
        let mut improved = false;
        for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
            let q = cur.1 + Point::new(dx, dy) * step;
            if !polygon.contains_strict(q) {
                continue;
            }
            let v = disc(q, oracle)?;
            if v < cur.0 {
                cur = (v, q);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-10 * diam {
                break;
            }
        }
    }
    if cur.0 <= 1e-3 * diam {
        Ok(Some(cur.1))
    } else {
        Ok(None)
    }
}

/// Worst-case instance exhibiting the Omega(k(m-k) + min{nk, n(m-k)})
/// complexity.
///
/// m-k sites cluster tightly on a horizontal segment ending at the
/// origin; k sites cluster on a rising segment a factor 1e3 farther out.
/// A concave y-monotone chain with n-4 vertices hangs just below the
/// first far site and bulges toward the rising segment, so geodesics
/// from the far cluster into the region below the origin wrap its
/// vertices one by one; the cross-cluster bisectors then consist of one
/// hyperbolic arc per wrapped vertex. Four far vertices close the
/// polygon.
pub fn gen_lower_bound_instance(n: usize, m: usize, k: usize) -> (SimplePolygon, Vec<Point>) {
    assert!(n >= 8, "need at least 8 polygon vertices");
    assert!(m >= 2 && k >= 1 && k <= m - 1, "order out of range");
    let near = m - k;
    // Unit scale: far cluster at distance 1, near cluster within 1e-3.
    let near_spacing = 1e-3 / near as f64;
    let far_spacing = 1e-4;
    let dir = Point::new(1.0, 1.0) * (0.5f64.sqrt());
    let mut sites = Vec::with_capacity(m);
    for i in 0..near {
        sites.push(Point::new(-((i + 1) as f64) * near_spacing, 0.0));
    }
    for j in 0..k {
        sites.push(dir * (1.0 + j as f64 * far_spacing));
    }
    let u1 = dir;
    // Chain from just below u_1 descending to below the origin, bulging
    // up toward the rising segment: an arc of a circle whose center lies
    // below the chord. Vertices cluster toward the top so most of them
    // fall inside the span the bisectors actually sweep.
    let chain_n = n - 4;
    let top = u1 + Point::new(1.0, -1.0) * (0.5f64.sqrt() * 2e-3);
    let bottom = Point::new(-0.05, -0.35);
    let chord = bottom - top;
    let chord_len = chord.norm();
    let mid = (top + bottom) * 0.5;
    // Perpendicular pointing away from the interior wedge (down-right).
    let mut perp = chord.perp().normalized().unwrap();
    if perp.y > 0.0 {
        perp = -perp;
    }
    let sag = 0.10 * chord_len;
    let h = (chord_len * chord_len / 4.0 - sag * sag) / (2.0 * sag);
    let center = mid + perp * h;
    let radius = h + sag;
    let ang_top = {
        let d = top - center;
        d.y.atan2(d.x)
    };
    let ang_bot = {
        let d = bottom - center;
        d.y.atan2(d.x)
    };
    let mut sweep = ang_bot - ang_top;
    if sweep > core::f64::consts::PI {
        sweep -= core::f64::consts::TAU;
    } else if sweep < -core::f64::consts::PI {
        sweep += core::f64::consts::TAU;
    }
    let mut chain = Vec::with_capacity(chain_n);
    for t in 0..chain_n {
        // Quadratic clustering toward the top vertex.
        let lambda = (t as f64 / (chain_n - 1) as f64).powf(1.7);
        let ang = ang_top + sweep * lambda;
        chain.push(center + Point::new(ang.cos(), ang.sin()) * radius);
    }
    // Close with four far corners (10x the site extent), walking the
    // chain bottom-up so the interior stays on its upper-left.
    let e = 10.0;
    let mut vertices: Vec<Point> = chain.iter().rev().cloned().collect();
    vertices.push(u1 + dir * (k as f64 * far_spacing) + Point::new(0.3, 0.3));
    vertices.push(Point::new(-e, e * 0.4));
    vertices.push(Point::new(-e, -e));
    vertices.push(Point::new(-0.4, -e));
    let polygon = SimplePolygon::new(vertices).expect("lower-bound instance must be simple");
    for s in &sites {
        debug_assert!(polygon.contains_strict(*s), "site outside polygon");
    }
    (polygon, sites)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

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
    fn oracle_distance_bends() {
        let o = VisibilityOracle::new(l_polygon());
        let d = o
            .distance(Point::new(0.5, 1.75), Point::new(1.75, 0.5))
            .unwrap();
        assert!((d - 1.8027756377319946).abs() < 1e-12);
    }

    #[test]
    fn labels_split_two_sites() {
        let sq = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let o = VisibilityOracle::new(sq);
        let sites = vec![Point::new(0.25, 0.5), Point::new(0.75, 0.5)];
        let set = brute_labels(&o, &sites, 1, Mode::Nearest, 64, 7).unwrap();
        for (p, label) in &set.samples {
            let expect = if p.x < 0.5 { 0 } else { 1 };
            assert_eq!(label, &vec![expect]);
        }
        assert!(set.margins.iter().all(|&m| m > 0.0));
    }

    #[test]
    fn labels_deterministic() {
        let o = VisibilityOracle::new(l_polygon());
        let sites = vec![
            Point::new(0.3, 0.3),
            Point::new(1.7, 0.4),
            Point::new(0.4, 1.7),
        ];
        let a = brute_labels(&o, &sites, 2, Mode::Nearest, 200, 123).unwrap();
        let b = brute_labels(&o, &sites, 2, Mode::Nearest, 200, 123).unwrap();
        assert_eq!(a.samples.len(), b.samples.len());
        for (x, y) in a.samples.iter().zip(b.samples.iter()) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, y.1);
        }
    }

    #[test]
    fn equidistant_grid_finds_circumcenter() {
        let sq = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let o = VisibilityOracle::new(sq);
        let pts = vec![
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        ];
        let c = brute_equidistant(&o, &pts, None, 40).unwrap().unwrap();
        assert!(c.dist(Point::new(0.5, 0.425)) < 1e-4);
    }

    #[test]
    fn equidistant_grid_rejects_collinear() {
        let sq = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let o = VisibilityOracle::new(sq);
        let pts = vec![
            Point::new(0.1, 0.5),
            Point::new(0.5, 0.5),
            Point::new(0.9, 0.5),
        ];
        assert!(brute_equidistant(&o, &pts, None, 40).unwrap().is_none());
    }

    #[test]
    fn lower_bound_instance_is_simple() {
        for (n, m, k) in [(8, 4, 2), (20, 6, 3), (60, 10, 5)] {
            let (p, sites) = gen_lower_bound_instance(n, m, k);
            assert_eq!(p.len(), n);
            assert_eq!(sites.len(), m);
        }
    }
}
