//! Topological structure of a diagram (adjacency graph with exact
//! degree-1/degree-3 vertices) and its expansion into the full diagram:
//! every suppressed degree-2 chain is realized as a sequence of line /
//! hyperbolic arc pieces anchored by (anchor, offset) pairs per site.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::Point;
use crate::kernel::GeodesicKernel;
use crate::{Error, Result};

/// Which distance sense the diagram's cells use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramKind {
    /// Nearest-point and order-k diagrams (cells own their k closest sites).
    Nearest,
    /// Farthest-point diagram.
    Farthest,
}

/// A degree-1 or degree-3 vertex of the diagram with its defining sites.
#[derive(Debug, Clone)]
pub struct DiagramVertex {
    pub position: Point,
    pub degree: u8,
    pub sites: Vec<usize>,
}

/// An adjacency-graph edge: two cells, the site pair that defines the
/// bisector between them and the diagram vertices terminating the chain.
#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub cell_a: usize,
    pub cell_b: usize,
    /// (site of cell_a not in cell_b, site of cell_b not in cell_a).
    pub pair: (usize, usize),
    pub u: usize,
    pub v: usize,
}

/// Degree-2-suppressed dual of a Voronoi diagram: cells, exact vertex
/// positions and cell-adjacency edges labeled by site pairs.
#[derive(Debug, Clone)]
pub struct AdjacencyGraph {
    pub kind: DiagramKind,
    /// Sorted site-index sets; singletons for nearest/farthest, k-sets
    /// for order-k.
    pub cells: Vec<Vec<usize>>,
    pub vertices: Vec<DiagramVertex>,
    pub edges: Vec<GraphEdge>,
}

impl AdjacencyGraph {
    pub fn cell_index(&self, sites: &[usize]) -> Option<usize> {
        self.cells.iter().position(|c| c == sites)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Line,
    Hyperbola,
}

/// One maximal piece of a bisector chain with fixed anchors: every point
/// p on the piece satisfies d1 + |p - a1| = d2 + |p - a2|.
#[derive(Debug, Clone)]
pub struct ArcPiece {
    pub kind: ArcKind,
    pub a1: Point,
    pub a2: Point,
    pub d1: f64,
    pub d2: f64,
    pub start: Point,
    pub end: Point,
}

impl ArcPiece {
    /// Anchored distance difference; zero on the piece.
    pub fn residual(&self, p: Point) -> f64 {
        (self.d1 + p.dist(self.a1)) - (self.d2 + p.dist(self.a2))
    }

    fn frame(&self) -> ConicFrame {
        ConicFrame::new(self.a1, self.a2, self.d2 - self.d1)
    }

    /// Curve parameter of a point (its own parameterization; monotone
    /// along the piece).
    pub fn param_of(&self, p: Point) -> f64 {
        self.frame().param_of(p)
    }

    pub fn point_at_param(&self, mu: f64) -> Point {
        self.frame().point_at(mu)
    }

    /// Polyline approximation with chord sagitta at most `max_sagitta`.
    pub fn sample(&self, max_sagitta: f64) -> Vec<Point> {
        if self.kind == ArcKind::Line {
            return vec![self.start, self.end];
        }
        let frame = self.frame();
        let mu0 = frame.param_of(self.start);
        let mu1 = frame.param_of(self.end);
        let mut out = vec![self.start];
        subdivide(&frame, mu0, mu1, self.start, self.end, max_sagitta, 0, &mut out);
        out.push(self.end);
        out
    }
}

fn subdivide(
    frame: &ConicFrame,
    mu0: f64,
    mu1: f64,
    p0: Point,
    p1: Point,
    max_sagitta: f64,
    depth: u32,
    out: &mut Vec<Point>,
) {
    if depth > 24 {
        return;
    }
    let mid_mu = 0.5 * (mu0 + mu1);
    let mid = frame.point_at(mid_mu);
    let sagitta = crate::geom::dist_point_segment(mid, p0, p1);
    if sagitta <= max_sagitta {
        return;
    }
    subdivide(frame, mu0, mid_mu, p0, mid, max_sagitta, depth + 1, out);
    out.push(mid);
    subdivide(frame, mid_mu, mu1, mid, p1, max_sagitta, depth + 1, out);
}

/// Local frame for the conic locus (d1 + |p - a1|) = (d2 + |p - a2|),
/// i.e. |p - a1| - |p - a2| = c with c = d2 - d1. Degenerate c ~ 0 is
/// the perpendicular bisector line of the anchors.
#[derive(Debug, Clone)]
struct ConicFrame {
    mid: Point,
    axis: Point,
    perp: Point,
    /// Semi-major a (half |c|), semi-minor b; `line` when c ~ 0.
    ah: f64,
    bh: f64,
    /// Which focus the branch bends around: +1 wraps a2 (p farther from a1).
    branch: f64,
    line: bool,
}

impl ConicFrame {
    fn new(a1: Point, a2: Point, c: f64) -> Self {
        let mid = (a1 + a2) * 0.5;
        let focal = a2 - a1;
        let fl = focal.norm();
        let axis = if fl > 0.0 { focal / fl } else { Point::new(1.0, 0.0) };
        let perp = axis.perp();
        let cf = fl * 0.5;
        let ah = 0.5 * c.abs();
        let b2 = cf * cf - ah * ah;
        let line = c.abs() <= 1e-12 * (fl + 1.0) || b2 <= 0.0;
        ConicFrame {
            mid,
            axis,
            perp,
            ah,
            bh: if b2 > 0.0 { b2.sqrt() } else { 0.0 },
            branch: if c >= 0.0 { 1.0 } else { -1.0 },
            line,
        }
    }

    /// Monotone curve parameter; for the line case the perp coordinate.
    fn param_of(&self, p: Point) -> f64 {
        let d = p - self.mid;
        let eta = d.dot(self.perp);
        if self.line || self.bh <= 0.0 {
            eta
        } else {
            (eta / self.bh).asinh()
        }
    }

    fn point_at(&self, mu: f64) -> Point {
        if self.line {
            return self.mid + self.perp * mu;
        }
        self.mid + self.axis * (self.branch * self.ah * mu.cosh()) + self.perp * (self.bh * mu.sinh())
    }
}

/// Intersections of the conic |x-a1| - |x-a2| = c with the ray
/// origin + t*dir (t >= t_min), verified unsquared.
pub(crate) fn conic_ray_intersections(
    a1: Point,
    a2: Point,
    c: f64,
    origin: Point,
    dir: Point,
    t_min: f64,
    eps: f64,
) -> Vec<Point> {
    let mut out = Vec::new();
    // |x-a1|^2 - |x-a2|^2 is linear in x; on the conic it equals
    // c * (|x-a1| + |x-a2|).
    let lin = |x: Point| -> f64 { (x - a1).dot(x - a1) - (x - a2).dot(x - a2) };
    if c.abs() <= 1e-14 {
        // Perpendicular bisector line: solve L(t) = 0 directly.
        let l0 = lin(origin);
        let l1 = lin(origin + dir);
        let dl = l1 - l0;
        if dl.abs() > 0.0 {
            let t = -l0 / dl;
            if t >= t_min {
                out.push(origin + dir * t);
            }
        }
        return out;
    }
    let l0 = lin(origin);
    let dl = lin(origin + dir) - l0;
    // u1(t) = |x(t) - a1| = L(t)/(2c) + c/2, then square to a quadratic.
    let p0 = l0 / (2.0 * c) + 0.5 * c;
    let p1 = dl / (2.0 * c);
    let w = origin - a1;
    let q0 = w.dot(w);
    let q1 = 2.0 * w.dot(dir);
    let q2 = dir.dot(dir);
    let aa = p1 * p1 - q2;
    let bb = 2.0 * p0 * p1 - q1;
    let cc = p0 * p0 - q0;
    let mut roots = Vec::new();
    if aa.abs() <= 1e-14 * (bb.abs() + cc.abs()).max(1.0) {
        if bb.abs() > 0.0 {
            roots.push(-cc / bb);
        }
    } else {
        let disc = bb * bb - 4.0 * aa * cc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            roots.push((-bb + sq) / (2.0 * aa));
            roots.push((-bb - sq) / (2.0 * aa));
        }
    }
    for t in roots {
        if !(t >= t_min) {
            continue;
        }
        let x = origin + dir * t;
        let resid = (x.dist(a1) - x.dist(a2)) - c;
        if resid.abs() <= eps {
            out.push(x);
        }
    }
    out
}

/// Per-site anchor sequence along a traced chain: the turn vertices of
/// pi(site, u) walked backward to the junction, then forward along
/// pi(site, v), with geodesic offsets from the site.
fn anchor_sequence(
    kernel: &GeodesicKernel,
    site: Point,
    u: Point,
    v: Point,
) -> Result<Vec<(Point, f64)>> {
    let pu = kernel.geodesic_path(site, u)?;
    let pv = kernel.geodesic_path(site, v)?;
    let eps = kernel.eps();
    let list_a: Vec<(Point, f64)> = pu
        .vertices()
        .iter()
        .zip(pu.cumulative())
        .take(pu.vertices().len().max(1) - 1)
        .map(|(p, d)| (*p, *d))
        .collect();
    let list_b: Vec<(Point, f64)> = pv
        .vertices()
        .iter()
        .zip(pv.cumulative())
        .take(pv.vertices().len().max(1) - 1)
        .map(|(p, d)| (*p, *d))
        .collect();
    let mut common = 0;
    while common < list_a.len()
        && common < list_b.len()
        && list_a[common].0.dist(list_b[common].0) <= eps
    {
        common += 1;
    }
    let common = common.max(1);
    let mut seq: Vec<(Point, f64)> = if list_a.is_empty() {
        vec![(site, 0.0)]
    } else {
        list_a[common - 1..].iter().rev().cloned().collect()
    };
    seq.extend_from_slice(&list_b[common.min(list_b.len())..]);
    if seq.is_empty() {
        seq.push((site, 0.0));
    }
    Ok(seq)
}

/// Trace the full bisector chain of a site pair between the exact
/// diagram vertices u and v. The anchors advance along the four geodesic
/// paths pi(s_i', u) and pi(s_i', v); each fixed-anchor piece is
/// intersected analytically with the next anchor hand-off ray.
pub fn trace_common_boundary(
    kernel: &GeodesicKernel,
    s1: Point,
    s2: Point,
    u: Point,
    v: Point,
) -> Result<Vec<ArcPiece>> {
    let eps = kernel.eps();
    if u.dist(v) <= eps {
        return Ok(Vec::new());
    }
    let seq1 = anchor_sequence(kernel, s1, u, v)?;
    let seq2 = anchor_sequence(kernel, s2, u, v)?;
    let budget = 2 * (seq1.len() + seq2.len()) + 16;
    for flip in [false, true] {
        match trace_once(kernel, &seq1, &seq2, u, v, flip, budget, s1, s2) {
            Ok(pieces) => return Ok(pieces),
            Err(Error::TraceDiverged) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::TraceDiverged)
}

#[allow(clippy::too_many_arguments)]
fn trace_once(
    kernel: &GeodesicKernel,
    seq1: &[(Point, f64)],
    seq2: &[(Point, f64)],
    u: Point,
    v: Point,
    flip: bool,
    budget: usize,
    s1: Point,
    s2: Point,
) -> Result<Vec<ArcPiece>> {
    let eps = kernel.eps();
    let diam = kernel.diameter();
    let mut i1 = 0usize;
    let mut i2 = 0usize;
    let mut w = u;
    let mut pieces: Vec<ArcPiece> = Vec::new();
    let mut last_dir: Option<Point> = None;
    while pieces.len() <= budget {
        let (a1, d1) = seq1[i1];
        let (a2, d2) = seq2[i2];
        let c = d2 - d1; // |x-a1| - |x-a2| on the bisector
        let at_end1 = i1 + 1 == seq1.len();
        let at_end2 = i2 + 1 == seq2.len();
        // March direction at w.
        let g1 = (w - a1).normalized().unwrap_or(Point::new(1.0, 0.0));
        let g2 = (w - a2).normalized().unwrap_or(Point::new(0.0, 1.0));
        let grad = g1 - g2;
        let mut tangent = grad.perp().normalized().unwrap_or(Point::new(0.0, 1.0));
        match last_dir {
            Some(prev) => {
                if tangent.dot(prev) < 0.0 {
                    tangent = -tangent;
                }
            }
            None => {
                let toward = v - u;
                if tangent.dot(toward) < 0.0 {
                    tangent = -tangent;
                }
                if flip {
                    tangent = -tangent;
                }
            }
        }
        let frame = ConicFrame::new(a1, a2, c);
        let mu_w = frame.param_of(w);
        let probe = frame.param_of(w + tangent * (1e-6 * diam));
        let sign = if probe >= mu_w { 1.0 } else { -1.0 };
        // Candidate hand-off points for each site's next anchor.
        let mut best: Option<(f64, usize)> = None; // (signed mu delta, which site)
        let mut consider = |pt: Point, which: usize, best: &mut Option<(f64, usize)>| {
            let dm = sign * (frame.param_of(pt) - mu_w);
            if dm > 1e-12 && best.map(|(b, _)| dm < b).unwrap_or(true) {
                *best = Some((dm, which));
            }
        };
        let handoff_ray = |cur: (Point, f64), next: (Point, f64)| -> (Point, Point) {
            // The fan boundary extends the segment nearer->farther beyond
            // the farther anchor (ranked by geodesic offset).
            let (near, far) = if next.1 > cur.1 {
                (cur.0, next.0)
            } else {
                (next.0, cur.0)
            };
            (far, far - near)
        };
        if !at_end1 {
            let (o, d) = handoff_ray(seq1[i1], seq1[i1 + 1]);
            for pt in conic_ray_intersections(a1, a2, c, o, d, 0.0, 1e-6 * diam) {
                consider(pt, 1, &mut best);
            }
        }
        if !at_end2 {
            let (o, d) = handoff_ray(seq2[i2], seq2[i2 + 1]);
            for pt in conic_ray_intersections(a1, a2, c, o, d, 0.0, 1e-6 * diam) {
                consider(pt, 2, &mut best);
            }
        }
        let mu_v = frame.param_of(v);
        let v_ahead = sign * (mu_v - mu_w) > -1e-12;
        let v_resid = ((v.dist(a1) - v.dist(a2)) - c).abs();
        if at_end1 && at_end2 {
            if v_resid > 1e-5 * diam || !v_ahead {
                return Err(Error::TraceDiverged);
            }
            push_piece(&mut pieces, a1, a2, d1, d2, w, v, eps);
            return verify_chain(kernel, pieces, s1, s2, diam);
        }
        let Some((dm, which)) = best else {
            // Anchors left but no hand-off ahead; accept v if it closes
            // the piece, otherwise the march went the wrong way.
            if v_resid <= 1e-7 * diam && v_ahead {
                push_piece(&mut pieces, a1, a2, d1, d2, w, v, eps);
                return verify_chain(kernel, pieces, s1, s2, diam);
            }
            return Err(Error::TraceDiverged);
        };
        let x = frame.point_at(mu_w + sign * dm);
        push_piece(&mut pieces, a1, a2, d1, d2, w, x, eps);
        if which == 1 {
            i1 += 1;
            // Coincident hand-off on the other sequence.
            if !at_end2 {
                let (o, d) = handoff_ray(seq2[i2], seq2[i2 + 1]);
                if conic_ray_intersections(a1, a2, c, o, d, 0.0, 1e-6 * diam)
                    .iter()
                    .any(|p| p.dist(x) <= 1e-9 * diam)
                {
                    i2 += 1;
                }
            }
        } else {
            i2 += 1;
            if !at_end1 {
                let (o, d) = handoff_ray(seq1[i1], seq1[i1 + 1]);
                if conic_ray_intersections(a1, a2, c, o, d, 0.0, 1e-6 * diam)
                    .iter()
                    .any(|p| p.dist(x) <= 1e-9 * diam)
                {
                    i1 += 1;
                }
            }
        }
        last_dir = Some((x - w).normalized().unwrap_or(tangent));
        w = x;
    }
    Err(Error::TraceDiverged)
}

#[allow(clippy::too_many_arguments)]
fn push_piece(
    pieces: &mut Vec<ArcPiece>,
    a1: Point,
    a2: Point,
    d1: f64,
    d2: f64,
    start: Point,
    end: Point,
    eps: f64,
) {
    if start.dist(end) <= eps {
        return; // suppress zero-length pieces at hand-off ties
    }
    let kind = if (d2 - d1).abs() <= 1e-11 * (1.0 + a1.dist(a2)) {
        ArcKind::Line
    } else {
        ArcKind::Hyperbola
    };
    pieces.push(ArcPiece {
        kind,
        a1,
        a2,
        d1,
        d2,
        start,
        end,
    });
}

/// Midpoint check of each piece against true geodesic distances.
fn verify_chain(
    kernel: &GeodesicKernel,
    pieces: Vec<ArcPiece>,
    s1: Point,
    s2: Point,
    diam: f64,
) -> Result<Vec<ArcPiece>> {
    for piece in &pieces {
        let frame = piece.frame();
        let mu = 0.5 * (frame.param_of(piece.start) + frame.param_of(piece.end));
        let mid = frame.point_at(mu);
        let t1 = kernel.geodesic_distance(s1, mid)?;
        let t2 = kernel.geodesic_distance(s2, mid)?;
        let anchored1 = piece.d1 + mid.dist(piece.a1);
        let anchored2 = piece.d2 + mid.dist(piece.a2);
        if (t1 - anchored1).abs() > 1e-6 * diam
            || (t2 - anchored2).abs() > 1e-6 * diam
            || (t1 - t2).abs() > 1e-6 * diam
        {
            return Err(Error::TraceDiverged);
        }
    }
    Ok(pieces)
}

/// Full diagram: the adjacency graph plus one realized chain per edge.
#[derive(Debug, Clone)]
pub struct VoronoiDiagram {
    pub graph: AdjacencyGraph,
    /// Chains parallel to `graph.edges`, oriented u -> v with cell_a on
    /// the left.
    pub edge_chains: Vec<Vec<ArcPiece>>,
}

/// Expand a topological structure into the full diagram by tracing every
/// suppressed degree-2 chain. Normalizes each edge so cell_a lies on the
/// left of the chain's u -> v orientation.
pub fn expand_topology(
    kernel: &GeodesicKernel,
    sites: &[Point],
    graph: &AdjacencyGraph,
) -> Result<VoronoiDiagram> {
    let mut graph = graph.clone();
    let mut chains = Vec::with_capacity(graph.edges.len());
    for edge in graph.edges.iter_mut() {
        let (su, sv) = edge.pair;
        let u = graph.vertices[edge.u].position;
        let v = graph.vertices[edge.v].position;
        let chain = trace_common_boundary(kernel, sites[su], sites[sv], u, v)?;
        if let Some(first) = chain.first() {
            // Probe which side of the chain belongs to cell_a.
            let frame = first.frame();
            let mu0 = frame.param_of(first.start);
            let mu1 = frame.param_of(first.end);
            let mid = frame.point_at(0.5 * (mu0 + mu1));
            let next = frame.point_at(0.5 * (mu0 + mu1) + (mu1 - mu0) * 1e-3);
            let tangent = (next - mid).normalized().unwrap_or(Point::new(1.0, 0.0));
            let off = tangent.perp() * (1e-5 * kernel.diameter());
            let left = mid + off;
            let left_inside = kernel.polygon().contains_strict(left);
            let probe = if left_inside { left } else { mid - off };
            let d_a = kernel.geodesic_distance(sites[edge.pair.0], probe)?;
            let d_b = kernel.geodesic_distance(sites[edge.pair.1], probe)?;
            let a_owns_probe = match graph.kind {
                DiagramKind::Nearest => d_a < d_b,
                DiagramKind::Farthest => d_a > d_b,
            };
            let a_on_left = a_owns_probe == left_inside;
            if !a_on_left {
                core::mem::swap(&mut edge.cell_a, &mut edge.cell_b);
                edge.pair = (edge.pair.1, edge.pair.0);
            }
            let _ = (su, sv);
        }
        chains.push(chain);
    }
    Ok(VoronoiDiagram {
        graph,
        edge_chains: chains,
    })
}

/// Structural point location in an expanded diagram: shoot an upward
/// ray, find the lowest chain crossing, and read the cell from the
/// chain's orientation; with no crossing the boundary owner cycle
/// decides.
pub struct DiagramLocator<'a> {
    kernel: &'a GeodesicKernel,
    diagram: &'a VoronoiDiagram,
    /// (clockwise arc from vertex 0, owning cell) boundary intervals.
    boundary_cycle: Vec<(f64, usize)>,
}

impl<'a> DiagramLocator<'a> {
    pub fn new(
        kernel: &'a GeodesicKernel,
        sites: &[Point],
        diagram: &'a VoronoiDiagram,
    ) -> Result<Self> {
        // Split the boundary at degree-1 vertices and identify each
        // interval's owner by ranking sites at the interval midpoint.
        let origin = (0usize, 0.0f64);
        let mut cuts: Vec<f64> = Vec::new();
        for vert in &diagram.graph.vertices {
            if vert.degree == 1 {
                let bp = kernel.boundary_point(vert.position, origin);
                cuts.push(bp.arc);
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() <= kernel.eps());
        let mut boundary_cycle = Vec::new();
        let perim = kernel.perimeter();
        if cuts.is_empty() {
            boundary_cycle.push((0.0, 0));
        } else {
            for i in 0..cuts.len() {
                let a = cuts[i];
                let b = if i + 1 < cuts.len() {
                    cuts[i + 1]
                } else {
                    cuts[0] + perim
                };
                let mid_arc = (0.5 * (a + b)).rem_euclid(perim);
                let coord = kernel.coord_at_cw_arc(origin, mid_arc);
                let p = kernel.coord_to_point(coord);
                // Pull the probe slightly inside.
                let (ea, eb) = kernel.polygon().edge(coord.0);
                let inward = (eb - ea).perp().normalized().unwrap_or(Point::new(0.0, 1.0));
                let q = p + inward * (1e-7 * kernel.diameter());
                let q = if kernel.polygon().contains_strict(q) { q } else { p };
                let cell = rank_cell(kernel, sites, &diagram.graph, q)?;
                boundary_cycle.push((a, cell));
            }
        }
        Ok(DiagramLocator {
            kernel,
            diagram,
            boundary_cycle,
        })
    }

    /// Cell index containing q (points off every chain by more than the
    /// numeric tolerance are classified reliably).
    pub fn locate_cell(&self, q: Point) -> usize {
        let diam = self.kernel.diameter();
        let mut best: Option<(f64, usize)> = None; // (crossing y, cell below)
        for (edge_idx, chain) in self.diagram.edge_chains.iter().enumerate() {
            for piece in chain {
                for (y, tangent_x) in vertical_crossings(piece, q.x) {
                    if y <= q.y + 1e-12 * diam {
                        continue;
                    }
                    if tangent_x.abs() <= 1e-12 {
                        continue; // grazing tangency
                    }
                    let edge = &self.diagram.graph.edges[edge_idx];
                    // Chain runs u->v with cell_a on the left; the region
                    // below the crossing is left of the tangent iff the
                    // tangent points in -x.
                    let below = if tangent_x < 0.0 { edge.cell_a } else { edge.cell_b };
                    if best.map(|(by, _)| y < by).unwrap_or(true) {
                        best = Some((y, below));
                    }
                }
            }
        }
        if let Some((_, cell)) = best {
            return cell;
        }
        // No chain above: the boundary interval hit by the ray owns q.
        if self.boundary_cycle.len() == 1 {
            return self.boundary_cycle[0].1;
        }
        let origin = (0usize, 0.0f64);
        let hit = self.boundary_ray_up(q);
        let arc = self.kernel.boundary_point(hit, origin).arc;
        let mut owner = self.boundary_cycle.last().unwrap().1;
        for &(start, cell) in &self.boundary_cycle {
            if start <= arc + 1e-12 * diam {
                owner = cell;
            }
        }
        owner
    }

    fn boundary_ray_up(&self, q: Point) -> Point {
        let poly = self.kernel.polygon();
        let mut best_t = f64::INFINITY;
        let mut best = q;
        for i in 0..poly.len() {
            let (a, b) = poly.edge(i);
            if let Some((t, _)) = crate::geom::ray_segment_intersection(
                q,
                Point::new(0.0, 1.0),
                a,
                b,
                1e-12 * self.kernel.diameter(),
                self.kernel.eps(),
            ) {
                if t < best_t {
                    best_t = t;
                    best = q + Point::new(0.0, t);
                }
            }
        }
        best
    }
}

/// Crossings of a piece with the vertical ray x = qx: (y, tangent.x at
/// the crossing, oriented along the chain direction).
fn vertical_crossings(piece: &ArcPiece, qx: f64) -> Vec<(f64, f64)> {
    let frame = piece.frame();
    let mu0 = frame.param_of(piece.start);
    let mu1 = frame.param_of(piece.end);
    let (lo, hi) = if mu0 <= mu1 { (mu0, mu1) } else { (mu1, mu0) };
    let span = hi - lo;
    if span <= 0.0 {
        return Vec::new();
    }
    let steps = 32;
    let mut out = Vec::new();
    let mut prev_mu = lo;
    let mut prev = frame.point_at(prev_mu);
    for i in 1..=steps {
        let mu = lo + span * i as f64 / steps as f64;
        let p = frame.point_at(mu);
        if (prev.x - qx <= 0.0) != (p.x - qx <= 0.0) {
            // Bisect in mu for the exact crossing.
            let (mut a, mut b) = (prev_mu, mu);
            let mut fa = frame.point_at(a).x - qx;
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let fm = frame.point_at(m).x - qx;
                if (fa <= 0.0) != (fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            let mu_c = 0.5 * (a + b);
            let pc = frame.point_at(mu_c);
            let step = (1e-9f64).max(span * 1e-9);
            let ahead = frame.point_at(mu_c + step);
            let behind = frame.point_at(mu_c - step);
            let mut tan = (ahead - behind).normalized().unwrap_or(Point::new(1.0, 0.0));
            // Orient tangent along the chain direction (start -> end).
            if mu1 < mu0 {
                tan = -tan;
            }
            out.push((pc.y, tan.x));
        }
        prev_mu = mu;
        prev = p;
    }
    out
}

/// The cell of `graph` owning q, determined by ranking site distances.
pub fn rank_cell(
    kernel: &GeodesicKernel,
    sites: &[Point],
    graph: &AdjacencyGraph,
    q: Point,
) -> Result<usize> {
    let k = graph.cells.first().map(|c| c.len()).unwrap_or(1);
    let mut dists: Vec<(f64, usize)> = Vec::with_capacity(sites.len());
    for (i, s) in sites.iter().enumerate() {
        dists.push((kernel.geodesic_distance(*s, q)?, i));
    }
    match graph.kind {
        DiagramKind::Nearest => dists.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))),
        DiagramKind::Farthest => dists.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1))),
    }
    let mut label: Vec<usize> = dists[..k].iter().map(|d| d.1).collect();
    label.sort_unstable();
    graph.cell_index(&label).ok_or(Error::InconsistentLevels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::lerp;
    use crate::polygon::SimplePolygon;

    fn square_kernel() -> GeodesicKernel {
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

    fn l_kernel() -> GeodesicKernel {
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
    fn straight_bisector_is_one_line_piece() {
        let k = square_kernel();
        let chain = trace_common_boundary(
            &k,
            Point::new(0.25, 0.5),
            Point::new(0.75, 0.5),
            Point::new(0.5, 0.0),
            Point::new(0.5, 1.0),
        )
        .unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].kind, ArcKind::Line);
        assert!(chain[0].start.dist(Point::new(0.5, 0.0)) < 1e-9);
        assert!(chain[0].end.dist(Point::new(0.5, 1.0)) < 1e-9);
    }

    #[test]
    fn empty_chain_for_coincident_endpoints() {
        let k = square_kernel();
        let u = Point::new(0.5, 0.0);
        let chain =
            trace_common_boundary(&k, Point::new(0.25, 0.5), Point::new(0.75, 0.5), u, u).unwrap();
        assert!(chain.is_empty());
    }

    #[test]
    fn symmetric_l_bisector_is_straight() {
        // Mirror-image sites across x = y: the bisector is the diagonal
        // segment from (0,0) to (1,1), a single line piece.
        let k = l_kernel();
        let chain = trace_common_boundary(
            &k,
            Point::new(0.25, 1.5),
            Point::new(1.5, 0.25),
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
        )
        .unwrap();
        assert!(chain.iter().all(|p| p.kind == ArcKind::Line));
        let len: f64 = chain.iter().map(|p| p.start.dist(p.end)).sum();
        assert!((len - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn bent_bisector_has_hyperbolic_piece() {
        let k = l_kernel();
        let s1 = Point::new(0.3, 1.7);
        let s2 = Point::new(1.6, 0.3);
        // Boundary endpoints of the bisector by dense scan (test oracle).
        let mut hits = Vec::new();
        let samples = 4000;
        let mut prev: Option<(Point, f64)> = None;
        for i in 0..=samples {
            let s = k.perimeter() * i as f64 / samples as f64;
            let coord = k.coord_at_cw_arc((0, 0.0), s);
            let p = k.coord_to_point(coord);
            let f = k.geodesic_distance(s1, p).unwrap() - k.geodesic_distance(s2, p).unwrap();
            if let Some((pp, pf)) = prev {
                if (pf <= 0.0) != (f <= 0.0) {
                    let (mut a, mut b) = (pp, p);
                    let mut fa = pf;
                    for _ in 0..60 {
                        let m = lerp(a, b, 0.5);
                        let fm = k.geodesic_distance(s1, m).unwrap()
                            - k.geodesic_distance(s2, m).unwrap();
                        if (fa <= 0.0) != (fm <= 0.0) {
                            b = m;
                        } else {
                            a = m;
                            fa = fm;
                        }
                    }
                    hits.push(lerp(a, b, 0.5));
                }
            }
            prev = Some((p, f));
        }
        assert_eq!(hits.len(), 2, "bisector should cross the boundary twice");
        let chain = trace_common_boundary(&k, s1, s2, hits[0], hits[1]).unwrap();
        assert!(chain.iter().any(|p| p.kind == ArcKind::Hyperbola));
        // Every piece satisfies its defining equation at interior samples.
        let diam = k.diameter();
        for piece in &chain {
            for i in 1..10 {
                let mu = piece.param_of(piece.start)
                    + (piece.param_of(piece.end) - piece.param_of(piece.start)) * i as f64 / 10.0;
                let p = piece.point_at_param(mu);
                assert!(piece.residual(p).abs() <= 1e-8 * diam);
                let true_resid =
                    k.geodesic_distance(s1, p).unwrap() - k.geodesic_distance(s2, p).unwrap();
                assert!(true_resid.abs() <= 1e-8 * diam);
            }
        }
    }

    #[test]
    fn expand_three_site_square() {
        let k = square_kernel();
        let sites = vec![
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        ];
        let c = Point::new(0.5, 0.425);
        let graph = AdjacencyGraph {
            kind: DiagramKind::Nearest,
            cells: vec![vec![0], vec![1], vec![2]],
            vertices: vec![
                DiagramVertex { position: c, degree: 3, sites: vec![0, 1, 2] },
                DiagramVertex { position: Point::new(0.5, 0.0), degree: 1, sites: vec![0, 1] },
                DiagramVertex { position: Point::new(0.0, 0.675), degree: 1, sites: vec![0, 2] },
                DiagramVertex { position: Point::new(1.0, 0.675), degree: 1, sites: vec![1, 2] },
            ],
            edges: vec![
                GraphEdge { cell_a: 0, cell_b: 1, pair: (0, 1), u: 1, v: 0 },
                GraphEdge { cell_a: 0, cell_b: 2, pair: (0, 2), u: 2, v: 0 },
                GraphEdge { cell_a: 1, cell_b: 2, pair: (1, 2), u: 3, v: 0 },
            ],
        };
        let vd = expand_topology(&k, &sites, &graph).unwrap();
        assert_eq!(vd.edge_chains.len(), 3);
        for chain in &vd.edge_chains {
            assert_eq!(chain.len(), 1);
            assert_eq!(chain[0].kind, ArcKind::Line);
        }
        let locator = DiagramLocator::new(&k, &sites, &vd).unwrap();
        assert_eq!(vd.graph.cells[locator.locate_cell(Point::new(0.3, 0.3))], vec![0]);
        assert_eq!(vd.graph.cells[locator.locate_cell(Point::new(0.7, 0.3))], vec![1]);
        assert_eq!(vd.graph.cells[locator.locate_cell(Point::new(0.5, 0.9))], vec![2]);
    }

    #[test]
    fn single_cell_graph_expands_trivially() {
        let k = square_kernel();
        let sites = vec![Point::new(0.5, 0.5)];
        let graph = AdjacencyGraph {
            kind: DiagramKind::Nearest,
            cells: vec![vec![0]],
            vertices: vec![],
            edges: vec![],
        };
        let vd = expand_topology(&k, &sites, &graph).unwrap();
        assert!(vd.edge_chains.is_empty());
        let locator = DiagramLocator::new(&k, &sites, &vd).unwrap();
        assert_eq!(locator.locate_cell(Point::new(0.1, 0.9)), 0);
    }
}
