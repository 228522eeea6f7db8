//! Polygon-sweep construction of the topological structure of the
//! geodesic nearest-point Voronoi diagram: thin-triangle augmentation,
//! the symbolic beach sequence B(x), the four event types keyed by
//! boundary points, and adjacency-graph assembly.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::center::{equidistant3_candidates, equidistant_boundary_pair, first_key_at_distance_from};
use crate::geom::Point;
use crate::kernel::{GeodesicKernel, GeodesicPath};
use crate::polygon::SimplePolygon;
use crate::topology::{AdjacencyGraph, DiagramKind, DiagramVertex, GraphEdge};
use crate::{Error, Result};

/// The polygon P' = P plus a long thin triangle, with the sweep origin o
/// at the triangle apex and a map from P' boundary edges back to P.
pub struct AugmentedPolygon {
    pub kernel: GeodesicKernel,
    /// Sweep origin (the apex) as a boundary coordinate of P'.
    pub origin: (usize, f64),
    /// For each P' edge, the P edge it came from; `None` on the triangle.
    pub edge_map: Vec<Option<usize>>,
}

/// Attach a long, very thin triangle at the bottom-most (convex) vertex
/// so the sweep from the apex covers all of P. Distances between points
/// of P are unchanged: any path through the sliver could be shortcut
/// along the base edge it crosses.
pub fn augment(polygon: &SimplePolygon) -> Result<AugmentedPolygon> {
    let n = polygon.len();
    let diam = polygon.diameter();
    let base_w = 1e-3 * diam;
    let mut low = 0usize;
    for i in 1..n {
        let v = polygon.vertex(i);
        let l = polygon.vertex(low);
        if v.y < l.y || (v.y == l.y && v.x < l.x) {
            low = i;
        }
    }
    let v_star = polygon.vertex(low);
    let apex = v_star + Point::new(0.0, -diam);
    // Base on the outgoing edge first; the incoming edge is the fallback
    // when the outgoing one leans left over the apex sliver.
    let attempts = [
        (low, true),  // base on edge (v*, next)
        ((low + n - 1) % n, false), // base on edge (prev, v*)
    ];
    for (edge, outgoing) in attempts {
        let (a, b) = polygon.edge(edge);
        let len = a.dist(b);
        let t = (base_w / len).min(0.5);
        let mut vertices: Vec<Point> = Vec::with_capacity(n + 2);
        let mut edge_map: Vec<Option<usize>> = Vec::with_capacity(n + 2);
        // Rebuild the chain starting at the apex.
        if outgoing {
            // ... v*, apex, base, (rest of edge), ...
            let base = crate::geom::lerp(a, b, t);
            vertices.push(apex);
            edge_map.push(None); // apex -> base
            vertices.push(base);
            edge_map.push(Some(edge)); // base -> next vertex
            let mut i = (edge + 1) % n;
            while i != low {
                vertices.push(polygon.vertex(i));
                edge_map.push(Some(i));
                i = (i + 1) % n;
            }
            vertices.push(v_star);
            edge_map.push(None); // v* -> apex
        } else {
            // ..., base, apex, v*, ...
            let base = crate::geom::lerp(a, b, 1.0 - t);
            vertices.push(apex);
            edge_map.push(None); // apex -> v*
            vertices.push(v_star);
            edge_map.push(Some(low));
            let mut i = (low + 1) % n;
            while i != edge {
                vertices.push(polygon.vertex(i));
                edge_map.push(Some(i));
                i = (i + 1) % n;
            }
            vertices.push(polygon.vertex(edge));
            edge_map.push(Some(edge));
            vertices.push(base);
            edge_map.push(None); // base -> apex
        }
        if let Ok(p_aug) = SimplePolygon::new(vertices) {
            return Ok(AugmentedPolygon {
                kernel: GeodesicKernel::new(p_aug),
                origin: (0, 0.0),
                edge_map,
            });
        }
    }
    Err(Error::InvalidPolygon("could not attach sweep triangle"))
}

/// Symbolic beach entry: a two-site breakpoint or a one-site curve
/// endpoint, with a unique serial for event validity and the curve it
/// belongs to.
#[derive(Debug, Clone)]
pub enum BeachEntry {
    Breakpoint {
        s1: usize,
        s2: usize,
        serial: u64,
        curve: u32,
        edge: usize,
        seed: Point,
        born: f64,
    },
    Endpoint {
        s: usize,
        serial: u64,
        curve: u32,
        seed: Point,
        born: f64,
    },
}

impl BeachEntry {
    pub fn serial(&self) -> u64 {
        match self {
            BeachEntry::Breakpoint { serial, .. } | BeachEntry::Endpoint { serial, .. } => *serial,
        }
    }

    pub fn curve(&self) -> u32 {
        match self {
            BeachEntry::Breakpoint { curve, .. } | BeachEntry::Endpoint { curve, .. } => *curve,
        }
    }

    fn seed(&self) -> Point {
        match self {
            BeachEntry::Breakpoint { seed, .. } | BeachEntry::Endpoint { seed, .. } => *seed,
        }
    }

    fn set_seed(&mut self, p: Point) {
        match self {
            BeachEntry::Breakpoint { seed, .. } | BeachEntry::Endpoint { seed, .. } => *seed = p,
        }
    }

    fn born(&self) -> f64 {
        match self {
            BeachEntry::Breakpoint { born, .. } | BeachEntry::Endpoint { born, .. } => *born,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventKind {
    Site,
    Circle,
    Vanishing,
    Merging,
}

#[derive(Debug, Clone)]
struct Event {
    arc: f64,
    kind: EventKind,
    seq: u64,
    /// Site index (site events).
    site: usize,
    /// Serials of the defining entries.
    serials: (u64, u64),
    /// Event point: the circle center or the boundary equidistant point.
    point: Point,
    /// Common distance at the event point.
    radius: f64,
}

impl Event {
    fn order_key(&self) -> (f64, u8, u64) {
        let prio = match self.kind {
            EventKind::Site => 0,
            EventKind::Circle => 1,
            EventKind::Vanishing => 2,
            EventKind::Merging => 3,
        };
        (self.arc, prio, self.seq)
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.order_key() == other.order_key()
    }
}
impl Eq for Event {}
impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Event {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let a = self.order_key();
        let b = other.order_key();
        a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
    }
}

/// Per-sweep diagnostics used by the event-accounting checks.
#[derive(Debug, Clone, Default)]
pub struct SweepStats {
    /// Events that were valid when popped.
    pub valid_events: usize,
    pub max_beach_len: usize,
    /// Beach entries resolved by the finalization fallback (0 on a
    /// clean sweep).
    pub finalized_entries: usize,
}

struct Sweep<'a> {
    aug: &'a AugmentedPolygon,
    sites: &'a [Point],
    beach: Vec<BeachEntry>,
    queue: BinaryHeap<Reverse<Event>>,
    next_serial: u64,
    next_curve: u32,
    next_seq: u64,
    vertices: Vec<DiagramVertex>,
    edges: Vec<EdgeInst>,
    /// serial -> edge instance the breakpoint is tracing.
    stats: SweepStats,
}

#[derive(Debug, Clone)]
struct EdgeInst {
    pair: (usize, usize),
    ends: Vec<usize>,
}

impl<'a> Sweep<'a> {
    fn kernel(&self) -> &GeodesicKernel {
        &self.aug.kernel
    }

    fn serial(&mut self) -> u64 {
        self.next_serial += 1;
        self.next_serial
    }

    fn seq(&mut self) -> u64 {
        self.next_seq += 1;
        self.next_seq
    }

    fn find(&self, serial: u64) -> Option<usize> {
        self.beach.iter().position(|e| e.serial() == serial)
    }

    /// Exact position of a beach entry at the given sweep path, Newton
    /// from the cached seed.
    fn materialize(&mut self, idx: usize, path: &GeodesicPath) -> Result<Point> {
        if matches!(self.beach[idx], BeachEntry::Breakpoint { .. }) {
            return self.materialize_breakpoint_group(idx, path);
        }
        self.materialize_single(idx, path)
    }

    /// Materialize a breakpoint together with any sibling entries of the
    /// same site pair: siblings converging to the same zero are split by
    /// marching the bisector for the second front crossing, and the
    /// zeros are assigned to entries by front order.
    fn materialize_breakpoint_group(&mut self, idx: usize, path: &GeodesicPath) -> Result<Point> {
        let BeachEntry::Breakpoint { s1, s2, .. } = self.beach[idx].clone() else {
            unreachable!();
        };
        let pair = (s1.min(s2), s1.max(s2));
        let group: Vec<usize> = self
            .beach
            .iter()
            .enumerate()
            .filter(|(_, e)| match e {
                BeachEntry::Breakpoint { s1: a, s2: b, .. } => (*a.min(b), *a.max(b)) == pair,
                _ => false,
            })
            .map(|(i, _)| i)
            .collect();
        if group.len() <= 1 {
            return self.materialize_single(idx, path);
        }
        let kernel = &self.aug.kernel;
        let diam = kernel.diameter();
        let mut positions: Vec<Point> = Vec::with_capacity(group.len());
        for &g in &group {
            positions.push(self.materialize_single(g, path)?);
        }
        if group.len() == 2 && positions[0].dist(positions[1]) <= 1e-7 * diam {
            // Twins collapsed onto one zero; hunt the other crossing.
            if let Some(other) =
                self.second_front_crossing(self.sites[s1], self.sites[s2], positions[0], path)?
            {
                positions[1] = other;
            }
        }
        // Assign zeros to entries by front order.
        let mut projs: Vec<f64> = Vec::with_capacity(positions.len());
        for p in &positions {
            projs.push(kernel.closest_point_on_path(*p, path)?.2);
        }
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by(|&a, &b| projs[a].total_cmp(&projs[b]));
        let mut out = positions[0];
        for (rank, &g) in group.iter().enumerate() {
            let pos = positions[order[rank]];
            self.beach[g].set_seed(pos);
            if g == idx {
                out = pos;
            }
        }
        Ok(out)
    }

    /// Starting from one front crossing on b(a, b), march along the
    /// bisector through the swept region for the other crossing.
    fn second_front_crossing(
        &self,
        a: Point,
        b: Point,
        from: Point,
        path: &GeodesicPath,
    ) -> Result<Option<Point>> {
        let kernel = &self.aug.kernel;
        let diam = kernel.diameter();
        let h = |x: Point, k: &GeodesicKernel| -> Result<f64> {
            Ok(k.geodesic_distance(a, x)? - k.closest_point_on_path(x, path)?.1)
        };
        let (aa, _) = kernel.geodesic_path(a, from)?.final_anchor();
        let (ab, _) = kernel.geodesic_path(b, from)?.final_anchor();
        let grad = (from - aa).normalized().unwrap_or(Point::new(1.0, 0.0))
            - (from - ab).normalized().unwrap_or(Point::new(0.0, 1.0));
        let tangent = grad.perp().normalized().unwrap_or(Point::new(1.0, 0.0));
        for dir in [tangent, -tangent] {
            // Step off the known zero into the swept side (h < 0), then
            // march until h returns to zero.
            let start = from + dir * (2e-6 * diam);
            if !kernel.polygon().contains(start, kernel.eps()) {
                continue;
            }
            if h(start, kernel)? >= 0.0 {
                continue;
            }
            if let Some(hit) =
                crate::center::march_bisector_until(kernel, a, b, start, dir, &|x, k| h(x, k))?
            {
                if hit.dist(from) > 1e-7 * diam {
                    return Ok(Some(hit));
                }
            }
        }
        Ok(None)
    }

    /// March along b(a, b) from a stale seed for the front crossing
    /// (zero of d_a - d_path), trying both directions.
    fn march_breakpoint(
        &self,
        a: Point,
        b: Point,
        seed: Point,
        path: &GeodesicPath,
    ) -> Result<Option<Point>> {
        let kernel = &self.aug.kernel;
        let h = |x: Point, k: &GeodesicKernel| -> Result<f64> {
            Ok(k.geodesic_distance(a, x)? - k.closest_point_on_path(x, path)?.1)
        };
        let neg = |x: Point, k: &GeodesicKernel| -> Result<f64> {
            Ok(k.closest_point_on_path(x, path)?.1 - k.geodesic_distance(a, x)?)
        };
        let (aa, _) = kernel.geodesic_path(a, seed)?.final_anchor();
        let (ab, _) = kernel.geodesic_path(b, seed)?.final_anchor();
        let grad = (seed - aa).normalized().unwrap_or(Point::new(1.0, 0.0))
            - (seed - ab).normalized().unwrap_or(Point::new(0.0, 1.0));
        let tangent = grad.perp().normalized().unwrap_or(Point::new(1.0, 0.0));
        let inside = h(seed, kernel)? < 0.0;
        for dir in [tangent, -tangent] {
            let hit = if inside {
                crate::center::march_bisector_until(kernel, a, b, seed, dir, &|x, k| h(x, k))?
            } else {
                crate::center::march_bisector_until(kernel, a, b, seed, dir, &|x, k| neg(x, k))?
            };
            if let Some(found) = hit {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// Exact position of one beach entry at the given sweep path, Newton
    /// from the cached seed.
    fn materialize_single(&mut self, idx: usize, path: &GeodesicPath) -> Result<Point> {
        let kernel = self.kernel();
        let diam = kernel.diameter();
        let entry = self.beach[idx].clone();
        let pos = match entry {
            BeachEntry::Breakpoint { s1, s2, seed, .. } => {
                let a = self.sites[s1];
                let b = self.sites[s2];
                let mut x = seed;
                let mut ok = false;
                for _ in 0..25 {
                    let pa = kernel.geodesic_path(a, x)?;
                    let pb = kernel.geodesic_path(b, x)?;
                    let (qa, dpath, _) = kernel.closest_point_on_path(x, path)?;
                    let f1 = pa.length() - pb.length();
                    let f2 = pa.length() - dpath;
                    if f1.abs() <= 1e-12 * diam && f2.abs() <= 1e-12 * diam {
                        ok = true;
                        break;
                    }
                    let (aa, _) = pa.final_anchor();
                    let (ab, _) = pb.final_anchor();
                    let g1 = (x - aa).normalized().unwrap_or(Point::new(1.0, 0.0));
                    let g2 = (x - ab).normalized().unwrap_or(Point::new(0.0, 1.0));
                    let gq = (x - qa).normalized().unwrap_or(Point::new(1.0, 0.0));
                    // Solve J * dx = -F with rows (g1-g2), (g1-gq).
                    let j00 = g1.x - g2.x;
                    let j01 = g1.y - g2.y;
                    let j10 = g1.x - gq.x;
                    let j11 = g1.y - gq.y;
                    let det = j00 * j11 - j01 * j10;
                    if det.abs() <= 1e-18 {
                        break;
                    }
                    let dx = (f1 * j11 - f2 * j01) / det;
                    let dy = (f2 * j00 - f1 * j10) / det;
                    let mut step = Point::new(-dx, -dy);
                    let mut accepted = false;
                    for _ in 0..30 {
                        let cand = x + step;
                        if kernel.polygon().contains(cand, kernel.eps()) {
                            let fa = kernel.geodesic_distance(a, cand)?
                                - kernel.geodesic_distance(b, cand)?;
                            let fb = kernel.geodesic_distance(a, cand)?
                                - kernel.closest_point_on_path(cand, path)?.1;
                            if fa.abs() + fb.abs() < f1.abs() + f2.abs() {
                                x = cand;
                                accepted = true;
                                break;
                            }
                        }
                        step = step * 0.5;
                    }
                    if !accepted {
                        break;
                    }
                }
                if !ok {
                    // Verify the final residuals before accepting.
                    let fa = kernel.geodesic_distance(a, x)? - kernel.geodesic_distance(b, x)?;
                    let fb = kernel.geodesic_distance(a, x)?
                        - kernel.closest_point_on_path(x, path)?.1;
                    if fa.abs() > 1e-7 * diam || fb.abs() > 1e-7 * diam {
                        // Newton lost the zero (the front-distance gap is
                        // not monotone along the bisector); march from
                        // the seed instead.
                        match self.march_breakpoint(a, b, seed, path)? {
                            Some(found) => x = found,
                            None => {
                                #[cfg(feature = "std")]
                                if std::env::var("GEOVOR_TRACE").is_ok() {
                                    std::eprintln!("  bp materialize diverged: sites ({},{}) seed=({:.4},{:.4}) x=({:.4},{:.4}) fa={:.2e} fb={:.2e}", s1, s2, seed.x, seed.y, x.x, x.y, fa, fb);
                                }
                                return Err(Error::TraceDiverged);
                            }
                        }
                    }
                }
                x
            }
            BeachEntry::Endpoint { s, seed, curve, serial, .. } => {
                // Endpoints live on the boundary of P'. In increasing
                // clockwise arc, psi(arc) = d(q, s) - d(q, path) crosses
                // downward at a curve-start endpoint and upward at a
                // curve-end endpoint; track the matching crossing nearest
                // the cached seed.
                let is_start = self
                    .beach
                    .iter()
                    .position(|e| e.curve() == curve)
                    .map(|first| self.beach[first].serial() == serial)
                    .unwrap_or(true);
                let site = self.sites[s];
                let origin = self.aug.origin;
                let seed_arc = kernel.boundary_point(seed, origin).arc;
                let perim = kernel.perimeter();
                let psi = |arc: f64, k: &GeodesicKernel| -> Result<f64> {
                    let q = k.coord_to_point(
                        k.coord_at_cw_arc(origin, arc.clamp(0.0, perim * (1.0 - 1e-14))),
                    );
                    Ok(k.geodesic_distance(site, q)? - k.closest_point_on_path(q, path)?.1)
                };
                // The wanted crossing for bracket (a1 < a2): down-crossing
                // (psi >= 0 then < 0) for starts, up-crossing for ends.
                let matches_dir = |f1: f64, f2: f64| -> bool {
                    if is_start {
                        f1 > 0.0 && f2 <= 0.0
                    } else {
                        f1 <= 0.0 && f2 > 0.0
                    }
                };
                // Expand samples outward from the seed on both sides.
                let mut bracket: Option<(f64, f64, f64)> = None; // (a, b, psi(a))
                let mut lo_arc = seed_arc;
                let mut hi_arc = seed_arc;
                let mut lo_val = psi(seed_arc, kernel)?;
                let mut hi_val = lo_val;
                let mut width = 5e-5 * perim;
                for _ in 0..32 {
                    let new_lo = (seed_arc - width).max(0.0);
                    let new_hi = (seed_arc + width).min(perim * (1.0 - 1e-14));
                    if new_lo < lo_arc {
                        let f = psi(new_lo, kernel)?;
                        if matches_dir(f, lo_val) {
                            bracket = Some((new_lo, lo_arc, f));
                            break;
                        }
                        lo_arc = new_lo;
                        lo_val = f;
                    }
                    if new_hi > hi_arc {
                        let f = psi(new_hi, kernel)?;
                        if matches_dir(hi_val, f) {
                            bracket = Some((hi_arc, new_hi, hi_val));
                            break;
                        }
                        hi_arc = new_hi;
                        hi_val = f;
                    }
                    width *= 2.0;
                    if new_lo == 0.0 && new_hi >= perim * (1.0 - 1e-14) {
                        break;
                    }
                }
                let Some((mut a, mut b, mut fa)) = bracket else {
                    // No boundary zero nearby: the young curve still hugs
                    // the sweep path. The seed (the newborn tip) stands in
                    // for ordering purposes.
                    return Ok(seed);
                };
                for _ in 0..55 {
                    let mid = 0.5 * (a + b);
                    let fm = psi(mid, kernel)?;
                    if matches_dir(fa, fm) {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                kernel.coord_to_point(
                    kernel.coord_at_cw_arc(origin, (0.5 * (a + b)).clamp(0.0, perim)),
                )
            }
        };
        self.beach[idx].set_seed(pos);
        Ok(pos)
    }

    /// Arc-length projection of an entry's position onto the sweep path.
    fn front_order(&mut self, idx: usize, path: &GeodesicPath) -> Result<f64> {
        let pos = self.materialize(idx, path)?;
        Ok(self.kernel().closest_point_on_path(pos, path)?.2)
    }

    fn push_event(&mut self, mut ev: Event) {
        ev.seq = self.seq();
        self.queue.push(Reverse(ev));
    }

    /// Circle event for adjacent breakpoints at positions (i, i+1),
    /// where adjacency wraps around the sequence ends.
    fn try_circle_event(&mut self, i: usize, now_arc: f64, path: &GeodesicPath) -> Result<()> {
        let len = self.beach.len();
        if len < 2 || i >= len {
            return Ok(());
        }
        let j = (i + 1) % len;
        if j == i {
            return Ok(());
        }
        let (a, b) = (self.beach[i].clone(), self.beach[j].clone());
        let (BeachEntry::Breakpoint { s1, s2, serial: sa, .. }, BeachEntry::Breakpoint { s1: t1, s2: t2, serial: sb, .. }) = (&a, &b) else {
            return Ok(());
        };
        if s2 != t1 || s1 == t2 {
            return Ok(());
        }
        let (s1, s2, s3) = (*s1, *s2, *t2);
        let kernel = &self.aug.kernel;
        // Three sites may be equidistant at several points of the
        // polygon; queue an event for every candidate still ahead of the
        // front (the swept ones are stale rediscoveries), and let pop
        // validation pick the meeting the pair actually reaches.
        let candidates =
            equidistant3_candidates(kernel, self.sites[s1], self.sites[s2], self.sites[s3])?;
        for (c, r) in candidates {
            // Skip candidates strictly behind the front, and candidates
            // where a diagram vertex already exists (the vertex just
            // processed, rediscovered by the successor pair).
            let d_path_now = kernel.closest_point_on_path(c, path)?.1;
            if r < d_path_now - 1e-9 * kernel.diameter() {
                continue;
            }
            if self
                .vertices
                .iter()
                .any(|v| v.position.dist(c) <= 1e-9 * kernel.diameter())
            {
                continue;
            }
            match first_key_at_distance_from(kernel, self.aug.origin, c, r, now_arc) {
                Ok(key) => {
                    let ev = Event {
                        arc: key.arc,
                        kind: EventKind::Circle,
                        seq: 0,
                        site: usize::MAX,
                        serials: (*sa, *sb),
                        point: c,
                        radius: r,
                    };
                    self.push_event(ev);
                }
                Err(Error::KeyNotFound) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    /// Vanishing event for a breakpoint: targets the boundary
    /// equidistant point the breakpoint travels toward. Twin breakpoints
    /// of the same pair are assigned distinct ends (kinetic travel rule,
    /// front-order rank as the tie-break).
    fn try_vanishing_events(&mut self, idx: usize, now_arc: f64, path: &GeodesicPath) -> Result<()> {
        let BeachEntry::Breakpoint { s1, s2, serial, .. } = self.beach[idx].clone() else {
            return Ok(());
        };
        let pos = self.materialize(idx, path)?;
        let kernel = &self.aug.kernel;
        let diam = kernel.diameter();
        let (b1, b2) = match equidistant_boundary_pair(kernel, self.sites[s1], self.sites[s2]) {
            Ok(pair) => pair,
            Err(Error::GeneralPositionViolation(_)) => {
                return Err(Error::GeneralPositionViolation(vec![s1, s2]))
            }
            Err(e) => return Err(e),
        };
        let p1 = kernel.boundary_to_point(&b1);
        let p2 = kernel.boundary_to_point(&b2);
        // Travel direction: along the bisector with positive advance rate
        // V . (grad d_site - grad d_path).
        let travel = {
            let (a1, _) = kernel.geodesic_path(self.sites[s1], pos)?.final_anchor();
            let (a2, _) = kernel.geodesic_path(self.sites[s2], pos)?.final_anchor();
            let g1 = (pos - a1).normalized().unwrap_or(Point::new(1.0, 0.0));
            let g2 = (pos - a2).normalized().unwrap_or(Point::new(0.0, 1.0));
            let (qp, _, _) = kernel.closest_point_on_path(pos, path)?;
            let gq = (pos - qp).normalized().unwrap_or(Point::new(0.0, 1.0));
            let mut t = (g1 - g2).perp().normalized().unwrap_or(gq);
            if t.dot(g1 - gq) < 0.0 {
                t = -t;
            }
            t
        };
        // A breakpoint cannot vanish where it already stands (e.g. at
        // its merge birth point): that end is the other twin's business.
        let mut target = if p1.dist(pos) <= 1e-7 * diam {
            p2
        } else if p2.dist(pos) <= 1e-7 * diam {
            p1
        } else if (p1 - pos).dot(travel) >= (p2 - pos).dot(travel) {
            p1
        } else {
            p2
        };
        let d1 = (p1 - pos).dot(travel);
        let d2 = (p2 - pos).dot(travel);
        // Twin alive: the pair must split the two ends between them;
        // break ambiguous kinetics by front-order rank.
        let pair = (s1.min(s2), s1.max(s2));
        let twin = self.beach.iter().position(|e| match e {
            BeachEntry::Breakpoint { s1: a, s2: b, serial: sr, .. } => {
                (*a.min(b), *a.max(b)) == pair && *sr != serial
            }
            _ => false,
        });
        let near1 = p1.dist(pos) <= 1e-7 * diam;
        let near2 = p2.dist(pos) <= 1e-7 * diam;
        if let Some(t_idx) = twin {
            if !near1 && !near2 && (d1.signum() == d2.signum() || d1.abs().min(d2.abs()) <= 1e-7 * diam)
            {
                // Ambiguous: rank by front order against the twin, and
                // give the lower entry the lower-order candidate.
                let proj_c1 = kernel.closest_point_on_path(p1, path)?.2;
                let proj_c2 = kernel.closest_point_on_path(p2, path)?.2;
                let lower_candidate = if proj_c1 <= proj_c2 { p1 } else { p2 };
                let higher_candidate = if proj_c1 <= proj_c2 { p2 } else { p1 };
                target = if idx < t_idx { lower_candidate } else { higher_candidate };
            }
        }
        let d_site = kernel.geodesic_distance(target, self.sites[s1])?;
        let d_path = kernel.closest_point_on_path(target, path)?.1;
        if d_site <= d_path - 1e-9 * diam {
            return Ok(()); // already swept
        }
        match first_key_at_distance_from(kernel, self.aug.origin, target, d_site, now_arc) {
            Ok(key) => {
                let ev = Event {
                    arc: key.arc,
                    kind: EventKind::Vanishing,
                    seq: 0,
                    site: usize::MAX,
                    serials: (serial, 0),
                    point: target,
                    radius: d_site,
                };
                self.push_event(ev);
            }
            Err(Error::KeyNotFound) => {}
            Err(e) => return Err(e),
        }
        Ok(())
    }

    /// Merging event for adjacent endpoints of distinct curves;
    /// adjacency wraps around the sequence ends.
    fn try_merging_event(&mut self, i: usize, now_arc: f64, path: &GeodesicPath) -> Result<()> {
        let len = self.beach.len();
        if len < 2 || i >= len {
            return Ok(());
        }
        let j = (i + 1) % len;
        if j == i {
            return Ok(());
        }
        let (a, b) = (self.beach[i].clone(), self.beach[j].clone());
        let (
            BeachEntry::Endpoint { s: s1, serial: sa, curve: ca, .. },
            BeachEntry::Endpoint { s: s2, serial: sb, curve: cb, .. },
        ) = (&a, &b)
        else {
            return Ok(());
        };
        if ca == cb || s1 == s2 {
            return Ok(());
        }
        let (s1, s2) = (*s1, *s2);
        let (sa, sb) = (*sa, *sb);
        let kernel = &self.aug.kernel;
        let diam = kernel.diameter();
        let (b1, b2) = equidistant_boundary_pair(kernel, self.sites[s1], self.sites[s2])?;
        for bp in [b1, b2] {
            let p = kernel.boundary_to_point(&bp);
            let d_site = kernel.geodesic_distance(p, self.sites[s1])?;
            let d_path = kernel.closest_point_on_path(p, path)?.1;
            if d_site <= d_path + 1e-9 * diam {
                continue;
            }
            match first_key_at_distance_from(kernel, self.aug.origin, p, d_site, now_arc) {
                Ok(key) => {
                    let ev = Event {
                        arc: key.arc,
                        kind: EventKind::Merging,
                        seq: 0,
                        site: usize::MAX,
                        serials: (sa, sb),
                        point: p,
                        radius: d_site,
                    };
                    self.push_event(ev);
                }
                Err(Error::KeyNotFound) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    /// Events spawned by the neighborhood of position i after a change;
    /// also refreshes the neighborhood's cached positions so later
    /// solves start near the truth.
    fn refresh_events_around(&mut self, i: usize, now_arc: f64, path: &GeodesicPath) -> Result<()> {
        let lo = i.saturating_sub(1);
        let hi = (i + 1).min(self.beach.len().saturating_sub(1));
        for j in lo..=hi {
            if j < self.beach.len() {
                let _ = self.materialize(j, path);
            }
        }
        let len = self.beach.len();
        for j in lo..=hi {
            if j < len {
                if matches!(self.beach[j], BeachEntry::Breakpoint { .. }) {
                    self.try_vanishing_events(j, now_arc, path)?;
                }
                let prev = (j + len - 1) % len;
                self.try_circle_event(prev, now_arc, path)?;
                self.try_merging_event(prev, now_arc, path)?;
                self.try_circle_event(j, now_arc, path)?;
                self.try_merging_event(j, now_arc, path)?;
            }
        }
        Ok(())
    }

    fn handle_site_event(&mut self, site: usize, arc: f64) -> Result<()> {
        let kernel = &self.aug.kernel;
        let origin = self.aug.origin;
        let o_pt = kernel.coord_to_point(origin);
        let coord = kernel.coord_at_cw_arc(origin, arc);
        let x_pt = kernel.coord_to_point(coord);
        let path = kernel.geodesic_path(o_pt, x_pt)?;
        let s_pt = self.sites[site];
        // Tip of the newborn perpendicular front segment; the swept side
        // lies left of the path.
        let tip = self.newborn_tip(site, &path)?;
        if self.beach.is_empty() {
            let (sa, sb) = (self.serial(), self.serial());
            let curve = self.next_curve;
            self.next_curve += 1;
            self.beach.push(BeachEntry::Endpoint { s: site, serial: sa, curve, seed: tip, born: arc });
            self.beach.push(BeachEntry::Endpoint { s: site, serial: sb, curve, seed: tip, born: arc });
            return Ok(());
        }
        // Binary search for the insertion position by front order.
        let proj_s = kernel.closest_point_on_path(s_pt, &path)?.2;
        #[cfg(feature = "std")]
        if std::env::var("GEOVOR_TRACE").is_ok() {
            std::eprint!("  insert site {site} proj={proj_s:.4} L={:.4} orders:", path.length());
            for idx in 0..self.beach.len() {
                let pos = self.materialize(idx, &path);
                match pos {
                    Ok(p) => {
                        let (q, _, t) = kernel.closest_point_on_path(p, &path)?;
                        std::eprint!(" [{t:.4} pos=({:.3},{:.3}) q=({:.3},{:.3})]", p.x, p.y, q.x, q.y);
                    }
                    Err(_) => std::eprint!(" ERR"),
                }
            }
            std::eprintln!();
        }
        let mut lo: isize = -1;
        let mut hi: isize = self.beach.len() as isize;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let ord = self.front_order(mid as usize, &path)?;
            if ord < proj_s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let j = hi as usize;
        // Inside an arc only if the newborn segment actually pokes
        // through the occupant's wave at its tip.
        let kernel = &self.aug.kernel;
        let mut owner = self.region_at(j);
        if let Some(s_own) = owner {
            let d_tip_owner = kernel.geodesic_distance(tip, self.sites[s_own])?;
            let d_tip_path = kernel.closest_point_on_path(tip, &path)?.1;
            if d_tip_owner > d_tip_path + 1e-9 * kernel.diameter() {
                owner = None;
            }
        }
        match owner {
            Some(owner) => {
                // Two degenerate breakpoints at the crossing of the
                // newborn segment with the occupant's wave; seed the
                // twins slightly apart along the old front so they track
                // their own zeros as they separate.
                let birth = self.newborn_crossing(site, owner, tip, &path)?;
                let diam = kernel.diameter();
                let delta = 1e-5 * diam;
                let own_pt = self.sites[owner];
                let (ao, _) = kernel.geodesic_path(own_pt, birth)?.final_anchor();
                let (qp, _, _) = kernel.closest_point_on_path(birth, &path)?;
                let grad = (birth - ao).normalized().unwrap_or(Point::new(1.0, 0.0))
                    - (birth - qp).normalized().unwrap_or(Point::new(0.0, 1.0));
                let mut tau = grad.perp().normalized().unwrap_or(Point::new(1.0, 0.0));
                let plus = kernel.closest_point_on_path(birth + tau * delta, &path)?.2;
                let minus = kernel.closest_point_on_path(birth - tau * delta, &path)?.2;
                if plus < minus {
                    tau = -tau;
                }
                let (sa, sb) = (self.serial(), self.serial());
                let curve = if j > 0 {
                    self.beach[j - 1].curve()
                } else {
                    self.beach[j].curve()
                };
                let edge = self.edges.len();
                self.edges.push(EdgeInst {
                    pair: (owner, site),
                    ends: Vec::new(),
                });
                self.beach.insert(
                    j,
                    BeachEntry::Breakpoint {
                        s1: site,
                        s2: owner,
                        serial: sb,
                        curve,
                        edge,
                        seed: birth + tau * delta,
                        born: arc,
                    },
                );
                self.beach.insert(
                    j,
                    BeachEntry::Breakpoint {
                        s1: owner,
                        s2: site,
                        serial: sa,
                        curve,
                        edge,
                        seed: birth - tau * delta,
                        born: arc,
                    },
                );
            }
            None => {
                // Over an unswept gap: a new curve of two endpoints.
                let (sa, sb) = (self.serial(), self.serial());
                let curve = self.next_curve;
                self.next_curve += 1;
                self.beach.insert(j, BeachEntry::Endpoint { s: site, serial: sb, curve, seed: tip, born: arc });
                self.beach.insert(j, BeachEntry::Endpoint { s: site, serial: sa, curve, seed: tip, born: arc });
            }
        }
        self.refresh_events_around(j, arc, &path)?;
        self.refresh_events_around(j + 1, arc, &path)?;
        Ok(())
    }

    /// Point where the newborn perpendicular segment of `site` crosses
    /// the wave of `owner`: equidistant from both sites and the path.
    fn newborn_crossing(
        &self,
        site: usize,
        owner: usize,
        tip: Point,
        path: &GeodesicPath,
    ) -> Result<Point> {
        let kernel = &self.aug.kernel;
        let s = self.sites[site];
        let own = self.sites[owner];
        // g(t) = d(q(t), owner) - d(q(t), path) along the segment from
        // the site to the tip; positive at the site, negative at the tip.
        let g = |q: Point, k: &GeodesicKernel| -> Result<f64> {
            Ok(k.geodesic_distance(q, own)? - k.closest_point_on_path(q, path)?.1)
        };
        let mut lo = s;
        let mut hi = tip;
        let mut flo = g(lo, kernel)?;
        if flo <= 0.0 {
            return Ok(s);
        }
        for _ in 0..60 {
            let mid = crate::geom::lerp(lo, hi, 0.5);
            let fm = g(mid, kernel)?;
            if (flo > 0.0) != (fm > 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        Ok(crate::geom::lerp(lo, hi, 0.5))
    }

    /// Far end of the newborn front segment R_s at the site event: walk
    /// perpendicular to the path while the site stays its closest point.
    fn newborn_tip(&self, site: usize, path: &GeodesicPath) -> Result<Point> {
        let kernel = self.kernel();
        let diam = kernel.diameter();
        let s = self.sites[site];
        let (_, _, s_arc) = kernel.closest_point_on_path(s, path)?;
        // Direction: left of the path (the swept region).
        let ahead = path.point_at((s_arc + 1e-7 * diam).min(path.length()));
        let behind = path.point_at((s_arc - 1e-7 * diam).max(0.0));
        let dir = (ahead - behind)
            .normalized()
            .unwrap_or(Point::new(1.0, 0.0))
            .perp();
        let ok = |t: f64, k: &GeodesicKernel| -> Result<bool> {
            let q = s + dir * t;
            if !k.polygon().contains(q, k.eps()) {
                return Ok(false);
            }
            let (_, d, _) = k.closest_point_on_path(q, path)?;
            Ok((d - t).abs() <= 1e-9 * diam + 1e-6 * t)
        };
        if !ok(1e-7 * diam, kernel)? {
            return Ok(s);
        }
        let mut lo = 1e-7 * diam;
        let mut hi = lo;
        for _ in 0..40 {
            let cand = (hi * 2.0).max(1e-6 * diam);
            if ok(cand, kernel)? {
                hi = cand;
            } else {
                break;
            }
        }
        let mut cap = hi * 2.0;
        for _ in 0..50 {
            if cap - lo <= 1e-12 * diam {
                break;
            }
            let mid = 0.5 * (lo + cap);
            if ok(mid, kernel)? {
                lo = mid;
            } else {
                cap = mid;
            }
        }
        Ok(s + dir * lo)
    }

    /// Region of the beach at insertion slot j: Some(site) inside that
    /// site's arc, None over an unswept gap.
    fn region_at(&self, j: usize) -> Option<usize> {
        let after_prev: Option<usize> = if j == 0 {
            None
        } else {
            match &self.beach[j - 1] {
                BeachEntry::Breakpoint { s2, .. } => Some(*s2),
                BeachEntry::Endpoint { s, curve, .. } => {
                    if self.is_curve_start(j - 1, *curve) {
                        Some(*s)
                    } else {
                        None
                    }
                }
            }
        };
        let before_next: Option<usize> = if j >= self.beach.len() {
            None
        } else {
            match &self.beach[j] {
                BeachEntry::Breakpoint { s1, .. } => Some(*s1),
                BeachEntry::Endpoint { s, curve, .. } => {
                    if self.is_curve_start(j, *curve) {
                        None
                    } else {
                        Some(*s)
                    }
                }
            }
        };
        match (after_prev, before_next) {
            (Some(a), Some(_)) => Some(a),
            (None, None) => None,
            // Mixed readings at a degenerate slot: prefer the arc.
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
        }
    }

    fn is_curve_start(&self, idx: usize, curve: u32) -> bool {
        self.beach[..idx].iter().all(|e| e.curve() != curve)
    }

    fn handle_circle_event(&mut self, ev: &Event) -> Result<Option<usize>> {
        let Some(i) = self.find(ev.serials.0) else {
            return Ok(None);
        };
        let Some(j) = self.find(ev.serials.1) else {
            return Ok(None);
        };
        let len = self.beach.len();
        if j != (i + 1) % len || j == i {
            return Ok(None);
        }
        let (BeachEntry::Breakpoint { s1, edge: e1, curve, .. }, BeachEntry::Breakpoint { s2: s3, edge: e2, .. }) =
            (self.beach[i].clone(), self.beach[j].clone())
        else {
            return Ok(None);
        };
        // No other wave may own the vertex, and no fourth site may be
        // equidistant there (general position).
        let kernel = self.kernel();
        let diam = kernel.diameter();
        let mut offenders = Vec::new();
        for (t, s) in self.sites.iter().enumerate() {
            let d = kernel.geodesic_distance(*s, ev.point)?;
            if (d - ev.radius).abs() <= 1e-9 * diam {
                offenders.push(t);
            } else if d < ev.radius - 1e-7 * diam {
                return Ok(None);
            }
        }
        if offenders.len() > 3 {
            return Err(Error::GeneralPositionViolation(offenders));
        }
        let vid = self.vertices.len();
        self.vertices.push(DiagramVertex {
            position: ev.point,
            degree: 3,
            sites: offenders,
        });
        self.edges[e1].ends.push(vid);
        self.edges[e2].ends.push(vid);
        let serial = self.serial();
        let edge = self.edges.len();
        self.edges.push(EdgeInst {
            pair: (s1, s3),
            ends: vec![vid],
        });
        self.beach[i] = BeachEntry::Breakpoint {
            s1,
            s2: s3,
            serial,
            curve,
            edge,
            seed: ev.point,
            born: ev.arc,
        };
        self.beach.remove(j);
        Ok(Some(if j < i { i - 1 } else { i }))
    }

    fn handle_vanishing_event(&mut self, ev: &Event, path: &GeodesicPath) -> Result<Option<usize>> {
        let Some(i) = self.find(ev.serials.0) else {
            return Ok(None);
        };
        let BeachEntry::Breakpoint { s1, s2, edge, .. } = self.beach[i].clone() else {
            return Ok(None);
        };
        // Endpoint neighbor defined by s1 or s2; the event is real only
        // if that endpoint has reached the meeting point (the breakpoint
        // and the endpoint merge there). The endpoint position is a
        // boundary zero, independent of the breakpoint's solver state.
        let arc_tol = 1e-10 * self.aug.kernel.perimeter();
        let len = self.beach.len();
        let mut neighbor = None;
        for cand in [(i + len - 1) % len, (i + 1) % len] {
            if cand == i || neighbor.is_some() {
                continue;
            }
            if let BeachEntry::Endpoint { s, born, .. } = &self.beach[cand] {
                // An endpoint created by another event at this same key
                // reflects that event, not a new meeting.
                if (*s == s1 || *s == s2) && *born < ev.arc - arc_tol {
                    neighbor = Some(cand);
                }
            }
        }
        // No third wave may own the meeting point.
        let kernel = &self.aug.kernel;
        for (t, s) in self.sites.iter().enumerate() {
            if t != s1 && t != s2 && kernel.geodesic_distance(*s, ev.point)? < ev.radius - 1e-7 * kernel.diameter() {
                return Ok(None);
            }
        }
        let Some(n_idx) = neighbor else {
            // No endpoint involved: the breakpoint hit the boundary from
            // the middle of a curve. The unswept pocket pinches off and
            // the curve splits, the breakpoint dissolving into two fresh
            // endpoints.
            if self.beach[i].born() >= ev.arc - arc_tol {
                return Ok(None);
            }
            let BeachEntry::Breakpoint { edge, curve, .. } = self.beach[i].clone() else {
                return Ok(None);
            };
            let vid = self.vertices.len();
            self.vertices.push(DiagramVertex {
                position: ev.point,
                degree: 1,
                sites: vec![s1.min(s2), s1.max(s2)],
            });
            self.edges[edge].ends.push(vid);
            let (sa, sb) = (self.serial(), self.serial());
            let new_curve = self.next_curve;
            self.next_curve += 1;
            // Entries after the split move to the new curve.
            for e in self.beach[i + 1..].iter_mut() {
                if e.curve() == curve {
                    match e {
                        BeachEntry::Breakpoint { curve: c, .. }
                        | BeachEntry::Endpoint { curve: c, .. } => *c = new_curve,
                    }
                }
            }
            self.beach[i] = BeachEntry::Endpoint {
                s: s1,
                serial: sa,
                curve,
                seed: ev.point,
                born: ev.arc,
            };
            self.beach.insert(
                i + 1,
                BeachEntry::Endpoint {
                    s: s2,
                    serial: sb,
                    curve: new_curve,
                    seed: ev.point,
                    born: ev.arc,
                },
            );
            return Ok(Some(i));
        };
        let BeachEntry::Endpoint { s: e_site, curve, .. } = self.beach[n_idx].clone() else {
            return Ok(None);
        };
        let vid = self.vertices.len();
        self.vertices.push(DiagramVertex {
            position: ev.point,
            degree: 1,
            sites: vec![s1.min(s2), s1.max(s2)],
        });
        self.edges[edge].ends.push(vid);
        let survivor = if e_site == s1 { s2 } else { s1 };
        let serial = self.serial();
        // The endpoint neighbor may wrap around the sequence ends; the
        // merged endpoint takes the breakpoint's slot.
        let wrapped = i.max(n_idx) == self.beach.len() - 1 && i.min(n_idx) == 0;
        let lo = if wrapped { i.max(n_idx) } else { i.min(n_idx) };
        let hi = if wrapped { i.min(n_idx) } else { i.max(n_idx) };
        self.beach.remove(hi.max(lo));
        self.beach.remove(hi.min(lo));
        let at = if wrapped {
            self.beach.len()
        } else {
            lo.min(self.beach.len())
        };
        self.beach.insert(
            at,
            BeachEntry::Endpoint {
                s: survivor,
                serial,
                curve,
                seed: ev.point,
                born: ev.arc,
            },
        );
        Ok(Some(at))
    }

    fn handle_merging_event(&mut self, ev: &Event, path: &GeodesicPath) -> Result<Option<usize>> {
        let Some(i) = self.find(ev.serials.0) else {
            return Ok(None);
        };
        let Some(j) = self.find(ev.serials.1) else {
            return Ok(None);
        };
        let len = self.beach.len();
        if j != (i + 1) % len || j == i {
            return Ok(None);
        }
        let (
            BeachEntry::Endpoint { s: s1, curve: c1, .. },
            BeachEntry::Endpoint { s: s2, curve: c2, .. },
        ) = (self.beach[i].clone(), self.beach[j].clone())
        else {
            return Ok(None);
        };
        if c1 == c2 {
            return Ok(None);
        }
        // Neither endpoint may be a product of another event at this
        // same key, and both waves must reach the meeting point's flanks.
        let arc_tol = 1e-10 * self.aug.kernel.perimeter();
        if self.beach[i].born() >= ev.arc - arc_tol || self.beach[j].born() >= ev.arc - arc_tol {
            return Ok(None);
        }
        // No third wave may own the meeting point.
        let kernel = &self.aug.kernel;
        for (t, s) in self.sites.iter().enumerate() {
            if t != s1 && t != s2 && kernel.geodesic_distance(*s, ev.point)? < ev.radius - 1e-7 * kernel.diameter() {
                return Ok(None);
            }
        }
        let vid = self.vertices.len();
        self.vertices.push(DiagramVertex {
            position: ev.point,
            degree: 1,
            sites: vec![s1.min(s2), s1.max(s2)],
        });
        let serial = self.serial();
        let edge = self.edges.len();
        self.edges.push(EdgeInst {
            pair: (s1, s2),
            ends: vec![vid],
        });
        let replace_at = if j < i { i - 1 } else { i };
        self.beach.remove(j);
        self.beach[replace_at] = BeachEntry::Breakpoint {
            s1,
            s2,
            serial,
            curve: c1,
            edge,
            seed: ev.point,
            born: ev.arc,
        };
        // Fuse the curves.
        for e in self.beach.iter_mut() {
            if e.curve() == c2 {
                match e {
                    BeachEntry::Breakpoint { curve, .. } | BeachEntry::Endpoint { curve, .. } => {
                        *curve = c1
                    }
                }
            }
        }
        Ok(Some(replace_at))
    }
}

/// Build the topological structure of the nearest-point Voronoi diagram.
pub fn build_topology_nearest(
    kernel: &GeodesicKernel,
    sites: &[Point],
) -> Result<AdjacencyGraph> {
    Ok(build_topology_nearest_with_stats(kernel, sites)?.0)
}

/// As [`build_topology_nearest`], also reporting event accounting.
pub fn build_topology_nearest_with_stats(
    kernel: &GeodesicKernel,
    sites: &[Point],
) -> Result<(AdjacencyGraph, SweepStats)> {
    let eps = kernel.eps();
    for (i, s) in sites.iter().enumerate() {
        if !kernel.polygon().contains(*s, eps) {
            return Err(Error::PointOutsidePolygon(*s));
        }
        for (j, t) in sites.iter().enumerate().skip(i + 1) {
            if s.dist(*t) <= eps {
                return Err(Error::GeneralPositionViolation(vec![i, j]));
            }
        }
    }
    let aug = augment(kernel.polygon())?;
    let mut sweep = Sweep {
        aug: &aug,
        sites,
        beach: Vec::new(),
        queue: BinaryHeap::new(),
        next_serial: 0,
        next_curve: 0,
        next_seq: 0,
        vertices: Vec::new(),
        edges: Vec::new(),
        stats: SweepStats::default(),
    };
    // All site events up front.
    let spm = aug.kernel.build_spm(aug.origin)?;
    for (i, s) in sites.iter().enumerate() {
        let key = aug.kernel.first_boundary_containing(&spm, *s)?;
        let ev = Event {
            arc: key.arc,
            kind: EventKind::Site,
            seq: 0,
            site: i,
            serials: (0, 0),
            point: *s,
            radius: 0.0,
        };
        sweep.push_event(ev);
    }
    while let Some(Reverse(ev)) = sweep.queue.pop() {
        #[cfg(feature = "std")]
        if std::env::var("GEOVOR_TRACE").is_ok() {
            std::eprintln!("pop {:?} arc={:.4} site={} serials={:?} point=({:.3},{:.3}) r={:.4}",
                ev.kind, ev.arc, ev.site as isize, ev.serials, ev.point.x, ev.point.y, ev.radius);
        }
        let fired = match ev.kind {
            EventKind::Site => {
                sweep.handle_site_event(ev.site, ev.arc)?;
                true
            }
            EventKind::Circle => {
                match sweep.handle_circle_event(&ev)? {
                    Some(i) => {
                        let o_pt = aug.kernel.coord_to_point(aug.origin);
                        let x_pt = aug
                            .kernel
                            .coord_to_point(aug.kernel.coord_at_cw_arc(aug.origin, ev.arc));
                        let path = aug.kernel.geodesic_path(o_pt, x_pt)?;
                        sweep.refresh_events_around(i, ev.arc, &path)?;
                        true
                    }
                    None => false,
                }
            }
            EventKind::Vanishing | EventKind::Merging => {
                let o_pt = aug.kernel.coord_to_point(aug.origin);
                let x_pt = aug
                    .kernel
                    .coord_to_point(aug.kernel.coord_at_cw_arc(aug.origin, ev.arc));
                let path = aug.kernel.geodesic_path(o_pt, x_pt)?;
                let fired = if ev.kind == EventKind::Vanishing {
                    sweep.handle_vanishing_event(&ev, &path)?
                } else {
                    sweep.handle_merging_event(&ev, &path)?
                };
                match fired {
                    Some(i) => {
                        sweep.refresh_events_around(i, ev.arc, &path)?;
                        true
                    }
                    None => false,
                }
            }
        };
        if fired {
            sweep.stats.valid_events += 1;
        }
        #[cfg(feature = "std")]
        if std::env::var("GEOVOR_TRACE").is_ok() {
            std::eprintln!("  fired={} beach={:?}", fired, sweep.beach.iter().map(|e| match e {
                BeachEntry::Breakpoint { s1, s2, serial, .. } => std::format!("B{}({},{})", serial, s1, s2),
                BeachEntry::Endpoint { s, serial, curve, .. } => std::format!("E{}({})c{}", serial, s, curve),
            }).collect::<Vec<_>>());
        }
        sweep.stats.max_beach_len = sweep.stats.max_beach_len.max(sweep.beach.len());
    }
    // A clean sweep empties the beach of breakpoints; any stragglers are
    // closed directly on the boundary.
    let leftovers: Vec<BeachEntry> = sweep
        .beach
        .iter()
        .filter(|e| matches!(e, BeachEntry::Breakpoint { .. }))
        .cloned()
        .collect();
    for entry in leftovers {
        if let BeachEntry::Breakpoint { s1, s2, edge, seed, .. } = entry {
            let (b1, b2) = equidistant_boundary_pair(&aug.kernel, sites[s1], sites[s2])?;
            let mut cand = aug.kernel.boundary_to_point(&b1);
            let alt = aug.kernel.boundary_to_point(&b2);
            let used: Vec<Point> = sweep.edges[edge]
                .ends
                .iter()
                .map(|&v| sweep.vertices[v].position)
                .collect();
            if used.iter().any(|u| u.dist(cand) < 1e-6 * aug.kernel.diameter())
                || (alt.dist(seed) < cand.dist(seed)
                    && !used.iter().any(|u| u.dist(alt) < 1e-6 * aug.kernel.diameter()))
            {
                cand = alt;
            }
            let vid = sweep.vertices.len();
            sweep.vertices.push(DiagramVertex {
                position: cand,
                degree: 1,
                sites: vec![s1.min(s2), s1.max(s2)],
            });
            sweep.edges[edge].ends.push(vid);
            sweep.stats.finalized_entries += 1;
        }
    }
    // Remap degree-1 vertices from the triangle sliver back onto P.
    let base_origin = (0usize, 0.0f64);
    for v in sweep.vertices.iter_mut() {
        if v.degree != 1 {
            continue;
        }
        let coord = aug.kernel.boundary_coord(v.position);
        if aug.edge_map[coord.0].is_none() {
            let (b1, b2) = equidistant_boundary_pair(kernel, sites[v.sites[0]], sites[v.sites[1]])?;
            let p1 = kernel.boundary_to_point(&b1);
            let p2 = kernel.boundary_to_point(&b2);
            v.position = if p1.dist(v.position) <= p2.dist(v.position) {
                p1
            } else {
                p2
            };
        }
        let _ = base_origin;
    }
    let mut edges = Vec::with_capacity(sweep.edges.len());
    for inst in &sweep.edges {
        if inst.ends.len() != 2 {
            return Err(Error::TraceDiverged);
        }
        edges.push(GraphEdge {
            cell_a: inst.pair.0,
            cell_b: inst.pair.1,
            pair: inst.pair,
            u: inst.ends[0],
            v: inst.ends[1],
        });
    }
    let graph = AdjacencyGraph {
        kind: DiagramKind::Nearest,
        cells: (0..sites.len()).map(|i| vec![i]).collect(),
        vertices: sweep.vertices,
        edges,
    };
    Ok((graph, sweep.stats))
}

/// Deterministic jitter for inputs that violate general position: each
/// site moves by at most 1e-7 x diameter.
pub use crate::instances::apply_jitter;

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn augment_square() {
        let k = square();
        let aug = augment(k.polygon()).unwrap();
        assert_eq!(aug.kernel.polygon().len(), 6);
        // Apex at the requested depth below the attachment vertex.
        let apex = aug.kernel.polygon().vertex(0);
        assert!((apex.y - (0.0 - k.diameter())).abs() < 1e-12);
        // P is contained in P'.
        for i in 0..4 {
            assert!(aug
                .kernel
                .polygon()
                .contains(k.polygon().vertex(i), 1e-9));
        }
    }

    #[test]
    fn augment_triangle_has_five_vertices() {
        let tri = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.1),
            Point::new(0.4, 1.0),
        ])
        .unwrap();
        let aug = augment(&tri).unwrap();
        assert_eq!(aug.kernel.polygon().len(), 5);
    }

    #[test]
    fn single_site() {
        let k = square();
        let g = build_topology_nearest(&k, &[Point::new(0.5, 0.5)]).unwrap();
        assert_eq!(g.cells.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn two_sites_symmetric() {
        let k = square();
        let (g, stats) = build_topology_nearest_with_stats(
            &k,
            &[Point::new(0.25, 0.5), Point::new(0.75, 0.5)],
        )
        .unwrap();
        assert_eq!(g.cells.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(stats.finalized_entries, 0);
        let mut endpoints: Vec<Point> = g.vertices.iter().map(|v| v.position).collect();
        endpoints.sort_by(|a, b| a.y.partial_cmp(&b.y).unwrap());
        assert!(endpoints[0].dist(Point::new(0.5, 0.0)) < 1e-6);
        assert!(endpoints[1].dist(Point::new(0.5, 1.0)) < 1e-6);
    }

    #[test]
    fn three_sites_acute() {
        let k = square();
        let sites = [
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        ];
        let (g, stats) = build_topology_nearest_with_stats(&k, &sites).unwrap();
        assert_eq!(g.cells.len(), 3);
        assert_eq!(g.edges.len(), 3, "edges: {:?}", g.edges);
        let deg3: Vec<&DiagramVertex> = g.vertices.iter().filter(|v| v.degree == 3).collect();
        assert_eq!(deg3.len(), 1);
        assert!(deg3[0].position.dist(Point::new(0.5, 0.425)) < 1e-8);
        let deg1 = g.vertices.iter().filter(|v| v.degree == 1).count();
        assert_eq!(deg1, 3);
        assert_eq!(stats.finalized_entries, 0);
        assert!(stats.max_beach_len <= 2 * sites.len() + 2);
        assert!(stats.valid_events <= 10 * sites.len());
    }
}
