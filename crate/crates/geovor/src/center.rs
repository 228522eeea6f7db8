//! Geodesic convex hulls, geodesic centers of 3 and m points, and
//! equidistant-point queries: the toolbox every sweep event handler
//! draws on.
//!
//! All solvers work on anchored distance cones d(x) = D + |x - a|
//! (anchor a, geodesic offset D) obtained from funnel queries, solve in
//! closed form or by damped Newton, and verify with true geodesic
//! distances before returning.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{lerp, project_on_segment, Point};
use crate::kernel::{BoundaryPoint, GeodesicKernel};
use crate::topology::conic_ray_intersections;
use crate::{Error, Result};

/// Geodesic convex hull: a weakly simple closed chain plus the circular
/// order of input sites along it.
#[derive(Debug, Clone)]
pub struct GeodesicHull {
    /// Closed boundary chain (first vertex not repeated at the end).
    pub boundary: Vec<Point>,
    /// Input site indices in the circular order they appear on the
    /// boundary.
    pub site_order: Vec<usize>,
}

/// Result of an equidistant-point query.
#[derive(Debug, Clone)]
pub struct EquidistantResult {
    pub point: Option<Point>,
    /// Common distance when a point is present.
    pub distance: f64,
}

/// Side of a directed chord (a -> b): Left is the region to its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChordSide {
    Left,
    Right,
    On,
}

/// An anchored distance cone d(x) = offset + |x - anchor|.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cone {
    pub anchor: Point,
    pub offset: f64,
}

impl Cone {
    pub fn value(&self, x: Point) -> f64 {
        self.offset + x.dist(self.anchor)
    }
}

pub(crate) fn cone_at(kernel: &GeodesicKernel, site: Point, x: Point) -> Result<Cone> {
    let path = kernel.geodesic_path(site, x)?;
    let (anchor, offset) = path.final_anchor();
    Ok(Cone { anchor, offset })
}

fn true_max(kernel: &GeodesicKernel, sites: &[Point], x: Point) -> Result<(f64, usize)> {
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, s) in sites.iter().enumerate() {
        let d = kernel.geodesic_distance(*s, x)?;
        if d > best.0 {
            best = (d, i);
        }
    }
    Ok(best)
}

// ----- cone minimax -----

/// Minimize max(c1, c2) over the plane for two cones.
fn pair_center(c1: Cone, c2: Cone) -> (Point, f64) {
    let gap = c1.anchor.dist(c2.anchor);
    if gap <= f64::MIN_POSITIVE {
        let r = c1.offset.max(c2.offset);
        return (c1.anchor, r);
    }
    // One cone may dominate the other completely.
    if c1.offset >= c2.offset + gap {
        return (c1.anchor, c1.offset);
    }
    if c2.offset >= c1.offset + gap {
        return (c2.anchor, c2.offset);
    }
    let r = 0.5 * (gap + c1.offset + c2.offset);
    let dir = (c2.anchor - c1.anchor) / gap;
    (c1.anchor + dir * (r - c1.offset), r)
}

/// Point with equal value under all three cones, refined by Newton on
/// the pairwise differences; `None` when the iteration fails.
fn triple_equal(cones: &[Cone; 3], seed: Point, scale: f64) -> Option<Point> {
    let mut x = seed;
    let f = |x: Point| -> (f64, f64) {
        (
            cones[0].value(x) - cones[1].value(x),
            cones[0].value(x) - cones[2].value(x),
        )
    };
    let mut fx = f(x);
    for _ in 0..80 {
        if fx.0.abs() <= 1e-14 * scale && fx.1.abs() <= 1e-14 * scale {
            return Some(x);
        }
        let g = |c: &Cone| -> Point {
            (x - c.anchor)
                .normalized()
                .unwrap_or(Point::new(0.0, 0.0))
        };
        let g0 = g(&cones[0]);
        let g1 = g(&cones[1]);
        let g2 = g(&cones[2]);
        let j00 = g0.x - g1.x;
        let j01 = g0.y - g1.y;
        let j10 = g0.x - g2.x;
        let j11 = g0.y - g2.y;
        let det = j00 * j11 - j01 * j10;
        if det.abs() <= 1e-18 {
            return None;
        }
        let dx = (fx.0 * j11 - fx.1 * j01) / det;
        let dy = (fx.1 * j00 - fx.0 * j10) / det;
        let mut step = Point::new(-dx, -dy);
        // Damp until the residual shrinks.
        let mut accepted = false;
        for _ in 0..40 {
            let cand = x + step;
            let fc = f(cand);
            if fc.0.abs() + fc.1.abs() < fx.0.abs() + fx.1.abs() {
                x = cand;
                fx = fc;
                accepted = true;
                break;
            }
            step = step * 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if fx.0.abs() <= 1e-11 * scale && fx.1.abs() <= 1e-11 * scale {
        Some(x)
    } else {
        None
    }
}

/// Best point for a basis of at most three cones: the smallest-radius
/// point covering all of them.
fn solve_basis(basis: &[Cone], scale: f64) -> (Point, f64) {
    let tol = 1e-12 * scale;
    match basis.len() {
        1 => (basis[0].anchor, basis[0].offset),
        2 => pair_center(basis[0], basis[1]),
        _ => {
            // A pair solution covering the third wins; otherwise all
            // three are tight and the triple-equal point is the answer.
            let mut best: Option<(Point, f64)> = None;
            for (i, j, k) in [(0usize, 1usize, 2usize), (0, 2, 1), (1, 2, 0)] {
                let (p, r) = pair_center(basis[i], basis[j]);
                if basis[k].value(p) <= r + tol
                    && best.map(|(_, br)| r < br).unwrap_or(true)
                {
                    best = Some((p, r));
                }
            }
            if let Some(found) = best {
                return found;
            }
            let seed = (basis[0].anchor + basis[1].anchor + basis[2].anchor) / 3.0;
            let tri = [basis[0], basis[1], basis[2]];
            let mut cands: Vec<Point> = Vec::new();
            if let Some(p) = triple_equal(&tri, seed, scale) {
                cands.push(p);
            }
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let (p, _) = pair_center(basis[i], basis[j]);
                if let Some(q) = triple_equal(&tri, p, scale) {
                    cands.push(q);
                }
            }
            let mut best = (seed, f64::INFINITY);
            for p in cands {
                let r = tri.iter().map(|c| c.value(p)).fold(f64::NEG_INFINITY, f64::max);
                if r < best.1 {
                    best = (p, r);
                }
            }
            best
        }
    }
}

/// Minimize the max of anchored cones over the plane. LP-type basis
/// iteration: solve for the current basis, add the worst violator,
/// rebuild the basis from the subsets containing it.
pub(crate) fn cone_minimax(cones: &[Cone], scale: f64) -> (Point, f64) {
    assert!(!cones.is_empty());
    let eval = |x: Point| -> f64 {
        cones
            .iter()
            .map(|c| c.value(x))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    if cones.len() == 1 {
        return (cones[0].anchor, cones[0].offset);
    }
    let tol = 1e-11 * scale;
    let mut basis: Vec<usize> = vec![0, 1];
    let mut guard = 0usize;
    loop {
        guard += 1;
        let basis_cones: Vec<Cone> = basis.iter().map(|&i| cones[i]).collect();
        let (x, r) = solve_basis(&basis_cones, scale);
        // Worst violator.
        let mut worst = (r, usize::MAX);
        for (i, c) in cones.iter().enumerate() {
            let v = c.value(x);
            if v > worst.0 {
                worst = (v, i);
            }
        }
        if worst.1 == usize::MAX || worst.0 <= r + tol || guard > 4 * cones.len() + 16 {
            return (x, eval(x));
        }
        let v = worst.1;
        // New basis: the subset of basis + violator (violator always in)
        // whose own solution has the largest radius.
        let mut pool = basis.clone();
        pool.push(v);
        pool.dedup();
        let mut best_subset: (f64, Vec<usize>) = (f64::NEG_INFINITY, vec![v]);
        let mut consider = |subset: Vec<usize>, best: &mut (f64, Vec<usize>)| {
            let bc: Vec<Cone> = subset.iter().map(|&i| cones[i]).collect();
            let (_, rr) = solve_basis(&bc, scale);
            if rr > best.0 {
                *best = (rr, subset);
            }
        };
        for i in 0..pool.len() {
            if pool[i] == v {
                continue;
            }
            consider(vec![pool[i], v], &mut best_subset);
            for j in i + 1..pool.len() {
                if pool[j] == v {
                    continue;
                }
                consider(vec![pool[i], pool[j], v], &mut best_subset);
            }
        }
        if best_subset.1.len() < 2 {
            best_subset.1.push(basis[0]);
        }
        basis = best_subset.1;
    }
}

/// Minimax of true geodesic distances by iterating anchored solves from
/// a seed; the safety net behind the structured searches.
fn anchor_iterate(
    kernel: &GeodesicKernel,
    sites: &[Point],
    seed: Point,
) -> Result<(Point, f64)> {
    let diam = kernel.diameter();
    let mut x = if kernel.polygon().contains(seed, kernel.eps()) {
        seed
    } else {
        sites[0]
    };
    let mut gx = true_max(kernel, sites, x)?.0;
    for _ in 0..120 {
        let mut cones = Vec::with_capacity(sites.len());
        for s in sites {
            cones.push(cone_at(kernel, *s, x)?);
        }
        let (mut cand, _) = cone_minimax(&cones, diam);
        // Pull back inside the polygon if the unconstrained solve left it.
        let mut guard = 0;
        while !kernel.polygon().contains(cand, kernel.eps()) && guard < 60 {
            cand = lerp(x, cand, 0.5);
            guard += 1;
        }
        let gc = true_max(kernel, sites, cand)?.0;
        if gc < gx - 1e-15 * diam {
            let moved = cand.dist(x);
            x = cand;
            gx = gc;
            if moved <= 1e-14 * diam {
                break;
            }
        } else {
            // Damp toward the candidate; stop when no progress remains.
            let half = lerp(x, cand, 0.5);
            let gh = true_max(kernel, sites, half)?.0;
            if gh < gx - 1e-15 * diam {
                x = half;
                gx = gh;
            } else {
                break;
            }
        }
    }
    Ok((x, gx))
}

// ----- geodesic hull -----

/// Geodesic convex hull of sites inside the polygon.
///
/// Incremental shrink-wrap: start from the Euclidean hull anchors,
/// repeatedly insert any site left outside the current chain at the
/// position of minimal geodesic detour, and drop anchors that the
/// remaining chain already encloses, until stable.
pub fn geodesic_hull(kernel: &GeodesicKernel, sites: &[Point]) -> Result<GeodesicHull> {
    let eps = kernel.eps();
    for s in sites {
        if !kernel.polygon().contains(*s, eps) {
            return Err(Error::PointOutsidePolygon(*s));
        }
    }
    // Dedup while remembering representatives.
    let mut uniq: Vec<usize> = Vec::new();
    for (i, s) in sites.iter().enumerate() {
        if !uniq.iter().any(|&j| sites[j].dist(*s) <= eps) {
            uniq.push(i);
        }
    }
    if uniq.len() == 1 {
        return Ok(GeodesicHull {
            boundary: vec![sites[uniq[0]]],
            site_order: vec![uniq[0]],
        });
    }
    if uniq.len() == 2 {
        let path = kernel.geodesic_path(sites[uniq[0]], sites[uniq[1]])?;
        let mut boundary: Vec<Point> = path.vertices().to_vec();
        let mut back: Vec<Point> = path.vertices()[1..path.vertices().len() - 1]
            .iter()
            .rev()
            .cloned()
            .collect();
        boundary.append(&mut back);
        return Ok(GeodesicHull {
            boundary,
            site_order: vec![uniq[0], uniq[1]],
        });
    }
    // Euclidean hull of the site points as the initial anchor cycle.
    let mut anchors = euclidean_hull(&uniq, sites);
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > 8 * sites.len() + 32 {
            break;
        }
        let chain = chain_of(kernel, &anchors, sites)?;
        // Outside sites get inserted at the cheapest gap.
        let mut changed = false;
        for &i in &uniq {
            if anchors.contains(&i) {
                continue;
            }
            if chain_contains(kernel, &chain, sites[i]) {
                continue;
            }
            let mut best = (f64::INFINITY, 0usize);
            for g in 0..anchors.len() {
                let a = sites[anchors[g]];
                let b = sites[anchors[(g + 1) % anchors.len()]];
                let detour = kernel.geodesic_distance(a, sites[i])?
                    + kernel.geodesic_distance(sites[i], b)?
                    - kernel.geodesic_distance(a, b)?;
                if detour < best.0 {
                    best = (detour, g);
                }
            }
            anchors.insert(best.1 + 1, i);
            changed = true;
            break;
        }
        if changed {
            continue;
        }
        // Anchors the rest of the chain already encloses are redundant.
        if anchors.len() > 2 {
            let mut removed = false;
            for g in 0..anchors.len() {
                let mut rest = anchors.clone();
                let cand = rest.remove(g);
                let rest_chain = chain_of(kernel, &rest, sites)?;
                if chain_contains(kernel, &rest_chain, sites[cand]) {
                    anchors = rest;
                    removed = true;
                    break;
                }
            }
            if removed {
                continue;
            }
        }
        break;
    }
    let chain = chain_of(kernel, &anchors, sites)?;
    // Circular site order along the boundary: anchors in cycle order plus
    // any sites lying on the chain, placed by chain position.
    let mut cum = Vec::with_capacity(chain.len() + 1);
    let mut acc = 0.0;
    cum.push(0.0);
    for w in 0..chain.len() {
        acc += chain[w].dist(chain[(w + 1) % chain.len()]);
        cum.push(acc);
    }
    let mut order: Vec<(f64, usize)> = Vec::new();
    for &i in &uniq {
        if let Some(pos) = chain_position(&chain, &cum, sites[i], eps) {
            order.push((pos, i));
        }
    }
    order.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    Ok(GeodesicHull {
        boundary: chain,
        site_order: order.into_iter().map(|(_, i)| i).collect(),
    })
}

fn euclidean_hull(uniq: &[usize], sites: &[Point]) -> Vec<usize> {
    let mut pts: Vec<usize> = uniq.to_vec();
    pts.sort_by(|&a, &b| sites[a].lex_cmp(sites[b]));
    let mut lower: Vec<usize> = Vec::new();
    for &i in &pts {
        while lower.len() >= 2 {
            let a = sites[lower[lower.len() - 2]];
            let b = sites[lower[lower.len() - 1]];
            if crate::geom::orient(a, b, sites[i]) <= 0.0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in pts.iter().rev() {
        while upper.len() >= 2 {
            let a = sites[upper[upper.len() - 2]];
            let b = sites[upper[upper.len() - 1]];
            if crate::geom::orient(a, b, sites[i]) <= 0.0 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Concatenated geodesic chain through the anchor cycle.
fn chain_of(kernel: &GeodesicKernel, anchors: &[usize], sites: &[Point]) -> Result<Vec<Point>> {
    let mut chain: Vec<Point> = Vec::new();
    for g in 0..anchors.len() {
        let a = sites[anchors[g]];
        let b = sites[anchors[(g + 1) % anchors.len()]];
        let path = kernel.geodesic_path(a, b)?;
        let verts = path.vertices();
        for v in &verts[..verts.len().max(1) - 1] {
            if chain.last().map(|l| l.dist(*v) > kernel.eps()).unwrap_or(true) {
                chain.push(*v);
            }
        }
    }
    Ok(chain)
}

/// Containment in the closed region of a weakly simple chain; points on
/// the chain count as inside. Degenerate (zero-area) chains reduce to an
/// on-chain test.
fn chain_contains(kernel: &GeodesicKernel, chain: &[Point], p: Point) -> bool {
    let eps = kernel.eps();
    let n = chain.len();
    if n < 3 {
        return chain.iter().any(|c| c.dist(p) <= eps)
            || (n == 2 && crate::geom::dist_point_segment(p, chain[0], chain[1]) <= eps);
    }
    for i in 0..n {
        if crate::geom::dist_point_segment(p, chain[i], chain[(i + 1) % n]) <= eps {
            return true;
        }
    }
    let area2: f64 = (0..n).map(|i| chain[i].cross(chain[(i + 1) % n])).sum();
    if area2.abs() <= eps * kernel.diameter() {
        return false;
    }
    // Crossing parity.
    let mut inside = false;
    for i in 0..n {
        let a = chain[i];
        let b = chain[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

fn chain_position(chain: &[Point], cum: &[f64], p: Point, eps: f64) -> Option<f64> {
    let n = chain.len();
    for i in 0..n {
        let a = chain[i];
        let b = chain[(i + 1) % n];
        if crate::geom::dist_point_segment(p, a, b) <= eps {
            let (_, t) = project_on_segment(p, a, b);
            return Some(cum[i] + t * a.dist(b));
        }
    }
    None
}

// ----- restricted centers on segments and chords -----

/// Minimize the max geodesic distance to `sites` over segment [a, b]:
/// (point, radius, active site indices).
pub(crate) fn restricted_center_on_segment(
    kernel: &GeodesicKernel,
    sites: &[Point],
    a: Point,
    b: Point,
) -> Result<(Point, f64, Vec<usize>)> {
    let diam = kernel.diameter();
    let g = |t: f64, k: &GeodesicKernel| -> Result<f64> {
        let x = lerp(a, b, t);
        Ok(true_max(k, sites, x)?.0)
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..55 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1, kernel)? <= g(m2, kernel)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let mut best_val = g(t, kernel)?;
    // Anchored polish: equalize the active cones exactly on the segment.
    let x0 = lerp(a, b, t);
    let mut cones = Vec::with_capacity(sites.len());
    for s in sites {
        cones.push(cone_at(kernel, *s, x0)?);
    }
    let active: Vec<usize> = (0..sites.len())
        .filter(|&i| cones[i].value(x0) >= best_val - 1e-7 * diam)
        .collect();
    let mut candidates: Vec<f64> = vec![0.0, 1.0, t];
    for (ci, &i) in active.iter().enumerate() {
        // Unconstrained per-cone minimum on the segment.
        let (_, tf) = project_on_segment(cones[i].anchor, a, b);
        candidates.push(tf);
        for &j in active.iter().skip(ci + 1) {
            let c = cones[j].offset - cones[i].offset;
            for p in conic_ray_intersections(
                cones[i].anchor,
                cones[j].anchor,
                c,
                a,
                b - a,
                0.0,
                1e-9 * diam,
            ) {
                let (_, tt) = project_on_segment(p, a, b);
                candidates.push(tt);
            }
        }
    }
    for cand in candidates {
        let v = g(cand, kernel)?;
        if v < best_val {
            best_val = v;
            t = cand;
        }
    }
    let x = lerp(a, b, t);
    let mut act = Vec::new();
    for (i, s) in sites.iter().enumerate() {
        if kernel.geodesic_distance(*s, x)? >= best_val - 1e-8 * diam {
            act.push(i);
        }
    }
    Ok((x, best_val, act))
}

/// Which side of the directed chord (a -> b) allows all active distances
/// to shrink; `On` when no descent direction exists (the restricted
/// center is the global one).
fn descent_side(
    kernel: &GeodesicKernel,
    a: Point,
    b: Point,
    c_e: Point,
    sites: &[Point],
    active: &[usize],
) -> Result<ChordSide> {
    let diam = kernel.diameter();
    let mut dirs: Vec<Point> = Vec::with_capacity(active.len());
    for &i in active {
        let cone = cone_at(kernel, sites[i], c_e)?;
        match (cone.anchor - c_e).normalized() {
            Some(d) => dirs.push(d),
            None => return Ok(ChordSide::On), // c_e sits on a site
        }
    }
    // Representative descent direction: sum of unit pulls toward anchors.
    let w = dirs.iter().fold(Point::new(0.0, 0.0), |acc, d| acc + *d);
    let valid = !dirs.is_empty() && dirs.iter().all(|d| w.dot(*d) > 0.0);
    let e = b - a;
    if valid {
        if let Some(wn) = w.normalized() {
            let s = e.normalized().map(|en| en.cross(wn)).unwrap_or(0.0);
            // Nearly parallel descent means the chord minimum was not
            // tight; treat as On.
            if s > 1e-9 {
                return Ok(ChordSide::Left);
            }
            if s < -1e-9 {
                return Ok(ChordSide::Right);
            }
            return Ok(ChordSide::On);
        }
    }
    // Probe fallback.
    let n = e.perp().normalized().unwrap_or(Point::new(0.0, 1.0));
    let delta = 1e-6 * diam;
    let g0 = true_max(kernel, sites, c_e)?.0;
    let left = c_e + n * delta;
    let right = c_e - n * delta;
    let gl = if kernel.polygon().contains(left, kernel.eps()) {
        true_max(kernel, sites, left)?.0
    } else {
        f64::INFINITY
    };
    let gr = if kernel.polygon().contains(right, kernel.eps()) {
        true_max(kernel, sites, right)?.0
    } else {
        f64::INFINITY
    };
    if gl < g0 - 1e-12 * diam && gl <= gr {
        return Ok(ChordSide::Left);
    }
    if gr < g0 - 1e-12 * diam {
        return Ok(ChordSide::Right);
    }
    Ok(ChordSide::On)
}

/// Restricted center on an extension chord plus the side of the chord
/// containing the global center of the three points.
pub fn side_of_extension(
    kernel: &GeodesicKernel,
    e: (Point, Point),
    sites: &[Point; 3],
) -> Result<(ChordSide, Point)> {
    let (c_e, _, active) = restricted_center_on_segment(kernel, sites, e.0, e.1)?;
    let side = descent_side(kernel, e.0, e.1, c_e, sites, &active)?;
    Ok((side, c_e))
}

/// Chord oracle: restricted center c_e on a polygon chord and the side
/// containing the geodesic center of `sites`, via site pairing,
/// per-pair bisector-chord intersections and median pruning.
pub fn chord_oracle(
    kernel: &GeodesicKernel,
    chord: (Point, Point),
    sites: &[Point],
) -> Result<(ChordSide, Point)> {
    assert!(!sites.is_empty());
    let diam = kernel.diameter();
    let (a, b) = chord;
    let mut live: Vec<usize> = (0..sites.len()).collect();
    let phi = |i: usize, j: usize, t: f64, k: &GeodesicKernel| -> Result<f64> {
        let x = lerp(a, b, t);
        Ok(k.geodesic_distance(sites[i], x)? - k.geodesic_distance(sites[j], x)?)
    };
    while live.len() > 3 {
        // Pair sites lying on the same side of the chord.
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &i in &live {
            if crate::geom::orient(a, b, sites[i]) >= 0.0 {
                left.push(i);
            } else {
                right.push(i);
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for side in [&left, &right] {
            for c in side.chunks(2) {
                if c.len() == 2 {
                    pairs.push((c[0], c[1]));
                }
            }
        }
        if pairs.is_empty() {
            break;
        }
        let mut crossings: Vec<(f64, usize, usize)> = Vec::new();
        let mut dropped = false;
        for &(i, j) in &pairs {
            // The bisecting curve of two same-side sites crosses the
            // chord at most once; bracket by the endpoint signs.
            let f0 = phi(i, j, 0.0, kernel)?;
            let f1 = phi(i, j, 1.0, kernel)?;
            if (f0 <= 0.0) == (f1 <= 0.0) {
                // No crossing: one site is closer along the whole chord
                // and can never be the farthest there.
                let drop = if f0 <= 0.0 { i } else { j };
                live.retain(|&s| s != drop);
                dropped = true;
                continue;
            }
            let (mut tl, mut th, mut fl) = (0.0f64, 1.0f64, f0);
            for _ in 0..50 {
                let tm = 0.5 * (tl + th);
                let fm = phi(i, j, tm, kernel)?;
                if (fl <= 0.0) != (fm <= 0.0) {
                    th = tm;
                } else {
                    tl = tm;
                    fl = fm;
                }
            }
            crossings.push((0.5 * (tl + th), i, j));
        }
        if crossings.is_empty() {
            if dropped {
                continue;
            }
            break;
        }
        crossings.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let median = crossings[crossings.len() / 2].0;
        // Which side of the median holds the restricted center: compare
        // the convex envelope around it.
        let live_sites: Vec<Point> = live.iter().map(|&i| sites[i]).collect();
        let gm = true_max(kernel, &live_sites, lerp(a, b, median))?.0;
        let delta = 1e-7;
        let gl = true_max(kernel, &live_sites, lerp(a, b, (median - delta).max(0.0)))?.0;
        let gr = true_max(kernel, &live_sites, lerp(a, b, (median + delta).min(1.0)))?.0;
        let ce_on_right = gr < gm || (gl >= gm && gr <= gl);
        // Discard the dominated site of every pair whose crossing lies
        // strictly on the wrong side of the median.
        let mut to_drop: Vec<usize> = Vec::new();
        let probe_t = if ce_on_right {
            (median + 10.0 * delta).min(1.0)
        } else {
            (median - 10.0 * delta).max(0.0)
        };
        for &(t, i, j) in &crossings {
            let wrong = if ce_on_right {
                t < median - 1e-12
            } else {
                t > median + 1e-12
            };
            if wrong {
                let f = phi(i, j, probe_t, kernel)?;
                to_drop.push(if f <= 0.0 { i } else { j });
            }
        }
        if to_drop.is_empty() && !dropped {
            break;
        }
        live.retain(|s| !to_drop.contains(s));
    }
    let live_sites: Vec<Point> = live.iter().map(|&i| sites[i]).collect();
    let (mut c_e, mut r, _) = restricted_center_on_segment(kernel, &live_sites, a, b)?;
    // The survivors must dominate the discarded sites at c_e; if the
    // pruning lost a binding site, redo the search on the full set.
    let (full_r, _) = true_max(kernel, sites, c_e)?;
    if full_r > r + 1e-9 * diam {
        let (ce2, r2, _) = restricted_center_on_segment(kernel, sites, a, b)?;
        c_e = ce2;
        r = r2;
    }
    let mut active = Vec::new();
    for (i, s) in sites.iter().enumerate() {
        if kernel.geodesic_distance(*s, c_e)? >= r - 1e-8 * diam {
            active.push(i);
        }
    }
    let side = descent_side(kernel, a, b, c_e, sites, &active)?;
    Ok((side, c_e))
}

// ----- centers -----

/// Geodesic center of three points and its radius.
pub fn center3(kernel: &GeodesicKernel, p1: Point, p2: Point, p3: Point) -> Result<(Point, f64)> {
    let pts = [p1, p2, p3];
    let eps = kernel.eps();
    let diam = kernel.diameter();
    let mut uniq: Vec<Point> = Vec::new();
    for p in pts {
        if !kernel.polygon().contains(p, eps) {
            return Err(Error::PointOutsidePolygon(p));
        }
        if !uniq.iter().any(|q| q.dist(p) <= eps) {
            uniq.push(p);
        }
    }
    if uniq.len() == 1 {
        return Ok((uniq[0], 0.0));
    }
    if uniq.len() == 2 {
        let path = kernel.geodesic_path(uniq[0], uniq[1])?;
        return Ok((path.point_at(path.length() / 2.0), path.length() / 2.0));
    }
    // Boundary-of-hull case: a side midpoint covering the third point.
    let mut best_mid: Option<(Point, f64)> = None;
    for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let path = kernel.geodesic_path(uniq[i], uniq[j])?;
        let r = path.length() / 2.0;
        let mid = path.point_at(r);
        if kernel.geodesic_distance(mid, uniq[k])? <= r + 1e-11 * diam
            && best_mid.map(|(_, br)| r < br).unwrap_or(true)
        {
            best_mid = Some((mid, r));
        }
    }
    if let Some(found) = best_mid {
        return Ok(found);
    }
    // Interior center: first-level binary searches fix the three anchors,
    // then the anchored minimax solves in closed form.
    let junctions = [
        kernel.junction(uniq[0], uniq[1], uniq[2])?,
        kernel.junction(uniq[1], uniq[2], uniq[0])?,
        kernel.junction(uniq[2], uniq[0], uniq[1])?,
    ];
    let mut cones = Vec::with_capacity(3);
    for i in 0..3 {
        match first_level_anchor(kernel, &uniq, &junctions, i)? {
            Some(cone) => cones.push(cone),
            None => break,
        }
    }
    if cones.len() == 3 {
        let (c, r) = cone_minimax(&cones, diam);
        if kernel.polygon().contains(c, eps) {
            let (tr, _) = true_max(kernel, &uniq, c)?;
            if (tr - r).abs() <= 1e-9 * diam {
                return Ok((c, tr));
            }
        }
    }
    // Safety net: iterate anchored solves from the junction centroid.
    let seed = Point::new(
        (junctions[0].x + junctions[1].x + junctions[2].x) / 3.0,
        (junctions[0].y + junctions[1].y + junctions[2].y) / 3.0,
    );
    anchor_iterate(kernel, &uniq, seed)
}

/// First-level binary search of the center-of-three algorithm: locate
/// the subdivision region (with respect to the junction of point i) that
/// contains the center, and return the point's anchored cone there.
fn first_level_anchor(
    kernel: &GeodesicKernel,
    pts: &[Point],
    junctions: &[Point; 3],
    i: usize,
) -> Result<Option<Cone>> {
    let j = (i + 1) % 3;
    let k = (i + 2) % 3;
    let pi_prime = junctions[i];
    let chain_j = kernel.geodesic_path(pi_prime, junctions[j])?;
    let chain_k = kernel.geodesic_path(pi_prime, junctions[k])?;
    let opposite = kernel.geodesic_path(junctions[j], junctions[k])?;
    // Extension chords of the two chains, ordered by their foot position
    // along the opposite chain.
    let mut chords: Vec<(Point, Point, f64)> = Vec::new(); // (start, foot, order)
    for chain in [&chain_j, &chain_k] {
        let verts = chain.vertices();
        for w in 1..verts.len().max(1) - 1 {
            let u = verts[w - 1];
            let v = verts[w];
            let dir = v - u;
            if let Some((foot, pos)) = polyline_ray_hit(&opposite, v, dir) {
                chords.push((v, foot, pos));
            }
        }
    }
    chords.sort_by(|x, y| x.2.partial_cmp(&y.2).unwrap());
    let sites3 = [pts[0], pts[1], pts[2]];
    let mut lo: isize = -1;
    let mut hi: isize = chords.len() as isize;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let (s, f, _) = chords[mid as usize];
        let (side, c_e) = side_of_extension(kernel, (s, f), &sites3)?;
        match side {
            ChordSide::On => {
                return Ok(Some(cone_at(kernel, pts[i], c_e)?));
            }
            _ => {
                // The region of smaller foot positions lies on the same
                // side of the chord as the opposite chain's start.
                let start_side = crate::geom::orient(s, f, opposite.vertices()[0]);
                let low_is_left = start_side > 0.0;
                let c_low = matches!(side, ChordSide::Left) == low_is_left;
                if c_low {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
        }
    }
    // Probe a point inside the located region to read the anchor.
    let opp = opposite.vertices();
    let low_pt = if lo >= 0 {
        let (s, f, _) = chords[lo as usize];
        lerp(s, f, 0.5)
    } else {
        lerp(opp[0], pi_prime, 0.25)
    };
    let high_pt = if hi < chords.len() as isize {
        let (s, f, _) = chords[hi as usize];
        lerp(s, f, 0.5)
    } else {
        lerp(*opp.last().unwrap(), pi_prime, 0.25)
    };
    let probe = lerp(low_pt, high_pt, 0.5);
    if !kernel.polygon().contains(probe, kernel.eps()) {
        return Ok(None);
    }
    Ok(Some(cone_at(kernel, pts[i], probe)?))
}

/// First hit of the ray (origin, dir) with a geodesic path polyline:
/// (hit point, arc-length position along the path).
fn polyline_ray_hit(
    path: &crate::kernel::GeodesicPath,
    origin: Point,
    dir: Point,
) -> Option<(Point, f64)> {
    let verts = path.vertices();
    let cum = path.cumulative();
    let mut best: Option<(f64, Point, f64)> = None;
    for w in 0..verts.len().max(1) - 1 {
        if let Some((t, u)) = crate::geom::ray_segment_intersection(
            origin,
            dir,
            verts[w],
            verts[w + 1],
            1e-12,
            1e-12,
        ) {
            if best.map(|(bt, _, _)| t < bt).unwrap_or(true) {
                let hit = origin + dir * t;
                let pos = cum[w] + u * verts[w].dist(verts[w + 1]);
                best = Some((t, hit, pos));
            }
        }
    }
    best.map(|(_, h, p)| (h, p))
}

/// Geodesic center of m points: chord-oracle descent over the
/// triangulation, per-site anchor searches inside the located triangle,
/// then the anchored upper-envelope minimization.
pub fn center_m(kernel: &GeodesicKernel, sites: &[Point]) -> Result<(Point, f64)> {
    let eps = kernel.eps();
    let diam = kernel.diameter();
    let mut uniq: Vec<Point> = Vec::new();
    for p in sites {
        if !kernel.polygon().contains(*p, eps) {
            return Err(Error::PointOutsidePolygon(*p));
        }
        if !uniq.iter().any(|q| q.dist(*p) <= eps) {
            uniq.push(*p);
        }
    }
    match uniq.len() {
        1 => return Ok((uniq[0], 0.0)),
        2 => {
            let path = kernel.geodesic_path(uniq[0], uniq[1])?;
            return Ok((path.point_at(path.length() / 2.0), path.length() / 2.0));
        }
        3 => return center3(kernel, uniq[0], uniq[1], uniq[2]),
        _ => {}
    }
    // Locate the triangle of the triangulation containing the center by
    // a balanced chord-oracle descent over the dual tree.
    let tri = locate_center_triangle(kernel, &uniq)?;
    let poly = kernel.polygon();
    let t = kernel.triangles()[tri];
    let centroid = (poly.vertex(t[0]) + poly.vertex(t[1]) + poly.vertex(t[2])) / 3.0;
    // Per-site anchor search inside the triangle.
    let mut cones = Vec::with_capacity(uniq.len());
    for s in &uniq {
        cones.push(site_anchor_in_triangle(kernel, *s, centroid, &uniq)?);
    }
    let (c, r) = cone_minimax(&cones, diam);
    if kernel.polygon().contains(c, eps) {
        let (tr, _) = true_max(kernel, &uniq, c)?;
        if (tr - r).abs() <= 1e-9 * diam {
            return Ok((c, tr));
        }
    }
    anchor_iterate(kernel, &uniq, centroid)
}

/// Balanced descent over the triangulation's dual tree using the chord
/// oracle, returning the triangle containing the center.
fn locate_center_triangle(kernel: &GeodesicKernel, sites: &[Point]) -> Result<usize> {
    let tris = kernel.triangles();
    let adj = kernel.triangle_neighbors();
    let poly = kernel.polygon();
    let mut alive: Vec<bool> = vec![true; tris.len()];
    let mut alive_count = tris.len();
    while alive_count > 1 {
        // Most balanced internal chord of the remaining subtree.
        let mut best: Option<(usize, usize, usize)> = None; // (tri, slot, balance)
        for ti in 0..tris.len() {
            if !alive[ti] {
                continue;
            }
            for slot in 0..3 {
                if let Some(tj) = adj[ti][slot] {
                    if !alive[tj] || tj < ti {
                        continue;
                    }
                    let size = component_size(adj, &alive, tj, ti);
                    let balance = size.min(alive_count - size);
                    if best.map(|(_, _, b)| balance > b).unwrap_or(true) {
                        best = Some((ti, slot, balance));
                    }
                }
            }
        }
        let Some((ti, slot, _)) = best else { break };
        let tj = adj[ti][slot].unwrap();
        let a = poly.vertex(tris[ti][slot]);
        let b = poly.vertex(tris[ti][(slot + 1) % 3]);
        let (side, _) = chord_oracle(kernel, (a, b), sites)?;
        // Interior of a CCW triangle lies left of its directed edges, so
        // triangle ti sits on the left of (a, b); On keeps the ti side
        // (the center lies in its closure).
        let keep = match side {
            ChordSide::Left | ChordSide::On => ti,
            ChordSide::Right => tj,
        };
        let dead_side = if keep == ti { tj } else { ti };
        // Kill the whole component on the dead side.
        let mut stack = vec![dead_side];
        while let Some(x) = stack.pop() {
            if !alive[x] {
                continue;
            }
            alive[x] = false;
            alive_count -= 1;
            for s in 0..3 {
                if let Some(y) = adj[x][s] {
                    if alive[y] && y != keep {
                        stack.push(y);
                    }
                }
            }
        }
    }
    Ok((0..tris.len()).find(|&i| alive[i]).unwrap_or(0))
}

fn component_size(
    adj: &[[Option<usize>; 3]],
    alive: &[bool],
    start: usize,
    blocked: usize,
) -> usize {
    let mut seen = alloc::collections::BTreeSet::new();
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        if x == blocked || !alive[x] || !seen.insert(x) {
            continue;
        }
        for s in 0..3 {
            if let Some(y) = adj[x][s] {
                if alive[y] && y != blocked && !seen.contains(&y) {
                    stack.push(y);
                }
            }
        }
    }
    seen.len()
}

/// Anchor cone of one site for points near `target`, found by binary
/// search over the extension chords of the site's geodesic path with the
/// chord oracle as the decision procedure.
fn site_anchor_in_triangle(
    kernel: &GeodesicKernel,
    site: Point,
    target: Point,
    all_sites: &[Point],
) -> Result<Cone> {
    let path = kernel.geodesic_path(site, target)?;
    let verts = path.vertices();
    if verts.len() <= 2 {
        return cone_at(kernel, site, target);
    }
    // Hand-off chord at path vertex w_j: the shaft extending the edge
    // arriving at w_j. The center lies beyond it iff w_j anchors it.
    let mut lo = 0usize; // deepest index known not beyond the center
    let mut hi = verts.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let u = verts[mid - 1];
        let v = verts[mid];
        let (_, far) = kernel.shaft(v, v - u);
        if far.dist(v) <= kernel.eps() {
            lo = mid;
            continue;
        }
        let (side, _) = chord_oracle(kernel, (v, far), all_sites)?;
        let site_side = crate::geom::orient(v, far, u);
        let center_on_site_side = match side {
            ChordSide::Left => site_side > 0.0,
            ChordSide::Right => site_side < 0.0,
            ChordSide::On => false,
        };
        if center_on_site_side {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let anchor = verts[lo];
    Ok(Cone {
        anchor,
        offset: path.cumulative()[lo],
    })
}

// ----- equidistant points -----

/// Closest point equidistant from three points, if one exists.
pub fn equidistant3(
    kernel: &GeodesicKernel,
    p1: Point,
    p2: Point,
    p3: Point,
) -> Result<EquidistantResult> {
    let eps = kernel.eps();
    let diam = kernel.diameter();
    let pts = [p1, p2, p3];
    let mut uniq: Vec<Point> = Vec::new();
    for p in pts {
        if !uniq.iter().any(|q| q.dist(p) <= eps) {
            uniq.push(p);
        }
    }
    if uniq.len() == 1 {
        return Ok(EquidistantResult {
            point: Some(uniq[0]),
            distance: 0.0,
        });
    }
    if uniq.len() == 2 {
        let path = kernel.geodesic_path(uniq[0], uniq[1])?;
        return Ok(EquidistantResult {
            point: Some(path.point_at(path.length() / 2.0)),
            distance: path.length() / 2.0,
        });
    }
    let (c, r) = center3(kernel, p1, p2, p3)?;
    let d = [
        kernel.geodesic_distance(p1, c)?,
        kernel.geodesic_distance(p2, c)?,
        kernel.geodesic_distance(p3, c)?,
    ];
    let spread = d.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - d.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if spread <= 1e-10 * diam {
        return Ok(EquidistantResult {
            point: Some(c),
            distance: r,
        });
    }
    // The center is the midpoint of the far pair. An equidistant point,
    // if any, lies in the subpolygon beyond the chord containing the
    // center, away from the near point; it does not exist when the
    // center sits on a tail pi(q_i, q_i') before the junction.
    let near = (0..3)
        .min_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap())
        .unwrap();
    let p_near = pts[near];
    let q2 = pts[(near + 1) % 3];
    let q3 = pts[(near + 2) % 3];
    let path23 = kernel.geodesic_path(q2, q3)?;
    let half = path23.length() / 2.0;
    let j2 = kernel.junction(q2, q3, p_near)?;
    let j3 = kernel.junction(q3, q2, p_near)?;
    let d_j2 = kernel.geodesic_distance(q2, j2)?;
    let d_j3 = kernel.geodesic_distance(q3, j3)?;
    if half < d_j2 - 1e-12 * diam || (path23.length() - half) < d_j3 - 1e-12 * diam {
        return Ok(EquidistantResult {
            point: None,
            distance: 0.0,
        });
    }
    // Seed on the side of the chord away from the near point and march
    // the far pair's bisector until the near distance catches up.
    let verts = path23.vertices();
    let cum = path23.cumulative();
    let mut seg = 0;
    while seg + 2 < cum.len() && cum[seg + 1] < half {
        seg += 1;
    }
    let v2 = verts[seg];
    let v3 = verts[(seg + 1).min(verts.len() - 1)];
    let n = (v3 - v2)
        .perp()
        .normalized()
        .unwrap_or(Point::new(0.0, 1.0));
    let delta = 1e-6 * diam;
    let side_a = c + n * delta;
    let side_b = c - n * delta;
    let da = if kernel.polygon().contains(side_a, eps) {
        kernel.geodesic_distance(p_near, side_a)?
    } else {
        f64::NEG_INFINITY
    };
    let db = if kernel.polygon().contains(side_b, eps) {
        kernel.geodesic_distance(p_near, side_b)?
    } else {
        f64::NEG_INFINITY
    };
    let away = if da >= db { n } else { -n };
    let g = |x: Point, k: &GeodesicKernel| -> Result<f64> {
        Ok(k.geodesic_distance(p_near, x)? - k.geodesic_distance(q2, x)?)
    };
    let hit = march_bisector_until(kernel, q2, q3, c, away, &g)?;
    match hit {
        Some(x) => {
            let dist = kernel.geodesic_distance(q2, x)?;
            let dd = [
                kernel.geodesic_distance(p1, x)?,
                kernel.geodesic_distance(p2, x)?,
                kernel.geodesic_distance(p3, x)?,
            ];
            let spread = dd.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
                - dd.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            if spread <= 1e-9 * diam {
                Ok(EquidistantResult {
                    point: Some(x),
                    distance: dist,
                })
            } else {
                Ok(EquidistantResult {
                    point: None,
                    distance: 0.0,
                })
            }
        }
        None => Ok(EquidistantResult {
            point: None,
            distance: 0.0,
        }),
    }
}

/// All points equidistant from three points: zeros of
/// d(p_near, .) - d(q2, .) collected along the whole bisecting curve
/// b(q2, q3) of the far pair, each paired with its common distance.
/// Distinct triples may produce several such points in a polygon.
pub fn equidistant3_candidates(
    kernel: &GeodesicKernel,
    p1: Point,
    p2: Point,
    p3: Point,
) -> Result<Vec<(Point, f64)>> {
    let eps = kernel.eps();
    let pts = [p1, p2, p3];
    let mut uniq: Vec<Point> = Vec::new();
    for p in pts {
        if !uniq.iter().any(|q| q.dist(p) <= eps) {
            uniq.push(p);
        }
    }
    if uniq.len() < 3 {
        let base = equidistant3(kernel, p1, p2, p3)?;
        return Ok(base.point.map(|p| (p, base.distance)).into_iter().collect());
    }
    let d_at = |x: Point, k: &GeodesicKernel| -> Result<[f64; 3]> {
        Ok([
            k.geodesic_distance(p1, x)?,
            k.geodesic_distance(p2, x)?,
            k.geodesic_distance(p3, x)?,
        ])
    };
    // Work along the bisector of the pair farthest apart; every triple
    // point lies on it.
    let mut far = (0usize, 1usize);
    let mut best = -1.0f64;
    for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
        let d = kernel.geodesic_distance(pts[i], pts[j])?;
        if d > best {
            best = d;
            far = (i, j);
        }
    }
    let qa = pts[far.0];
    let qb = pts[far.1];
    let other = pts[3 - far.0 - far.1];
    let path_ab = kernel.geodesic_path(qa, qb)?;
    let mid = path_ab.point_at(path_ab.length() / 2.0);
    let h = |x: Point, k: &GeodesicKernel| -> Result<f64> {
        Ok(k.geodesic_distance(other, x)? - k.geodesic_distance(qa, x)?)
    };
    let verts = path_ab.vertices();
    let w = if verts.len() >= 2 {
        verts[verts.len() / 2] - verts[verts.len() / 2 - 1]
    } else {
        Point::new(1.0, 0.0)
    };
    let n = w.perp().normalized().unwrap_or(Point::new(0.0, 1.0));
    let mut out: Vec<(Point, f64)> = Vec::new();
    let diam = kernel.diameter();
    for dir in [n, -n] {
        for z in march_bisector_collect(kernel, qa, qb, mid, dir, &h)? {
            let ds = d_at(z, kernel)?;
            let spread = ds.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - ds.iter().cloned().fold(f64::INFINITY, f64::min);
            if spread <= 1e-8 * diam && !out.iter().any(|(q, _)| q.dist(z) <= 1e-7 * diam) {
                out.push((z, ds[0]));
            }
        }
    }
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(out)
}

/// March the full bisecting curve b(pa, pb) from `start` in direction
/// `dir0`, collecting every zero of `h` until the curve leaves the
/// polygon.
pub(crate) fn march_bisector_collect(
    kernel: &GeodesicKernel,
    pa: Point,
    pb: Point,
    start: Point,
    dir0: Point,
    h: &dyn Fn(Point, &GeodesicKernel) -> Result<f64>,
) -> Result<Vec<Point>> {
    let mut zeros = Vec::new();
    let mut from = start;
    let mut dir = dir0;
    for _ in 0..12 {
        let sign = h(from, kernel)?;
        let flipped: &dyn Fn(Point, &GeodesicKernel) -> Result<f64> = if sign > 0.0 {
            &|x, k| Ok(-(h(x, k)?))
        } else {
            h
        };
        match march_bisector_until(kernel, pa, pb, from, dir, flipped)? {
            Some(z) => {
                if z.dist(from) <= 1e-9 * kernel.diameter() {
                    break;
                }
                zeros.push(z);
                dir = (z - from).normalized().unwrap_or(dir);
                // Continue past the zero.
                from = z + dir * (1e-6 * kernel.diameter());
                if !kernel.polygon().contains(from, kernel.eps()) {
                    break;
                }
            }
            None => break,
        }
    }
    Ok(zeros)
}

/// Walk the bisecting curve b(pa, pb) from `start` in the rough
/// direction `dir0`, returning the first zero of `h` (negative at the
/// start), or None when the curve exits the polygon first.
pub(crate) fn march_bisector_until(
    kernel: &GeodesicKernel,
    pa: Point,
    pb: Point,
    start: Point,
    dir0: Point,
    h: &dyn Fn(Point, &GeodesicKernel) -> Result<f64>,
) -> Result<Option<Point>> {
    let diam = kernel.diameter();
    let eps = kernel.eps();
    let correct = |mut x: Point, k: &GeodesicKernel| -> Result<Option<Point>> {
        for _ in 0..12 {
            let da = k.geodesic_path(pa, x)?;
            let db = k.geodesic_path(pb, x)?;
            let phi = da.length() - db.length();
            if phi.abs() <= 1e-13 * diam {
                return Ok(Some(x));
            }
            let (aa, _) = da.final_anchor();
            let (ab, _) = db.final_anchor();
            let grad = (x - aa).normalized().unwrap_or(Point::new(1.0, 0.0))
                - (x - ab).normalized().unwrap_or(Point::new(0.0, 1.0));
            let g2 = grad.dot(grad);
            if g2 <= 1e-18 {
                return Ok(None);
            }
            x = x - grad * (phi / g2);
            if !k.polygon().contains(x, 10.0 * eps) {
                return Ok(None);
            }
        }
        Ok(Some(x))
    };
    let tangent_at = |x: Point, prev: Point, k: &GeodesicKernel| -> Result<Option<Point>> {
        let da = k.geodesic_path(pa, x)?;
        let db = k.geodesic_path(pb, x)?;
        let (aa, _) = da.final_anchor();
        let (ab, _) = db.final_anchor();
        let grad = (x - aa).normalized().unwrap_or(Point::new(1.0, 0.0))
            - (x - ab).normalized().unwrap_or(Point::new(0.0, 1.0));
        match grad.perp().normalized() {
            Some(mut t) => {
                if t.dot(prev) < 0.0 {
                    t = -t;
                }
                Ok(Some(t))
            }
            None => Ok(None),
        }
    };
    let mut x = start;
    let mut dir = dir0.normalized().unwrap_or(Point::new(1.0, 0.0));
    let mut hx = h(x, kernel)?;
    if hx >= 0.0 {
        return Ok(Some(x));
    }
    let mut step = 0.01 * diam;
    let mut steps = 0usize;
    while steps < 4000 {
        steps += 1;
        let Some(t) = tangent_at(x, dir, kernel)? else {
            return Ok(None);
        };
        let pred = x + t * step;
        if !kernel.polygon().contains(pred, eps) {
            if step > 1e-9 * diam {
                step *= 0.5;
                continue;
            }
            return Ok(None);
        }
        let Some(next) = correct(pred, kernel)? else {
            if step > 1e-9 * diam {
                step *= 0.5;
                continue;
            }
            return Ok(None);
        };
        let hn = h(next, kernel)?;
        if hn >= 0.0 {
            // Bisect the step for the crossing.
            let (mut lo, mut hi) = (x, next);
            let mut flo = hx;
            for _ in 0..60 {
                let mid0 = lerp(lo, hi, 0.5);
                let Some(mid) = correct(mid0, kernel)? else { break };
                let fm = h(mid, kernel)?;
                if (flo < 0.0) != (fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            return Ok(Some(hi));
        }
        dir = (next - x).normalized().unwrap_or(t);
        x = next;
        hx = hn;
        if step < 0.01 * diam {
            step *= 1.8;
        }
    }
    Ok(None)
}

/// Closest point geodesically equidistant from two points and a segment.
pub fn equidistant_2pt_seg(
    kernel: &GeodesicKernel,
    p1: Point,
    p2: Point,
    seg: (Point, Point),
) -> Result<EquidistantResult> {
    let eps = kernel.eps();
    let diam = kernel.diameter();
    let seg_path = kernel.geodesic_path(seg.0, seg.1)?;
    let d_seg = |x: Point, k: &GeodesicKernel| -> Result<f64> {
        Ok(k.closest_point_on_path(x, &seg_path)?.1)
    };
    // Segment touching a generator point: distance 0 to the segment is
    // attained only at the point itself, where the other distance is
    // positive.
    if d_seg(p1, kernel)? <= eps || d_seg(p2, kernel)? <= eps {
        if p1.dist(p2) <= eps && d_seg(p1, kernel)? <= eps {
            return Ok(EquidistantResult {
                point: Some(p1),
                distance: 0.0,
            });
        }
        return Ok(EquidistantResult {
            point: None,
            distance: 0.0,
        });
    }
    if p1.dist(p2) <= eps {
        // Midpoint of the shortest path from the point to the segment.
        let (q, _, _) = kernel.closest_point_on_path(p1, &seg_path)?;
        let path = kernel.geodesic_path(p1, q)?;
        return Ok(EquidistantResult {
            point: Some(path.point_at(path.length() / 2.0)),
            distance: path.length() / 2.0,
        });
    }
    // March both directions along b(p1, p2) from its midpoint for the
    // first sign change of d1 - d_seg; keep the closer hit.
    let path12 = kernel.geodesic_path(p1, p2)?;
    let mid = path12.point_at(path12.length() / 2.0);
    let h = |x: Point, k: &GeodesicKernel| -> Result<f64> {
        Ok(d_seg(x, k)? - k.geodesic_distance(p1, x)?)
    };
    let mut results: Vec<Point> = Vec::new();
    let verts = path12.vertices();
    let w = verts[verts.len() / 2] - verts[verts.len() / 2 - 1];
    let n = w.perp().normalized().unwrap_or(Point::new(0.0, 1.0));
    for dir in [n, -n] {
        let h_mid = h(mid, kernel)?;
        let hit = if h_mid < 0.0 {
            march_bisector_until(kernel, p1, p2, mid, dir, &h)?
        } else {
            let g = |x: Point, k: &GeodesicKernel| -> Result<f64> { Ok(-(h(x, k)?)) };
            march_bisector_until(kernel, p1, p2, mid, dir, &g)?
        };
        if let Some(x) = hit {
            results.push(x);
        }
    }
    let mut best: Option<(Point, f64)> = None;
    for x in results {
        let d1 = kernel.geodesic_distance(p1, x)?;
        let d2 = kernel.geodesic_distance(p2, x)?;
        let ds = d_seg(x, kernel)?;
        if (d1 - d2).abs() <= 1e-8 * diam && (d1 - ds).abs() <= 1e-8 * diam {
            let better = match best {
                None => true,
                Some((bp, bd)) => {
                    d1 < bd - 1e-12 * diam
                        || ((d1 - bd).abs() <= 1e-12 * diam && x.lex_cmp(bp).is_lt())
                }
            };
            if better {
                best = Some((x, d1));
            }
        }
    }
    Ok(match best {
        Some((p, d)) => EquidistantResult {
            point: Some(p),
            distance: d,
        },
        None => EquidistantResult {
            point: None,
            distance: 0.0,
        },
    })
}

/// The two boundary points equidistant from two sites, by the two-phase
/// binary search: boundary vertices first, then refinement within one
/// edge.
pub fn equidistant_boundary_pair(
    kernel: &GeodesicKernel,
    s1: Point,
    s2: Point,
) -> Result<(BoundaryPoint, BoundaryPoint)> {
    let eps = kernel.eps();
    let diam = kernel.diameter();
    if s1.dist(s2) <= eps {
        return Err(Error::GeneralPositionViolation(vec![0, 1]));
    }
    let path = kernel.geodesic_path(s1, s2)?;
    let verts = path.vertices();
    // Extend the incident edges beyond each endpoint to the boundary;
    // the two hits split the boundary into arcs with one equidistant
    // point each.
    let x1 = if kernel.polygon().boundary_distance(s1) <= eps {
        s1
    } else {
        kernel.shaft(s1, s1 - verts[1]).1
    };
    let x2 = if kernel.polygon().boundary_distance(s2) <= eps {
        s2
    } else {
        kernel.shaft(s2, s2 - verts[verts.len() - 2]).1
    };
    let origin = (0usize, 0.0f64);
    let a1 = kernel.boundary_point(x1, origin).arc;
    let a2 = kernel.boundary_point(x2, origin).arc;
    let perim = kernel.perimeter();
    let phi = |arc: f64, k: &GeodesicKernel| -> Result<f64> {
        let coord = k.coord_at_cw_arc(origin, arc.rem_euclid(perim));
        let p = k.coord_to_point(coord);
        Ok(k.geodesic_distance(s1, p)? - k.geodesic_distance(s2, p)?)
    };
    let mut out: Vec<BoundaryPoint> = Vec::new();
    for (from, to) in [(a1, a2), (a2, a1)] {
        let to = if to <= from { to + perim } else { to };
        let margin = 1e-7 * diam;
        let f_from = phi(from + margin, kernel)?;
        let f_to = phi(to - margin, kernel)?;
        if (f_from <= 0.0) == (f_to <= 0.0) {
            return Err(Error::GeneralPositionViolation(vec![0, 1]));
        }
        let (mut lo, mut hi, mut flo) = (from + margin, to - margin, f_from);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            let fm = phi(mid, kernel)?;
            if (flo <= 0.0) != (fm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        // Degenerate input: a flat equidistant stretch instead of a point.
        let spread = 2e-4 * perim;
        if phi(0.5 * (lo + hi) - spread, kernel)?.abs() <= 1e-12 * diam
            && phi(0.5 * (lo + hi) + spread, kernel)?.abs() <= 1e-12 * diam
        {
            return Err(Error::GeneralPositionViolation(vec![0, 1]));
        }
        let coord = kernel.coord_at_cw_arc(origin, (0.5 * (lo + hi)).rem_euclid(perim));
        out.push(kernel.boundary_point_from_coord(coord, origin));
    }
    Ok((out[0], out[1]))
}

/// First boundary point clockwise from the origin whose sweep path
/// pi(o, x') is at distance exactly r from p.
///
/// d(p, pi(o, .)) starts at d(p, o) (the degenerate path), decreases
/// monotonically to zero at the point x_p whose path covers p, and
/// increases afterwards; for 0 < r < d(p, o) the first key is the
/// crossing on the decreasing branch, found by bisection on the arc.
pub fn first_key_at_distance(
    kernel: &GeodesicKernel,
    origin: (usize, f64),
    p: Point,
    r: f64,
) -> Result<BoundaryPoint> {
    let diam = kernel.diameter();
    let o_pt = kernel.coord_to_point(origin);
    // The boundary point whose path first covers p.
    let x_p = if p.dist(o_pt) <= kernel.eps() {
        kernel.boundary_point_from_coord(origin, origin)
    } else if kernel.polygon().boundary_distance(p) <= kernel.eps() {
        kernel.boundary_point(p, origin)
    } else {
        let path = kernel.geodesic_path(o_pt, p)?;
        let (anchor, _) = path.final_anchor();
        let (_, hit) = kernel.shaft(p, p - anchor);
        kernel.boundary_point(hit, origin)
    };
    if r <= kernel.eps() {
        return Ok(x_p);
    }
    let d_max = kernel.geodesic_distance(p, o_pt)?;
    if r > d_max + 1e-9 * diam {
        return Err(Error::KeyNotFound);
    }
    if r >= d_max {
        return Ok(kernel.boundary_point_from_coord(origin, origin));
    }
    let eval = |arc: f64, k: &GeodesicKernel| -> Result<f64> {
        let coord = k.coord_at_cw_arc(origin, arc);
        let x = k.coord_to_point(coord);
        let path = k.geodesic_path(o_pt, x)?;
        Ok(k.closest_point_on_path(p, &path)?.1)
    };
    // Bisection on [0, arc(x_p)] with d decreasing: find the first arc
    // where d drops to r.
    let mut lo = 0.0f64;
    let mut hi = x_p.arc.max(1e-15);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if eval(mid, kernel)? <= r {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let coord = kernel.coord_at_cw_arc(origin, 0.5 * (lo + hi));
    Ok(kernel.boundary_point_from_coord(coord, origin))
}

/// Sweep-time variant of [`first_key_at_distance`]: the first boundary
/// point at clockwise arc >= `from_arc` where d(p, pi(o, x')) = r.
///
/// d is V-shaped around the covering point x_p; depending on where the
/// sweep currently stands, the key lies on the decreasing branch (the
/// front still approaching p) or on the increasing branch (the front
/// expanding past p). `KeyNotFound` means no future crossing exists.
pub fn first_key_at_distance_from(
    kernel: &GeodesicKernel,
    origin: (usize, f64),
    p: Point,
    r: f64,
    from_arc: f64,
) -> Result<BoundaryPoint> {
    let diam = kernel.diameter();
    let o_pt = kernel.coord_to_point(origin);
    let perim = kernel.perimeter();
    let x_p = if p.dist(o_pt) <= kernel.eps() {
        kernel.boundary_point_from_coord(origin, origin)
    } else if kernel.polygon().boundary_distance(p) <= kernel.eps() {
        kernel.boundary_point(p, origin)
    } else {
        let path = kernel.geodesic_path(o_pt, p)?;
        let (anchor, _) = path.final_anchor();
        let (_, hit) = kernel.shaft(p, p - anchor);
        kernel.boundary_point(hit, origin)
    };
    let eval = |arc: f64, k: &GeodesicKernel| -> Result<f64> {
        let coord = k.coord_at_cw_arc(origin, arc.min(perim * (1.0 - 1e-14)));
        let x = k.coord_to_point(coord);
        let path = k.geodesic_path(o_pt, x)?;
        Ok(k.closest_point_on_path(p, &path)?.1)
    };
    let tol = 1e-9 * diam;
    if r <= kernel.eps() {
        if x_p.arc >= from_arc - tol {
            return Ok(x_p);
        }
        return Err(Error::KeyNotFound);
    }
    // Decreasing branch first.
    if from_arc < x_p.arc {
        let d_from = eval(from_arc.max(0.0), kernel)?;
        if d_from >= r {
            let mut lo = from_arc.max(0.0);
            let mut hi = x_p.arc;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if eval(mid, kernel)? <= r {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let coord = kernel.coord_at_cw_arc(origin, 0.5 * (lo + hi));
            return Ok(kernel.boundary_point_from_coord(coord, origin));
        }
    }
    // Increasing branch from max(from_arc, arc(x_p)) to the sweep's end.
    let d_max = kernel.geodesic_distance(p, o_pt)?;
    if r > d_max + tol {
        return Err(Error::KeyNotFound);
    }
    let start = from_arc.max(x_p.arc);
    let d_start = eval(start, kernel)?;
    if d_start > r + tol {
        return Err(Error::KeyNotFound); // crossing already behind
    }
    let mut lo = start;
    let mut hi = perim * (1.0 - 1e-14);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if eval(mid, kernel)? >= r {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let coord = kernel.coord_at_cw_arc(origin, 0.5 * (lo + hi));
    Ok(kernel.boundary_point_from_coord(coord, origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::SimplePolygon;

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
    fn hull_of_triangle_in_square() {
        let k = square();
        let sites = vec![
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        ];
        let hull = geodesic_hull(&k, &sites).unwrap();
        assert_eq!(hull.boundary.len(), 3);
        assert_eq!(hull.site_order.len(), 3);
    }

    #[test]
    fn hull_degenerate_two_sites_bends() {
        let k = l_polygon();
        let sites = vec![Point::new(0.5, 1.75), Point::new(1.75, 0.5)];
        let hull = geodesic_hull(&k, &sites).unwrap();
        assert!(hull
            .boundary
            .iter()
            .any(|p| p.dist(Point::new(1.0, 1.0)) < 1e-9));
        assert_eq!(hull.site_order, vec![0, 1]);
    }

    #[test]
    fn hull_single_point() {
        let k = square();
        let hull = geodesic_hull(&k, &[Point::new(0.3, 0.4)]).unwrap();
        assert_eq!(hull.boundary.len(), 1);
    }

    #[test]
    fn center3_acute() {
        let k = square();
        let (c, r) = center3(
            &k,
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        )
        .unwrap();
        assert!(c.dist(Point::new(0.5, 0.425)) < 1e-9, "got {c:?}");
        assert!((r - 0.375).abs() < 1e-9);
    }

    #[test]
    fn center3_obtuse_midpoint() {
        let k = square();
        let (c, r) = center3(
            &k,
            Point::new(0.1, 0.1),
            Point::new(0.9, 0.1),
            Point::new(0.5, 0.15),
        )
        .unwrap();
        assert!(c.dist(Point::new(0.5, 0.1)) < 1e-12);
        assert!((r - 0.4).abs() < 1e-12);
    }

    #[test]
    fn center3_coincident() {
        let k = square();
        let p = Point::new(0.4, 0.6);
        let (c, r) = center3(&k, p, p, p).unwrap();
        assert_eq!(c, p);
        assert_eq!(r, 0.0);
    }

    #[test]
    fn side_of_extension_vertical_chords() {
        let k = square();
        let sites = [
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        ];
        let (side, c_e) =
            side_of_extension(&k, (Point::new(0.5, 0.0), Point::new(0.5, 1.0)), &sites).unwrap();
        assert_eq!(side, ChordSide::On);
        assert!(c_e.dist(Point::new(0.5, 0.425)) < 1e-7);
        let (side2, _) =
            side_of_extension(&k, (Point::new(0.3, 0.0), Point::new(0.3, 1.0)), &sites).unwrap();
        // Center x = 0.5 lies right of the upward chord x = 0.3.
        assert_eq!(side2, ChordSide::Right);
    }

    #[test]
    fn equidistant3_circumcenter_and_collinear() {
        let k = square();
        let r = equidistant3(
            &k,
            Point::new(0.2, 0.2),
            Point::new(0.8, 0.2),
            Point::new(0.5, 0.8),
        )
        .unwrap();
        assert!(r.point.unwrap().dist(Point::new(0.5, 0.425)) < 1e-8);
        let none = equidistant3(
            &k,
            Point::new(0.1, 0.5),
            Point::new(0.5, 0.5),
            Point::new(0.9, 0.5),
        )
        .unwrap();
        assert!(none.point.is_none());
    }

    #[test]
    fn equidistant_2pt_seg_symmetric() {
        let k = square();
        let r = equidistant_2pt_seg(
            &k,
            Point::new(0.3, 0.6),
            Point::new(0.7, 0.6),
            (Point::new(0.0, 0.1), Point::new(1.0, 0.1)),
        )
        .unwrap();
        let p = r.point.unwrap();
        assert!(p.dist(Point::new(0.5, 0.39)) < 1e-7, "got {p:?}");
        assert!((r.distance - 0.29).abs() < 1e-7);

        let same = equidistant_2pt_seg(
            &k,
            Point::new(0.5, 0.6),
            Point::new(0.5, 0.6),
            (Point::new(0.0, 0.1), Point::new(1.0, 0.1)),
        )
        .unwrap();
        assert!(same.point.unwrap().dist(Point::new(0.5, 0.35)) < 1e-9);
        assert!((same.distance - 0.25).abs() < 1e-9);

        let touching = equidistant_2pt_seg(
            &k,
            Point::new(0.2, 0.1),
            Point::new(0.7, 0.6),
            (Point::new(0.0, 0.1), Point::new(1.0, 0.1)),
        )
        .unwrap();
        assert!(touching.point.is_none());
    }

    #[test]
    fn boundary_pair_symmetric() {
        let k = square();
        let (b1, b2) =
            equidistant_boundary_pair(&k, Point::new(0.25, 0.5), Point::new(0.75, 0.5)).unwrap();
        let mut pts = [k.boundary_to_point(&b1), k.boundary_to_point(&b2)];
        pts.sort_by(|a, b| a.y.partial_cmp(&b.y).unwrap());
        assert!(pts[0].dist(Point::new(0.5, 0.0)) < 1e-9);
        assert!(pts[1].dist(Point::new(0.5, 1.0)) < 1e-9);
    }

    #[test]
    fn boundary_pair_diagonal_hits_corners() {
        let k = square();
        let (b1, b2) =
            equidistant_boundary_pair(&k, Point::new(0.25, 0.25), Point::new(0.75, 0.75)).unwrap();
        let mut pts = [k.boundary_to_point(&b1), k.boundary_to_point(&b2)];
        pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
        assert!(pts[0].dist(Point::new(0.0, 1.0)) < 1e-6);
        assert!(pts[1].dist(Point::new(1.0, 0.0)) < 1e-6);
    }

    #[test]
    fn first_key_examples() {
        let k = square();
        let origin = (0usize, 0.0f64);
        // r = 0: the far corner on the ray through p.
        let key = first_key_at_distance(&k, origin, Point::new(0.5, 0.5), 0.0).unwrap();
        assert!(k.boundary_to_point(&key).dist(Point::new(1.0, 1.0)) < 1e-9);
        // r = 0.5: first reached going up the left edge.
        let key2 = first_key_at_distance(&k, origin, Point::new(0.5, 0.5), 0.5).unwrap();
        assert!(k.boundary_to_point(&key2).dist(Point::new(0.0, 0.5)) < 1e-7);
        // p = o, r = 0.
        let key3 = first_key_at_distance(&k, origin, Point::new(0.0, 0.0), 0.0).unwrap();
        assert!(key3.arc.abs() < 1e-12);
        // Unattainable distance.
        assert!(matches!(
            first_key_at_distance(&k, origin, Point::new(0.5, 0.5), 10.0),
            Err(Error::KeyNotFound)
        ));
    }

    #[test]
    fn chord_oracle_examples() {
        let k = square();
        let chord = (Point::new(0.5, 0.0), Point::new(0.5, 1.0));
        let sites = vec![Point::new(0.1, 0.5), Point::new(0.2, 0.5)];
        let (side, c_e) = chord_oracle(&k, chord, &sites).unwrap();
        assert!(c_e.dist(Point::new(0.5, 0.5)) < 1e-7);
        assert_eq!(side, ChordSide::Left);

        let corners = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let (side2, c_e2) = chord_oracle(&k, chord, &corners).unwrap();
        assert!(c_e2.dist(Point::new(0.5, 0.5)) < 1e-7);
        assert_eq!(side2, ChordSide::On);
    }

    #[test]
    fn center_m_examples() {
        let k = square();
        let (c, r) = center_m(&k, &[Point::new(0.3, 0.7)]).unwrap();
        assert_eq!((c, r), (Point::new(0.3, 0.7), 0.0));

        let lk = l_polygon();
        let (c2, r2) = center_m(&lk, &[Point::new(0.5, 1.75), Point::new(1.75, 0.5)]).unwrap();
        assert!(c2.dist(Point::new(1.0, 1.0)) < 1e-9);
        assert!((r2 - 0.9013878188659973).abs() < 1e-9);

        let corners = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let (c3, r3) = center_m(&k, &corners).unwrap();
        assert!(c3.dist(Point::new(0.5, 0.5)) < 1e-9);
        assert!((r3 - 0.5f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn center_m_matches_center3() {
        let k = l_polygon();
        let pts = [
            Point::new(0.3, 1.6),
            Point::new(1.7, 0.4),
            Point::new(0.2, 0.3),
        ];
        let (c3, r3) = center3(&k, pts[0], pts[1], pts[2]).unwrap();
        let (cm, rm) = center_m(&k, &pts).unwrap();
        assert!(c3.dist(cm) < 1e-7, "c3={c3:?} cm={cm:?}");
        assert!((r3 - rm).abs() < 1e-8);
    }
}
