use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::VisibilityOracle;
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::{GeodesicKernel, Point};
use std::collections::BTreeSet;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let m: usize = args[3].parse().unwrap();
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    let o = VisibilityOracle::new(poly.clone());
    let (lo, hi) = poly.bbox();
    let res = 200;
    let mut grid = vec![usize::MAX; res * res];
    for iy in 0..res {
        for ix in 0..res {
            let q = Point::new(
                lo.x + (hi.x - lo.x) * (ix as f64 + 0.5) / res as f64,
                lo.y + (hi.y - lo.y) * (iy as f64 + 0.5) / res as f64,
            );
            if !poly.contains_strict(q) { continue; }
            let mut best = (f64::INFINITY, 0);
            for (i, s) in sites.iter().enumerate() {
                let d = o.distance(q, *s).unwrap();
                if d < best.0 { best = (d, i); }
            }
            grid[iy * res + ix] = best.1;
        }
    }
    let mut truth = BTreeSet::new();
    for iy in 0..res {
        for ix in 0..res {
            let a = grid[iy * res + ix];
            if a == usize::MAX { continue; }
            for (dx, dy) in [(1i64, 0i64), (0, 1)] {
                let (jx, jy) = (ix as i64 + dx, iy as i64 + dy);
                if jx < res as i64 && jy < res as i64 {
                    let b = grid[jy as usize * res + jx as usize];
                    if b != usize::MAX && b != a { truth.insert((a.min(b), a.max(b))); }
                }
            }
        }
    }
    match build_topology_nearest_with_stats(&kernel, &sites) {
        Ok((g, stats)) => {
            let mine: BTreeSet<(usize, usize)> = g
                .edges
                .iter()
                .map(|e| (e.pair.0.min(e.pair.1), e.pair.0.max(e.pair.1)))
                .collect();
            println!("stats: {stats:?}");
            println!("truth: {truth:?}");
            println!("mine:  {mine:?}");
            let missing: Vec<_> = truth.difference(&mine).collect();
            let extra: Vec<_> = mine.difference(&truth).collect();
            println!("missing: {missing:?}  extra: {extra:?}");
            for e in &g.edges {
                let (u, v) = (g.vertices[e.u].position, g.vertices[e.v].position);
                println!("  edge {:?}: ({:.3},{:.3})..({:.3},{:.3})", e.pair, u.x, u.y, v.x, v.y);
            }
        }
        Err(e) => println!("sweep err: {e}"),
    }
}
