use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::VisibilityOracle;
use geovor::Point;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(9);
    let n: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(13);
    let m: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(5);
    let poly = random_polygon(n, seed);
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    let o = VisibilityOracle::new(poly.clone());
    let (lo, hi) = poly.bbox();
    let res = 160;
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
    // adjacency from the grid
    let mut adj = std::collections::BTreeSet::new();
    for iy in 0..res {
        for ix in 0..res {
            let a = grid[iy * res + ix];
            if a == usize::MAX { continue; }
            for (dx, dy) in [(1i64, 0i64), (0, 1)] {
                let (jx, jy) = (ix as i64 + dx, iy as i64 + dy);
                if jx < res as i64 && jy < res as i64 {
                    let b = grid[jy as usize * res + jx as usize];
                    if b != usize::MAX && b != a {
                        adj.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    println!("true cell adjacencies: {adj:?}");
    // crude ASCII map
    for iy in (0..res).step_by(res / 40) {
        let row: String = (0..res).step_by(2).map(|ix| {
            match grid[(res - 1 - iy) * res + ix] {
                usize::MAX => ' ',
                k => char::from(b'0' + k as u8),
            }
        }).collect();
        println!("{row}");
    }
}
