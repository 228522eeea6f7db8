//! Random test-instance generation: star-shaped simple polygons with
//! controllable spikiness, plus site placement. Star-shaped chains are
//! simple by construction, and wildly varying radii give deep pockets
//! and many reflex vertices.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::oracle::random_interior_point;
use crate::polygon::SimplePolygon;

/// Random star-shaped simple polygon with n vertices.
pub fn random_polygon(n: usize, seed: u64) -> SimplePolygon {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..core::f64::consts::TAU))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Reject clustered angle pairs; they make needle-thin slivers.
        let min_gap = core::f64::consts::TAU / (20.0 * n as f64);
        let ok = angles
            .windows(2)
            .all(|w| w[1] - w[0] >= min_gap)
            && (core::f64::consts::TAU - angles[n - 1] + angles[0]) >= min_gap;
        if !ok {
            continue;
        }
        let spiky = rng.random_range(0.0..1.0);
        let vertices: Vec<Point> = angles
            .iter()
            .map(|&a| {
                let r = if rng.random_range(0.0..1.0) < spiky {
                    rng.random_range(0.15..0.45)
                } else {
                    rng.random_range(0.55..1.0)
                };
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(p) = SimplePolygon::new(vertices) {
            return p;
        }
    }
}

/// Random interior sites, pairwise separated by `min_sep` x diameter.
pub fn random_sites(polygon: &SimplePolygon, m: usize, min_sep: f64, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef12345);
    let diam = polygon.diameter();
    let mut sites: Vec<Point> = Vec::with_capacity(m);
    let mut guard = 0;
    while sites.len() < m {
        let p = random_interior_point(polygon, &mut rng);
        let far_enough = sites.iter().all(|s| s.dist(p) > min_sep * diam)
            && polygon.boundary_distance(p) > 1e-3 * diam;
        if far_enough {
            sites.push(p);
        }
        guard += 1;
        if guard > 100_000 {
            // Polygon too cramped for the requested separation; relax it.
            return random_sites(polygon, m, min_sep * 0.5, seed.wrapping_add(1));
        }
    }
    sites
}

/// Deterministic jitter for demo corpora that violate general position:
/// each site is displaced by up to 1e-7 x diameter.
pub fn apply_jitter(polygon: &SimplePolygon, sites: &mut [Point], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mag = 1e-7 * polygon.diameter();
    for s in sites.iter_mut() {
        loop {
            let cand = Point::new(
                s.x + rng.random_range(-mag..mag),
                s.y + rng.random_range(-mag..mag),
            );
            if polygon.contains_strict(cand) {
                *s = cand;
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_polygons_are_valid() {
        for seed in 0..20 {
            let p = random_polygon(40, seed);
            assert_eq!(p.len(), 40);
            assert!(p.area() > 0.0);
        }
    }

    #[test]
    fn sites_are_separated() {
        let p = random_polygon(30, 3);
        let sites = random_sites(&p, 10, 0.01, 99);
        assert_eq!(sites.len(), 10);
        for i in 0..10 {
            for j in i + 1..10 {
                assert!(sites[i].dist(sites[j]) > 0.005 * p.diameter());
            }
        }
    }
}
