//! Randomized cross-validation of the nearest-point sweep against the
//! independent visibility-graph oracle.

use geovor::center::center_m;
use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::{brute_labels, Mode, VisibilityOracle};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::{expand_topology, DiagramLocator};
use geovor::GeodesicKernel;

fn run_instance(seed: u64, n: usize, m: usize, samples: usize) {
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    let diam = kernel.diameter();

    let (graph, stats) = match build_topology_nearest_with_stats(&kernel, &sites) {
        Ok(x) => x,
        Err(e) => panic!("seed {seed}: sweep failed: {e}"),
    };
    assert_eq!(stats.finalized_entries, 0, "seed {seed}: sweep left stragglers");
    assert!(
        stats.max_beach_len <= 2 * m + 2,
        "seed {seed}: beach length {} > {}",
        stats.max_beach_len,
        2 * m + 2
    );
    assert!(
        stats.valid_events <= 10 * m,
        "seed {seed}: {} valid events for m={m}",
        stats.valid_events
    );
    // Degree-3 vertices are equidistant from their defining sites.
    for v in &graph.vertices {
        if v.degree == 3 {
            let ds: Vec<f64> = v
                .sites
                .iter()
                .map(|&s| kernel.geodesic_distance(sites[s], v.position).unwrap())
                .collect();
            let spread = ds.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - ds.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(
                spread <= 1e-8 * diam,
                "seed {seed}: degree-3 vertex residual {spread:e}"
            );
        }
    }

    let diagram = expand_topology(&kernel, &sites, &graph).unwrap();
    let locator = DiagramLocator::new(&kernel, &sites, &diagram).unwrap();

    let oracle = VisibilityOracle::new(poly);
    let labels = brute_labels(&oracle, &sites, 1, Mode::Nearest, samples, seed ^ 0xbeef).unwrap();
    let mut mismatches = 0;
    let mut tested = 0;
    for ((p, label), margin) in labels.samples.iter().zip(&labels.margins) {
        if *margin <= 2e-6 * diam {
            continue; // bisector exclusion zone
        }
        tested += 1;
        let cell = locator.locate_cell(*p);
        if &diagram.graph.cells[cell] != label {
            mismatches += 1;
        }
    }
    assert_eq!(
        mismatches, 0,
        "seed {seed}: {mismatches}/{tested} label mismatches (n={n}, m={m})"
    );
}

#[test]
fn nearest_matches_oracle_small() {
    for seed in 0..12 {
        let n = 10 + (seed as usize * 7) % 30;
        let m = 2 + (seed as usize) % 6;
        run_instance(seed, n, m, 300);
    }
}

#[test]
fn nearest_matches_oracle_medium() {
    for seed in 100..106 {
        let n = 40 + (seed as usize * 13) % 80;
        let m = 5 + (seed as usize) % 14;
        run_instance(seed, n, m, 300);
    }
}

#[test]
fn farthest_root_sanity() {
    // center_m on random instances beats a coarse grid.
    for seed in 0..6 {
        let poly = random_polygon(30, seed + 500);
        let kernel = GeodesicKernel::new(poly.clone());
        let sites = random_sites(&poly, 6, 0.02, seed);
        let (c, r) = center_m(&kernel, &sites).unwrap();
        assert!(kernel.polygon().contains(c, kernel.eps()));
        let (lo, hi) = poly.bbox();
        let diam = kernel.diameter();
        for iy in 0..60 {
            for ix in 0..60 {
                let q = geovor::Point::new(
                    lo.x + (hi.x - lo.x) * (ix as f64 + 0.5) / 60.0,
                    lo.y + (hi.y - lo.y) * (iy as f64 + 0.5) / 60.0,
                );
                if !poly.contains_strict(q) {
                    continue;
                }
                let worst = sites
                    .iter()
                    .map(|s| kernel.geodesic_distance(*s, q).unwrap())
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!(
                    worst >= r - 1e-6 * diam,
                    "seed {seed}: grid point {q:?} beats center by {:e}",
                    r - worst
                );
            }
        }
    }
}
