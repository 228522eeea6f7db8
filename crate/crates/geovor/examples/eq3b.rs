use geovor::center::equidistant3_candidates;
use geovor::instances::{random_polygon, random_sites};
use geovor::sweep::augment;

fn main() {
    let poly = random_polygon(13, 9);
    let sites = random_sites(&poly, 5, 0.02, 9 ^ 0xfeed);
    let aug = augment(&poly).unwrap();
    let k = &aug.kernel;
    for (a, b, c) in [(1usize, 4usize, 2usize), (1, 2, 3), (0, 1, 3), (0, 2, 3), (0, 2, 4), (2, 3, 1)] {
        let cands = equidistant3_candidates(k, sites[a], sites[b], sites[c]).unwrap();
        println!("({a},{b},{c}): {:?}", cands.iter().map(|(p, r)| format!("({:.4},{:.4}) r={r:.4}", p.x, p.y)).collect::<Vec<_>>());
    }
}
