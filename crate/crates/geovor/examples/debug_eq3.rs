use geovor::center::equidistant3_candidates;
use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::VisibilityOracle;
use geovor::sweep::augment;
use geovor::{GeodesicKernel, Point};

fn main() {
    let poly = random_polygon(13, 9);
    let sites = random_sites(&poly, 5, 0.02, 9 ^ 0xfeed);
    let aug = augment(&poly).unwrap();
    let k = &aug.kernel;
    let (a, b, c) = (sites[3], sites[4], sites[2]);
    println!("sites 3,4,2: {a:?} {b:?} {c:?}");
    let cands = equidistant3_candidates(k, a, b, c).unwrap();
    println!("candidates: {cands:?}");
    // brute scan over a grid for triple-equidistance
    let o = VisibilityOracle::new(k.polygon().clone());
    let (lo, hi) = k.polygon().bbox();
    let mut found: Vec<Point> = vec![];
    for iy in 0..240 {
        for ix in 0..240 {
            let q = Point::new(
                lo.x + (hi.x - lo.x) * (ix as f64 + 0.5) / 240.0,
                lo.y + (hi.y - lo.y) * (iy as f64 + 0.5) / 240.0,
            );
            if !k.polygon().contains_strict(q) { continue; }
            let da = o.distance(q, a).unwrap();
            let db = o.distance(q, b).unwrap();
            let dc = o.distance(q, c).unwrap();
            let spread = (da - db).abs().max((db - dc).abs()).max((da - dc).abs());
            if spread < 6e-3 && !found.iter().any(|f| f.dist(q) < 0.05) {
                println!("grid triple point near ({:.4},{:.4}) r={da:.4}", q.x, q.y);
                found.push(q);
            }
        }
    }
    let _ = GeodesicKernel::new(poly);
}
