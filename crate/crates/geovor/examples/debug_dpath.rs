use geovor::instances::{random_polygon, random_sites};
use geovor::sweep::augment;
use geovor::{GeodesicKernel, Point};

fn main() {
    let poly = random_polygon(10, 0);
    let sites = random_sites(&poly, 2, 0.02, 0 ^ 0xfeed);
    let _ = sites;
    let aug = augment(&poly).unwrap();
    let k = &aug.kernel;
    let o = k.coord_to_point(aug.origin);
    let arc = 5.150318;
    let x = k.coord_to_point(k.coord_at_cw_arc(aug.origin, arc));
    let path = k.geodesic_path(o, x).unwrap();
    let q = Point::new(0.15618, -0.25896);
    let (cp, dp, _) = k.closest_point_on_path(q, &path).unwrap();
    println!("closest_point_on_path: d = {:.8} at ({:.5},{:.5})", dp, cp.x, cp.y);
    let mut best = (f64::INFINITY, Point::new(0.0,0.0));
    for i in 0..=20000 {
        let s = path.length() * i as f64 / 20000.0;
        let pt = path.point_at(s);
        let d = k.geodesic_distance(q, pt).unwrap();
        if d < best.0 { best = (d, pt); }
    }
    println!("dense scan:            d = {:.8} at ({:.5},{:.5})", best.0, best.1.x, best.1.y);
}
