use geovor::instances::{random_polygon, random_sites};
use geovor::sweep::augment;
use geovor::{GeodesicKernel, Point};

fn main() {
    let poly = random_polygon(10, 0);
    let _kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, 2, 0.02, 0 ^ 0xfeed);
    let aug = augment(&poly).unwrap();
    let k = &aug.kernel;
    let o = k.coord_to_point(aug.origin);
    let arc = 5.150318;
    let x = k.coord_to_point(k.coord_at_cw_arc(aug.origin, arc));
    let path = k.geodesic_path(o, x).unwrap();
    println!("path verts: {:?}", path.vertices());
    for q in [Point::new(0.15618, -0.25896), Point::new(0.3267, -0.4496)] {
        let d0 = k.geodesic_distance(sites[0], q).unwrap();
        let d1 = k.geodesic_distance(sites[1], q).unwrap();
        let (cp, dp, t) = k.closest_point_on_path(q, &path).unwrap();
        println!("q=({:.4},{:.4}): d0={d0:.5} d1={d1:.5} dpath={dp:.5} closest=({:.4},{:.4}) t={t:.4}", q.x, q.y, cp.x, cp.y);
    }
}
