use geovor::instances::{random_polygon, random_sites};
use geovor::sweep::augment;
use geovor::center::equidistant_boundary_pair;
use geovor::GeodesicKernel;

fn main() {
    let poly = random_polygon(10, 0);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, 2, 0.02, 0 ^ 0xfeed);
    let aug = augment(&poly).unwrap();
    let k = &aug.kernel;
    let (b1, b2) = equidistant_boundary_pair(k, sites[0], sites[1]).unwrap();
    let p1 = k.boundary_to_point(&b1);
    let p2 = k.boundary_to_point(&b2);
    println!("candidates: ({:.4},{:.4}) arc {:.4} | ({:.4},{:.4}) arc {:.4}", p1.x, p1.y, b1.arc, p2.x, p2.y, b2.arc);
    let o = k.coord_to_point(aug.origin);
    let target = if p2.x > 0.0 { p2 } else { p1 };
    println!("target ({:.4},{:.4}), d(site0) = {:.4}, d(site1) = {:.4}", target.x, target.y,
        k.geodesic_distance(target, sites[0]).unwrap(), k.geodesic_distance(target, sites[1]).unwrap());
    println!("x_p arc = {:.4}", k.boundary_point(target, aug.origin).arc);
    let perim = k.perimeter();
    for i in 0..=40 {
        let arc = perim * i as f64 / 40.0 * (1.0-1e-12);
        let x = k.coord_to_point(k.coord_at_cw_arc(aug.origin, arc));
        let path = k.geodesic_path(o, x).unwrap();
        let d = k.closest_point_on_path(target, &path).unwrap().1;
        println!("arc {:>7.4}  d = {:.4}", arc, d);
    }
    let _ = kernel;
}
