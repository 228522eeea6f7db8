use geovor::center::equidistant_boundary_pair;
use geovor::instances::{random_polygon, random_sites};
use geovor::GeodesicKernel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0);
    let n: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(10);
    let m: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(2);
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    let (s0, s1) = (sites[0], sites[1]);
    // dense scan of phi = d(s0,.) - d(s1,.) along the boundary
    let perim = kernel.perimeter();
    let mut prev: Option<f64> = None;
    let mut crossings = vec![];
    for i in 0..=6000 {
        let arc = perim * i as f64 / 6000.0 * (1.0 - 1e-12);
        let q = kernel.coord_to_point(kernel.coord_at_cw_arc((0, 0.0), arc));
        let phi = kernel.geodesic_distance(s0, q).unwrap() - kernel.geodesic_distance(s1, q).unwrap();
        if let Some(p) = prev {
            if (p <= 0.0) != (phi <= 0.0) {
                crossings.push((arc, q));
            }
        }
        prev = Some(phi);
    }
    println!("dense-scan crossings: {}", crossings.len());
    for (arc, q) in &crossings {
        println!("  arc {arc:.4} at ({:.4},{:.4})", q.x, q.y);
    }
    match equidistant_boundary_pair(&kernel, s0, s1) {
        Ok((b1, b2)) => {
            println!("pair: ({:.4},{:.4}) and ({:.4},{:.4})",
                kernel.boundary_to_point(&b1).x, kernel.boundary_to_point(&b1).y,
                kernel.boundary_to_point(&b2).x, kernel.boundary_to_point(&b2).y);
        }
        Err(e) => println!("pair err: {e}"),
    }
}
