use geovor::instances::{random_polygon, random_sites};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::GeodesicKernel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0);
    let n: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(10);
    let m: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(2);
    let poly = random_polygon(n, seed);
    println!("polygon: {:?}", poly.vertices());
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    println!("sites: {sites:?}");
    match build_topology_nearest_with_stats(&kernel, &sites) {
        Ok((g, stats)) => {
            println!("OK: {} vertices, {} edges, stats {stats:?}", g.vertices.len(), g.edges.len());
        }
        Err(e) => println!("ERR: {e}"),
    }
}
