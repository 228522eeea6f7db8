use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::{brute_labels, Mode, VisibilityOracle};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::{expand_topology, DiagramLocator};
use geovor::GeodesicKernel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let m: usize = args[3].parse().unwrap();
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    let (graph, _) = build_topology_nearest_with_stats(&kernel, &sites).unwrap();
    let diagram = expand_topology(&kernel, &sites, &graph).unwrap();
    let locator = DiagramLocator::new(&kernel, &sites, &diagram).unwrap();
    let oracle = VisibilityOracle::new(poly.clone());
    let labels = brute_labels(&oracle, &sites, 1, Mode::Nearest, 400, seed ^ 0xbeef).unwrap();
    let diam = kernel.diameter();
    for v in &graph.vertices {
        let ds: Vec<f64> = v.sites.iter().map(|&s| kernel.geodesic_distance(sites[s], v.position).unwrap()).collect();
        let spread = ds.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - ds.iter().cloned().fold(f64::INFINITY, f64::min);
        if spread > 1e-8 * diam { println!("BAD VERTEX deg{} at ({:.4},{:.4}) spread {spread:.2e}", v.degree, v.position.x, v.position.y); }
    }
    let mut count = 0;
    for ((p, label), margin) in labels.samples.iter().zip(&labels.margins) {
        if *margin <= 2e-6 * diam { continue; }
        let cell = locator.locate_cell(*p);
        if &diagram.graph.cells[cell] != label && count < 8 {
            println!("mismatch ({:.4},{:.4}): oracle {:?} diagram {:?} margin {margin:.3}", p.x, p.y, label, diagram.graph.cells[cell]);
            count += 1;
        }
    }
}
