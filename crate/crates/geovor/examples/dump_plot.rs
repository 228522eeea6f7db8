use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::{brute_labels, Mode, VisibilityOracle};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::expand_topology;
use geovor::GeodesicKernel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let m: usize = args[3].parse().unwrap();
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    println!("POLY");
    for v in poly.vertices() { println!("{} {}", v.x, v.y); }
    println!("SITES");
    for s in &sites { println!("{} {}", s.x, s.y); }
    let (graph, _) = build_topology_nearest_with_stats(&kernel, &sites).unwrap();
    let diagram = expand_topology(&kernel, &sites, &graph).unwrap();
    for (e, chain) in diagram.graph.edges.iter().zip(&diagram.edge_chains) {
        println!("CHAIN {} {}", e.pair.0, e.pair.1);
        for piece in chain {
            for p in piece.sample(1e-3 * kernel.diameter()) { println!("{} {}", p.x, p.y); }
        }
    }
    println!("VERTS");
    for v in &graph.vertices { println!("{} {} {}", v.position.x, v.position.y, v.degree); }
    let oracle = VisibilityOracle::new(poly.clone());
    let labels = brute_labels(&oracle, &sites, 1, Mode::Nearest, 500, seed ^ 0xbeef).unwrap();
    println!("SAMPLES");
    for (p, l) in &labels.samples { println!("{} {} {}", p.x, p.y, l[0]); }
}
