use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::{brute_labels, Mode, VisibilityOracle};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::{expand_topology, DiagramLocator};
use geovor::GeodesicKernel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0);
    let n: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(10);
    let m: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(2);
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    println!("sites: {sites:?}");
    let (graph, stats) = build_topology_nearest_with_stats(&kernel, &sites).unwrap();
    println!("stats: {stats:?}");
    for (i, v) in graph.vertices.iter().enumerate() {
        println!("v{i}: deg{} at ({:.4},{:.4}) sites {:?}", v.degree, v.position.x, v.position.y, v.sites);
    }
    for e in &graph.edges {
        println!("edge {:?} u=v{} v=v{}", e.pair, e.u, e.v);
    }
    let diagram = expand_topology(&kernel, &sites, &graph).unwrap();
    for (i, ch) in diagram.edge_chains.iter().enumerate() {
        println!("chain {i}: {} pieces: {:?} -> {:?}", ch.len(),
          ch.first().map(|p| p.start), ch.last().map(|p| p.end));
    }
    let locator = DiagramLocator::new(&kernel, &sites, &diagram).unwrap();
    let oracle = VisibilityOracle::new(poly);
    let labels = brute_labels(&oracle, &sites, 1, Mode::Nearest, 300, seed ^ 0xbeef).unwrap();
    let diam = kernel.diameter();
    let mut shown = 0;
    for ((p, label), margin) in labels.samples.iter().zip(&labels.margins) {
        if *margin <= 2e-6 * diam { continue; }
        let cell = locator.locate_cell(*p);
        if &diagram.graph.cells[cell] != label && shown < 5 {
            println!("mismatch at ({:.4},{:.4}): oracle {:?} vs diagram {:?}", p.x, p.y, label, diagram.graph.cells[cell]);
            shown += 1;
        }
    }
}
