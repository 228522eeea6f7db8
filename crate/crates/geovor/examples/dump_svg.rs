use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::{brute_labels, Mode, VisibilityOracle};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::{expand_topology, DiagramLocator};
use geovor::GeodesicKernel;
use std::fmt::Write as _;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(9);
    let n: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(13);
    let m: usize = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(5);
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    let (graph, stats) = build_topology_nearest_with_stats(&kernel, &sites).unwrap();
    eprintln!("stats {stats:?}; {} vertices {} edges", graph.vertices.len(), graph.edges.len());
    for (i,v) in graph.vertices.iter().enumerate() {
        eprintln!("  v{i} deg{} ({:.4},{:.4}) sites {:?}", v.degree, v.position.x, v.position.y, v.sites);
    }
    for e in &graph.edges {
        eprintln!("  edge {:?} v{}..v{}", e.pair, e.u, e.v);
    }
    let diagram = expand_topology(&kernel, &sites, &graph).unwrap();
    let locator = DiagramLocator::new(&kernel, &sites, &diagram).unwrap();
    let oracle = VisibilityOracle::new(poly.clone());
    let labels = brute_labels(&oracle, &sites, 1, Mode::Nearest, 400, seed ^ 0xbeef).unwrap();
    let diam = kernel.diameter();
    let (lo, hi) = poly.bbox();
    let pad = 0.05 * diam;
    let mut svg = String::new();
    write!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="900">"#,
        lo.x - pad, -(hi.y + pad), hi.x - lo.x + 2.0*pad, hi.y - lo.y + 2.0*pad).unwrap();
    let mut pts = String::new();
    for v in poly.vertices() { write!(pts, "{},{} ", v.x, -v.y).unwrap(); }
    write!(svg, r#"<polygon points="{pts}" fill="none" stroke="black" stroke-width="{}" />"#, 0.003*diam).unwrap();
    let palette = ["red","blue","green","orange","purple","brown","cyan","magenta"];
    for (i, s) in sites.iter().enumerate() {
        write!(svg, r#"<circle cx="{}" cy="{}" r="{}" fill="{}" />"#, s.x, -s.y, 0.008*diam, palette[i%8]).unwrap();
    }
    for chain in &diagram.edge_chains {
        for piece in chain {
            let mut d = String::new();
            for q in piece.sample(0.002 * diam) { write!(d, "{},{} ", q.x, -q.y).unwrap(); }
            write!(svg, r#"<polyline points="{d}" fill="none" stroke="gray" stroke-width="{}" />"#, 0.004*diam).unwrap();
        }
    }
    for v in &graph.vertices {
        write!(svg, r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black" stroke-width="{}" />"#, v.position.x, -v.position.y, 0.012*diam, 0.002*diam).unwrap();
    }
    let mut mism = 0;
    for ((p, label), margin) in labels.samples.iter().zip(&labels.margins) {
        if *margin <= 2e-6 * diam { continue; }
        let cell = locator.locate_cell(*p);
        let ok = &diagram.graph.cells[cell] == label;
        if !ok { mism += 1; }
        write!(svg, r#"<circle cx="{}" cy="{}" r="{}" fill="{}" opacity="{}" />"#,
            p.x, -p.y, if ok {0.003*diam} else {0.007*diam},
            if ok { palette[label[0]%8] } else { "black" }, if ok {0.5} else {1.0}).unwrap();
    }
    eprintln!("mismatches: {mism}");
    svg.push_str("</svg>");
    println!("{svg}");
}
