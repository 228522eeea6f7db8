use geovor::instances::{random_polygon, random_sites};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::{expand_topology, ArcKind};
use geovor::{GeodesicKernel, Point};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args[1].parse().unwrap();
    let n: usize = args[2].parse().unwrap();
    let m: usize = args[3].parse().unwrap();
    let q = Point::new(args[4].parse().unwrap(), args[5].parse().unwrap());
    let poly = random_polygon(n, seed);
    let kernel = GeodesicKernel::new(poly.clone());
    let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
    for (i, s) in sites.iter().enumerate() {
        println!("site {i}: ({:.4},{:.4}) d(q)={:.4}", s.x, s.y, kernel.geodesic_distance(*s, q).unwrap());
    }
    let (graph, _) = build_topology_nearest_with_stats(&kernel, &sites).unwrap();
    let diagram = expand_topology(&kernel, &sites, &graph).unwrap();
    for (idx, (e, chain)) in diagram.graph.edges.iter().zip(&diagram.edge_chains).enumerate() {
        println!("edge {idx} pair {:?} cells ({:?} | {:?})", e.pair, diagram.graph.cells[e.cell_a], diagram.graph.cells[e.cell_b]);
        for piece in chain {
            // crossings with vertical line x = q.x
            let samples = piece.sample(1e-3 * kernel.diameter());
            for w in samples.windows(2) {
                if (w[0].x - q.x <= 0.0) != (w[1].x - q.x <= 0.0) {
                    let t = (q.x - w[0].x) / (w[1].x - w[0].x);
                    let y = w[0].y + t * (w[1].y - w[0].y);
                    if y > q.y {
                        println!("  crossing above at y={y:.4} (piece {:?}, start ({:.3},{:.3}) end ({:.3},{:.3}))",
                            if piece.kind == ArcKind::Line { "line" } else { "hyp" },
                            piece.start.x, piece.start.y, piece.end.x, piece.end.y);
                    }
                }
            }
        }
    }
}
