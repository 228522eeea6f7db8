use geovor::instances::{random_polygon, random_sites};
use geovor::oracle::{brute_labels, Mode, VisibilityOracle};
use geovor::sweep::build_topology_nearest_with_stats;
use geovor::topology::{expand_topology, DiagramLocator};
use geovor::GeodesicKernel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let lo: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(0);
    let hi: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(12);
    let mode: u64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(0);
    for seed in lo..hi {
        let (n, m) = if mode == 0 {
            (10 + (seed as usize * 7) % 30, 2 + (seed as usize) % 6)
        } else {
            (40 + (seed as usize * 13) % 80, 5 + (seed as usize) % 14)
        };
        let poly = random_polygon(n, seed);
        let kernel = GeodesicKernel::new(poly.clone());
        let sites = random_sites(&poly, m, 0.02, seed ^ 0xfeed);
        let diam = kernel.diameter();
        match build_topology_nearest_with_stats(&kernel, &sites) {
            Ok((graph, stats)) => {
                let mut msg = String::new();
                if stats.finalized_entries > 0 {
                    msg += &format!(" FINALIZED={}", stats.finalized_entries);
                }
                match expand_topology(&kernel, &sites, &graph) {
                    Ok(diagram) => {
                        let locator = DiagramLocator::new(&kernel, &sites, &diagram).unwrap();
                        let oracle = VisibilityOracle::new(poly);
                        let labels = brute_labels(&oracle, &sites, 1, Mode::Nearest, 300, seed ^ 0xbeef).unwrap();
                        let mut mism = 0;
                        let mut tot = 0;
                        for ((p, label), margin) in labels.samples.iter().zip(&labels.margins) {
                            if *margin <= 2e-6 * diam { continue; }
                            tot += 1;
                            if &diagram.graph.cells[locator.locate_cell(*p)] != label { mism += 1; }
                        }
                        if mism > 0 { msg += &format!(" MISMATCH={mism}/{tot}"); }
                    }
                    Err(e) => msg += &format!(" EXPAND-ERR={e}"),
                }
                if msg.is_empty() {
                    println!("seed {seed} (n={n} m={m}): ok [{} v, {} e]", graph.vertices.len(), graph.edges.len());
                } else {
                    println!("seed {seed} (n={n} m={m}):{msg}");
                }
            }
            Err(e) => println!("seed {seed} (n={n} m={m}): SWEEP-ERR={e}"),
        }
    }
}
