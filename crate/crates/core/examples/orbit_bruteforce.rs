//! Orbits of all 3-vertex graphs over F_3 by breadth-first search.

use std::collections::HashSet;

use locequiv::io::serialize_graph;
use locequiv::orbit::{all_graphs, orbit};
use locequiv::Field;

fn main() -> locequiv::Result<()> {
    let f = Field::prime(3)?;
    let mut seen = HashSet::new();
    for g in all_graphs(&f, 3) {
        if seen.contains(&g.encode()) {
            continue;
        }
        let o = orbit(&g, 10_000)?;
        assert!(o.is_closed());
        println!("orbit of size {:>2} starting at {}", o.len(), serialize_graph(&g));
        for m in o.members() {
            seen.insert(m.encode());
        }
    }
    println!("{} graphs in total", seen.len());
    Ok(())
}
