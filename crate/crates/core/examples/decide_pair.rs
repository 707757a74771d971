//! Decide local equivalence and print the witness blocks.

use locequiv::random::{random_connected_graph, random_ops};
use locequiv::{decide_with, DecideOptions, Decision, Field, LabeledGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(f: &Field, g: &LabeledGraph, h: &LabeledGraph) -> locequiv::Result<()> {
    let (d, stats) = decide_with(g, h, &DecideOptions::default())?;
    match d {
        Decision::Equivalent { witness, .. } => {
            let row = |v: &[locequiv::Fe]| v.iter().map(|&a| f.format(a)).collect::<Vec<_>>().join(" ");
            println!("equivalent (dim Lambda {:?}, {} checks)", stats.dims, stats.checks);
            println!("  X: {}\n  Y: {}\n  Z: {}\n  T: {}", row(&witness.x), row(&witness.y), row(&witness.z), row(&witness.t));
        }
        Decision::NotEquivalent { certificate } => println!("not equivalent: {certificate}"),
    }
    Ok(())
}

fn main() -> locequiv::Result<()> {
    let f = Field::prime(3)?;
    let one = f.one();
    let path = LabeledGraph::from_edges(&f, 3, &[(0, 1, one), (1, 2, one)])?;
    let tri = LabeledGraph::from_edges(&f, 3, &[(0, 1, one), (1, 2, one), (0, 2, one)])?;
    show(&f, &path, &tri)?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_connected_graph(&f, 8, 0.3, &mut rng);
    let h = g.apply_sequence(&random_ops(&f, 8, 15, &mut rng))?;
    show(&f, &g, &h)?;
    let k = random_connected_graph(&f, 8, 0.3, &mut rng);
    show(&f, &g, &k)?;
    Ok(())
}
