//! Recover an explicit operator sequence from an equivalence witness.

use locequiv::io::{serialize_graph, serialize_ops};
use locequiv::random::{random_connected_graph, random_ops};
use locequiv::{decide, extract_ops, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> locequiv::Result<()> {
    let f = Field::prime(7)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = random_connected_graph(&f, 6, 0.4, &mut rng);
    let hidden = random_ops(&f, 6, 10, &mut rng);
    let h = g.apply_sequence(&hidden)?;
    println!("G = {}", serialize_graph(&g));
    println!("H = {}", serialize_graph(&h));
    println!("hidden sequence:    {}", serialize_ops(&f, &hidden));
    let d = decide(&g, &h)?;
    let w = d.witness().expect("H was built from G");
    let ops = extract_ops(&g, &h, w)?;
    println!("extracted sequence: {}", serialize_ops(&f, &ops));
    assert_eq!(g.apply_sequence(&ops)?, h);
    println!("replaying the extracted sequence reproduces H");
    Ok(())
}
