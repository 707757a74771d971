//! Local complementation and vertex scaling on a labelled graph.

use locequiv::io::serialize_graph;
use locequiv::{Field, LabeledGraph, LocalOp};

fn main() -> locequiv::Result<()> {
    let f = Field::prime(5)?;
    let g = LabeledGraph::from_edges(&f, 4, &[(0, 1, f.from_int(1)), (0, 2, f.from_int(2)), (0, 3, f.from_int(3))])?;
    println!("G           = {}", serialize_graph(&g));
    // star at the centre completes the neighbourhood with products of labels
    let s = g.star(0, f.from_int(1))?;
    println!("G *_1 0     = {}", serialize_graph(&s));
    let c = s.circ(2, f.from_int(4))?;
    println!("... o_4 2   = {}", serialize_graph(&c));
    let ops = [LocalOp::Star { v: 0, a: f.from_int(1) }, LocalOp::Circ { v: 2, b: f.from_int(4) }];
    assert_eq!(g.apply_sequence(&ops)?, c);
    // star with parameter a then -a is the identity
    assert_eq!(s.star(0, f.from_int(-1))?, g);
    println!("components of G o_4 2: {:?}", c.components());
    Ok(())
}
