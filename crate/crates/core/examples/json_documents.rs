//! Reading and writing graph and operator documents.

use locequiv::io::{parse_graph, parse_ops, serialize_graph, serialize_ops};

fn main() -> locequiv::Result<()> {
    let g = parse_graph(r#"{"q": 9, "k": 2, "modulus": [1, 0, 1], "n": 3, "edges": [[0, 1, [0, 1]], [1, 2, 2]]}"#)?;
    println!("parsed:  {}", serialize_graph(&g));
    let ops = parse_ops(g.field(), g.n(), r#"[{"op": "star", "v": 1, "a": [1, 1]}, {"op": "circ", "v": 0, "b": 2}]"#)?;
    println!("ops:     {}", serialize_ops(g.field(), &ops));
    println!("applied: {}", serialize_graph(&g.apply_sequence(&ops)?));
    match parse_graph(r#"{"q": 3, "n": 2, "edges": [[0, 1, 1], [1, 0, 2]]}"#) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
