//! The linear system Lambda(G, H) and how local operators move it.

use locequiv::lambda::{big_lambda, det_phi, star_left_alpha, transform_star};
use locequiv::{Field, LabeledGraph};

fn main() -> locequiv::Result<()> {
    let f = Field::prime(5)?;
    let g = LabeledGraph::from_edges(&f, 4, &[(0, 1, f.one()), (1, 2, f.from_int(2)), (2, 3, f.from_int(3))])?;
    let sys = big_lambda(&g, &g)?;
    println!("dim lambda(G,G) = {}, dim Lambda(G,G) = {}", sys.lambda().dim(), sys.dim());
    for b in sys.basis() {
        let d: Vec<String> = det_phi(&f, &b).iter().map(|&x| f.format(x)).collect();
        println!("basis vector det = [{}]", d.join(" "));
    }
    // Lambda(G *_a v, G) is the image of Lambda(G, G) under a fixed map
    let (v, a) = (1, f.from_int(3));
    let moved = transform_star(sys.solutions(), 1, a, &star_left_alpha(&g, v)?)?;
    let direct = big_lambda(&g.star(v, a)?, &g)?;
    assert_eq!(&moved, direct.solutions());
    println!("transformed basis matches Lambda(G *_3 1, G)");
    Ok(())
}
