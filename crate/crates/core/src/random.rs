//! Seeded random instances for tests, examples and the `random` command.

use rand::Rng;

use crate::field::{Fe, Field};
use crate::graph::{LabeledGraph, LocalOp};
use crate::lambda::PhiVector;
use crate::subspace::Subspace;

/// Each pair is an edge with probability `density`, labelled uniformly
/// among nonzero scalars.
pub fn random_graph<R: Rng + ?Sized>(field: &Field, n: usize, density: f64, rng: &mut R) -> LabeledGraph {
    let mut g = LabeledGraph::empty(field, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                g.set_edge(i, j, field.random_nonzero(rng)).expect("distinct vertices");
            }
        }
    }
    g
}

/// Every pair labelled uniformly over all of `F_q`, zero included.
pub fn random_labels<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> LabeledGraph {
    let mut g = LabeledGraph::empty(field, n);
    for i in 0..n {
        for j in i + 1..n {
            g.set_edge(i, j, field.random(rng)).expect("distinct vertices");
        }
    }
    g
}

/// A random spanning tree plus extra edges with probability `density`.
pub fn random_connected_graph<R: Rng + ?Sized>(field: &Field, n: usize, density: f64, rng: &mut R) -> LabeledGraph {
    let mut g = random_graph(field, n, density, rng);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for k in 1..n {
        let (a, b) = (order[k], order[rng.gen_range(0..k)]);
        if g.get(a, b).is_zero() {
            g.set_edge(a, b, field.random_nonzero(rng)).expect("distinct vertices");
        }
    }
    g
}

pub fn random_op<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> LocalOp {
    let v = rng.gen_range(0..n);
    if rng.gen_bool(0.5) {
        LocalOp::Star { v, a: field.random(rng) }
    } else {
        LocalOp::Circ { v, b: field.random_nonzero(rng) }
    }
}

pub fn random_ops<R: Rng + ?Sized>(field: &Field, n: usize, len: usize, rng: &mut R) -> Vec<LocalOp> {
    (0..len).map(|_| random_op(field, n, rng)).collect()
}

pub fn random_phi<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> PhiVector {
    let mut v = || (0..n).map(|_| field.random(rng)).collect::<Vec<Fe>>();
    PhiVector {
        x: v(),
        y: v(),
        z: v(),
        t: v(),
    }
}

/// A uniformly random element of `space`.
pub fn random_element<R: Rng + ?Sized>(space: &Subspace, rng: &mut R) -> Vec<Fe> {
    let f = space.field();
    let mut acc = vec![Fe::ZERO; space.ambient()];
    for row in space.basis() {
        let c = f.random(rng);
        for (a, &r) in acc.iter_mut().zip(row) {
            *a = f.add(*a, f.mul(c, r));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_and_deterministic() {
        let f = Field::prime(5).unwrap();
        for seed in 0..20 {
            let g = random_connected_graph(&f, 8, 0.1, &mut ChaCha8Rng::seed_from_u64(seed));
            assert!(g.is_connected());
            assert!(g.is_well_formed());
            assert_eq!(g, random_connected_graph(&f, 8, 0.1, &mut ChaCha8Rng::seed_from_u64(seed)));
        }
        let full = random_graph(&f, 5, 1.0, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(full.edges().len(), 10);
        assert!(random_graph(&f, 5, 0.0, &mut ChaCha8Rng::seed_from_u64(1)).edges().is_empty());
    }
}
