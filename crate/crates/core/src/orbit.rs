//! Exhaustive orbits under local operations, as a ground truth for small
//! graphs.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::graph::LabeledGraph;

/// Every graph reachable from `start` by stars and circs.
#[derive(Debug, Clone)]
pub struct Orbit {
    field: Field,
    n: usize,
    start: LabeledGraph,
    members: HashSet<Vec<u32>>,
}

impl Orbit {
    pub fn spec(&self) -> &FieldSpec {
        self.field.spec()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn start(&self) -> &LabeledGraph {
        &self.start
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &LabeledGraph) -> bool {
        g.field() == &self.field && g.n() == self.n && self.members.contains(&g.encode())
    }

    /// Members in increasing order of their upper-triangle encoding.
    pub fn members(&self) -> Vec<LabeledGraph> {
        let mut codes: Vec<&Vec<u32>> = self.members.iter().collect();
        codes.sort();
        codes
            .into_iter()
            .map(|c| LabeledGraph::decode(&self.field, self.n, c).expect("stored encodings are valid"))
            .collect()
    }

    /// Reapply every generator to every member and confirm nothing new
    /// appears.
    pub fn is_closed(&self) -> bool {
        self.members.iter().all(|c| {
            let g = LabeledGraph::decode(&self.field, self.n, c).expect("stored encodings are valid");
            let closed = neighbours(&g).all(|h| self.members.contains(&h.encode()));
            closed
        })
    }
}

fn neighbours(g: &LabeledGraph) -> impl Iterator<Item = LabeledGraph> + '_ {
    let f = g.field();
    (0..g.n()).flat_map(move |v| {
        let stars = f.elements().map(move |a| g.star(v, a).expect("vertex in range"));
        let circs = f.nonzero_elements().map(move |b| g.circ(v, b).expect("nonzero scalar"));
        stars.chain(circs)
    })
}

/// Breadth-first search from `g`. Fails once more than `node_limit` graphs
/// have been found.
pub fn orbit(g: &LabeledGraph, node_limit: usize) -> Result<Orbit> {
    let mut members = HashSet::new();
    let mut queue = VecDeque::new();
    members.insert(g.encode());
    queue.push_back(g.clone());
    while let Some(cur) = queue.pop_front() {
        for h in neighbours(&cur) {
            if members.insert(h.encode()) {
                if members.len() > node_limit {
                    return Err(Error::LimitExceeded { limit: node_limit });
                }
                queue.push_back(h);
            }
        }
    }
    let out = Orbit {
        field: g.field().clone(),
        n: g.n(),
        start: g.clone(),
        members,
    };
    debug_assert!(out.is_closed());
    Ok(out)
}

/// Whether `h` is in the orbit of `g`.
pub fn equivalent_bruteforce(g: &LabeledGraph, h: &LabeledGraph, node_limit: usize) -> Result<bool> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: h.n(),
        });
    }
    Ok(orbit(g, node_limit)?.contains(h))
}

/// Every labelled graph on `n` vertices, in encoding order.
pub fn all_graphs(field: &Field, n: usize) -> Vec<LabeledGraph> {
    let m = n * n.saturating_sub(1) / 2;
    let q = field.q();
    let total = q.pow(m as u32);
    (0..total)
        .map(|mut code| {
            let mut enc = vec![0u32; m];
            for slot in enc.iter_mut().rev() {
                *slot = (code % q) as u32;
                code /= q;
            }
            LabeledGraph::decode(field, n, &enc).expect("codes are in range")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;

    #[test]
    fn small_orbits() {
        let f = Field::prime(3).unwrap();
        let edge = LabeledGraph::from_edges(&f, 2, &[(0, 1, Fe(1))]).unwrap();
        let o = orbit(&edge, 100).unwrap();
        assert_eq!(o.len(), 2);
        assert!(o.is_closed());
        let empty = LabeledGraph::empty(&f, 4);
        assert_eq!(orbit(&empty, 10).unwrap().len(), 1);
        assert!(!equivalent_bruteforce(&edge, &LabeledGraph::empty(&f, 2), 100).unwrap());

        let path = LabeledGraph::from_edges(&f, 3, &[(0, 1, Fe(1)), (1, 2, Fe(1))]).unwrap();
        let tri = LabeledGraph::from_edges(&f, 3, &[(0, 1, Fe(1)), (1, 2, Fe(1)), (0, 2, Fe(1))]).unwrap();
        assert!(equivalent_bruteforce(&path, &tri, 100).unwrap());
        assert!(equivalent_bruteforce(&tri, &path, 100).unwrap());
        assert!(matches!(orbit(&path, 2), Err(Error::LimitExceeded { limit: 2 })));
    }

    #[test]
    fn orbits_partition_three_vertex_graphs() {
        let f = Field::prime(3).unwrap();
        let all = all_graphs(&f, 3);
        assert_eq!(all.len(), 27);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for g in &all {
            let o = orbit(g, 1000).unwrap();
            assert!(o.is_closed());
            for m in o.members() {
                // symmetric: g is in the orbit of each member
                assert!(orbit(&m, 1000).unwrap().contains(g));
            }
            if !seen.contains(&g.encode()) {
                for m in o.members() {
                    assert!(seen.insert(m.encode()));
                }
            }
        }
        assert_eq!(seen.len(), 27);
    }
}
