//! Edge-labeled graphs over `F_q` and the two local operators.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// A graph on vertices `0..n` whose label matrix is symmetric with zero
/// diagonal. Absent edges have label zero.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    field: Field,
    n: usize,
    labels: Vec<Fe>,
}

impl Hash for LabeledGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.labels.hash(state);
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LabeledGraph over {:?}, n = {}", self.field, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.field.format(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A local operator: `Star { v, a }` adds `a * g_vi * g_vj` to every label
/// between two neighbors `i, j` of `v`; `Circ { v, b }` scales the edges at
/// `v` by the nonzero scalar `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalOp {
    Star { v: usize, a: Fe },
    Circ { v: usize, b: Fe },
}

impl LocalOp {
    pub fn vertex(&self) -> usize {
        match *self {
            LocalOp::Star { v, .. } | LocalOp::Circ { v, .. } => v,
        }
    }

    /// The same operator acting on vertex `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> LocalOp {
        match *self {
            LocalOp::Star { v, a } => LocalOp::Star { v: map[v], a },
            LocalOp::Circ { v, b } => LocalOp::Circ { v: map[v], b },
        }
    }
}

impl LabeledGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(field: &Field, n: usize) -> LabeledGraph {
        LabeledGraph {
            field: field.clone(),
            n,
            labels: vec![Fe::ZERO; n * n],
        }
    }

    /// Build from `(i, j, label)` triples. Zero labels are allowed here and
    /// simply leave the pair absent.
    pub fn from_edges(field: &Field, n: usize, edges: &[(usize, usize, Fe)]) -> Result<LabeledGraph> {
        let mut g = LabeledGraph::empty(field, n);
        for &(i, j, a) in edges {
            g.set_edge(i, j, a)?;
        }
        Ok(g)
    }

    /// Build from a full label matrix, checking symmetry and zero diagonal.
    pub fn from_matrix(field: &Field, rows: &[Vec<Fe>]) -> Result<LabeledGraph> {
        let n = rows.len();
        let mut labels = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            if !row[i].is_zero() {
                return Err(Error::InvalidArgument(format!("nonzero diagonal entry at {i}")));
            }
            for (j, &a) in row.iter().enumerate() {
                if rows[j][i] != a {
                    return Err(Error::InvalidArgument(format!("asymmetric entry at ({i}, {j})")));
                }
                if a.code() as u64 >= field.q() {
                    return Err(Error::InvalidArgument(format!("label out of range at ({i}, {j})")));
                }
            }
            labels.extend_from_slice(row);
        }
        Ok(LabeledGraph {
            field: field.clone(),
            n,
            labels,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.labels[i * self.n + j]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Set the label of the unordered pair `{i, j}`.
    pub fn set_edge(&mut self, i: usize, j: usize, a: Fe) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {i}")));
        }
        let n = self.n;
        self.labels[i * n + j] = a;
        self.labels[j * n + i] = a;
        Ok(())
    }

    /// Row `i` of the label matrix.
    pub fn neighborhood(&self, i: usize) -> Result<Vec<Fe>> {
        self.check_vertex(i)?;
        Ok(self.row(i).to_vec())
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[Fe] {
        &self.labels[i * self.n..(i + 1) * self.n]
    }

    /// The full label matrix as rows.
    pub fn matrix(&self) -> Vec<Vec<Fe>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Edges `(i, j, label)` with `i < j` and nonzero label, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize, Fe)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out.push((i, j, a));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().filter(|a| !a.is_zero()).count()
    }

    /// `G *_a v`: for distinct `i, j != v`, `g'_ij = g_ij + a g_vi g_vj`.
    pub fn star(&self, v: usize, a: Fe) -> Result<LabeledGraph> {
        self.check_vertex(v)?;
        let f = &self.field;
        let mut out = self.clone();
        if a.is_zero() {
            return Ok(out);
        }
        let n = self.n;
        let nbrs: Vec<(usize, Fe)> = (0..n)
            .filter(|&i| i != v)
            .map(|i| (i, self.get(v, i)))
            .filter(|(_, g)| !g.is_zero())
            .collect();
        for (x, &(i, gi)) in nbrs.iter().enumerate() {
            let agi = f.mul(a, gi);
            for &(j, gj) in &nbrs[x + 1..] {
                let val = f.add(self.get(i, j), f.mul(agi, gj));
                out.labels[i * n + j] = val;
                out.labels[j * n + i] = val;
            }
        }
        Ok(out)
    }

    /// `G o_b v`: multiply every label at `v` by `b != 0`.
    pub fn circ(&self, v: usize, b: Fe) -> Result<LabeledGraph> {
        self.check_vertex(v)?;
        if b.is_zero() {
            return Err(Error::InvalidOperator("circ requires a nonzero scalar".into()));
        }
        let f = &self.field;
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            let val = f.mul(b, self.get(v, i));
            out.labels[v * n + i] = val;
            out.labels[i * n + v] = val;
        }
        Ok(out)
    }

    pub fn apply(&self, op: &LocalOp) -> Result<LabeledGraph> {
        match *op {
            LocalOp::Star { v, a } => self.star(v, a),
            LocalOp::Circ { v, b } => self.circ(v, b),
        }
    }

    /// Apply `ops` left to right.
    pub fn apply_sequence(&self, ops: &[LocalOp]) -> Result<LabeledGraph> {
        let mut g = self.clone();
        for op in ops {
            g = g.apply(op)?;
        }
        Ok(g)
    }

    /// Vertex sets of the connected components of the support graph, each
    /// sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = vec![start];
            while let Some(u) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && !self.get(u, w).is_zero() {
                        seen[w] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `vertices`, relabeled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<LabeledGraph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let m = vertices.len();
        let mut labels = Vec::with_capacity(m * m);
        for &i in vertices {
            for &j in vertices {
                labels.push(self.get(i, j));
            }
        }
        Ok(LabeledGraph {
            field: self.field.clone(),
            n: m,
            labels,
        })
    }

    /// True when the graph has no odd cycle.
    pub fn is_bipartite(&self) -> bool {
        let n = self.n;
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for w in 0..n {
                    if self.get(u, w).is_zero() {
                        continue;
                    }
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Row-major upper-triangle label codes; identifies the graph on its
    /// fixed vertex set.
    pub fn encode(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.get(i, j).code());
            }
        }
        out
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(field: &Field, n: usize, code: &[u32]) -> Result<LabeledGraph> {
        let expected = n * n.saturating_sub(1) / 2;
        if code.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: code.len() });
        }
        let mut g = LabeledGraph::empty(field, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j, field.element(code[k] as u64)?)?;
                k += 1;
            }
        }
        Ok(g)
    }

    /// Check the structural invariants: symmetric, zero diagonal.
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i).is_zero() && (0..self.n).all(|j| self.get(i, j) == self.get(j, i))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn path3() -> LabeledGraph {
        LabeledGraph::from_edges(&f3(), 3, &[(0, 1, Fe(1)), (1, 2, Fe(1))]).unwrap()
    }

    fn triangle() -> LabeledGraph {
        LabeledGraph::from_edges(&f3(), 3, &[(0, 1, Fe(1)), (1, 2, Fe(1)), (0, 2, Fe(1))]).unwrap()
    }

    #[test]
    fn neighborhoods() {
        assert_eq!(triangle().neighborhood(0).unwrap(), vec![Fe(0), Fe(1), Fe(1)]);
        assert_eq!(path3().neighborhood(1).unwrap(), vec![Fe(1), Fe(0), Fe(1)]);
        let iso = LabeledGraph::empty(&f3(), 2);
        assert_eq!(iso.neighborhood(1).unwrap(), vec![Fe(0), Fe(0)]);
        assert!(matches!(path3().neighborhood(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn star_examples() {
        assert_eq!(path3().star(1, Fe(1)).unwrap(), triangle());
        let t = triangle().star(0, Fe(1)).unwrap();
        assert_eq!(t.get(1, 2), Fe(2));
        assert_eq!(t.get(0, 1), Fe(1));
        assert_eq!(t.get(0, 2), Fe(1));
        assert_eq!(triangle().star(2, Fe(0)).unwrap(), triangle());
    }

    #[test]
    fn circ_examples() {
        let c = triangle().circ(0, Fe(2)).unwrap();
        assert_eq!((c.get(0, 1), c.get(0, 2), c.get(1, 2)), (Fe(2), Fe(2), Fe(1)));
        assert_eq!(triangle().circ(1, Fe(1)).unwrap(), triangle());
        assert!(matches!(triangle().circ(1, Fe(0)), Err(Error::InvalidOperator(_))));
        let back = c.circ(0, f3().inv(Fe(2)).unwrap()).unwrap();
        assert_eq!(back, triangle());
    }

    #[test]
    fn apply_sequence_examples() {
        assert_eq!(path3().apply_sequence(&[]).unwrap(), path3());
        assert_eq!(path3().apply_sequence(&[LocalOp::Star { v: 1, a: Fe(1) }]).unwrap(), triangle());
        let ops = [LocalOp::Star { v: 1, a: Fe(1) }, LocalOp::Star { v: 1, a: Fe(2) }];
        assert_eq!(path3().apply_sequence(&ops).unwrap(), path3());
        assert!(path3().apply_sequence(&[LocalOp::Circ { v: 5, b: Fe(1) }]).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(triangle().is_connected());
        assert_eq!(triangle().components(), vec![vec![0, 1, 2]]);
        let two = LabeledGraph::empty(&f3(), 2);
        assert_eq!(two.components(), vec![vec![0], vec![1]]);
        let p4 = LabeledGraph::from_edges(&f3(), 4, &[(0, 1, Fe(1)), (1, 2, Fe(2)), (2, 3, Fe(1))]).unwrap();
        assert!(p4.is_connected());
        assert!(p4.is_bipartite());
        assert!(!triangle().is_bipartite());
    }

    #[test]
    fn encode_round_trip() {
        let t = triangle().star(0, Fe(1)).unwrap();
        assert_eq!(LabeledGraph::decode(&f3(), 3, &t.encode()).unwrap(), t);
    }

    fn graph_strategy(q: u64, n: usize) -> impl Strategy<Value = LabeledGraph> {
        proptest::collection::vec(0..q as u32, n * (n - 1) / 2).prop_map(move |code| {
            LabeledGraph::decode(&Field::prime(q).unwrap(), n, &code).unwrap()
        })
    }

    proptest! {
        #[test]
        fn operator_laws(g in graph_strategy(5, 6), v in 0usize..6, w in 0usize..6,
                         a in 0u32..5, a2 in 0u32..5, b in 1u32..5, b2 in 1u32..5) {
            let f = g.field().clone();
            let (a, a2, b, b2) = (Fe(a), Fe(a2), Fe(b), Fe(b2));
            let s = g.star(v, a).unwrap();
            let c = g.circ(v, b).unwrap();
            prop_assert!(s.is_well_formed() && c.is_well_formed());
            prop_assert_eq!(s.n(), g.n());
            prop_assert_eq!(s.star(v, a2).unwrap(), g.star(v, f.add(a, a2)).unwrap());
            prop_assert_eq!(s.star(v, f.neg(a)).unwrap(), g.clone());
            // commutation law: star after circ equals circ after a rescaled star
            let lhs = c.star(v, a).unwrap();
            let rhs = g.star(v, f.mul(a, f.mul(b, b))).unwrap().circ(v, b).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(s.components(), g.components());
            prop_assert_eq!(c.components(), g.components());
            if v != w {
                prop_assert_eq!(c.circ(w, b2).unwrap(), g.circ(w, b2).unwrap().circ(v, b).unwrap());
            }
        }
    }
}
