//! Isotropic systems in `F_q^{2n}` and normal matrices acting on them.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::graph::LabeledGraph;
use crate::subspace::{Form, Subspace};

/// `W_G`, the row space of `(I | G)`.
pub fn isotropic_of_graph(g: &LabeledGraph) -> Subspace {
    let n = g.n();
    let f = g.field();
    let rows = (0..n)
        .map(|i| {
            let mut r = vec![Fe::ZERO; 2 * n];
            r[i] = f.one();
            r[n..].copy_from_slice(&g.matrix()[i]);
            r
        })
        .collect();
    Subspace::from_rows(f, 2 * n, rows).expect("rows have length 2n")
}

/// `<(X, X'), (Y, Y')> = X.Y' - X'.Y`.
pub fn symplectic_form(field: &Field, u: &[Fe], v: &[Fe]) -> Result<Fe> {
    Form::Symplectic.eval(field, u, v)
}

/// An `n`-dimensional subspace of `F_q^{2n}` on which the symplectic form
/// vanishes.
pub fn is_isotropic(w: &Subspace) -> bool {
    let m = w.ambient();
    if m % 2 != 0 || w.dim() != m / 2 {
        return false;
    }
    let f = w.field();
    let basis = w.basis();
    basis.iter().enumerate().all(|(i, u)| {
        basis[i + 1..]
            .iter()
            .all(|v| symplectic_form(f, u, v).map(|x| x.is_zero()).unwrap_or(false))
    })
}

/// The `2n x 2n` matrix `[[Z, T], [X, Y]]` with diagonal blocks and
/// `y_i z_i - x_i t_i = 1` at every index. Each vertex `i` carries the
/// `2 x 2` factor `[[z_i, t_i], [x_i, y_i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalMatrix {
    field: Field,
    pub(crate) x: Vec<Fe>,
    pub(crate) y: Vec<Fe>,
    pub(crate) z: Vec<Fe>,
    pub(crate) t: Vec<Fe>,
}

impl NormalMatrix {
    pub fn new(field: &Field, x: Vec<Fe>, y: Vec<Fe>, z: Vec<Fe>, t: Vec<Fe>) -> Result<NormalMatrix> {
        let n = x.len();
        for v in [&y, &z, &t] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        for i in 0..n {
            let det = field.sub(field.mul(y[i], z[i]), field.mul(x[i], t[i]));
            if det != field.one() {
                return Err(Error::NotNormal { index: i });
            }
        }
        Ok(NormalMatrix {
            field: field.clone(),
            x,
            y,
            z,
            t,
        })
    }

    pub fn identity(field: &Field, n: usize) -> NormalMatrix {
        NormalMatrix {
            field: field.clone(),
            x: vec![Fe::ZERO; n],
            y: vec![field.one(); n],
            z: vec![field.one(); n],
            t: vec![Fe::ZERO; n],
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn x(&self) -> &[Fe] {
        &self.x
    }

    pub fn y(&self) -> &[Fe] {
        &self.y
    }

    pub fn z(&self) -> &[Fe] {
        &self.z
    }

    pub fn t(&self) -> &[Fe] {
        &self.t
    }

    /// `[[z, t], [x, y]]` at vertex `i`.
    pub fn factor(&self, i: usize) -> [[Fe; 2]; 2] {
        [[self.z[i], self.t[i]], [self.x[i], self.y[i]]]
    }

    pub(crate) fn set_factor(&mut self, i: usize, m: [[Fe; 2]; 2]) {
        self.z[i] = m[0][0];
        self.t[i] = m[0][1];
        self.x[i] = m[1][0];
        self.y[i] = m[1][1];
    }

    /// A vertex is trivial when `z_i = 1` and `x_i = 0`.
    pub fn is_trivial_at(&self, i: usize) -> bool {
        self.z[i] == self.field.one() && self.x[i].is_zero()
    }

    pub fn nontrivial_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.is_trivial_at(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == NormalMatrix::identity(&self.field, self.n())
    }

    /// The product `self * other`.
    pub fn compose(&self, other: &NormalMatrix) -> Result<NormalMatrix> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        let mut out = self.clone();
        for i in 0..self.n() {
            out.set_factor(i, mul2(&self.field, self.factor(i), other.factor(i)));
        }
        Ok(out)
    }

    /// Inverse via the per-vertex adjugate `[[y, -t], [-x, z]]`.
    pub fn invert(&self) -> NormalMatrix {
        let f = &self.field;
        NormalMatrix {
            field: f.clone(),
            x: self.x.iter().map(|&a| f.neg(a)).collect(),
            y: self.z.clone(),
            z: self.y.clone(),
            t: self.t.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    /// Row vector `w * A` for `w` in `F_q^{2n}`.
    pub fn apply_row(&self, w: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let n = self.n();
        let mut out = vec![Fe::ZERO; 2 * n];
        for i in 0..n {
            let (u, u2) = (w[i], w[n + i]);
            out[i] = f.add(f.mul(u, self.z[i]), f.mul(u2, self.x[i]));
            out[n + i] = f.add(f.mul(u, self.t[i]), f.mul(u2, self.y[i]));
        }
        out
    }
}

pub(crate) fn mul2(f: &Field, a: [[Fe; 2]; 2], b: [[Fe; 2]; 2]) -> [[Fe; 2]; 2] {
    let entry = |r: usize, c: usize| f.add(f.mul(a[r][0], b[0][c]), f.mul(a[r][1], b[1][c]));
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// `W * A`, computed vertex by vertex on coordinate pairs `(w_i, w_{n+i})`.
pub fn apply_normal(w: &Subspace, a: &NormalMatrix) -> Result<Subspace> {
    if w.ambient() != 2 * a.n() {
        return Err(Error::DimensionMismatch { expected: 2 * a.n(), found: w.ambient() });
    }
    w.map_rows(w.ambient(), |r| a.apply_row(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> LabeledGraph {
        let mut g = LabeledGraph::empty(field, n);
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j, field.random(rng)).unwrap();
            }
        }
        g
    }

    fn random_normal(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> NormalMatrix {
        let (mut x, mut y, mut z, mut t) = (vec![], vec![], vec![], vec![]);
        for _ in 0..n {
            // pick (z, t, x) then solve for y when z != 0, else force x t = -1
            loop {
                let (zi, ti, xi) = (field.random(rng), field.random(rng), field.random(rng));
                if !zi.is_zero() {
                    let yi = field.div(field.add(field.one(), field.mul(xi, ti)), zi).unwrap();
                    x.push(xi);
                    y.push(yi);
                    z.push(zi);
                    t.push(ti);
                    break;
                } else if !xi.is_zero() {
                    let ti = field.neg(field.inv(xi).unwrap());
                    x.push(xi);
                    y.push(field.random(rng));
                    z.push(zi);
                    t.push(ti);
                    break;
                }
            }
        }
        NormalMatrix::new(field, x, y, z, t).unwrap()
    }

    #[test]
    fn graph_systems_are_isotropic() {
        let f = Field::prime(3).unwrap();
        let single = isotropic_of_graph(&LabeledGraph::empty(&f, 1));
        assert_eq!(single.basis(), &[vec![Fe(1), Fe(0)]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..7 {
            let g = random_graph(&f, n, &mut rng);
            let w = isotropic_of_graph(&g);
            assert!(is_isotropic(&w));
            assert_eq!(w.orthogonal_complement(Form::Symplectic).unwrap(), w);
        }
    }

    #[test]
    fn form_examples() {
        let f = Field::prime(5).unwrap();
        let n = 3;
        let e = |i: usize| {
            let mut v = vec![Fe::ZERO; 2 * n];
            v[i] = f.one();
            v
        };
        assert_eq!(symplectic_form(&f, &e(0), &e(n)).unwrap(), f.one());
        assert_eq!(symplectic_form(&f, &e(n), &e(0)).unwrap(), f.neg(f.one()));
        let not_iso = Subspace::from_rows(&f, 2 * n, vec![e(0), e(n)]).unwrap();
        assert!(!is_isotropic(&not_iso));
        assert!(!is_isotropic(&Subspace::full(&f, 2 * n)));
        assert!(symplectic_form(&f, &e(0), &e(0)[..3]).is_err());
    }

    #[test]
    fn normal_matrix_examples() {
        let f = Field::prime(3).unwrap();
        let m1 = NormalMatrix::new(&f, vec![Fe(1)], vec![Fe(1)], vec![Fe(0)], vec![Fe(2)]).unwrap();
        let inv = m1.invert();
        assert_eq!((inv.x[0], inv.y[0], inv.z[0], inv.t[0]), (Fe(2), Fe(0), Fe(1), Fe(1)));
        assert!(m1.compose(&inv).unwrap().is_identity());
        let id = NormalMatrix::identity(&f, 1);
        assert_eq!(id.compose(&m1).unwrap(), m1);
        assert!(id.invert().is_identity());
        assert_eq!(
            NormalMatrix::new(&f, vec![Fe(1)], vec![Fe(1)], vec![Fe(1)], vec![Fe(1)]),
            Err(Error::NotNormal { index: 0 })
        );
    }

    #[test]
    fn operator_matrices_reproduce_local_operators() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = Field::prime(7).unwrap();
        for _ in 0..40 {
            let n = rng.gen_range(2..7);
            let g = random_graph(&f, n, &mut rng);
            let i = rng.gen_range(0..n);
            let a = f.random(&mut rng);
            let b = f.random_nonzero(&mut rng);
            let w = isotropic_of_graph(&g);
            let mut x = vec![Fe::ZERO; n];
            x[i] = f.neg(a);
            // neighbours of i need t_j = -a g_ij^2 to keep the diagonal zero
            let t: Vec<Fe> = (0..n).map(|j| f.neg(f.mul(a, f.square(g.get(i, j))))).collect();
            let star = NormalMatrix::new(&f, x, vec![f.one(); n], vec![f.one(); n], t).unwrap();
            assert_eq!(apply_normal(&w, &star).unwrap(), isotropic_of_graph(&g.star(i, a).unwrap()));
            let mut y = vec![f.one(); n];
            let mut z = vec![f.one(); n];
            y[i] = b;
            z[i] = f.inv(b).unwrap();
            let circ = NormalMatrix::new(&f, vec![Fe::ZERO; n], y, z, vec![Fe::ZERO; n]).unwrap();
            assert_eq!(apply_normal(&w, &circ).unwrap(), isotropic_of_graph(&g.circ(i, b).unwrap()));
            assert_eq!(apply_normal(&w, &NormalMatrix::identity(&f, n)).unwrap(), w);
        }
    }

    #[test]
    fn normal_action_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for f in [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::with_order(9).unwrap()] {
            for _ in 0..30 {
                let n = rng.gen_range(1..6);
                let g = random_graph(&f, n, &mut rng);
                let a = random_normal(&f, n, &mut rng);
                let b = random_normal(&f, n, &mut rng);
                let w = isotropic_of_graph(&g);
                let wa = apply_normal(&w, &a).unwrap();
                assert!(is_isotropic(&wa));
                assert_eq!(
                    apply_normal(&w, &a.compose(&b).unwrap()).unwrap(),
                    apply_normal(&wa, &b).unwrap()
                );
                assert!(a.compose(&a.invert()).unwrap().is_identity());
            }
        }
    }
}
