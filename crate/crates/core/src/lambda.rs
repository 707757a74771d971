//! The linear constraint system relating two graphs.
//!
//! A candidate normal matrix is written as a point `(X, Y, Z, T)` of
//! `F_q^{4n}` ([`PhiVector`]). Rows of `(I | G) A` are orthogonal to rows of
//! `(I | H)` exactly when, for every pair of vertices `i, j`,
//!
//! ```text
//! <X, g(i)*h(j)> - <Y, g(i)*e_j> + <Z, e_i*h(j)> - <T, e_i*e_j> = 0
//! ```
//!
//! where `*` is the componentwise product. The solution space is
//! `Lambda(G, H)`, the orthogonal complement of
//! `lambda(G, H) = span{lambda(i, j)}` under the signed form
//! `<X,X'> - <Y,Y'> + <Z,Z'> - <T,T'>`.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::graph::LabeledGraph;
use crate::subspace::{nullspace, Form, Subspace};

/// A point `(X, Y, Z, T)` of `F_q^{4n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiVector {
    pub x: Vec<Fe>,
    pub y: Vec<Fe>,
    pub z: Vec<Fe>,
    pub t: Vec<Fe>,
}

impl PhiVector {
    pub fn new(x: Vec<Fe>, y: Vec<Fe>, z: Vec<Fe>, t: Vec<Fe>) -> Result<PhiVector> {
        let n = x.len();
        for v in [&y, &z, &t] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        Ok(PhiVector { x, y, z, t })
    }

    pub fn zero(n: usize) -> PhiVector {
        PhiVector {
            x: vec![Fe::ZERO; n],
            y: vec![Fe::ZERO; n],
            z: vec![Fe::ZERO; n],
            t: vec![Fe::ZERO; n],
        }
    }

    /// `(0, I, I, 0)`, the identity normal matrix.
    pub fn identity(field: &Field, n: usize) -> PhiVector {
        PhiVector {
            x: vec![Fe::ZERO; n],
            y: vec![field.one(); n],
            z: vec![field.one(); n],
            t: vec![Fe::ZERO; n],
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Split a flat `4n` vector into blocks.
    pub fn from_flat(v: &[Fe]) -> Result<PhiVector> {
        if v.len() % 4 != 0 {
            return Err(Error::DimensionMismatch { expected: v.len() + 4 - v.len() % 4, found: v.len() });
        }
        let n = v.len() / 4;
        Ok(PhiVector {
            x: v[..n].to_vec(),
            y: v[n..2 * n].to_vec(),
            z: v[2 * n..3 * n].to_vec(),
            t: v[3 * n..].to_vec(),
        })
    }

    pub fn to_flat(&self) -> Vec<Fe> {
        let mut out = Vec::with_capacity(4 * self.n());
        for b in [&self.x, &self.y, &self.z, &self.t] {
            out.extend_from_slice(b);
        }
        out
    }

    fn check_len(&self, other: &PhiVector) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n(), found: other.n() })
        }
    }

    fn zip_with(&self, other: &PhiVector, op: impl Fn(Fe, Fe) -> Fe) -> PhiVector {
        let f = |a: &[Fe], b: &[Fe]| a.iter().zip(b).map(|(&u, &v)| op(u, v)).collect();
        PhiVector {
            x: f(&self.x, &other.x),
            y: f(&self.y, &other.y),
            z: f(&self.z, &other.z),
            t: f(&self.t, &other.t),
        }
    }

    pub fn add(&self, field: &Field, other: &PhiVector) -> Result<PhiVector> {
        self.check_len(other)?;
        Ok(self.zip_with(other, |a, b| field.add(a, b)))
    }

    pub fn scale(&self, field: &Field, c: Fe) -> PhiVector {
        let s = |v: &[Fe]| v.iter().map(|&a| field.mul(c, a)).collect();
        PhiVector {
            x: s(&self.x),
            y: s(&self.y),
            z: s(&self.z),
            t: s(&self.t),
        }
    }

    /// Componentwise product across all four blocks.
    pub fn hadamard(&self, field: &Field, other: &PhiVector) -> Result<PhiVector> {
        self.check_len(other)?;
        Ok(self.zip_with(other, |a, b| field.mul(a, b)))
    }

    pub fn is_zero(&self) -> bool {
        [&self.x, &self.y, &self.z, &self.t].iter().all(|b| b.iter().all(|a| a.is_zero()))
    }
}

/// `lambda(i, j) = (g(i)*h(j), g(i)*e_j, e_i*h(j), e_i*e_j)`.
pub fn lambda_ij(g: &LabeledGraph, h: &LabeledGraph, i: usize, j: usize) -> Result<PhiVector> {
    check_pair(g, h)?;
    let f = g.field();
    let gi = g.neighborhood(i)?;
    let hj = h.neighborhood(j)?;
    let n = g.n();
    let mut out = PhiVector::zero(n);
    out.x = f.hadamard(&gi, &hj);
    out.y[j] = gi[j];
    out.z[i] = hj[i];
    if i == j {
        out.t[i] = f.one();
    }
    Ok(out)
}

fn check_pair(g: &LabeledGraph, h: &LabeledGraph) -> Result<()> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: h.n() });
    }
    Ok(())
}

/// `<X,X'> - <Y,Y'> + <Z,Z'> - <T,T'>`.
pub fn signed_form(field: &Field, a: &PhiVector, b: &PhiVector) -> Result<Fe> {
    a.check_len(b)?;
    let pos = field.add(field.dot(&a.x, &b.x), field.dot(&a.z, &b.z));
    let neg = field.add(field.dot(&a.y, &b.y), field.dot(&a.t, &b.t));
    Ok(field.sub(pos, neg))
}

/// `det(X, Y, Z, T) = Y*Z - X*T`, componentwise.
pub fn det_phi(field: &Field, phi: &PhiVector) -> Vec<Fe> {
    (0..phi.n())
        .map(|i| field.sub(field.mul(phi.y[i], phi.z[i]), field.mul(phi.x[i], phi.t[i])))
        .collect()
}

/// `Psi(phi, phi') = 2 Y*Y' + X*T' + X'*T`, evaluated as written.
///
/// When both arguments have `Z = -Y` this is the polarization
/// `det phi + det phi' - det(phi + phi')`.
pub fn psi(field: &Field, a: &PhiVector, b: &PhiVector) -> Result<Vec<Fe>> {
    a.check_len(b)?;
    let two = field.from_int(2);
    Ok((0..a.n())
        .map(|i| {
            let yy = field.mul(two, field.mul(a.y[i], b.y[i]));
            let xt = field.add(field.mul(a.x[i], b.t[i]), field.mul(b.x[i], a.t[i]));
            field.add(yy, xt)
        })
        .collect())
}

/// `phi^1 = (-Z, -T, -X, -Y)` and `phi^2 = (Y, X, T, Z)`.
pub fn phi_superscript(field: &Field, phi: &PhiVector, l: u8) -> Result<PhiVector> {
    let neg = |v: &[Fe]| v.iter().map(|&a| field.neg(a)).collect::<Vec<_>>();
    match l {
        1 => Ok(PhiVector {
            x: neg(&phi.z),
            y: neg(&phi.t),
            z: neg(&phi.x),
            t: neg(&phi.y),
        }),
        2 => Ok(PhiVector {
            x: phi.y.clone(),
            y: phi.x.clone(),
            z: phi.t.clone(),
            t: phi.z.clone(),
        }),
        _ => Err(Error::InvalidArgument(format!("superscript must be 1 or 2, got {l}"))),
    }
}

/// `phi *_{l,a} alpha = phi - a phi^l * alpha`.
pub fn star_transform(field: &Field, phi: &PhiVector, l: u8, a: Fe, alpha: &PhiVector) -> Result<PhiVector> {
    phi.check_len(alpha)?;
    let shifted = phi_superscript(field, phi, l)?.hadamard(field, alpha)?;
    phi.add(field, &shifted.scale(field, field.neg(a)))
}

/// `f_{b,i} = I + (b - 1) e_i`.
pub fn f_vec(field: &Field, b: Fe, i: usize, n: usize) -> Result<Vec<Fe>> {
    if b.is_zero() {
        return Err(Error::InvalidArgument("f_vec requires a nonzero scalar".into()));
    }
    if i >= n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    let mut v = vec![field.one(); n];
    v[i] = b;
    Ok(v)
}

fn unit(field: &Field, n: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; n];
    v[i] = field.one();
    v
}

/// `(e_i, e_i, g(i)*g(i), g(i)*g(i))`: transforms `Lambda(G, H)` into
/// `Lambda(G *_a i, H)` with `l = 1`.
pub fn star_left_alpha(g: &LabeledGraph, i: usize) -> Result<PhiVector> {
    let f = g.field();
    let gi = g.neighborhood(i)?;
    let sq = f.hadamard(&gi, &gi);
    let e = unit(f, g.n(), i);
    Ok(PhiVector { x: e.clone(), y: e, z: sq.clone(), t: sq })
}

/// `(e_i, h(i)*h(i), e_i, h(i)*h(i))`: transforms `Lambda(G, H)` into
/// `Lambda(G, H *_a i)` with `l = 2`.
pub fn star_right_alpha(h: &LabeledGraph, i: usize) -> Result<PhiVector> {
    let f = h.field();
    let hi = h.neighborhood(i)?;
    let sq = f.hadamard(&hi, &hi);
    let e = unit(f, h.n(), i);
    Ok(PhiVector { x: e.clone(), y: sq.clone(), z: e, t: sq })
}

/// `(f_{1/b,i}, f_{1/b,i}, f_{b,i}, f_{b,i})`: multiplier for `G o_b i`.
pub fn circ_left_factor(field: &Field, b: Fe, i: usize, n: usize) -> Result<PhiVector> {
    let fb = f_vec(field, b, i, n)?;
    let fi = f_vec(field, field.inv(b)?, i, n)?;
    Ok(PhiVector { x: fi.clone(), y: fi, z: fb.clone(), t: fb })
}

/// `(f_{1/b,i}, f_{b,i}, f_{1/b,i}, f_{b,i})`: multiplier for `H o_b i`.
pub fn circ_right_factor(field: &Field, b: Fe, i: usize, n: usize) -> Result<PhiVector> {
    let fb = f_vec(field, b, i, n)?;
    let fi = f_vec(field, field.inv(b)?, i, n)?;
    Ok(PhiVector { x: fi.clone(), y: fb.clone(), z: fi, t: fb })
}

/// Image of a subspace of `F_q^{4n}` under `phi -> phi *_{l,a} alpha`.
pub fn transform_star(space: &Subspace, l: u8, a: Fe, alpha: &PhiVector) -> Result<Subspace> {
    let f = space.field();
    let rows = space
        .basis()
        .iter()
        .map(|r| Ok(star_transform(f, &PhiVector::from_flat(r)?, l, a, alpha)?.to_flat()))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_rows(f, space.ambient(), rows)
}

/// Image of a subspace of `F_q^{4n}` under `phi -> phi * factor`.
pub fn transform_scale(space: &Subspace, factor: &PhiVector) -> Result<Subspace> {
    let f = space.field();
    let rows = space
        .basis()
        .iter()
        .map(|r| Ok(PhiVector::from_flat(r)?.hadamard(f, factor)?.to_flat()))
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_rows(f, space.ambient(), rows)
}

/// `lambda(G, H)` and its signed-form complement `Lambda(G, H)`.
#[derive(Debug, Clone)]
pub struct LambdaSystem {
    n: usize,
    lambda: Subspace,
    big_lambda: Subspace,
}

impl LambdaSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `lambda(G, H) = span{lambda(i, j)}`.
    pub fn lambda(&self) -> &Subspace {
        &self.lambda
    }

    /// `Lambda(G, H)`, canonical basis.
    pub fn solutions(&self) -> &Subspace {
        &self.big_lambda
    }

    /// Basis of `Lambda(G, H)` as [`PhiVector`]s, in canonical order.
    pub fn basis(&self) -> Vec<PhiVector> {
        self.big_lambda
            .basis()
            .iter()
            .map(|r| PhiVector::from_flat(r).expect("length is 4n"))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.big_lambda.dim()
    }

    pub fn contains(&self, phi: &PhiVector) -> bool {
        self.big_lambda.contains(&phi.to_flat())
    }
}

/// The `n^2` rows (one per ordered pair, including `i = j`) whose dot product
/// with `(X, Y, Z, T)` is the left-hand side of the pair constraint.
pub(crate) fn constraint_rows(g: &LabeledGraph, h: &LabeledGraph) -> Vec<Vec<Fe>> {
    let f = g.field();
    let n = g.n();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let gi = g.row(i);
        for j in 0..n {
            let hj = h.row(j);
            let mut r = vec![Fe::ZERO; 4 * n];
            for k in 0..n {
                r[k] = f.mul(gi[k], hj[k]);
            }
            r[n + j] = f.neg(gi[j]);
            r[2 * n + i] = f.add(r[2 * n + i], hj[i]);
            if i == j {
                r[3 * n + i] = f.neg(f.one());
            }
            rows.push(r);
        }
    }
    rows
}

/// Build `lambda(G, H)` and solve for `Lambda(G, H)`.
pub fn big_lambda(g: &LabeledGraph, h: &LabeledGraph) -> Result<LambdaSystem> {
    check_pair(g, h)?;
    let f = g.field();
    let n = g.n();
    let signed = constraint_rows(g, h);
    let null = nullspace(f, &signed, 4 * n);
    let big = Subspace::from_rows(f, 4 * n, null)?;
    // Undo the signs to recover the lambda(i, j) themselves.
    let plain = signed
        .iter()
        .map(|r| Form::Signed.gram_apply(f, r))
        .collect::<Result<Vec<_>>>()?;
    let lambda = Subspace::from_rows(f, 4 * n, plain)?;
    debug_assert_eq!(lambda.dim() + big.dim(), 4 * n);
    Ok(LambdaSystem {
        n,
        lambda,
        big_lambda: big,
    })
}

/// Solve the pair constraints plus extra linear rows (each of length `4n`).
pub(crate) fn solve_with_extra(g: &LabeledGraph, h: &LabeledGraph, extra: Vec<Vec<Fe>>) -> Result<Subspace> {
    check_pair(g, h)?;
    let f = g.field();
    let n = g.n();
    let mut rows = constraint_rows(g, h);
    rows.extend(extra);
    Subspace::from_rows(f, 4 * n, nullspace(f, &rows, 4 * n))
}
