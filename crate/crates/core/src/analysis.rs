//! Structure of the self-equivalence space `Lambda(G, G)`.
//!
//! For connected `G`, `Y + Z` is a constant multiple of `I` on `Lambda(G, G)`,
//! which splits it into the cosets `Lambda_a = {Y + Z = aI}`. On
//! `Lambda_0` the determinant is a constant quadratic form whose zero set
//! `Lambda_0^0` is (under a dimension condition) a subspace; shifting it by
//! `(0, I, I, 0)` gives many internal solutions at once.

use std::collections::HashSet;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::graph::LabeledGraph;
use crate::lambda::{big_lambda, det_phi, psi, solve_with_extra, PhiVector};
use crate::random::random_element;
use crate::subspace::{nullspace, Form, Subspace};

fn require_connected(g: &LabeledGraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::NotConnected)
    }
}

fn phi(row: &[Fe]) -> PhiVector {
    PhiVector::from_flat(row).expect("length is 4n")
}

/// `Lambda_0(G, G)`: the solutions of the pair constraints with `Y + Z = 0`.
pub fn lambda0_basis(g: &LabeledGraph) -> Result<Subspace> {
    require_connected(g)?;
    let f = g.field();
    let n = g.n();
    let extra = (0..n)
        .map(|i| {
            let mut r = vec![Fe::ZERO; 4 * n];
            r[n + i] = f.one();
            r[2 * n + i] = f.one();
            r
        })
        .collect();
    solve_with_extra(g, g, extra)
}

/// True iff `Lambda(G, G) = Lambda_0 + span{(0, I, I, 0)}`.
pub fn check_shift_structure(g: &LabeledGraph) -> Result<bool> {
    let f = g.field();
    let full = big_lambda(g, g)?;
    let l0 = lambda0_basis(g)?;
    let shift = Subspace::from_rows(f, 4 * g.n(), vec![PhiVector::identity(f, g.n()).to_flat()])?;
    Ok(l0.sum(&shift)? == *full.solutions() && !l0.contains(&shift.basis()[0]))
}

fn constant(v: &[Fe]) -> Option<Fe> {
    match v.split_first() {
        Some((&a, rest)) if rest.iter().all(|&b| b == a) => Some(a),
        None => Some(Fe::ZERO),
        _ => None,
    }
}

/// Draws basis vectors and `samples` random elements of `Lambda(G, G)`.
fn sample_lambda<R: Rng + ?Sized>(g: &LabeledGraph, samples: usize, rng: &mut R) -> Result<Vec<PhiVector>> {
    let sys = big_lambda(g, g)?;
    let mut out = sys.basis();
    out.extend((0..samples).map(|_| phi(&random_element(sys.solutions(), rng))));
    Ok(out)
}

/// The constant values of `Y + Z` on sampled elements of `Lambda(G, G)`,
/// or `None` if some sample is not constant.
pub fn y_plus_z_values<R: Rng + ?Sized>(g: &LabeledGraph, samples: usize, rng: &mut R) -> Result<Option<Vec<Fe>>> {
    require_connected(g)?;
    let f = g.field();
    let mut out = Vec::new();
    for p in sample_lambda(g, samples, rng)? {
        let s: Vec<Fe> = p.y.iter().zip(&p.z).map(|(&a, &b)| f.add(a, b)).collect();
        match constant(&s) {
            Some(c) => out.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// `Y + Z` is constant on sampled elements of `Lambda(G, G)`.
pub fn check_lemma_ai<R: Rng + ?Sized>(g: &LabeledGraph, samples: usize, rng: &mut R) -> Result<bool> {
    Ok(y_plus_z_values(g, samples, rng)?.is_some())
}

/// `det phi` is constant on the basis and `samples` random elements of
/// `Lambda(G, G)`.
pub fn check_det_constant<R: Rng + ?Sized>(g: &LabeledGraph, samples: usize, rng: &mut R) -> Result<bool> {
    require_connected(g)?;
    let f = g.field();
    Ok(sample_lambda(g, samples, rng)?
        .iter()
        .all(|p| constant(&det_phi(f, p)).is_some()))
}

/// `v(C) = sum_k (-1)^k g_{i_k i_{k+1}}^{-1} g(i_k) * g(i_{k+1})`, indices
/// taken cyclically and `k` counted from 1.
pub fn v_cycle(g: &LabeledGraph, cycle: &[usize]) -> Result<Vec<Fe>> {
    let f = g.field();
    let n = g.n();
    let len = cycle.len();
    if len == 0 || len % 2 == 1 {
        return Err(Error::InvalidArgument(format!("cycle length {len} is not even and positive")));
    }
    if let Some(&v) = cycle.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let mut acc = vec![Fe::ZERO; n];
    for k in 0..len {
        let (a, b) = (cycle[k], cycle[(k + 1) % len]);
        let w = g.get(a, b);
        if w.is_zero() {
            return Err(Error::InvalidArgument(format!("{a} and {b} are not adjacent")));
        }
        // k is 0-based here, so index k + 1 is odd when k is even
        let c = if k % 2 == 0 { f.neg(f.inv(w)?) } else { f.inv(w)? };
        for (i, slot) in acc.iter_mut().enumerate() {
            *slot = f.add(*slot, f.mul(c, f.mul(g.get(a, i), g.get(b, i))));
        }
    }
    Ok(acc)
}

/// Simple cycles of even length `4..=bound`, each listed once: it starts at
/// its smallest vertex and its second vertex is smaller than its last.
pub fn even_simple_cycles(g: &LabeledGraph, bound: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    fn dfs(
        g: &LabeledGraph,
        bound: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let start = path[0];
        let last = *path.last().unwrap();
        for next in 0..g.n() {
            if g.get(last, next).is_zero() {
                continue;
            }
            if next == start {
                let l = path.len();
                if l >= 4 && l % 2 == 0 && path[1] < path[l - 1] {
                    out.push(path.clone());
                }
                continue;
            }
            if next < start || on_path[next] || path.len() >= bound {
                continue;
            }
            on_path[next] = true;
            path.push(next);
            dfs(g, bound, path, on_path, out);
            path.pop();
            on_path[next] = false;
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        dfs(g, bound, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

/// Products `g(i) * g(j)` over distinct non-adjacent pairs.
fn non_adjacent_products(g: &LabeledGraph) -> Vec<Vec<Fe>> {
    let f = g.field();
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if g.get(i, j).is_zero() {
                out.push(f.hadamard(g.row(i), g.row(j)));
            }
        }
    }
    out
}

/// Span of `v(C)` over even simple cycles of length at most `bound` and of
/// `g(i) * g(j)` over non-adjacent pairs.
pub fn nu_space_bruteforce(g: &LabeledGraph, bound: usize) -> Result<Subspace> {
    let mut rows = non_adjacent_products(g);
    for c in even_simple_cycles(g, bound) {
        rows.push(v_cycle(g, &c)?);
    }
    Subspace::from_rows(g.field(), g.n(), rows)
}

/// As [`nu_space_bruteforce`] but over every closed walk of even length
/// `4..=bound`, repeated vertices allowed. A rotation of a walk only flips
/// the sign of `v`, so each walk is started at its smallest vertex.
pub fn nu_space_closed_walks(g: &LabeledGraph, bound: usize) -> Result<Subspace> {
    let f = g.field();
    let n = g.n();
    let mut found: HashSet<Vec<Fe>> = non_adjacent_products(g).into_iter().collect();
    // edge terms g_ab^{-1} g(a) * g(b)
    let mut eps = vec![vec![Vec::new(); n]; n];
    for (a, b, w) in g.edges() {
        let e: Vec<Fe> = f.hadamard(g.row(a), g.row(b)).into_iter().map(|x| f.div(x, w).unwrap()).collect();
        eps[a][b] = e.clone();
        eps[b][a] = e;
    }
    struct Walk<'a> {
        g: &'a LabeledGraph,
        eps: &'a [Vec<Vec<Fe>>],
        bound: usize,
        start: usize,
        found: &'a mut HashSet<Vec<Fe>>,
    }
    fn extend(w: &mut Walk, last: usize, len: usize, acc: &[Fe]) {
        let f = w.g.field();
        if len >= 4 && len % 2 == 0 && !w.g.get(last, w.start).is_zero() {
            // closing step has index len, which is even: sign +
            let v: Vec<Fe> = acc.iter().zip(&w.eps[last][w.start]).map(|(&a, &b)| f.add(a, b)).collect();
            w.found.insert(v);
        }
        if len == w.bound {
            return;
        }
        for next in w.start..w.g.n() {
            if w.g.get(last, next).is_zero() {
                continue;
            }
            let e = &w.eps[last][next];
            let step: Vec<Fe> = if len % 2 == 1 {
                acc.iter().zip(e).map(|(&a, &b)| f.sub(a, b)).collect()
            } else {
                acc.iter().zip(e).map(|(&a, &b)| f.add(a, b)).collect()
            };
            extend(w, next, len + 1, &step);
        }
    }
    for s in 0..n {
        let mut w = Walk { g, eps: &eps, bound, start: s, found: &mut found };
        extend(&mut w, s, 1, &vec![Fe::ZERO; n]);
    }
    Subspace::from_rows(f, n, found.into_iter().collect())
}

/// `nu(G)` with `v` ranging over all even closed walks, computed exactly.
///
/// An even closed walk in `G` is a closed walk in the bipartite double cover
/// on `(vertex, parity)`, and `v` is the sum of an antisymmetric edge weight
/// along it. Its span is therefore spanned by the values on fundamental
/// cycles of a spanning forest of the cover.
pub fn nu_space(g: &LabeledGraph) -> Result<Subspace> {
    let f = g.field();
    let n = g.n();
    let mut rows = non_adjacent_products(g);
    // potential at cover node 2w + parity
    let mut pot: Vec<Option<Vec<Fe>>> = vec![None; 2 * n];
    let weight = |a: usize, b: usize, from_parity: usize| -> Vec<Fe> {
        let w = g.get(a, b);
        let winv = f.inv(w).expect("edge label is nonzero");
        let e = f.hadamard(g.row(a), g.row(b));
        // steps leaving an even position carry sign -1
        let c = if from_parity == 0 { f.neg(winv) } else { winv };
        e.into_iter().map(|x| f.mul(c, x)).collect()
    };
    for root in 0..2 * n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(vec![Fe::ZERO; n]);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(node) = queue.pop_front() {
            let (a, p) = (node / 2, node % 2);
            let pa = pot[node].clone().unwrap();
            for b in 0..n {
                if g.get(a, b).is_zero() {
                    continue;
                }
                let next = 2 * b + (1 - p);
                let w = weight(a, b, p);
                let reach: Vec<Fe> = pa.iter().zip(&w).map(|(&x, &y)| f.add(x, y)).collect();
                match &pot[next] {
                    None => {
                        pot[next] = Some(reach);
                        queue.push_back(next);
                    }
                    Some(pn) => rows.push(reach.iter().zip(pn).map(|(&x, &y)| f.sub(x, y)).collect()),
                }
            }
        }
    }
    Subspace::from_rows(f, n, rows)
}

/// Both sides of the bineighborhood characterization, for inspection.
#[derive(Debug, Clone)]
pub struct PenCheck {
    /// `{X : (X, Y, Z, T) in Lambda_0}`.
    pub projection: Subspace,
    /// Dot-product complement of `nu(G)` enumerated over even closed walks.
    pub nu_perp: Subspace,
    /// The same complement when only simple cycles are enumerated.
    pub simple_nu_perp: Subspace,
    /// `dim {phi in Lambda_0 : X = 0}`.
    pub fiber_dim: usize,
    pub has_odd_cycle: bool,
}

impl PenCheck {
    /// Projection equals `nu(G)^perp`, and extensions are unique when `G`
    /// has an odd cycle.
    pub fn holds(&self) -> bool {
        self.projection == self.nu_perp && (!self.has_odd_cycle || self.fiber_dim == 0)
    }

    /// Whether simple cycles alone already give the same span.
    pub fn simple_cycles_suffice(&self) -> bool {
        self.simple_nu_perp == self.nu_perp
    }
}

/// Closed walks up to length `2n` are enumerated, which covers every
/// fundamental cycle class for small graphs; the result is checked against
/// [`nu_space`].
pub fn pen_check(g: &LabeledGraph) -> Result<PenCheck> {
    let n = g.n();
    let l0 = lambda0_basis(g)?;
    let projection = l0.project(0..n)?;
    let walks = nu_space_closed_walks(g, 2 * n)?;
    if walks != nu_space(g)? {
        return Err(Error::InternalInvariantViolation(
            "closed-walk enumeration and the double-cover span disagree".into(),
        ));
    }
    let simple = nu_space_bruteforce(g, 2 * (n / 2))?;
    Ok(PenCheck {
        fiber_dim: l0.dim() - projection.dim(),
        projection,
        nu_perp: walks.orthogonal_complement(Form::Dot)?,
        simple_nu_perp: simple.orthogonal_complement(Form::Dot)?,
        has_odd_cycle: !g.is_bipartite(),
    })
}

/// [`check_theorem_pen`] with `nu(G)` taken from [`nu_space`] instead of
/// walk enumeration; usable on larger graphs.
pub fn check_theorem_pen_exact(g: &LabeledGraph) -> Result<bool> {
    let n = g.n();
    let l0 = lambda0_basis(g)?;
    let projection = l0.project(0..n)?;
    let unique = g.is_bipartite() || l0.dim() == projection.dim();
    Ok(unique && projection == nu_space(g)?.orthogonal_complement(Form::Dot)?)
}

/// The X-projection of `Lambda_0(G, G)` is `nu(G)^perp`.
pub fn check_theorem_pen(g: &LabeledGraph) -> Result<bool> {
    Ok(pen_check(g)?.holds())
}

/// Gram matrix of the determinant on `Lambda_0` in the given basis,
/// required to agree at every vertex.
fn det_gram(f: &Field, basis: &[PhiVector]) -> Result<Vec<Vec<Fe>>> {
    let m = basis.len();
    let n = basis.first().map_or(0, |b| b.n());
    let half = f.inv(f.from_int(2))?;
    let mut gram = vec![vec![Fe::ZERO; m]; m];
    for i in 0..m {
        for j in i..m {
            // det(a) + det(b) - det(a + b) = Psi(a, b) on Lambda_0
            let p = psi(f, &basis[i], &basis[j])?;
            let entries: Vec<Fe> = if i == j {
                det_phi(f, &basis[i])
            } else {
                p.iter().map(|&v| f.neg(f.mul(half, v))).collect()
            };
            let c = if n == 0 { Fe::ZERO } else { constant(&entries).ok_or(Error::DetNotConstant)? };
            gram[i][j] = c;
            gram[j][i] = c;
        }
    }
    Ok(gram)
}

/// `Lambda_0^0(G, G) = {phi in Lambda_0 : det phi = 0}` when it is a
/// subspace.
///
/// The determinant is a quadratic form on `Lambda_0`. Its zero set is the
/// radical plus the zeros of the induced non-degenerate form, so it is a
/// subspace exactly when that form is anisotropic: rank at most one, or
/// rank two with minus its discriminant a non-square.
pub fn lambda00(g: &LabeledGraph) -> Result<Subspace> {
    let (l00, _) = lambda00_with_rank(g)?;
    Ok(l00)
}

/// [`lambda00`] together with its codimension in `Lambda_0`.
pub fn lambda00_with_rank(g: &LabeledGraph) -> Result<(Subspace, usize)> {
    let f = g.field();
    let n = g.n();
    let l0 = lambda0_basis(g)?;
    let basis: Vec<PhiVector> = l0.basis().iter().map(|r| phi(r)).collect();
    let gram = det_gram(f, &basis)?;
    let m = basis.len();
    let radical = nullspace(f, &gram, m);
    let rank = m - radical.len();
    let linear = match rank {
        0 | 1 => true,
        2 => {
            // restrict to a complement of the radical and test -det
            let comp = complement_basis(f, &radical, m);
            let b = |u: &[Fe], v: &[Fe]| {
                let gv: Vec<Fe> = (0..m).map(|i| f.dot(&gram[i], v)).collect();
                f.dot(u, &gv)
            };
            let (u, v) = (&comp[0], &comp[1]);
            let disc = f.sub(f.mul(b(u, u), b(v, v)), f.square(b(u, v)));
            !f.is_square(f.neg(disc))
        }
        _ => false,
    };
    if !linear {
        return Err(Error::NotLinear);
    }
    let rows = radical
        .iter()
        .map(|c| {
            let mut acc = vec![Fe::ZERO; 4 * n];
            for (bi, &ci) in l0.basis().iter().zip(c) {
                for (a, &r) in acc.iter_mut().zip(bi) {
                    *a = f.add(*a, f.mul(ci, r));
                }
            }
            acc
        })
        .collect();
    Ok((Subspace::from_rows(f, 4 * n, rows)?, rank))
}

/// Unit vectors completing the rows of `sub` to a basis of `F^m`.
fn complement_basis(f: &Field, sub: &[Vec<Fe>], m: usize) -> Vec<Vec<Fe>> {
    let mut acc = Subspace::from_rows(f, m, sub.to_vec()).expect("lengths agree");
    let mut out = Vec::new();
    for i in 0..m {
        let mut e = vec![Fe::ZERO; m];
        e[i] = f.one();
        if !acc.contains(&e) {
            acc = acc.sum(&Subspace::from_rows(f, m, vec![e.clone()]).unwrap()).unwrap();
            out.push(e);
        }
    }
    out
}

/// A sample internal solution and the affine family it belongs to.
#[derive(Debug, Clone)]
pub struct SigmaSample {
    /// `(0, I, I, 0)`.
    pub witness: PhiVector,
    /// `Lambda_0^0`, when it is a subspace; every element plus the
    /// witness lies in `sigma(G, G)`.
    pub family: Option<Subspace>,
    /// Codimension of `family + witness` inside `Lambda(G, G)`.
    pub codim: Option<usize>,
}

pub fn sigma_sample(g: &LabeledGraph) -> Result<SigmaSample> {
    require_connected(g)?;
    let f = g.field();
    let witness = PhiVector::identity(f, g.n());
    let dim = big_lambda(g, g)?.dim();
    let (family, codim) = match lambda00(g) {
        Ok(s) => {
            let c = dim - s.dim();
            (Some(s), Some(c))
        }
        Err(Error::NotLinear) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(SigmaSample { witness, family, codim })
}

/// `x^T A x` over `F_q`.
pub fn quadratic_value(f: &Field, a: &[[Fe; 3]; 3], x: &[Fe; 3]) -> Fe {
    let mut s = Fe::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            s = f.add(s, f.mul(x[i], f.mul(a[i][j], x[j])));
        }
    }
    s
}

/// A nonzero `x` with `x^T A x = 0`.
///
/// Writes the form as `a x^2 + b y^2 + c z^2 + 2d xy + 2e xz + 2f yz`,
/// completes the square in `z` to reach `alpha x^2 + beta y^2 + 2 gamma xy =
/// t^2`, and with `y = 1` solves `s^2 - alpha t^2 = theta` by running `t`
/// over the field. Both sides take `(q + 1) / 2` values, so a solution exists.
pub fn isotropic_3x3(f: &Field, m: &[[Fe; 3]; 3]) -> Result<[Fe; 3]> {
    let half = f.inv(f.from_int(2))?;
    let sym = |i: usize, j: usize| f.mul(half, f.add(m[i][j], m[j][i]));
    let (a, b, c) = (sym(0, 0), sym(1, 1), sym(2, 2));
    let (d, e, g) = (sym(0, 1), sym(0, 2), sym(1, 2));
    let (zero, one) = (Fe::ZERO, f.one());
    if a.is_zero() {
        return Ok([one, zero, zero]);
    }
    if b.is_zero() {
        return Ok([zero, one, zero]);
    }
    if c.is_zero() {
        return Ok([zero, zero, one]);
    }
    let alpha = f.sub(f.square(e), f.mul(a, c));
    let beta = f.sub(f.square(g), f.mul(b, c));
    let gamma = f.sub(f.mul(e, g), f.mul(c, d));
    let (x, y, t) = if alpha.is_zero() {
        (one, zero, zero)
    } else {
        let theta = f.sub(f.square(gamma), f.mul(alpha, beta));
        let (s, t) = f
            .elements()
            .find_map(|t| f.sqrt(f.add(theta, f.mul(alpha, f.square(t)))).map(|s| (s, t)))
            .ok_or_else(|| Error::InternalInvariantViolation("no solution of s^2 - alpha t^2 = theta".into()))?;
        (f.div(f.sub(s, gamma), alpha)?, one, t)
    };
    // c z + e x + f y = t
    let z = f.div(f.sub(t, f.add(f.mul(e, x), f.mul(g, y))), c)?;
    let out = [x, y, z];
    if !quadratic_value(f, m, &out).is_zero() {
        return Err(Error::InternalInvariantViolation("isotropic vector check failed".into()));
    }
    Ok(out)
}

/// Summary of the internal-solution structure of one graph.
#[derive(Debug, Clone)]
pub struct InternalReport {
    pub field: Field,
    pub lambda_dim: usize,
    pub lambda0_dim: usize,
    pub lambda00_dim: Option<usize>,
    pub lambda00_codim: Option<usize>,
    pub sigma_sample: PhiVector,
    pub sigma_codim: Option<usize>,
    pub y_plus_z: Option<Vec<Fe>>,
    pub lemma_ai: bool,
    pub shift_structure: bool,
    pub det_constant: bool,
    pub psi_vanishes: Option<bool>,
    /// Walk enumeration for `n <= PEN_CHECK_MAX_N`, the double cover above.
    pub theorem_pen: bool,
}

/// Largest `n` for which [`analyze`] enumerates closed walks.
pub const PEN_CHECK_MAX_N: usize = 5;

pub fn analyze<R: Rng + ?Sized>(g: &LabeledGraph, samples: usize, rng: &mut R) -> Result<InternalReport> {
    require_connected(g)?;
    let f = g.field();
    let sys = big_lambda(g, g)?;
    let l0 = lambda0_basis(g)?;
    let y_plus_z = y_plus_z_values(g, samples, rng)?;
    let det_constant = check_det_constant(g, samples, rng)?;
    let l00 = if det_constant { lambda00_with_rank(g) } else { Err(Error::DetNotConstant) };
    let (lambda00_dim, lambda00_codim, psi_vanishes) = match &l00 {
        Ok((s, r)) => {
            let elems: Vec<PhiVector> = (0..samples.min(20)).map(|_| phi(&random_element(s, rng))).collect();
            let ok = elems
                .iter()
                .all(|a| elems.iter().all(|b| psi(f, a, b).map(|v| v.iter().all(|x| x.is_zero())).unwrap_or(false)));
            (Some(s.dim()), Some(*r), Some(ok))
        }
        Err(_) => (None, None, None),
    };
    let sigma = sigma_sample(g)?;
    let theorem_pen = if g.n() <= PEN_CHECK_MAX_N {
        check_theorem_pen(g)?
    } else {
        check_theorem_pen_exact(g)?
    };
    Ok(InternalReport {
        field: f.clone(),
        lambda_dim: sys.dim(),
        lambda0_dim: l0.dim(),
        lambda00_dim,
        lambda00_codim,
        sigma_sample: sigma.witness,
        sigma_codim: sigma.codim,
        lemma_ai: y_plus_z.is_some(),
        y_plus_z,
        shift_structure: check_shift_structure(g)?,
        det_constant,
        psi_vanishes,
        theorem_pen,
    })
}

impl InternalReport {
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let vals = |v: &[Fe]| v.iter().map(|&a| crate::io::scalar_value(f, a)).collect::<Vec<_>>();
        let s = &self.sigma_sample;
        json!({
            "lambda_dim": self.lambda_dim,
            "lambda0_dim": self.lambda0_dim,
            "lambda00_dim": self.lambda00_dim,
            "lambda00_codim": self.lambda00_codim,
            "sigma_sample": {"X": vals(&s.x), "Y": vals(&s.y), "Z": vals(&s.z), "T": vals(&s.t)},
            "sigma_codim": self.sigma_codim,
            "y_plus_z": self.y_plus_z.as_ref().map(|v| vals(v)),
            "checks": {
                "y_plus_z_constant": self.lemma_ai,
                "shift_structure": self.shift_structure,
                "det_constant": self.det_constant,
                "psi_vanishes_on_lambda00": self.psi_vanishes,
                "x_projection_is_nu_perp": self.theorem_pen,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_connected_graph, random_labels};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn graph(f: &Field, n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        let e: Vec<_> = edges.iter().map(|&(i, j)| (i, j, f.one())).collect();
        LabeledGraph::from_edges(f, n, &e).unwrap()
    }

    #[test]
    fn path_lambda0() {
        let f = f3();
        let p = graph(&f, 3, &[(0, 1), (1, 2)]);
        let l0 = lambda0_basis(&p).unwrap();
        assert!(l0.contains(&vec![Fe::ZERO; 12]));
        // independent count: every vector of F_3^12 against the raw constraints
        let mut count = 0u64;
        for code in 0..3u64.pow(12) {
            let mut c = code;
            let v: Vec<Fe> = (0..12)
                .map(|_| {
                    let d = f.element(c % 3).unwrap();
                    c /= 3;
                    d
                })
                .collect();
            let p4 = phi(&v);
            let yz = (0..3).all(|i| f.add(p4.y[i], p4.z[i]).is_zero());
            if yz && crate::lambda::big_lambda(&p, &p).unwrap().contains(&p4) {
                count += 1;
            }
        }
        assert_eq!(count, 3u64.pow(l0.dim() as u32));
        // X(1) is forced to zero by the non-adjacent pair (0, 2)
        assert!(l0.basis().iter().all(|r| r[1].is_zero()));
        assert!(check_shift_structure(&p).unwrap());
    }

    #[test]
    fn cycle_vectors() {
        let f = f3();
        let c4 = graph(&f, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        // g(0)g(1) = 0, so every term vanishes on C4
        assert_eq!(v_cycle(&c4, &[0, 1, 2, 3]).unwrap(), vec![Fe::ZERO; 4]);
        assert_eq!(even_simple_cycles(&c4, 4), vec![vec![0, 1, 2, 3]]);
        assert!(v_cycle(&c4, &[0, 2, 1, 3]).is_err());
        assert!(v_cycle(&c4, &[0, 1, 2]).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f7 = Field::prime(7).unwrap();
        let k4 = random_connected_graph(&f7, 4, 1.0, &mut rng);
        let base = v_cycle(&k4, &[0, 1, 2, 3]).unwrap();
        let odd_shift = v_cycle(&k4, &[1, 2, 3, 0]).unwrap();
        let even_shift = v_cycle(&k4, &[2, 3, 0, 1]).unwrap();
        let neg: Vec<Fe> = base.iter().map(|&a| f7.neg(a)).collect();
        assert_eq!(odd_shift, neg);
        assert_eq!(even_shift, base);
    }

    #[test]
    fn nu_examples() {
        let f = f3();
        let tri = graph(&f, 3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(nu_space_bruteforce(&tri, 4).unwrap().dim(), 0);
        assert!(check_theorem_pen(&tri).unwrap());
        assert_eq!(pen_check(&tri).unwrap().projection.dim(), 3);

        let p = graph(&f, 3, &[(0, 1), (1, 2)]);
        let nu = nu_space_bruteforce(&p, 2).unwrap();
        assert_eq!(nu.basis(), &[vec![Fe(0), Fe(1), Fe(0)]]);
        assert!(check_theorem_pen(&p).unwrap());

        let star = graph(&f, 4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(nu_space_bruteforce(&star, 4).unwrap().basis(), &[vec![Fe(1), Fe(0), Fe(0), Fe(0)]]);
        assert!(check_theorem_pen(&star).unwrap());

        // two triangles sharing vertex 0: the figure-eight walk is needed
        let bowtie = graph(&f, 5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]);
        let pb = pen_check(&bowtie).unwrap();
        assert!(pb.holds());
        assert!(!pb.simple_cycles_suffice());
        let eight = v_cycle(&bowtie, &[0, 1, 2, 0, 3, 4]).unwrap();
        assert!(nu_space(&bowtie).unwrap().contains(&eight));
        assert!(!nu_space_bruteforce(&bowtie, 4).unwrap().contains(&eight));

        let c4 = graph(&f, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let pc = pen_check(&c4).unwrap();
        assert!(pc.holds());
        assert!(!pc.has_odd_cycle);
    }

    #[test]
    fn det_and_lemma_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [3, 5, 7] {
            let f = Field::with_order(q).unwrap();
            for _ in 0..10 {
                let n = rng.gen_range(3..9);
                let g = random_connected_graph(&f, n, 0.3, &mut rng);
                assert!(check_lemma_ai(&g, 30, &mut rng).unwrap());
                assert!(check_det_constant(&g, 30, &mut rng).unwrap());
                assert!(check_shift_structure(&g).unwrap());
            }
        }
        let split = graph(&f3(), 4, &[(0, 1), (2, 3)]);
        assert!(lambda0_basis(&split).is_err());
    }

    #[test]
    fn lambda00_is_zero_set_when_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = f3();
        let mut checked = 0;
        for _ in 0..60 {
            let g = random_connected_graph(&f, rng.gen_range(3..6), 0.2, &mut rng);
            let l0 = lambda0_basis(&g).unwrap();
            // brute force over all of Lambda_0
            let zeros: Vec<Vec<Fe>> = all_elements(&l0)
                .into_iter()
                .filter(|v| det_phi(&f, &phi(v)).iter().all(|d| d.is_zero()))
                .collect();
            match lambda00(&g) {
                Ok(s) => {
                    assert_eq!(zeros.len() as u64, 3u64.pow(s.dim() as u32));
                    assert!(zeros.iter().all(|z| s.contains(z)));
                    checked += 1;
                }
                Err(Error::NotLinear) => {
                    let span = Subspace::from_rows(&f, l0.ambient(), zeros.clone()).unwrap();
                    assert!(zeros.len() as u64 != 3u64.pow(span.dim() as u32));
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(checked > 0);
    }

    fn all_elements(s: &Subspace) -> Vec<Vec<Fe>> {
        let f = s.field();
        let q = f.q();
        let mut out = Vec::new();
        let d = s.dim();
        for code in 0..q.pow(d as u32) {
            let mut c = code;
            let mut acc = vec![Fe::ZERO; s.ambient()];
            for row in s.basis() {
                let k = f.element(c % q).unwrap();
                c /= q;
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a = f.add(*a, f.mul(k, r));
                }
            }
            out.push(acc);
        }
        out
    }

    #[test]
    fn sigma_family_is_internal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = Field::prime(5).unwrap();
        for _ in 0..20 {
            let g = random_connected_graph(&f, rng.gen_range(3..8), 0.2, &mut rng);
            let s = sigma_sample(&g).unwrap();
            assert!(crate::decider::verify_witness(&g, &g, &s.witness));
            if let Some(fam) = &s.family {
                assert!(s.codim.unwrap() <= 5);
                for _ in 0..10 {
                    let p = phi(&random_element(fam, &mut rng)).add(&f, &s.witness).unwrap();
                    assert!(crate::decider::verify_witness(&g, &g, &p));
                }
            }
        }
    }

    #[test]
    fn isotropic_vectors() {
        let f = f3();
        let one = f.one();
        let id = [[one, Fe::ZERO, Fe::ZERO], [Fe::ZERO, one, Fe::ZERO], [Fe::ZERO, Fe::ZERO, one]];
        let x = isotropic_3x3(&f, &id).unwrap();
        assert!(quadratic_value(&f, &id, &x).is_zero() && x.iter().any(|a| !a.is_zero()));
        let mut m = id;
        m[0][0] = Fe::ZERO;
        assert_eq!(isotropic_3x3(&f, &m).unwrap(), [one, Fe::ZERO, Fe::ZERO]);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for q in [5, 7, 9, 25, 27] {
            let f = Field::with_order(q).unwrap();
            for _ in 0..200 {
                let mut m = [[Fe::ZERO; 3]; 3];
                for row in m.iter_mut() {
                    for a in row.iter_mut() {
                        *a = f.random(&mut rng);
                    }
                }
                let x = isotropic_3x3(&f, &m).unwrap();
                assert!(x.iter().any(|a| !a.is_zero()));
                assert!(quadratic_value(&f, &m, &x).is_zero());
            }
        }
    }

    #[test]
    fn report_serializes() {
        let f = f3();
        let tri = graph(&f, 3, &[(0, 1), (1, 2), (0, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = analyze(&tri, 20, &mut rng).unwrap();
        assert!(r.det_constant);
        let v = r.to_json();
        assert_eq!(v["checks"]["det_constant"], Value::Bool(true));
        let _ = random_labels(&f, 3, &mut rng);
    }
}
