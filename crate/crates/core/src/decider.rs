//! Deciding local equivalence.
//!
//! For connected graphs on more than two vertices the witness set
//! `sigma(G, H) = {phi in Lambda(G, H) : det phi = I}`, when nonempty,
//! contains an affine subspace of codimension at most five. Such a subspace
//! always meets the span of some five canonical basis vectors of
//! `Lambda(G, H)`, so searching combinations of at most five basis vectors is
//! complete.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::graph::{LabeledGraph, LocalOp};
use crate::lambda::{big_lambda, PhiVector};

/// Largest number of basis vectors combined by the search.
pub const MAX_SUPPORT: usize = 5;

/// Outcome of an equivalence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Equivalent {
        witness: PhiVector,
        ops: Option<Vec<LocalOp>>,
    },
    NotEquivalent {
        certificate: String,
    },
}

impl Decision {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Decision::Equivalent { .. })
    }

    pub fn witness(&self) -> Option<&PhiVector> {
        match self {
            Decision::Equivalent { witness, .. } => Some(witness),
            Decision::NotEquivalent { .. } => None,
        }
    }
}

/// Search configuration.
#[derive(Debug, Clone)]
pub struct DecideOptions {
    /// Visit candidates in the canonical order and return the first hit.
    pub deterministic: bool,
    /// Worker threads; `1` runs on the calling thread.
    pub workers: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            deterministic: true,
            workers: 1,
        }
    }
}

/// Counters gathered while deciding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// `dim Lambda(G, H)` for each searched component, in component order.
    pub dims: Vec<usize>,
    /// Number of candidate combinations whose determinant was examined.
    pub checks: u64,
    /// True when a closed form answered without searching.
    pub closed_form: bool,
}

fn not_equivalent(reason: &str) -> Decision {
    Decision::NotEquivalent {
        certificate: reason.to_string(),
    }
}

const SEARCH_CERTIFICATE: &str =
    "no phi in Lambda(G,H) with det phi = I among all combinations of at most five basis vectors";

fn check_pair(g: &LabeledGraph, h: &LabeledGraph) -> Result<()> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch);
    }
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: h.n(),
        });
    }
    Ok(())
}

/// Decide two connected graphs with the default options.
pub fn decide(g: &LabeledGraph, h: &LabeledGraph) -> Result<Decision> {
    decide_with(g, h, &DecideOptions::default()).map(|(d, _)| d)
}

/// Decide two connected graphs (any graphs when `n <= 2`).
pub fn decide_with(g: &LabeledGraph, h: &LabeledGraph, opts: &DecideOptions) -> Result<(Decision, SearchStats)> {
    check_pair(g, h)?;
    let f = g.field();
    let n = g.n();
    if n <= 2 {
        let stats = SearchStats {
            closed_form: true,
            ..SearchStats::default()
        };
        return Ok((decide_small(f, g, h), stats));
    }
    if !g.is_connected() || !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let sys = big_lambda(g, h)?;
    let basis = sys.basis();
    let mut stats = SearchStats {
        dims: vec![basis.len()],
        ..SearchStats::default()
    };
    let search = Search::new(f, n, &basis);
    let found = search.run(opts)?;
    stats.checks = search.checks.load(Ordering::Relaxed);
    let decision = match found {
        Some(witness) => Decision::Equivalent { witness, ops: None },
        None => not_equivalent(SEARCH_CERTIFICATE),
    };
    Ok((decision, stats))
}

fn decide_small(f: &Field, g: &LabeledGraph, h: &LabeledGraph) -> Decision {
    let n = g.n();
    if n < 2 {
        return Decision::Equivalent {
            witness: PhiVector::identity(f, n),
            ops: None,
        };
    }
    let (a, b) = (g.get(0, 1), h.get(0, 1));
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Decision::Equivalent {
            witness: PhiVector::identity(f, n),
            ops: None,
        },
        (false, false) => {
            // Scaling vertex 0 by s = h/g: Y = f_{s,0}, Z = f_{1/s,0}.
            let s = f.div(b, a).expect("label is nonzero");
            let mut w = PhiVector::identity(f, n);
            w.y[0] = s;
            w.z[0] = f.inv(s).expect("ratio is nonzero");
            Decision::Equivalent { witness: w, ops: None }
        }
        _ => not_equivalent("exactly one of the two graphs has an edge"),
    }
}

/// Decide arbitrary graphs component by component.
pub fn decide_general(g: &LabeledGraph, h: &LabeledGraph) -> Result<Decision> {
    decide_general_with(g, h, &DecideOptions::default()).map(|(d, _)| d)
}

pub fn decide_general_with(
    g: &LabeledGraph,
    h: &LabeledGraph,
    opts: &DecideOptions,
) -> Result<(Decision, SearchStats)> {
    check_pair(g, h)?;
    let f = g.field();
    let n = g.n();
    if n <= 2 {
        return decide_with(g, h, opts);
    }
    let comps = g.components();
    let mut stats = SearchStats::default();
    if comps != h.components() {
        stats.closed_form = true;
        return Ok((not_equivalent("the connected components differ"), stats));
    }
    let mut witness = PhiVector::identity(f, n);
    for comp in &comps {
        if comp.len() == 1 {
            continue;
        }
        let (d, s) = decide_with(&g.induced(comp)?, &h.induced(comp)?, opts)?;
        stats.dims.extend(s.dims);
        stats.checks += s.checks;
        stats.closed_form |= s.closed_form;
        match d {
            Decision::NotEquivalent { .. } => {
                let msg = format!("component {comp:?} is not equivalent: {}", certificate(&d));
                return Ok((not_equivalent(&msg), stats));
            }
            Decision::Equivalent { witness: w, .. } => {
                for (k, &v) in comp.iter().enumerate() {
                    witness.x[v] = w.x[k];
                    witness.y[v] = w.y[k];
                    witness.z[v] = w.z[k];
                    witness.t[v] = w.t[k];
                }
            }
        }
    }
    Ok((Decision::Equivalent { witness, ops: None }, stats))
}

fn certificate(d: &Decision) -> &str {
    match d {
        Decision::NotEquivalent { certificate } => certificate,
        Decision::Equivalent { .. } => "",
    }
}

/// True iff `phi` satisfies every pair constraint and `det phi = I`.
pub fn verify_witness(g: &LabeledGraph, h: &LabeledGraph, phi: &PhiVector) -> bool {
    if g.field() != h.field() || g.n() != h.n() || phi.n() != g.n() {
        return false;
    }
    let f = g.field();
    let n = g.n();
    if crate::lambda::det_phi(f, phi).iter().any(|&d| d != f.one()) {
        return false;
    }
    for i in 0..n {
        let gi = g.row(i);
        // X * g(i), reused for every j
        let xg = f.hadamard(&phi.x, gi);
        for j in 0..n {
            let hj = h.row(j);
            let mut s = f.dot(&xg, hj);
            s = f.sub(s, f.mul(phi.y[j], gi[j]));
            s = f.add(s, f.mul(phi.z[i], hj[i]));
            if i == j {
                s = f.sub(s, phi.t[i]);
            }
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Search over combinations of canonical basis vectors.
struct Search<'a> {
    field: &'a Field,
    n: usize,
    basis: &'a [PhiVector],
    nonzero: Vec<Fe>,
    checks: AtomicU64,
}

impl<'a> Search<'a> {
    fn new(field: &'a Field, n: usize, basis: &'a [PhiVector]) -> Search<'a> {
        Search {
            field,
            n,
            basis,
            nonzero: field.nonzero_elements().collect(),
            checks: AtomicU64::new(0),
        }
    }

    /// Supports are visited by increasing size, subsets in lexicographic
    /// order, nonzero coefficient tuples in canonical field order. Together
    /// they cover every nonzero combination of at most five basis vectors.
    fn run(&self, opts: &DecideOptions) -> Result<Option<PhiVector>> {
        let d = self.basis.len();
        let k = d.min(MAX_SUPPORT);
        if opts.workers <= 1 {
            for s in 1..=k {
                for first in 0..d {
                    if let Some(phi) = self.scan_from(first, s) {
                        return Ok(Some(phi));
                    }
                }
            }
            return Ok(None);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        Ok(pool.install(|| {
            for s in 1..=k {
                let hit = if opts.deterministic {
                    (0..d).into_par_iter().find_map_first(|first| self.scan_from(first, s))
                } else {
                    (0..d).into_par_iter().find_map_any(|first| self.scan_from(first, s))
                };
                if hit.is_some() {
                    return hit;
                }
            }
            None
        }))
    }

    /// All subsets of size `s` whose smallest index is `first`.
    fn scan_from(&self, first: usize, s: usize) -> Option<PhiVector> {
        let d = self.basis.len();
        if first + s > d {
            return None;
        }
        let mut idx: Vec<usize> = (first..first + s).collect();
        loop {
            if let Some(phi) = self.scan_coefficients(&idx) {
                return Some(phi);
            }
            // next subset with idx[0] fixed
            let mut p = s;
            loop {
                if p <= 1 {
                    return None;
                }
                p -= 1;
                if idx[p] < d - (s - p) {
                    idx[p] += 1;
                    for r in p + 1..s {
                        idx[r] = idx[r - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn scan_coefficients(&self, idx: &[usize]) -> Option<PhiVector> {
        let s = idx.len();
        let m = self.nonzero.len();
        let mut ctr = vec![0usize; s];
        let mut coeffs = vec![self.nonzero[0]; s];
        let mut local = 0u64;
        let result = loop {
            local += 1;
            if self.det_is_one(idx, &coeffs) {
                break Some(self.combine(idx, &coeffs));
            }
            // odometer, last position fastest
            let mut p = s;
            let mut done = true;
            while p > 0 {
                p -= 1;
                ctr[p] += 1;
                if ctr[p] < m {
                    coeffs[p] = self.nonzero[ctr[p]];
                    done = false;
                    break;
                }
                ctr[p] = 0;
                coeffs[p] = self.nonzero[0];
            }
            if done {
                break None;
            }
        };
        self.checks.fetch_add(local, Ordering::Relaxed);
        result
    }

    fn det_is_one(&self, idx: &[usize], coeffs: &[Fe]) -> bool {
        let f = self.field;
        let one = f.one();
        (0..self.n).all(|v| {
            let (mut x, mut y, mut z, mut t) = (Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ZERO);
            for (&j, &c) in idx.iter().zip(coeffs) {
                let b = &self.basis[j];
                x = f.add(x, f.mul(c, b.x[v]));
                y = f.add(y, f.mul(c, b.y[v]));
                z = f.add(z, f.mul(c, b.z[v]));
                t = f.add(t, f.mul(c, b.t[v]));
            }
            f.sub(f.mul(y, z), f.mul(x, t)) == one
        })
    }

    fn combine(&self, idx: &[usize], coeffs: &[Fe]) -> PhiVector {
        let mut acc = PhiVector::zero(self.n);
        for (&j, &c) in idx.iter().zip(coeffs) {
            acc = acc
                .add(self.field, &self.basis[j].scale(self.field, c))
                .expect("same length");
        }
        acc
    }
}
