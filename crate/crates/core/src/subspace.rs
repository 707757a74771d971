//! Gaussian elimination over `F_q` and canonical subspaces.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Reduce `rows` to reduced row-echelon form in place, drop zero rows and
/// return the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Fe>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        if inv != field.one() {
            for x in rows[rank][col..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let factor = row[col];
            if factor.is_zero() {
                continue;
            }
            let neg = field.neg(factor);
            for (x, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !pv.is_zero() {
                    *x = field.add(*x, field.mul(neg, pv));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{v : row . v = 0 for every row}` (standard dot product).
pub fn nullspace(field: &Field, rows: &[Vec<Fe>], ncols: usize) -> Vec<Vec<Fe>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(field, &mut reduced, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; ncols];
            v[free] = field.one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(field: &Field, m: &[Vec<Fe>]) -> Option<Vec<Vec<Fe>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Vec<Vec<Fe>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { Fe::ZERO }));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix product `a * b`.
pub fn mat_mul(field: &Field, a: &[Vec<Fe>], b: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![Fe::ZERO; cols];
            for (k, &x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o = field.add(*o, field.mul(x, y));
                }
            }
            out
        })
        .collect()
}

/// The bilinear forms used for orthogonal complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `u . v`
    Dot,
    /// `<(X, X'), (Y, Y')> = X.Y' - X'.Y` on `F_q^{2n}`.
    Symplectic,
    /// `<X,X'> - <Y,Y'> + <Z,Z'> - <T,T'>` on `F_q^{4n}`.
    Signed,
}

impl Form {
    /// The row vector `u * M` for this form's Gram matrix `M`, so that
    /// `form(u, v) = dot(u * M, v)`.
    pub fn gram_apply(self, field: &Field, u: &[Fe]) -> Result<Vec<Fe>> {
        let m = u.len();
        match self {
            Form::Dot => Ok(u.to_vec()),
            Form::Symplectic => {
                if m % 2 != 0 {
                    return Err(Error::DimensionMismatch { expected: m + 1, found: m });
                }
                let n = m / 2;
                let mut out: Vec<Fe> = u[n..].iter().map(|&a| field.neg(a)).collect();
                out.extend_from_slice(&u[..n]);
                Ok(out)
            }
            Form::Signed => {
                if m % 4 != 0 {
                    return Err(Error::DimensionMismatch { expected: m + 4 - m % 4, found: m });
                }
                let n = m / 4;
                Ok(u.iter()
                    .enumerate()
                    .map(|(i, &a)| if (i / n) % 2 == 1 { field.neg(a) } else { a })
                    .collect())
            }
        }
    }

    pub fn eval(self, field: &Field, u: &[Fe], v: &[Fe]) -> Result<Fe> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
        }
        Ok(field.dot(&self.gram_apply(field, u)?, v))
    }
}

/// A linear subspace of `F_q^m`, stored as its reduced row-echelon basis.
/// Equal subspaces have identical stored bases.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subspace(dim {} in F^{})", self.dim(), self.ambient)?;
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(|&a| self.field.format(a)).collect();
            writeln!(f, "  [{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Subspace {
    /// Span of `rows`, each of length `ambient`.
    pub fn from_rows(field: &Field, ambient: usize, rows: Vec<Vec<Fe>>) -> Result<Subspace> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: r.len() });
        }
        let mut rows = rows;
        let pivots = rref(field, &mut rows, ambient);
        Ok(Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots,
        })
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| {
                let mut r = vec![Fe::ZERO; ambient];
                r[i] = field.one();
                r
            })
            .collect();
        Subspace {
            field: field.clone(),
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The canonical basis rows.
    pub fn basis(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(neg, r));
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::from_rows(&self.field, self.ambient, rows)
    }

    /// `{v : form(w, v) = 0 for all w in self}`.
    pub fn orthogonal_complement(&self, form: Form) -> Result<Subspace> {
        let transformed = self
            .rows
            .iter()
            .map(|r| form.gram_apply(&self.field, r))
            .collect::<Result<Vec<_>>>()?;
        let null = nullspace(&self.field, &transformed, self.ambient);
        Subspace::from_rows(&self.field, self.ambient, null)
    }

    /// Image under `v -> v * m` where `m` is `ambient x cols`.
    pub fn map_rows(&self, cols: usize, f: impl Fn(&[Fe]) -> Vec<Fe>) -> Result<Subspace> {
        let rows = self.rows.iter().map(|r| f(r)).collect();
        Subspace::from_rows(&self.field, cols, rows)
    }

    /// Projection onto coordinates `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Result<Subspace> {
        let len = range.len();
        self.map_rows(len, |r| r[range.clone()].to_vec())
    }
}

/// Build a subspace from arbitrary rows.
pub fn echelonize(field: &Field, ambient: usize, rows: Vec<Vec<Fe>>) -> Result<Subspace> {
    Subspace::from_rows(field, ambient, rows)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> bool {
    a == b
}
