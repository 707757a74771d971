//! Exact arithmetic in `F_q`, `q = p^k` with `p` an odd prime.
//!
//! Elements are stored as a compact code (`Fe`) and all arithmetic goes
//! through a [`Field`] handle. An element of an extension field is a
//! coefficient vector `(c_0, .., c_{k-1})` over `Z_p`, constant term first.
//! The code is the base-`p` number whose most significant digit is `c_0`, so
//! ordering codes numerically is the same as ordering coefficient vectors
//! lexicographically. Every enumeration in the crate uses this order.
//!
//! [`FieldElement`] pairs a code with its field and checks that both operands
//! of a binary operation live in the same field. The graph and linear-algebra
//! code works on bare codes for speed.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported field order (exclusive).
pub const MAX_ORDER: u64 = 1 << 32;

/// Built-in irreducible moduli, constant term first.
const BUILTIN_MODULI: &[(u64, u32, &[u64])] = &[
    (3, 2, &[1, 0, 1]),    // x^2 + 1
    (5, 2, &[2, 0, 1]),    // x^2 + 2
    (3, 3, &[1, 2, 0, 1]), // x^3 + 2x + 1
    (7, 2, &[1, 0, 1]),    // x^2 + 1
];

/// Code of a field element. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters of a finite field: characteristic, degree and modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    /// Monic modulus, constant term first, `k + 1` entries. Empty when `k == 1`.
    modulus: Vec<u64>,
    q: u64,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// Shared handle to a [`FieldSpec`]; cheap to clone.
#[derive(Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
    one: Fe,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.k == 1 {
            write!(f, "F_{}", self.spec.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.spec.p, self.spec.k, self.spec.modulus)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p).
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

fn trim(poly: &mut Vec<u64>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

fn poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Remainder of `a` modulo `b` over `Z_p` (`b` nonzero, trimmed).
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = a.last().unwrap() * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            let idx = shift + i;
            a[idx] = (a[idx] + p - factor * c % p) % p;
        }
        trim(&mut a);
    }
    a
}

/// Returns `(quotient, remainder)` of `a / b` over `Z_p`.
fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![0u64; rem.len().saturating_sub(b.len()) + 1];
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() * lead_inv % p;
        quot[shift] = factor;
        for (i, &c) in b.iter().enumerate() {
            let idx = shift + i;
            rem[idx] = (rem[idx] + p - factor * c % p) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

impl Field {
    fn from_spec(spec: FieldSpec) -> Field {
        let one = if spec.k == 1 {
            Fe(1)
        } else {
            Fe(spec.p.pow(spec.k - 1) as u32)
        };
        Field {
            spec: Arc::new(spec),
            one,
        }
    }

    /// The prime field `Z_p`. Rejects `p = 2`, composites and `p >= 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_ORDER {
            return Err(Error::InvalidField(format!("p = {p} exceeds the supported range")));
        }
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::from_spec(FieldSpec {
            p,
            k: 1,
            modulus: Vec::new(),
            q: p,
        }))
    }

    /// The extension `Z_p[x] / (modulus)` of degree `k`.
    ///
    /// `modulus` lists `k + 1` coefficients, constant term first, and must be
    /// monic and irreducible. Degrees 1, 2 and 3 are supported. For `k == 1`
    /// the modulus is ignored.
    pub fn extension(p: u64, k: u32, modulus: &[u64]) -> Result<Field> {
        let base = Field::prime(p)?;
        if k == 1 {
            return Ok(base);
        }
        if !(2..=3).contains(&k) {
            return Err(Error::InvalidField(format!(
                "extension degree {k} unsupported (use 1, 2 or 3)"
            )));
        }
        let q = (p as u128).pow(k);
        if q >= MAX_ORDER as u128 {
            return Err(Error::InvalidField(format!("q = {p}^{k} exceeds the supported range")));
        }
        if modulus.len() != k as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, found {}",
                k + 1,
                modulus.len()
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficient {c} not in [0, {p})")));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        // A polynomial of degree 2 or 3 is irreducible iff it has no root.
        if let Some(r) = (0..p).find(|&x| poly_eval(modulus, x, p) == 0) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible (root {r})"
            )));
        }
        Ok(Field::from_spec(FieldSpec {
            p,
            k,
            modulus: modulus.to_vec(),
            q: q as u64,
        }))
    }

    /// Field of order `q`, using the built-in modulus table for `q` in
    /// `{9, 25, 27, 49}`.
    pub fn with_order(q: u64) -> Result<Field> {
        if q < 3 {
            return Err(Error::InvalidField(format!("no field of order {q} is supported")));
        }
        if is_prime(q) {
            return Field::prime(q);
        }
        for &(p, k, modulus) in BUILTIN_MODULI {
            if p.pow(k) == q {
                return Field::extension(p, k, modulus);
            }
        }
        Err(Error::InvalidField(format!(
            "q = {q} is not an odd prime and has no built-in modulus; supply one"
        )))
    }

    /// Construct from a `(p, k, modulus)` description. Without a modulus, the
    /// built-in table is consulted.
    pub fn from_parts(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Field> {
        match (k, modulus) {
            (1, _) => Field::prime(p),
            (_, Some(m)) => Field::extension(p, k, m),
            (_, None) => {
                let q = p
                    .checked_pow(k)
                    .ok_or_else(|| Error::InvalidField("field order overflows".into()))?;
                let field = Field::with_order(q)?;
                if field.p() != p {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                Ok(field)
            }
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn k(&self) -> u32 {
        self.spec.k
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.spec.k == 1
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        self.one
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        let r = n.rem_euclid(self.spec.p as i64) as u64;
        Fe((r * self.one.0 as u64) as u32)
    }

    /// Element with the given code; fails when `code >= q`.
    pub fn element(&self, code: u64) -> Result<Fe> {
        if code >= self.spec.q {
            return Err(Error::InvalidField(format!(
                "code {code} out of range for a field of order {}",
                self.spec.q
            )));
        }
        Ok(Fe(code as u32))
    }

    /// Element with coefficient vector `coeffs` (constant term first). Missing
    /// trailing coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        let k = self.spec.k as usize;
        if coeffs.len() > k {
            return Err(Error::InvalidField(format!(
                "{} coefficients given for a degree-{k} field",
                coeffs.len()
            )));
        }
        let p = self.spec.p;
        let mut code = 0u64;
        for i in 0..k {
            let c = coeffs.get(i).copied().unwrap_or(0);
            if c >= p {
                return Err(Error::InvalidField(format!("coefficient {c} not in [0, {p})")));
            }
            code = code * p + c;
        }
        Ok(Fe(code as u32))
    }

    /// Coefficient vector of length `k`, constant term first.
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        let k = self.spec.k as usize;
        let p = self.spec.p;
        let mut out = vec![0u64; k];
        let mut code = a.0 as u64;
        for slot in out.iter_mut().rev() {
            *slot = code % p;
            code /= p;
        }
        out
    }

    fn encode_poly(&self, poly: &[u64]) -> Fe {
        let k = self.spec.k as usize;
        let p = self.spec.p;
        let mut code = 0u64;
        for i in 0..k {
            code = code * p + poly.get(i).copied().unwrap_or(0);
        }
        Fe(code as u32)
    }

    fn decode_poly(&self, a: Fe) -> Vec<u64> {
        let mut v = self.coeffs(a);
        trim(&mut v);
        v
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.spec.p;
        if self.spec.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Fe(if s >= p { s - p } else { s } as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut code = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.k {
            let s = (x % p + y % p) % p;
            code += s * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Fe(code as u32)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return Fe(if a.0 == 0 { 0 } else { (p - a.0 as u64) as u32 });
        }
        let mut x = a.0 as u64;
        let mut code = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.k {
            let d = x % p;
            code += ((p - d) % p) * place;
            place *= p;
            x /= p;
        }
        Fe(code as u32)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.spec.k == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.spec.p) as u32);
        }
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let p = self.spec.p;
        let prod = poly_mul(&self.decode_poly(a), &self.decode_poly(b), p);
        self.encode_poly(&poly_rem(prod, &self.spec.modulus, p))
    }

    /// Multiplicative inverse; `DivisionByZero` for zero.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.spec.p;
        if self.spec.k == 1 {
            return Ok(Fe(mod_inv(a.0 as u64, p) as u32));
        }
        // Extended Euclid on (modulus, a): track s with s * a == r (mod modulus).
        let mut r0 = self.spec.modulus.clone();
        let mut r1 = self.decode_poly(a);
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because the modulus is irreducible.
        let c_inv = mod_inv(r0[0], p);
        let inv: Vec<u64> = s0.iter().map(|&c| c * c_inv % p).collect();
        Ok(self.encode_poly(&poly_rem(inv, &self.spec.modulus, p)))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// All `q` elements in canonical order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.spec.q).map(|c| Fe(c as u32))
    }

    /// The `q - 1` nonzero elements in canonical order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.spec.q).map(|c| Fe(c as u32))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.spec.q) as u32)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.spec.q) as u32)
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: Fe) -> bool {
        a.is_zero() || self.pow(a, (self.spec.q - 1) / 2) == self.one
    }

    /// A square root of `a`, if one exists (Tonelli-Shanks).
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        let q = self.spec.q;
        let mut odd = q - 1;
        let mut s = 0u32;
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let nonresidue = self.nonzero_elements().find(|&z| !self.is_square(z))?;
        let mut m = s;
        let mut c = self.pow(nonresidue, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, (odd + 1) / 2);
        while t != self.one {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != self.one {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Wrap a code as a checked [`FieldElement`].
    pub fn elem(&self, a: Fe) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: a,
        }
    }

    /// Human-readable rendering: a residue for prime fields, a polynomial in
    /// `x` otherwise.
    pub fn format(&self, a: Fe) -> String {
        if self.spec.k == 1 {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, u: &[Fe], v: &[Fe]) -> Fe {
        u.iter()
            .zip(v)
            .fold(Fe::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    /// Componentwise product.
    pub fn hadamard(&self, u: &[Fe], v: &[Fe]) -> Vec<Fe> {
        u.iter().zip(v).map(|(&a, &b)| self.mul(a, b)).collect()
    }
}

/// A field element bound to its field. Binary operations check that both
/// operands come from the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Fe,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.value)
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Fe) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// All elements of `field` in canonical order, as checked elements.
pub fn enumerate(field: &Field) -> Vec<FieldElement> {
    field.elements().map(|a| field.elem(a)).collect()
}
