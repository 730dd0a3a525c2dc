//! Prime fields `F_p` and their extensions `F_{p^m}`.
//!
//! An extension field is presented as `F_p[u] / (f(u))` where `f` is the
//! lexicographically smallest monic irreducible polynomial of degree `m`
//! (coefficients compared constant term first). Elements are dense
//! coordinate vectors in the power basis `1, u, ..., u^{m-1}`.
//!
//! Every element also has an integer index in `0..p^m`, the base-`p` number
//! whose most significant digit is the constant coordinate. Enumeration walks
//! indices in increasing order, so the field is listed in lexicographic
//! coordinate order starting from zero.

use std::fmt;

use crate::error::{check_cap, Error, Result, ENUMERATION_CAP};

/// Trial-division primality test; characteristics here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Quadratic character of the prime field (Legendre symbol), by Euler's criterion.
pub fn legendre(value: u32, p: u32) -> i32 {
    let v = u64::from(value) % u64::from(p);
    if v == 0 {
        return 0;
    }
    match pow_mod(v, (u64::from(p) - 1) / 2, u64::from(p)) {
        1 => 1,
        _ => -1,
    }
}

/// Distinct prime factors of `n`.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A residue modulo `p`, always reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeElement(u32);

impl PrimeElement {
    pub fn new(value: i64, p: u32) -> Self {
        PrimeElement(value.rem_euclid(i64::from(p)) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for PrimeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `F_{p^m}`: coordinates in the power basis, lowest power first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    coords: Vec<u32>,
}

impl FieldElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Polynomials over `F_p`, coefficient vectors lowest degree first.
mod poly {
    use super::pow_mod;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let p = u64::from(p);
        let mut r: Vec<u64> = a.iter().map(|&c| u64::from(c)).collect();
        let df = f.len() - 1;
        let lead_inv = pow_mod(u64::from(f[df]), p - 2, p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for (j, &fj) in f.iter().enumerate() {
                    let k = top - df + j;
                    r[k] = (r[k] + p - c * u64::from(fj) % p) % p;
                }
            }
            r.pop();
        }
        trim(r.into_iter().map(|c| c as u32).collect())
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p64 = u64::from(p);
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % p64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow_mod_poly(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut base = rem(base, f, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), f, p);
            }
            base = rem(&mul(&base, &base, p), f, p);
            exp >>= 1;
        }
        acc
    }

    /// Ben-Or: a monic `f` of degree `m` is irreducible iff
    /// `gcd(f, x^{p^k} - x) = 1` for every `1 <= k <= m/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut frob = x.clone();
        for _ in 1..=m / 2 {
            frob = pow_mod_poly(&frob, u64::from(p), f, p);
            let g = gcd(f, &sub(&frob, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

pub use poly::is_irreducible as is_irreducible_poly;

/// The ambient field `F_{p^m}` with a fixed presentation.
///
/// Immutable after construction; share it freely between threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    order: u64,
    /// `Tr(u^k)` for `k` in `0..2m-1`.
    power_traces: Vec<u32>,
}

impl FieldContext {
    /// Builds `F_{p^m}` over the smallest monic irreducible of degree `m`.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        let (p, order) = validate_params(p, m)?;
        let modulus = smallest_irreducible(p, m);
        Ok(Self::assemble(p, m, modulus, order))
    }

    /// Builds `F_{p^m}` over a caller-supplied monic modulus (low-to-high, length `m + 1`).
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::param("modulus must have degree at least 1"));
        }
        let m = modulus.len() - 1;
        let (p, order) = validate_params(p, m)?;
        if modulus[m] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::param(
                "modulus must be monic with coefficients in [0, p)",
            ));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::param("modulus is reducible"));
        }
        Ok(Self::assemble(p, m, modulus, order))
    }

    fn assemble(p: u32, m: usize, modulus: Vec<u32>, order: u64) -> Self {
        let mut ctx = FieldContext {
            p,
            m,
            modulus,
            order,
            power_traces: Vec::new(),
        };
        let u = ctx.generator_root();
        let mut power = ctx.one();
        let mut traces = Vec::with_capacity(2 * m - 1);
        for _ in 0..(2 * m - 1) {
            traces.push(ctx.trace_by_frobenius(&power).value());
            power = ctx.mul(&power, &u);
        }
        ctx.power_traces = traces;
        ctx
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The defining polynomial, lowest degree first (monic, length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coords: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.embed_prime(PrimeElement(1))
    }

    /// The class of `u` in `F_p[u]/(f)`. For `m = 1` and `f = x` this is zero.
    pub fn generator_root(&self) -> FieldElement {
        if self.m == 1 {
            // u is the root of the linear modulus x + c0
            return FieldElement {
                coords: vec![(self.p - self.modulus[0]) % self.p],
            };
        }
        let mut coords = vec![0; self.m];
        coords[1] = 1;
        FieldElement { coords }
    }

    pub fn element(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.m {
            return Err(Error::param(format!(
                "expected {} coordinates, got {}",
                self.m,
                coords.len()
            )));
        }
        Ok(FieldElement {
            coords: coords.iter().map(|&c| c % self.p).collect(),
        })
    }

    /// Embeds a prime-field residue as a constant.
    pub fn embed_prime(&self, v: PrimeElement) -> FieldElement {
        let mut coords = vec![0; self.m];
        coords[0] = v.0 % self.p;
        FieldElement { coords }
    }

    pub fn prime(&self, value: i64) -> PrimeElement {
        PrimeElement::new(value, self.p)
    }

    pub fn from_index(&self, mut index: u64) -> FieldElement {
        let p = u64::from(self.p);
        let mut coords = vec![0; self.m];
        for c in coords.iter_mut().rev() {
            *c = (index % p) as u32;
            index /= p;
        }
        FieldElement { coords }
    }

    pub fn index_of(&self, x: &FieldElement) -> u64 {
        let p = u64::from(self.p);
        x.coords.iter().fold(0, |acc, &c| acc * p + u64::from(c))
    }

    /// All `p^m` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    /// Nonzero elements in index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.order).map(move |i| self.from_index(i))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), x)
    }

    /// Multiplies by a prime-field scalar.
    pub fn scale(&self, x: &FieldElement, c: PrimeElement) -> FieldElement {
        let p = u64::from(self.p);
        FieldElement {
            coords: x
                .coords
                .iter()
                .map(|&a| (u64::from(a) * u64::from(c.0) % p) as u32)
                .collect(),
        }
    }

    /// Schoolbook product followed by reduction modulo the monic modulus.
    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let m = self.m;
        let p = u64::from(self.p);
        let mut t = vec![0u64; 2 * m - 1];
        for (i, &a) in x.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coords.iter().enumerate() {
                t[i + j] = (t[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        for deg in (m..2 * m - 1).rev() {
            let c = t[deg];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let k = deg - m + j;
                t[k] = (t[k] + p - c * u64::from(self.modulus[j]) % p) % p;
            }
        }
        t.truncate(m);
        FieldElement {
            coords: t.into_iter().map(|c| c as u32).collect(),
        }
    }

    pub fn square(&self, x: &FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    pub fn pow(&self, x: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `x^{q-2}`; `None` at zero.
    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            None
        } else {
            Some(self.pow(x, self.order - 2))
        }
    }

    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        self.pow(x, u64::from(self.p))
    }

    /// `sum_{i<m} x^{p^i}`, evaluated literally. Used to seed the linear form
    /// behind [`FieldContext::trace`] and as its independent check.
    pub fn trace_by_frobenius(&self, x: &FieldElement) -> PrimeElement {
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..self.m {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        debug_assert!(
            acc.coords[1..].iter().all(|&c| c == 0),
            "trace left the prime subfield"
        );
        PrimeElement(acc.coords[0])
    }

    /// Absolute trace to `F_p`, as the linear form `sum_i x_i Tr(u^i)`.
    pub fn trace(&self, x: &FieldElement) -> PrimeElement {
        let p = u64::from(self.p);
        let s = x
            .coords
            .iter()
            .zip(&self.power_traces)
            .fold(0u64, |acc, (&c, &t)| {
                (acc + u64::from(c) * u64::from(t)) % p
            });
        PrimeElement(s as u32)
    }

    /// Coefficients `c_i = Tr(a u^i)`, so that `Tr(a x) = sum_i c_i x_i`.
    pub fn trace_functional(&self, a: &FieldElement) -> Vec<u32> {
        let p = u64::from(self.p);
        (0..self.m)
            .map(|i| {
                let s = a.coords.iter().enumerate().fold(0u64, |acc, (j, &c)| {
                    (acc + u64::from(c) * u64::from(self.power_traces[i + j])) % p
                });
                s as u32
            })
            .collect()
    }

    /// `Tr(x^2)`, evaluated through the trace Gram matrix `Tr(u^{i+j})`.
    pub fn square_trace(&self, x: &FieldElement) -> PrimeElement {
        let p = u64::from(self.p);
        let mut s = 0u64;
        for (i, &a) in x.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in x.coords.iter().enumerate() {
                s = (s + u64::from(a) * u64::from(b) % p * u64::from(self.power_traces[i + j])) % p;
            }
        }
        PrimeElement(s as u32)
    }

    /// Quadratic character `eta`, as `x^{(q-1)/2}` mapped into `{-1, 0, 1}`.
    pub fn quadratic_character(&self, x: &FieldElement) -> i32 {
        if x.is_zero() {
            return 0;
        }
        let r = self.pow(x, (self.order - 1) / 2);
        if r == self.one() {
            1
        } else {
            debug_assert_eq!(r, self.neg(&self.one()));
            -1
        }
    }

    /// A generator of the multiplicative group; the first by index.
    pub fn primitive_element(&self) -> FieldElement {
        let group = self.order - 1;
        let factors = prime_factors(group);
        let one = self.one();
        self.nonzero_elements()
            .find(|g| factors.iter().all(|&r| self.pow(g, group / r) != one))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// `eta` for every element, indexed by [`FieldContext::index_of`].
    ///
    /// Walks the powers of a primitive element, so each value costs one
    /// multiplication instead of an exponentiation.
    pub fn quadratic_character_table(&self) -> Result<Vec<i8>> {
        check_cap(self.order, ENUMERATION_CAP)?;
        let g = self.primitive_element();
        let mut table = vec![0i8; self.order as usize];
        let mut cur = self.one();
        for k in 0..self.order - 1 {
            table[self.index_of(&cur) as usize] = if k % 2 == 0 { 1 } else { -1 };
            cur = self.mul(&cur, &g);
        }
        Ok(table)
    }

    /// `Tr(x^2)` for every element, indexed by [`FieldContext::index_of`].
    pub fn square_trace_table(&self) -> Result<Vec<u32>> {
        check_cap(self.order, ENUMERATION_CAP)?;
        Ok(self.elements().map(|x| self.square_trace(&x).0).collect())
    }
}

fn validate_params(p: u64, m: usize) -> Result<(u32, u64)> {
    if p == 2 || !is_prime(p) {
        return Err(Error::param("p must be an odd prime"));
    }
    if m < 1 {
        return Err(Error::param("m must be at least 1"));
    }
    let p = u32::try_from(p).map_err(|_| Error::param("p is too large"))?;
    let order = u64::from(p)
        .checked_pow(m as u32)
        .filter(|&q| q < (1 << 53))
        .ok_or_else(|| Error::param("p^m is too large"))?;
    Ok((p, order))
}

/// Lexicographically smallest monic irreducible of degree `m`, constant term compared first.
fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let mut lower = vec![0u32; m];
    if m > 1 {
        // every f with f(0) = 0 is divisible by x
        lower[0] = 1;
    }
    loop {
        let mut f = lower.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
        // odometer with the constant term most significant
        let mut k = m;
        loop {
            k -= 1;
            lower[k] += 1;
            if lower[k] < p {
                break;
            }
            lower[k] = 0;
            assert!(k > 0, "irreducible polynomials exist in every degree");
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod ", self.p, self.m)?;
        let mut first = true;
        for (k, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldContext {
        FieldContext::new(3, 2).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldContext::new(4, 2), Err(Error::Param(_))));
        assert!(matches!(FieldContext::new(2, 3), Err(Error::Param(_))));
        assert!(matches!(FieldContext::new(9, 1), Err(Error::Param(_))));
        assert!(matches!(FieldContext::new(3, 0), Err(Error::Param(_))));
        assert!(matches!(
            FieldContext::with_modulus(3, vec![0, 0, 1]),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let ctx = FieldContext::new(3, 1).unwrap();
        assert_eq!(ctx.modulus(), &[0, 1]);
        assert_eq!(ctx.order(), 3);
    }

    #[test]
    fn smallest_quadratic_over_f3() {
        // x^2 and x^2 + x have the root 0; x^2 + 1 has no root mod 3
        assert_eq!(f9().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn degree_four_over_f5_has_no_small_factor() {
        let ctx = FieldContext::new(5, 4).unwrap();
        let f = ctx.modulus().to_vec();
        // every monic divisor of degree 1 or 2
        for d in 1..=2usize {
            for idx in 0..5u32.pow(d as u32) {
                let mut g: Vec<u32> = (0..d).map(|k| idx / 5u32.pow(k as u32) % 5).collect();
                g.push(1);
                assert!(!poly::rem(&f, &g, 5).is_empty(), "{g:?} divides {f:?}");
            }
        }
    }

    #[test]
    fn trace_examples() {
        let ctx = f9();
        assert_eq!(ctx.trace(&ctx.zero()).value(), 0);
        // Tr(a + bu) = 2a under u^2 = -1
        for a in 0..3 {
            for b in 0..3 {
                let x = ctx.element(&[a, b]).unwrap();
                assert_eq!(ctx.trace(&x).value(), 2 * a % 3);
            }
        }
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(f3.trace(&f3.element(&[2]).unwrap()).value(), 2);
    }

    #[test]
    fn trace_linear_form_matches_frobenius() {
        for (p, m) in [(3, 1), (3, 3), (5, 2), (7, 2), (3, 4)] {
            let ctx = FieldContext::new(p, m).unwrap();
            for x in ctx.elements() {
                assert_eq!(ctx.trace(&x), ctx.trace_by_frobenius(&x));
                assert_eq!(ctx.square_trace(&x), ctx.trace(&ctx.square(&x)));
            }
        }
    }

    #[test]
    fn quadratic_character_examples() {
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(f3.quadratic_character(&f3.element(&[1]).unwrap()), 1);
        assert_eq!(f3.quadratic_character(&f3.element(&[2]).unwrap()), -1);
        let ctx = f9();
        let g = ctx.primitive_element();
        assert_eq!(ctx.quadratic_character(&g), -1);
        assert_eq!(ctx.quadratic_character(&ctx.square(&g)), 1);
        assert_eq!(ctx.quadratic_character(&ctx.zero()), 0);
    }

    #[test]
    fn character_table_matches_exponentiation() {
        for (p, m) in [(3, 2), (5, 3), (7, 2), (11, 1)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let table = ctx.quadratic_character_table().unwrap();
            for x in ctx.elements() {
                assert_eq!(
                    i32::from(table[ctx.index_of(&x) as usize]),
                    ctx.quadratic_character(&x)
                );
            }
        }
    }

    #[test]
    fn enumeration_order_and_cardinality() {
        let f3 = FieldContext::new(3, 1).unwrap();
        let got: Vec<u32> = f3.elements().map(|x| x.coords()[0]).collect();
        assert_eq!(got, vec![0, 1, 2]);
        let ctx = f9();
        let all: Vec<_> = ctx.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all[0].is_zero());
        let ctx = FieldContext::new(5, 4).unwrap();
        let set: std::collections::HashSet<_> = ctx.elements().collect();
        assert_eq!(set.len(), 625);
        for (i, x) in ctx.elements().enumerate().take(50) {
            assert_eq!(ctx.index_of(&x), i as u64);
        }
    }

    #[test]
    fn embedding_of_prime_residues() {
        let ctx = f9();
        assert!(ctx.embed_prime(PrimeElement(0)).is_zero());
        assert_eq!(ctx.embed_prime(PrimeElement(1)), ctx.one());
        let ctx = FieldContext::new(5, 4).unwrap();
        let e = ctx.embed_prime(ctx.prime(3));
        assert_ne!(ctx.add(&e, &e), e);
        // Tr(v^2) = m v^2 for prime-field v
        assert_eq!(ctx.trace(&ctx.square(&e)), ctx.prime(4 * 9));
    }

    #[test]
    fn trace_is_balanced() {
        for (p, m) in [(3, 3), (5, 2), (7, 3)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let mut hist = vec![0u64; p as usize];
            for x in ctx.elements() {
                hist[ctx.trace(&x).value() as usize] += 1;
            }
            let fiber = ctx.order() / p;
            assert!(hist.iter().all(|&h| h == fiber), "{hist:?}");
        }
    }

    #[test]
    fn trace_additive_exhaustive() {
        for (p, m) in [(3, 2), (3, 4), (5, 2), (7, 2)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let all: Vec<_> = ctx.elements().collect();
            for x in &all {
                for y in &all {
                    let lhs = ctx.trace(&ctx.add(x, y)).value();
                    let rhs = (ctx.trace(x).value() + ctx.trace(y).value()) % p as u32;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn character_multiplicative_exhaustive() {
        for (p, m) in [(3, 2), (3, 4), (5, 2), (7, 2), (3, 3)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let table = ctx.quadratic_character_table().unwrap();
            let eta = |x: &FieldElement| table[ctx.index_of(x) as usize];
            for x in ctx.nonzero_elements() {
                for y in ctx.nonzero_elements() {
                    assert_eq!(eta(&ctx.mul(&x, &y)), eta(&x) * eta(&y));
                }
            }
        }
    }

    #[test]
    fn character_restricted_to_prime_subfield() {
        for (p, m) in [
            (3, 2),
            (3, 3),
            (5, 2),
            (5, 3),
            (7, 2),
            (7, 3),
            (3, 4),
            (11, 2),
        ] {
            let ctx = FieldContext::new(p, m).unwrap();
            for y in 1..p as u32 {
                let eta = ctx.quadratic_character(&ctx.embed_prime(PrimeElement(y)));
                if m % 2 == 0 {
                    assert_eq!(eta, 1);
                } else {
                    assert_eq!(eta, legendre(y, p as u32));
                }
            }
        }
    }

    #[test]
    fn display_modulus() {
        assert_eq!(f9().to_string(), "GF(3^2) mod x^2 + 1");
    }
}
