//! Exact arithmetic in `Z[zeta_p]` and exact evaluation of character sums.
//!
//! A [`CyclotomicInt`] stores `p - 1` integer coordinates in the power basis
//! `1, zeta, ..., zeta^{p-2}`. The relation
//! `zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})` is applied eagerly, so two
//! values are equal exactly when their coordinate vectors are equal.
//!
//! Character sums are accumulated as exponent histograms ([`CharacterSum`])
//! and folded into the power basis once at the end; summing `p^m` roots of
//! unity costs `p^m` integer increments and a single reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_cap, Error, Result, ENUMERATION_CAP, TRIPLE_SUM_CAP};
use crate::field::{FieldContext, FieldElement, PrimeElement};

/// Relative tolerance for the floating-point sign check on Gauss sums.
pub const GAUSS_FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3, "need an odd prime order");
        CyclotomicInt {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        }
    }

    pub fn from_integer(p: u32, n: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(p);
        out.coeffs[0] = n.into();
        out
    }

    pub fn one(p: u32) -> Self {
        Self::from_integer(p, 1)
    }

    /// `zeta^t` in canonical form.
    pub fn root_power(p: u32, t: u64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(t % u64::from(p)) as usize] = 1;
        Self::from_exponent_counts(p, &counts)
    }

    /// `sum_t counts[t] * zeta^t` for `t` in `0..p`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[p as usize - 1];
        CyclotomicInt {
            p,
            coeffs: counts[..p as usize - 1]
                .iter()
                .map(|&c| BigInt::from(c - top))
                .collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::param(format!(
                "cyclotomic orders differ: {} vs {}",
                self.p, other.p
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(CyclotomicInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Polynomial product reduced modulo the `p`-th cyclotomic polynomial.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.p as usize;
        // fold exponents mod p first (zeta^p = 1), then drop zeta^{p-1}
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        let top = full.pop().expect("p >= 3");
        Ok(CyclotomicInt {
            p: self.p,
            coeffs: full.into_iter().map(|c| c - &top).collect(),
        })
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        CyclotomicInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
    }

    /// Complex value under `zeta = exp(2 pi i / p)`.
    pub fn to_complex(&self) -> Complex64 {
        let p = f64::from(self.p);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(t, c)| {
                let angle = 2.0 * std::f64::consts::PI * t as f64 / p;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: Self) -> CyclotomicInt {
        self.checked_add(rhs).expect("mismatched cyclotomic orders")
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: Self) -> CyclotomicInt {
        self.checked_sub(rhs).expect("mismatched cyclotomic orders")
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: Self) -> CyclotomicInt {
        self.checked_mul(rhs).expect("mismatched cyclotomic orders")
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        self.scale(-1)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match t {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{t}")?,
                _ => write!(f, "{mag}*z^{t}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Streaming accumulator for `sum_i w_i * zeta^{e_i}`.
///
/// Partial sums over disjoint index sets combine with [`CharacterSum::merge`];
/// the result does not depend on how the index set was partitioned.
#[derive(Clone, Debug)]
pub struct CharacterSum {
    p: u32,
    counts: Vec<i64>,
}

impl CharacterSum {
    pub fn new(p: u32) -> Self {
        CharacterSum {
            p,
            counts: vec![0; p as usize],
        }
    }

    #[inline]
    pub fn push(&mut self, exponent: u32, weight: i64) {
        self.counts[(exponent % self.p) as usize] += weight;
    }

    pub fn merge(mut self, other: &CharacterSum) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn finish(&self) -> CyclotomicInt {
        CyclotomicInt::from_exponent_counts(self.p, &self.counts)
    }
}

/// `sum zeta^{e}` over a stream of prime-field exponents.
pub fn additive_character_sum<I>(ctx: &FieldContext, exponents: I) -> CyclotomicInt
where
    I: IntoIterator<Item = PrimeElement>,
{
    let mut acc = CharacterSum::new(ctx.p());
    for e in exponents {
        acc.push(e.value(), 1);
    }
    acc.finish()
}

fn rational(value: &CyclotomicInt, what: &str) -> Result<i64> {
    value
        .as_integer()
        .and_then(ToPrimitive::to_i64)
        .ok_or_else(|| Error::invariant(format!("{what} is not a rational integer: {value}")))
}

/// The quadratic Gauss sum of a field, with its closed-form cross-checks.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussSumValue {
    /// `sum_{x != 0} eta(x) zeta^{Tr(x)}`, evaluated exactly.
    pub exact: CyclotomicInt,
    /// `eta(-1) * p^m`, the value the square must take.
    pub predicted_square: i64,
    /// `(-1)^{m-1} i^{m (p-1)^2 / 4} p^{m/2}` as a complex number.
    pub closed_form: Complex64,
    /// `|exact - closed_form| / |closed_form|` under the complex embedding.
    pub relative_error: f64,
}

/// `(-1)^{m-1} i^{m (p-1)^2/4} p^{m/2}`.
pub fn gauss_sum_closed_form(p: u32, m: usize) -> Complex64 {
    let h = u64::from((p - 1) / 2);
    let quarter_turns = (h * h * m as u64) % 4;
    let unit = match quarter_turns {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let sign = if (m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    unit * sign * f64::from(p).powf(m as f64 / 2.0)
}

/// Evaluates `G(eta, chi)` over `ctx` by enumeration and checks
/// `G^2 = eta(-1) q` exactly and the closed form numerically.
pub fn gauss_sum(ctx: &FieldContext) -> Result<GaussSumValue> {
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    let eta = ctx.quadratic_character_table()?;
    let mut acc = CharacterSum::new(ctx.p());
    for (i, x) in ctx.elements().enumerate().skip(1) {
        acc.push(ctx.trace(&x).value(), i64::from(eta[i]));
    }
    let exact = acc.finish();

    let minus_one = ctx.neg(&ctx.one());
    let eta_minus_one = i64::from(eta[ctx.index_of(&minus_one) as usize]);
    let predicted_square = eta_minus_one * ctx.order() as i64;

    let square = &exact * &exact;
    if square != CyclotomicInt::from_integer(ctx.p(), predicted_square) {
        return Err(Error::invariant(format!(
            "G^2 = {square}, expected {predicted_square}"
        )));
    }

    let closed_form = gauss_sum_closed_form(ctx.p(), ctx.m());
    let relative_error = (exact.to_complex() - closed_form).norm() / closed_form.norm();
    if relative_error.is_nan() || relative_error > GAUSS_FLOAT_TOLERANCE {
        return Err(Error::invariant(format!(
            "G = {} differs from closed form {closed_form} (relative error {relative_error:e})",
            exact.to_complex()
        )));
    }

    Ok(GaussSumValue {
        exact,
        predicted_square,
        closed_form,
        relative_error,
    })
}

/// `sum_{y in F_p^*} sum_{x in F_{p^m}} zeta^{y Tr(x^2)}`, exactly.
pub fn square_trace_sum(ctx: &FieldContext) -> Result<i64> {
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    let p = ctx.p();
    let mut acc = CharacterSum::new(p);
    for t in ctx.square_trace_table()? {
        for y in 1..p {
            acc.push(y * t % p, 1);
        }
    }
    rational(&acc.finish(), "double sum over y and x")
}

/// `sum_{y, z in F_p^*} sum_{x in F_{p^m}} zeta^{Tr(y x^2 + a z x) - z rho}`, exactly.
pub fn mixed_trace_sum(ctx: &FieldContext, a: &FieldElement, rho: PrimeElement) -> Result<i64> {
    let sums = MixedTraceSums::new(ctx)?.for_all_rho(a)?;
    Ok(sums[rho.value() as usize])
}

/// The triple sum for one field, all `rho` at once.
///
/// The exponent only depends on the pair `(Tr(x^2), Tr(a x))`, so one pass
/// over `x` builds a `p x p` histogram and the `(y, z)` sums run over that.
#[derive(Clone, Debug)]
pub struct MixedTraceSums<'a> {
    ctx: &'a FieldContext,
    squares: Vec<u32>,
}

impl<'a> MixedTraceSums<'a> {
    pub fn new(ctx: &'a FieldContext) -> Result<Self> {
        let p = u64::from(ctx.p());
        check_cap(ctx.order() * p * p, TRIPLE_SUM_CAP)?;
        Ok(MixedTraceSums {
            ctx,
            squares: ctx.square_trace_table()?,
        })
    }

    /// `[S(a, 0), ..., S(a, p - 1)]`.
    pub fn for_all_rho(&self, a: &FieldElement) -> Result<Vec<i64>> {
        if a.is_zero() {
            return Err(Error::param("a must be nonzero"));
        }
        let ctx = self.ctx;
        let p = ctx.p();
        let pu = p as usize;
        let functional = ctx.trace_functional(a);
        let mut pairs = vec![0i64; pu * pu];
        for (x, &t2) in ctx.elements().zip(&self.squares) {
            let ta = x
                .coords()
                .iter()
                .zip(&functional)
                .fold(0u32, |acc, (&c, &f)| (acc + c * f) % p);
            pairs[t2 as usize * pu + ta as usize] += 1;
        }
        (0..p)
            .map(|rho| {
                let mut acc = CharacterSum::new(p);
                for (cell, &count) in pairs.iter().enumerate() {
                    if count == 0 {
                        continue;
                    }
                    let (t2, ta) = (cell as u32 / p, cell as u32 % p);
                    for y in 1..p {
                        for z in 1..p {
                            // y Tr(x^2) + z Tr(a x) - z rho
                            acc.push((y * t2 + z * ta + z * (p - rho)) % p, count);
                        }
                    }
                }
                rational(&acc.finish(), "triple sum over y, z and x")
            })
            .collect()
    }
}
