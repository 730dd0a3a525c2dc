//! Closed-form predictions for the enumerators, weight tables and the
//! counting and character-sum identities they rest on.
//!
//! Everything here is arithmetic in the parameters `(p, m)`; nothing
//! enumerates a field except [`quadratic_exponential_sum`] and
//! [`quadratic_form_count_exhaustive`], which are the enumerating sides of
//! identities checked against the formulas in this module.
//!
//! Throughout, `h = (p - 1) / 2`.

use crate::code::{CompleteWeightEnumerator, CompositionVector, WeightDistribution};
use crate::cyclotomic::CyclotomicInt;
use crate::error::{check_cap, Error, Result, ENUMERATION_CAP};
use crate::field::{is_prime, FieldContext, FieldElement};

fn pow(p: u64, e: usize) -> i64 {
    p.pow(e as u32) as i64
}

fn parity_sign(exponent: u64) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Checks `p` odd prime and `m >= 3` odd or `m >= 2` even.
pub fn validate_code_params(p: u64, m: usize) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::param("p must be an odd prime"));
    }
    if m < 2 {
        return Err(Error::param("m must be at least 2"));
    }
    if p.checked_pow(m as u32 + 1).is_none() {
        return Err(Error::param("p^m is too large"));
    }
    Ok(())
}

/// The `±1` constants that recur in every even- and odd-degree formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignConstant(i64);

impl SignConstant {
    /// `(-1)^{(m/2) h^2}`, the even-degree constant.
    pub fn even(p: u64, m: usize) -> Self {
        let h = (p - 1) / 2;
        SignConstant(parity_sign((m as u64 / 2) * h * h))
    }

    /// `(-1)^{((m-1)/2) h}`, the odd-degree constant as stated for the counts.
    pub fn odd(p: u64, m: usize) -> Self {
        let h = (p - 1) / 2;
        SignConstant(parity_sign((m as u64 - 1) / 2 * h))
    }

    /// `(-1)^{h + ((m+1)/2) h^2}`: the odd-degree constant as it comes out of
    /// `eta(-1) G(eta, chi) G(eta_bar, chi_bar)`. Equal to [`SignConstant::odd`].
    pub fn odd_from_gauss_product(p: u64, m: usize) -> Self {
        let h = (p - 1) / 2;
        SignConstant(parity_sign(h + (m as u64).div_ceil(2) * h * h))
    }

    /// Picks [`SignConstant::even`] or [`SignConstant::odd`] by the parity of `m`.
    pub fn for_degree(p: u64, m: usize) -> Self {
        if m.is_multiple_of(2) {
            Self::even(p, m)
        } else {
            Self::odd(p, m)
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }
}

/// `nu(0) = q - 1`, `nu(rho) = -1` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuFunction {
    pub q: u64,
}

impl NuFunction {
    pub fn eval(self, is_zero: bool) -> i64 {
        if is_zero {
            self.q as i64 - 1
        } else {
            -1
        }
    }
}

/// `#{x in F_{p^m} : Tr(x^2) = 0}`.
pub fn predicted_n0(p: u64, m: usize) -> i64 {
    if m % 2 == 1 {
        pow(p, m - 1)
    } else {
        let s = SignConstant::even(p, m).value();
        pow(p, m - 1) - s * (p as i64 - 1) * pow(p, (m - 2) / 2)
    }
}

/// Code length `n = n_0 - 1`.
pub fn predicted_length(p: u64, m: usize) -> i64 {
    predicted_n0(p, m) - 1
}

/// `N_a(rho)` given the Legendre class of `Tr(a^2)` (`0`, `1` or `-1`).
pub fn predicted_na_rho(p: u64, m: usize, eta_bar_tr_a2: i32, rho_is_zero: bool) -> Result<i64> {
    validate_code_params(p, m)?;
    if !(-1..=1).contains(&eta_bar_tr_a2) {
        return Err(Error::param("class must be -1, 0 or 1"));
    }
    let base = pow(p, m - 2);
    let class = i64::from(eta_bar_tr_a2);
    let pm1 = p as i64 - 1;
    let value = if m % 2 == 1 {
        let e = SignConstant::odd(p, m).value();
        let root = pow(p, (m - 3) / 2);
        match (class, rho_is_zero) {
            (0, _) => base,
            (_, true) => base + e * pm1 * root * class,
            (_, false) => base - e * root * class,
        }
    } else {
        let s = SignConstant::even(p, m).value();
        let root = pow(p, (m - 2) / 2);
        match (class != 0, rho_is_zero) {
            (false, true) => base - s * pm1 * root,
            (false, false) | (true, true) => base,
            (true, false) => base - s * root,
        }
    };
    Ok(value)
}

/// `(t_0, t_1, t_{-1})` for odd `m`.
pub fn predicted_ti(p: u64, m: usize) -> Result<(i64, i64, i64)> {
    validate_code_params(p, m)?;
    if m.is_multiple_of(2) {
        return Err(Error::param("t_i counts are defined for odd m only"));
    }
    let e = SignConstant::odd(p, m).value();
    let h = (p as i64 - 1) / 2;
    let top = pow(p, m - 1);
    let root = pow(p, (m - 1) / 2);
    Ok((top - 1, h * (top + e * root), h * (top - e * root)))
}

/// `sum_{y in F_p^*} sum_x zeta^{y Tr(x^2)}`.
pub fn predicted_square_trace_sum(p: u64, m: usize) -> i64 {
    if m % 2 == 1 {
        0
    } else {
        let s = SignConstant::even(p, m).value();
        parity_sign(m as u64 - 1) * s * (p as i64 - 1) * pow(p, m / 2)
    }
}

/// `sum_{y,z in F_p^*} sum_x zeta^{Tr(y x^2 + a z x) - z rho}` by the class of `Tr(a^2)`.
pub fn predicted_mixed_trace_sum(p: u64, m: usize, eta_bar_tr_a2: i32, rho_is_zero: bool) -> i64 {
    let pm1 = p as i64 - 1;
    let class = i64::from(eta_bar_tr_a2);
    if m % 2 == 1 {
        let e = SignConstant::odd(p, m).value();
        let root = pow(p, m.div_ceil(2));
        match (class, rho_is_zero) {
            (0, _) => 0,
            (_, true) => e * pm1 * root * class,
            (_, false) => -e * root * class,
        }
    } else {
        let s = SignConstant::even(p, m).value();
        let root = pow(p, m / 2);
        match (class != 0, rho_is_zero) {
            (false, true) => -s * pm1 * pm1 * root,
            (false, false) | (true, true) => s * pm1 * root,
            (true, false) => -s * root,
        }
    }
}

/// A family of codewords with `multiplicity` members, each with `own`
/// coordinates equal to the shift `b` and `rest` coordinates equal to
/// every other symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodewordFamily {
    pub multiplicity: i64,
    pub own: i64,
    pub rest: i64,
}

/// The families making up `C_D` (shift `b = 0`).
pub fn codeword_families(p: u64, m: usize) -> Result<Vec<CodewordFamily>> {
    validate_code_params(p, m)?;
    let pm1 = p as i64 - 1;
    let fam = |multiplicity, own, rest| CodewordFamily {
        multiplicity,
        own,
        rest,
    };
    let n = predicted_length(p, m);
    let base = pow(p, m - 2);
    let families = if m % 2 == 1 {
        let top = pow(p, m - 1);
        let half_root = pow(p, (m - 1) / 2);
        let small = pow(p, (m - 3) / 2);
        let h = pm1 / 2;
        vec![
            fam(1, n, 0),
            fam(top - 1, base - 1, base),
            fam(h * (top + half_root), base - 1 + pm1 * small, base - small),
            fam(h * (top - half_root), base - 1 - pm1 * small, base + small),
        ]
    } else {
        let s = SignConstant::even(p, m).value();
        let root = pow(p, (m - 2) / 2);
        vec![
            fam(1, n, 0),
            fam(n, base - 1 - s * pm1 * root, base),
            fam(pm1 * (pow(p, m - 1) + s * root), base - 1, base - s * root),
        ]
    };
    Ok(families)
}

fn family_composition(p: u64, family: &CodewordFamily, b: u64) -> Result<CompositionVector> {
    if family.own < 0 || family.rest < 0 {
        return Err(Error::invariant(format!(
            "negative exponent in a populated family: {family:?}"
        )));
    }
    let counts = (0..p)
        .map(|j| if j == b { family.own } else { family.rest } as u64)
        .collect();
    Ok(CompositionVector::new(counts))
}

fn predicted_cwe(p: u64, m: usize, shifts: u64) -> Result<CompleteWeightEnumerator> {
    let families = codeword_families(p, m)?;
    let n = predicted_length(p, m);
    if n < 0 {
        return Err(Error::invariant(format!("negative length {n}")));
    }
    let mut terms = Vec::new();
    for family in families.iter().filter(|f| f.multiplicity != 0) {
        if family.multiplicity < 0 {
            return Err(Error::invariant(format!(
                "negative multiplicity: {family:?}"
            )));
        }
        for b in 0..shifts {
            terms.push((
                family_composition(p, family, b)?,
                family.multiplicity as u64,
            ));
        }
    }
    CompleteWeightEnumerator::from_terms(p as u32, n as u64, terms)
}

/// Closed-form complete weight enumerator of `C_D`.
pub fn predicted_cwe_cd(p: u64, m: usize) -> Result<CompleteWeightEnumerator> {
    predicted_cwe(p, m, 1)
}

/// Closed-form complete weight enumerator of `C_{D,b}`: every `C_D` family
/// repeated once per shift `b in F_p`.
pub fn predicted_cwe_cdb(p: u64, m: usize) -> Result<CompleteWeightEnumerator> {
    predicted_cwe(p, m, p)
}

fn table(rows: Vec<(i64, i64)>) -> Result<WeightDistribution> {
    let mut entries = Vec::new();
    for (weight, count) in rows {
        if count == 0 {
            continue;
        }
        if weight < 0 || count < 0 {
            return Err(Error::invariant(format!(
                "table row ({weight}, {count}) is out of range"
            )));
        }
        entries.push((weight as u64, count as u64));
    }
    Ok(WeightDistribution::from_entries(entries))
}

/// Rows of the `C_D` weight table, before merging equal weights.
pub fn weight_table_rows_cd(p: u64, m: usize) -> Result<Vec<(i64, i64)>> {
    validate_code_params(p, m)?;
    let pm1 = p as i64 - 1;
    let base = pow(p, m - 2);
    let top = pow(p, m - 1);
    Ok(if m % 2 == 1 {
        let small = pow(p, (m - 3) / 2);
        let half_root = pow(p, (m - 1) / 2);
        vec![
            (0, 1),
            (pm1 * (base - small), pm1 / 2 * (top + half_root)),
            (pm1 * base, top - 1),
            (pm1 * (base + small), pm1 / 2 * (top - half_root)),
        ]
    } else {
        let s = SignConstant::even(p, m).value();
        let root = pow(p, (m - 2) / 2);
        vec![
            (0, 1),
            (pm1 * base, top - s * pm1 * root - 1),
            (pm1 * (base - s * root), pm1 * (top + s * root)),
        ]
    })
}

/// Rows of the `C_{D,b}` weight table, before merging equal weights.
pub fn weight_table_rows_cdb(p: u64, m: usize) -> Result<Vec<(i64, i64)>> {
    validate_code_params(p, m)?;
    let pm1 = p as i64 - 1;
    let base = pow(p, m - 2);
    let top = pow(p, m - 1);
    Ok(if m % 2 == 1 {
        let small = pow(p, (m - 3) / 2);
        let half_root = pow(p, (m - 1) / 2);
        vec![
            (0, 1),
            (top - 1, pm1),
            (pm1 * base, top - 1),
            (pm1 * base - 1, pm1 * (top - 1)),
            (pm1 * (base - small), pm1 / 2 * (top + half_root)),
            (pm1 * base + small - 1, pm1 * pm1 / 2 * (top + half_root)),
            (pm1 * (base + small), pm1 / 2 * (top - half_root)),
            (pm1 * base - small - 1, pm1 * pm1 / 2 * (top - half_root)),
        ]
    } else {
        let s = SignConstant::even(p, m).value();
        let root = pow(p, (m - 2) / 2);
        let n = top - 1 - s * pm1 * root;
        vec![
            (0, 1),
            (n, pm1),
            (pm1 * base, n),
            (pm1 * (base - s * root) - 1, pm1 * n),
            (pm1 * (base - s * root), pm1 * (top + s * root)),
            (
                pm1 * base - (pm1 - 1) * s * root - 1,
                pm1 * pm1 * (top + s * root),
            ),
        ]
    })
}

/// Weight distribution of `C_D` from its table, equal weights merged.
pub fn predicted_wd_cd(p: u64, m: usize) -> Result<WeightDistribution> {
    table(weight_table_rows_cd(p, m)?)
}

/// Weight distribution of `C_{D,b}` from its table, equal weights merged.
pub fn predicted_wd_cdb(p: u64, m: usize) -> Result<WeightDistribution> {
    table(weight_table_rows_cdb(p, m)?)
}

fn form_checks(ctx: &FieldContext, coeffs: &[FieldElement]) -> Result<()> {
    if coeffs.is_empty() {
        return Err(Error::param("a quadratic form needs at least one variable"));
    }
    if coeffs.iter().any(FieldElement::is_zero) {
        return Err(Error::param("diagonal coefficients must be nonzero"));
    }
    if coeffs.iter().any(|c| c.coords().len() != ctx.m()) {
        return Err(Error::param("coefficient is not in the base field"));
    }
    Ok(())
}

/// Solutions of `sum_i c_i x_i^2 = b` over `F_q`, by the closed form for
/// nondegenerate diagonal forms.
pub fn quadratic_form_count(
    ctx: &FieldContext,
    coeffs: &[FieldElement],
    b: &FieldElement,
) -> Result<u64> {
    form_checks(ctx, coeffs)?;
    let q = ctx.order();
    let l = coeffs.len();
    let det = coeffs.iter().fold(ctx.one(), |acc, c| ctx.mul(&acc, c));
    let minus_one = ctx.neg(&ctx.one());
    let sign_power = |k: usize| ctx.pow(&minus_one, k as u64);
    let count = if l.is_multiple_of(2) {
        let nu = NuFunction { q }.eval(b.is_zero());
        let eta = i64::from(ctx.quadratic_character(&ctx.mul(&sign_power(l / 2), &det)));
        pow(q, l - 1) + nu * pow(q, (l - 2) / 2) * eta
    } else {
        let arg = ctx.mul(&ctx.mul(&sign_power((l - 1) / 2), b), &det);
        let eta = i64::from(ctx.quadratic_character(&arg));
        pow(q, l - 1) + pow(q, (l - 1) / 2) * eta
    };
    u64::try_from(count).map_err(|_| Error::invariant(format!("negative count {count}")))
}

/// Histogram of `sum_i c_i x_i^2` over all of `F_q^l`, indexed by field index
/// of the value. Exhaustive; capped at [`ENUMERATION_CAP`] tuples.
pub fn quadratic_form_count_exhaustive(
    ctx: &FieldContext,
    coeffs: &[FieldElement],
) -> Result<Vec<u64>> {
    form_checks(ctx, coeffs)?;
    let q = ctx.order();
    let tuples = q.checked_pow(coeffs.len() as u32).ok_or(Error::Capacity {
        size: u64::MAX,
        cap: ENUMERATION_CAP,
    })?;
    check_cap(tuples, ENUMERATION_CAP)?;
    // value contributed by each variable for each of its q settings
    let terms: Vec<Vec<FieldElement>> = coeffs
        .iter()
        .map(|c| {
            ctx.elements()
                .map(|x| ctx.mul(c, &ctx.square(&x)))
                .collect()
        })
        .collect();
    let mut hist = vec![0u64; q as usize];
    let mut digits = vec![0usize; coeffs.len()];
    loop {
        let value = digits
            .iter()
            .zip(&terms)
            .fold(ctx.zero(), |acc, (&d, t)| ctx.add(&acc, &t[d]));
        hist[ctx.index_of(&value) as usize] += 1;
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(hist);
            }
            digits[k] += 1;
            if digits[k] < q as usize {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// `sum_x chi(a2 x^2 + a1 x + a0)`, by enumeration.
pub fn quadratic_exponential_sum(
    ctx: &FieldContext,
    a2: &FieldElement,
    a1: &FieldElement,
    a0: &FieldElement,
) -> Result<CyclotomicInt> {
    if a2.is_zero() {
        return Err(Error::param("leading coefficient a2 must be nonzero"));
    }
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    let mut acc = crate::cyclotomic::CharacterSum::new(ctx.p());
    for x in ctx.elements() {
        let fx = ctx.add(&ctx.mul(&ctx.add(&ctx.mul(a2, &x), a1), &x), a0);
        acc.push(ctx.trace(&fx).value(), 1);
    }
    Ok(acc.finish())
}

/// `chi(a0 - a1^2 (4 a2)^{-1}) eta(a2) G`, with `G` supplied by the caller.
pub fn completed_square_value(
    ctx: &FieldContext,
    a2: &FieldElement,
    a1: &FieldElement,
    a0: &FieldElement,
    gauss: &CyclotomicInt,
) -> Result<CyclotomicInt> {
    let four_a2 = ctx.scale(a2, ctx.prime(4));
    let inv = ctx
        .inv(&four_a2)
        .ok_or_else(|| Error::param("leading coefficient a2 must be nonzero"))?;
    let shift = ctx.sub(a0, &ctx.mul(&ctx.square(a1), &inv));
    let chi = CyclotomicInt::root_power(ctx.p(), u64::from(ctx.trace(&shift).value()));
    let eta = i64::from(ctx.quadratic_character(a2));
    chi.checked_mul(gauss).map(|v| v.scale(eta))
}
