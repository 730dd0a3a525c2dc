//! Grid sweeps comparing brute force against the closed forms.
//!
//! Each function returns a list of [`Check`]s instead of panicking, so the
//! same sweeps back both the `verify` command and the acceptance tests.
//! Sampling is seeded per point, so reruns print identical lines.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closed_form::{
    completed_square_value, predicted_cwe_cd, predicted_cwe_cdb, predicted_mixed_trace_sum,
    predicted_n0, predicted_na_rho, predicted_square_trace_sum, predicted_ti, predicted_wd_cd,
    predicted_wd_cdb, quadratic_exponential_sum, quadratic_form_count,
    quadratic_form_count_exhaustive,
};
use crate::code::{brute_force_cwe, count_n0, count_ti, CodeSpec, CodeVariant, QuadricCounter};
use crate::cyclotomic::{gauss_sum, square_trace_sum, MixedTraceSums};
use crate::error::{Error, Result};
use crate::field::{legendre, FieldContext, FieldElement};

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x7ace_c0de;

/// Exhaustive over `a` up to this field order, sampled above.
const EXHAUSTIVE_ORDER: u64 = 243;
/// Sample count for `a` above [`EXHAUSTIVE_ORDER`].
const SAMPLED_A: usize = 64;
/// Completed-square identity: exhaustive over `(a2, a1)` up to this order.
const EXHAUSTIVE_QUADRATIC_ORDER: u64 = 81;
/// Random quadratics up to [`EXHAUSTIVE_ORDER`], and above it.
const SAMPLED_QUADRATICS: usize = 100;
const SAMPLED_QUADRATICS_LARGE: usize = 12;
/// Diagonal-form counts: random coefficient tuples per `(q, l)`.
const SAMPLED_FORMS: usize = 20;
const MAX_FORM_VARIABLES: usize = 5;
/// Largest `q^l` walked by the diagonal-form oracle.
const FORM_TUPLE_CAP: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }

    fn from_result(name: String, result: Result<std::result::Result<String, String>>) -> Self {
        match result {
            Ok(Ok(detail)) => Check::new(name, Status::Pass, detail),
            Ok(Err(detail)) => Check::new(name, Status::Fail, detail),
            Err(Error::Capacity { size, cap }) => {
                Check::new(name, Status::Skip, format!("size {size} exceeds cap {cap}"))
            }
            Err(e) => Check::new(name, Status::Fail, e.to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.name, self.detail)
    }
}

/// `(p, m)` pairs with `p` in `primes`, `2 <= m <= m_max`, in that order.
pub fn grid(primes: &[u64], m_max: usize) -> Vec<(u64, usize)> {
    primes
        .iter()
        .flat_map(|&p| (2..=m_max).map(move |m| (p, m)))
        .collect()
}

/// Whether `p^m <= cap`, without overflowing.
pub fn within_cap(p: u64, m: usize, cap: u64) -> bool {
    p.checked_pow(m as u32).is_some_and(|q| q <= cap)
}

fn rng_for(seed: u64, p: u64, m: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ m as u64)
}

fn random_nonzero(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> FieldElement {
    ctx.from_index(rng.gen_range(1..ctx.order()))
}

fn nonzero_sample(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    if ctx.order() <= EXHAUSTIVE_ORDER {
        ctx.nonzero_elements().collect()
    } else {
        (0..SAMPLED_A).map(|_| random_nonzero(ctx, rng)).collect()
    }
}

fn mismatch<T: fmt::Debug + PartialEq>(
    what: &str,
    got: T,
    want: T,
) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// Brute force against the closed-form enumerator and weight table, for
/// one code at one grid point (`d = 1`).
pub fn cwe_check(p: u64, m: usize, variant: CodeVariant, cap: u64) -> Check {
    let name = format!("cwe p={p} m={m} {}", variant.name());
    if !within_cap(p, m, cap) {
        return Check::new(name, Status::Skip, format!("p^m exceeds cap {cap}"));
    }
    let result = (|| {
        let spec = CodeSpec::new(p, m, 1, variant)?;
        let ctx = spec.field()?;
        let brute = brute_force_cwe(&ctx, &spec)?;
        let (formula, table) = match variant {
            CodeVariant::Cd => (predicted_cwe_cd(p, m)?, predicted_wd_cd(p, m)?),
            CodeVariant::Cdb => (predicted_cwe_cdb(p, m)?, predicted_wd_cdb(p, m)?),
        };
        let diff = brute.diff(&formula);
        if !diff.is_empty() {
            let first = &diff[0];
            return Ok(Err(format!(
                "{} differing terms, first {}: brute {} vs formula {}",
                diff.len(),
                first.composition,
                first.left,
                first.right
            )));
        }
        let wd = brute.weight_distribution();
        if wd != table {
            return Ok(Err(format!("weight table {table} vs enumerator {wd}")));
        }
        Ok(Ok(format!(
            "{} terms, {} nonzero weights",
            brute.len(),
            wd.nonzero_weight_count()
        )))
    })();
    Check::from_result(name, result)
}

/// Both codes at every grid point, in grid order. Points run in parallel.
pub fn cwe_suite(primes: &[u64], m_max: usize, cap: u64) -> Vec<Check> {
    grid(primes, m_max)
        .into_par_iter()
        .flat_map_iter(|(p, m)| {
            [CodeVariant::Cd, CodeVariant::Cdb].map(|v| cwe_check(p, m, v, cap))
        })
        .collect()
}

type Outcome = Result<std::result::Result<String, String>>;

fn gauss_check(ctx: &FieldContext) -> Outcome {
    // gauss_sum itself enforces both identities; reaching Ok means they hold
    match gauss_sum(ctx) {
        Ok(g) => Ok(Ok(format!(
            "G^2 = {}, relative error {:.1e}",
            g.predicted_square, g.relative_error
        ))),
        Err(Error::Invariant(msg)) => Ok(Err(msg)),
        Err(e) => Err(e),
    }
}

fn completed_square_check(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> Outcome {
    let g = gauss_sum(ctx)?.exact;
    let mut cases = Vec::new();
    if ctx.order() <= EXHAUSTIVE_QUADRATIC_ORDER {
        for a2 in ctx.nonzero_elements() {
            for a1 in ctx.elements() {
                let a0 = ctx.from_index(rng.gen_range(0..ctx.order()));
                cases.push((a2.clone(), a1, a0));
            }
        }
    } else {
        let count = if ctx.order() <= EXHAUSTIVE_ORDER {
            SAMPLED_QUADRATICS
        } else {
            SAMPLED_QUADRATICS_LARGE
        };
        for _ in 0..count {
            let a2 = random_nonzero(ctx, rng);
            let a1 = ctx.from_index(rng.gen_range(0..ctx.order()));
            let a0 = ctx.from_index(rng.gen_range(0..ctx.order()));
            cases.push((a2, a1, a0));
        }
    }
    for (a2, a1, a0) in &cases {
        let direct = quadratic_exponential_sum(ctx, a2, a1, a0)?;
        let formula = completed_square_value(ctx, a2, a1, a0, &g)?;
        if direct != formula {
            return Ok(Err(format!(
                "a2={:?} a1={:?} a0={:?}: sum {direct} vs {formula}",
                a2.coords(),
                a1.coords(),
                a0.coords()
            )));
        }
    }
    Ok(Ok(format!("{} quadratics", cases.len())))
}

fn square_trace_sum_check(ctx: &FieldContext) -> Outcome {
    let got = square_trace_sum(ctx)?;
    let want = predicted_square_trace_sum(u64::from(ctx.p()), ctx.m());
    Ok(mismatch("sum", got, want).map(|()| format!("sum = {got}")))
}

fn n0_check(ctx: &FieldContext) -> Outcome {
    let got = count_n0(ctx)? as i64;
    let want = predicted_n0(u64::from(ctx.p()), ctx.m());
    Ok(mismatch("n0", got, want).map(|()| format!("n0 = {got}")))
}

fn eta_bar_of_tr_a2(ctx: &FieldContext, a: &FieldElement) -> i32 {
    legendre(ctx.square_trace(a).value(), ctx.p())
}

fn mixed_trace_check(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> Outcome {
    let (p, m) = (u64::from(ctx.p()), ctx.m());
    let sums = MixedTraceSums::new(ctx)?;
    let sample = nonzero_sample(ctx, rng);
    for a in &sample {
        let class = eta_bar_of_tr_a2(ctx, a);
        for (rho, got) in sums.for_all_rho(a)?.into_iter().enumerate() {
            let want = predicted_mixed_trace_sum(p, m, class, rho == 0);
            if got != want {
                return Ok(Err(format!(
                    "a={:?} rho={rho}: got {got}, expected {want}",
                    a.coords()
                )));
            }
        }
    }
    Ok(Ok(format!("{} values of a, all rho", sample.len())))
}

fn slice_count_check(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> Outcome {
    let (p, m) = (u64::from(ctx.p()), ctx.m());
    let counter = QuadricCounter::new(ctx)?;
    let sample = nonzero_sample(ctx, rng);
    for a in &sample {
        let class = eta_bar_of_tr_a2(ctx, a);
        for (rho, got) in counter.profile(a).into_iter().enumerate() {
            let want = predicted_na_rho(p, m, class, rho == 0)?;
            if got as i64 != want {
                return Ok(Err(format!(
                    "a={:?} rho={rho}: got {got}, expected {want}",
                    a.coords()
                )));
            }
        }
    }
    Ok(Ok(format!("{} values of a, all rho", sample.len())))
}

fn class_count_check(ctx: &FieldContext) -> Outcome {
    let (t0, t1, tm1) = count_ti(ctx)?;
    let got = (t0 as i64, t1 as i64, tm1 as i64);
    let want = predicted_ti(u64::from(ctx.p()), ctx.m())?;
    Ok(mismatch("(t0, t1, t-1)", got, want).map(|()| format!("{got:?}")))
}

/// The character-sum and counting identities at one grid point.
pub fn lemma_checks(p: u64, m: usize, cap: u64, seed: u64) -> Vec<Check> {
    let tag = format!("p={p} m={m}");
    let mut names = vec![
        "gauss-sum",
        "completed-square",
        "square-trace-sum",
        "quadric-size",
    ];
    names.extend(["mixed-trace-sum", "quadric-slices"]);
    if m % 2 == 1 {
        names.push("quadric-classes");
    }
    if !within_cap(p, m, cap) {
        return names
            .into_iter()
            .map(|n| {
                Check::new(
                    format!("{n} {tag}"),
                    Status::Skip,
                    format!("p^m exceeds cap {cap}"),
                )
            })
            .collect();
    }
    let ctx = match FieldContext::new(p, m) {
        Ok(ctx) => ctx,
        Err(e) => return vec![Check::from_result(format!("field {tag}"), Err(e))],
    };
    let mut rng = rng_for(seed, p, m);
    names
        .into_iter()
        .map(|n| {
            let outcome = match n {
                "gauss-sum" => gauss_check(&ctx),
                "completed-square" => completed_square_check(&ctx, &mut rng),
                "square-trace-sum" => square_trace_sum_check(&ctx),
                "quadric-size" => n0_check(&ctx),
                "mixed-trace-sum" => mixed_trace_check(&ctx, &mut rng),
                "quadric-slices" => slice_count_check(&ctx, &mut rng),
                _ => class_count_check(&ctx),
            };
            Check::from_result(format!("{n} {tag}"), outcome)
        })
        .collect()
}

/// Solution counts of `sum c_i x_i^2 = b` over `F_q` against exhaustive
/// counting, for `l = 1..=5` variables and every `b`.
pub fn diagonal_form_check(p: u64, t: usize, seed: u64) -> Check {
    let name = format!("diagonal-form q={p}^{t}");
    let result = (|| {
        let ctx = FieldContext::new(p, t)?;
        let q = ctx.order();
        let mut rng = rng_for(seed, p, t + 100);
        let mut forms = 0;
        for l in 1..=MAX_FORM_VARIABLES {
            if q.checked_pow(l as u32).is_none_or(|n| n > FORM_TUPLE_CAP) {
                break;
            }
            for _ in 0..SAMPLED_FORMS {
                let coeffs: Vec<_> = (0..l).map(|_| random_nonzero(&ctx, &mut rng)).collect();
                let hist = quadratic_form_count_exhaustive(&ctx, &coeffs)?;
                for (i, &got) in hist.iter().enumerate() {
                    let b = ctx.from_index(i as u64);
                    let want = quadratic_form_count(&ctx, &coeffs, &b)?;
                    if got != want {
                        return Ok(Err(format!(
                            "l={l} b={:?}: got {got}, expected {want}",
                            b.coords()
                        )));
                    }
                }
                forms += 1;
            }
        }
        Ok(Ok(format!("{forms} forms, every b")))
    })();
    Check::from_result(name, result)
}

/// Identities that only depend on `p`: the Gauss sum and completed square
/// over the prime field itself, and diagonal forms over `F_p` and `F_{p^2}`.
pub fn prime_checks(p: u64, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    match FieldContext::new(p, 1) {
        Ok(ctx) => {
            let mut rng = rng_for(seed, p, 1);
            checks.push(Check::from_result(
                format!("gauss-sum p={p} m=1"),
                gauss_check(&ctx),
            ));
            checks.push(Check::from_result(
                format!("completed-square p={p} m=1"),
                completed_square_check(&ctx, &mut rng),
            ));
        }
        Err(e) => checks.push(Check::from_result(format!("field p={p} m=1"), Err(e))),
    }
    checks.push(diagonal_form_check(p, 1, seed));
    checks.push(diagonal_form_check(p, 2, seed));
    checks
}

/// Per-prime checks, then the per-point identities, in grid order.
/// Primes and points run in parallel.
pub fn lemma_suite(primes: &[u64], m_max: usize, cap: u64, seed: u64) -> Vec<Check> {
    primes
        .par_iter()
        .flat_map_iter(|&p| {
            let per_point: Vec<Check> = (2..=m_max)
                .into_par_iter()
                .flat_map_iter(|m| lemma_checks(p, m, cap, seed))
                .collect();
            prime_checks(p, seed).into_iter().chain(per_point)
        })
        .collect()
}

/// `(pass, fail, skip)`.
pub fn tally(checks: &[Check]) -> (usize, usize, usize) {
    let count = |s| checks.iter().filter(|c| c.status == s).count();
    (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order_and_cap() {
        assert_eq!(grid(&[3, 5], 3), vec![(3, 2), (3, 3), (5, 2), (5, 3)]);
        assert!(within_cap(3, 5, 243));
        assert!(!within_cap(3, 6, 243));
        assert!(!within_cap(11, 40, u64::MAX));
    }

    #[test]
    fn small_cwe_suite_passes() {
        let checks = cwe_suite(&[3], 4, 200_000);
        assert_eq!(checks.len(), 6);
        assert_eq!(tally(&checks), (6, 0, 0), "{checks:#?}");
    }

    #[test]
    fn oversized_points_are_skipped() {
        let check = cwe_check(3, 12, CodeVariant::Cd, 200_000);
        assert_eq!(check.status, Status::Skip);
        assert!(lemma_checks(3, 12, 200_000, 1)
            .iter()
            .all(|c| c.status == Status::Skip));
    }

    #[test]
    fn lemma_suite_passes_on_small_fields() {
        let checks = lemma_suite(&[3, 5], 3, 200_000, DEFAULT_SEED);
        assert_eq!(tally(&checks).1, 0, "{checks:#?}");
        assert!(checks.iter().any(|c| c.name == "quadric-classes p=3 m=3"));
        assert!(!checks.iter().any(|c| c.name == "quadric-classes p=3 m=2"));
    }

    #[test]
    fn reports_are_reproducible() {
        let a = lemma_checks(7, 3, 200_000, 42);
        let b = lemma_checks(7, 3, 200_000, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn check_lines_are_readable() {
        let c = Check::new(
            "cwe p=3 m=2 C_D",
            Status::Pass,
            "3 terms, 2 nonzero weights",
        );
        assert_eq!(
            c.to_string(),
            "PASS cwe p=3 m=2 C_D: 3 terms, 2 nonzero weights"
        );
    }
}
