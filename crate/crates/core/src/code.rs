//! The trace codes `C_D` and `C_{D,b}` and their enumerators by direct counting.
//!
//! For a defining set `D = {d_1, ..., d_n}` the codeword indexed by
//! `(a, b)` is `(Tr(a d_1) + b, ..., Tr(a d_n) + b)`. Only the composition
//! of each codeword (how many coordinates take each value of `F_p`) is ever
//! needed, so codewords are never materialized by the fast path.
//!
//! [`brute_force_cwe`] counts compositions for every `a` at once. Writing
//! `v(d) = (Tr(u^0 d), ..., Tr(u^{m-1} d))`, the coordinate `Tr(a d)` is
//! the dot product `<a, v(d)>`, so the composition of codeword `a` is the
//! histogram of `<a, v>` over the multiset `{v(d)}`. That histogram is built
//! for all `a` together by replacing one digit of `v` with a digit of `a`
//! per pass, `m` passes of `p^{m+2}` additions in total.
//! [`naive_cwe`] evaluates every coordinate of every codeword by field
//! multiplication instead, and exists to cross-check the sweep.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{check_cap, Error, Result, ENUMERATION_CAP};
use crate::field::{is_prime, legendre, FieldContext, FieldElement, PrimeElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeVariant {
    /// `{(Tr(a d_i))_i : a in F_{p^m}}`
    Cd,
    /// `{(Tr(a d_i) + b)_i : a in F_{p^m}, b in F_p}`
    Cdb,
}

impl CodeVariant {
    pub fn name(self) -> &'static str {
        match self {
            CodeVariant::Cd => "C_D",
            CodeVariant::Cdb => "C_Db",
        }
    }
}

impl fmt::Display for CodeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Parameters of one code instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub p: u64,
    pub m: usize,
    pub d: u64,
    pub variant: CodeVariant,
}

impl CodeSpec {
    /// Validates `p` odd prime, `m >= 2` and `gcd(d, (p^m - 1)/2) = 1`.
    pub fn new(p: u64, m: usize, d: u64, variant: CodeVariant) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::param("p must be an odd prime"));
        }
        if m < 2 {
            return Err(Error::param("m must be at least 2"));
        }
        if d == 0 {
            return Err(Error::param("d must be a positive integer"));
        }
        let half = p
            .checked_pow(m as u32)
            .map(|q| (q - 1) / 2)
            .ok_or_else(|| Error::param("p^m is too large"))?;
        let g = gcd(d, half);
        if g != 1 {
            return Err(Error::param(format!(
                "gcd(d, (p^m-1)/2) = gcd({d}, {half}) = {g}, expected 1"
            )));
        }
        Ok(CodeSpec { p, m, d, variant })
    }

    pub fn field(&self) -> Result<FieldContext> {
        FieldContext::new(self.p, self.m)
    }

    /// Number of codeword indices `(a, b)`: `p^m`, or `p^{m+1}` with the shift.
    pub fn codeword_count(&self) -> u64 {
        let q = self.p.pow(self.m as u32);
        match self.variant {
            CodeVariant::Cd => q,
            CodeVariant::Cdb => q * self.p,
        }
    }

    fn check_field(&self, ctx: &FieldContext) -> Result<()> {
        if u64::from(ctx.p()) != self.p || ctx.m() != self.m {
            return Err(Error::param(format!(
                "field GF({}^{}) does not match code parameters p={} m={}",
                ctx.p(),
                ctx.m(),
                self.p,
                self.m
            )));
        }
        Ok(())
    }
}

/// The coordinates `d_1, ..., d_n` of the code, in field enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    elements: Vec<FieldElement>,
}

impl DefiningSet {
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `D = {x != 0 : Tr(x^{2d}) = 0}`.
///
/// Also recomputes `{x != 0 : Tr(x^2) = 0}` and fails with an invariant
/// error if the two sets differ, which cannot happen when
/// `gcd(d, (p^m-1)/2) = 1`.
pub fn build_defining_set(ctx: &FieldContext, spec: &CodeSpec) -> Result<DefiningSet> {
    spec.check_field(ctx)?;
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    let exponent = 2 * spec.d;
    let elements = ctx
        .nonzero_elements()
        .filter(|x| ctx.trace(&ctx.pow(x, exponent)).is_zero())
        .collect();
    Ok(DefiningSet { elements })
}

/// Whether the set for `spec.d` equals the `d = 1` set `{x != 0 : Tr(x^2) = 0}`.
///
/// Equal value sets `{x^{2d}} = {x^2}` do not force equal zero sets; the sets
/// agree when `d` is congruent to a power of `p` modulo `(p^m - 1) / 2`, since
/// then `x^{2d} = (x^2)^{p^k}`, but not for every admissible `d`.
pub fn matches_square_set(ctx: &FieldContext, spec: &CodeSpec) -> Result<bool> {
    spec.check_field(ctx)?;
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    let exponent = 2 * spec.d;
    Ok(ctx
        .nonzero_elements()
        .all(|x| ctx.trace(&ctx.pow(&x, exponent)).is_zero() == ctx.square_trace(&x).is_zero()))
}

/// Symbol counts `(k_0, ..., k_{p-1})` of one codeword.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionVector(Vec<u64>);

impl CompositionVector {
    pub fn new(counts: Vec<u64>) -> Self {
        CompositionVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Code length, `sum_j k_j`.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Hamming weight, `n - k_0`.
    pub fn weight(&self) -> u64 {
        self.0[1..].iter().sum()
    }

    /// Composition after adding `b` to every coordinate: `k'_{j+b} = k_j`.
    pub fn shifted(&self, b: u32) -> Self {
        let p = self.0.len();
        let mut out = vec![0; p];
        for (j, &k) in self.0.iter().enumerate() {
            out[(j + b as usize) % p] = k;
        }
        CompositionVector(out)
    }
}

impl fmt::Display for CompositionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (j, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if wrote {
                f.write_str(" ")?;
            }
            match k {
                1 => write!(f, "w{j}")?,
                _ => write!(f, "w{j}^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// One row of a term-by-term comparison of two enumerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermDiff {
    pub composition: CompositionVector,
    pub left: u64,
    pub right: u64,
}

/// Multiset of compositions over all codeword indices.
///
/// Multiplicities count indices `a` (or `(a, b)`), so the total is always
/// `p^m` (or `p^{m+1}`) even if two indices happen to give the same word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteWeightEnumerator {
    p: u32,
    length: u64,
    terms: BTreeMap<CompositionVector, u64>,
}

impl CompleteWeightEnumerator {
    pub fn new(p: u32, length: u64) -> Self {
        CompleteWeightEnumerator {
            p,
            length,
            terms: BTreeMap::new(),
        }
    }

    /// Builds an enumerator from `(composition, multiplicity)` pairs, merging repeats.
    pub fn from_terms<I>(p: u32, length: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CompositionVector, u64)>,
    {
        let mut out = Self::new(p, length);
        for (c, k) in terms {
            if c.counts().len() != p as usize {
                return Err(Error::param(format!(
                    "composition has {} entries, expected {p}",
                    c.counts().len()
                )));
            }
            if c.length() != length {
                return Err(Error::param(format!(
                    "composition sums to {}, expected length {length}",
                    c.length()
                )));
            }
            out.add(c, k);
        }
        Ok(out)
    }

    pub(crate) fn add(&mut self, composition: CompositionVector, multiplicity: u64) {
        debug_assert_eq!(composition.length(), self.length);
        if multiplicity > 0 {
            *self.terms.entry(composition).or_insert(0) += multiplicity;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, composition: &CompositionVector) -> u64 {
        self.terms.get(composition).copied().unwrap_or(0)
    }

    /// Terms in canonical order: lexicographically descending composition.
    pub fn terms(&self) -> impl Iterator<Item = (&CompositionVector, u64)> + '_ {
        self.terms.iter().rev().map(|(c, &k)| (c, k))
    }

    pub fn weight_distribution(&self) -> WeightDistribution {
        let mut entries = BTreeMap::new();
        for (c, k) in self.terms() {
            *entries.entry(c.weight()).or_insert(0) += k;
        }
        WeightDistribution { entries }
    }

    /// Compositions whose multiplicities differ, in canonical order.
    pub fn diff(&self, other: &Self) -> Vec<TermDiff> {
        let mut keys: Vec<&CompositionVector> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        keys.dedup();
        keys.into_iter()
            .filter_map(|c| {
                let (left, right) = (self.multiplicity(c), other.multiplicity(c));
                (left != right).then(|| TermDiff {
                    composition: c.clone(),
                    left,
                    right,
                })
            })
            .collect()
    }
}

impl fmt::Display for CompleteWeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, k)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if k == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{k} {c}")?;
            }
        }
        Ok(())
    }
}

/// `A_i`, the number of codeword indices of Hamming weight `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDistribution {
    entries: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn from_entries<I: IntoIterator<Item = (u64, u64)>>(entries: I) -> Self {
        let mut out = WeightDistribution::default();
        for (w, k) in entries {
            if k > 0 {
                *out.entries.entry(w).or_insert(0) += k;
            }
        }
        out
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.entries.get(&weight).copied().unwrap_or(0)
    }

    /// `(weight, count)` in ascending weight order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&w, &k)| (w, k))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn nonzero_weight_count(&self) -> usize {
        self.entries.keys().filter(|&&w| w > 0).count()
    }

    pub fn minimum_distance(&self) -> Option<u64> {
        self.entries.keys().copied().find(|&w| w > 0)
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, k)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (w, k) {
                (0, k) => write!(f, "{k}")?,
                (1, 1) => write!(f, "z")?,
                (1, k) => write!(f, "{k} z")?,
                (w, 1) => write!(f, "z^{w}")?,
                (w, k) => write!(f, "{k} z^{w}")?,
            }
        }
        Ok(())
    }
}

/// Composition of the codeword `(Tr(a d_i) + b)_i`, by direct evaluation.
pub fn codeword_composition(
    ctx: &FieldContext,
    defining_set: &DefiningSet,
    a: &FieldElement,
    b: PrimeElement,
) -> CompositionVector {
    let p = ctx.p();
    let mut counts = vec![0u64; p as usize];
    for d in defining_set.elements() {
        let c = (ctx.trace(&ctx.mul(a, d)).value() + b.value()) % p;
        counts[c as usize] += 1;
    }
    CompositionVector(counts)
}

/// For every `a` (row `index_of(a)`), the histogram over `rho` of the
/// weighted number of vectors `v` with `<a, v> = rho`.
///
/// `weights[i]` is the multiplicity of the vector with index `i`; digit order
/// matches [`FieldContext::index_of`]. Output is row-major, `p` entries per row.
fn inner_product_profiles(p: usize, m: usize, weights: &[u32]) -> Vec<u32> {
    let size = weights.len();
    let mut table = vec![0u32; size * p];
    for (v, &w) in weights.iter().enumerate() {
        table[v * p] = w;
    }
    // digit k has stride p^{m-1-k} in the index; each pass turns the v-digit
    // at position k into the a-digit at position k
    for k in 0..m {
        let stride = p.pow((m - 1 - k) as u32);
        let block = stride * p * p;
        table.par_chunks_mut(block).for_each(|chunk| {
            let mut old = vec![0u32; p * p];
            for low in 0..stride {
                for digit in 0..p {
                    let at = (digit * stride + low) * p;
                    old[digit * p..(digit + 1) * p].copy_from_slice(&chunk[at..at + p]);
                }
                for a_digit in 0..p {
                    let at = (a_digit * stride + low) * p;
                    let row = &mut chunk[at..at + p];
                    row.fill(0);
                    for v_digit in 0..p {
                        let shift = a_digit * v_digit % p;
                        let src = &old[v_digit * p..(v_digit + 1) * p];
                        for (rho, &c) in src.iter().enumerate() {
                            row[(rho + shift) % p] += c;
                        }
                    }
                }
            }
        });
    }
    table
}

/// Complete weight enumerator by counting every codeword's composition.
pub fn brute_force_cwe(ctx: &FieldContext, spec: &CodeSpec) -> Result<CompleteWeightEnumerator> {
    spec.check_field(ctx)?;
    check_cap(spec.codeword_count(), ENUMERATION_CAP)?;
    let defining_set = build_defining_set(ctx, spec)?;
    let p = ctx.p() as usize;
    let q = ctx.order() as usize;

    let mut weights = vec![0u32; q];
    for d in defining_set.elements() {
        let v = ctx.trace_functional(d);
        let idx = v.iter().fold(0usize, |acc, &c| acc * p + c as usize);
        weights[idx] += 1;
    }
    let profiles = inner_product_profiles(p, ctx.m(), &weights);

    let n = defining_set.len() as u64;
    let mut cwe = CompleteWeightEnumerator::new(ctx.p(), n);
    for row in profiles.chunks(p) {
        let comp = CompositionVector(row.iter().map(|&c| u64::from(c)).collect());
        match spec.variant {
            CodeVariant::Cd => cwe.add(comp, 1),
            CodeVariant::Cdb => {
                for b in 0..ctx.p() {
                    cwe.add(comp.shifted(b), 1);
                }
            }
        }
    }
    Ok(cwe)
}

/// Complete weight enumerator by evaluating every coordinate of every
/// codeword. Quadratic in the field size; meant for small parameters.
pub fn naive_cwe(ctx: &FieldContext, spec: &CodeSpec) -> Result<CompleteWeightEnumerator> {
    spec.check_field(ctx)?;
    check_cap(spec.codeword_count(), ENUMERATION_CAP)?;
    let defining_set = build_defining_set(ctx, spec)?;
    let shifts = match spec.variant {
        CodeVariant::Cd => 1,
        CodeVariant::Cdb => ctx.p(),
    };
    let mut cwe = CompleteWeightEnumerator::new(ctx.p(), defining_set.len() as u64);
    for a in ctx.elements() {
        for b in 0..shifts {
            let comp =
                codeword_composition(ctx, &defining_set, &a, PrimeElement::new(b.into(), ctx.p()));
            cwe.add(comp, 1);
        }
    }
    Ok(cwe)
}

/// Rank over `F_p` of the rows `(Tr(u^i d_j))_j`, plus the all-ones row for `C_{D,b}`.
///
/// This is `log_p` of the number of distinct codewords.
pub fn measured_dimension(
    ctx: &FieldContext,
    defining_set: &DefiningSet,
    variant: CodeVariant,
) -> usize {
    let p = u64::from(ctx.p());
    let n = defining_set.len();
    let mut rows: Vec<Vec<u64>> = vec![vec![0; n]; ctx.m()];
    for (j, d) in defining_set.elements().iter().enumerate() {
        for (i, c) in ctx.trace_functional(d).into_iter().enumerate() {
            rows[i][j] = u64::from(c);
        }
    }
    if variant == CodeVariant::Cdb {
        rows.push(vec![1; n]);
    }
    rank_mod_p(rows, p)
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = crate::field::pow_mod(rows[rank][col], p - 2, p);
        for c in rows[rank].iter_mut() {
            *c = *c * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (c, &pv) in row.iter_mut().zip(&pivot_row) {
                *c = (*c + p - f * pv % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Number of distinct codewords, by materializing all of them.
pub fn count_distinct_codewords(
    ctx: &FieldContext,
    defining_set: &DefiningSet,
    variant: CodeVariant,
) -> usize {
    let shifts = match variant {
        CodeVariant::Cd => 1,
        CodeVariant::Cdb => ctx.p(),
    };
    let mut seen = HashSet::new();
    for a in ctx.elements() {
        let base: Vec<u32> = defining_set
            .elements()
            .iter()
            .map(|d| ctx.trace(&ctx.mul(&a, d)).value())
            .collect();
        for b in 0..shifts {
            seen.insert(base.iter().map(|&c| (c + b) % ctx.p()).collect::<Vec<_>>());
        }
    }
    seen.len()
}

/// `n_0 = #{x in F_{p^m} : Tr(x^2) = 0}`, zero included.
pub fn count_n0(ctx: &FieldContext) -> Result<u64> {
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    Ok(ctx
        .elements()
        .filter(|x| ctx.trace(&ctx.square(x)).is_zero())
        .count() as u64)
}

/// `N_a(rho) = #{x : Tr(x^2) = 0, Tr(a x) = rho}`.
pub fn count_na_rho(ctx: &FieldContext, a: &FieldElement, rho: PrimeElement) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::param("a must be nonzero"));
    }
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    Ok(ctx
        .elements()
        .filter(|x| ctx.trace(&ctx.square(x)).is_zero() && ctx.trace(&ctx.mul(a, x)) == rho)
        .count() as u64)
}

/// `N_a(rho)` for many `a`, sharing one pass over `Tr(x^2)`.
#[derive(Clone, Debug)]
pub struct QuadricCounter<'a> {
    ctx: &'a FieldContext,
    /// field indices of `{x : Tr(x^2) = 0}`
    zeros: Vec<FieldElement>,
}

impl<'a> QuadricCounter<'a> {
    pub fn new(ctx: &'a FieldContext) -> Result<Self> {
        let table = ctx.square_trace_table()?;
        let zeros = table
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == 0)
            .map(|(i, _)| ctx.from_index(i as u64))
            .collect();
        Ok(QuadricCounter { ctx, zeros })
    }

    pub fn n0(&self) -> u64 {
        self.zeros.len() as u64
    }

    /// `[N_a(0), ..., N_a(p-1)]`.
    pub fn profile(&self, a: &FieldElement) -> Vec<u64> {
        let p = u64::from(self.ctx.p());
        let functional = self.ctx.trace_functional(a);
        let mut out = vec![0u64; p as usize];
        for x in &self.zeros {
            let t = x
                .coords()
                .iter()
                .zip(&functional)
                .fold(0u64, |acc, (&c, &f)| {
                    (acc + u64::from(c) * u64::from(f)) % p
                });
            out[t as usize] += 1;
        }
        out
    }
}

/// `(t_0, t_1, t_{-1})`: nonzero `x` split by the Legendre symbol of `Tr(x^2)`.
pub fn count_ti(ctx: &FieldContext) -> Result<(u64, u64, u64)> {
    if ctx.m().is_multiple_of(2) {
        return Err(Error::param("t_i counts are defined for odd m only"));
    }
    check_cap(ctx.order(), ENUMERATION_CAP)?;
    let (mut t0, mut t1, mut tm1) = (0, 0, 0);
    for x in ctx.nonzero_elements() {
        match legendre(ctx.trace(&ctx.square(&x)).value(), ctx.p()) {
            0 => t0 += 1,
            1 => t1 += 1,
            _ => tm1 += 1,
        }
    }
    Ok((t0, t1, tm1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u64]) -> CompositionVector {
        CompositionVector::new(v.to_vec())
    }

    #[test]
    fn spec_validation() {
        assert!(CodeSpec::new(3, 5, 2, CodeVariant::Cd).is_ok());
        assert!(CodeSpec::new(5, 4, 5, CodeVariant::Cd).is_ok());
        assert!(CodeSpec::new(3, 4, 3, CodeVariant::Cdb).is_ok());
        let err = CodeSpec::new(3, 2, 2, CodeVariant::Cd).unwrap_err();
        assert_eq!(
            err,
            Error::Param("gcd(d, (p^m-1)/2) = gcd(2, 4) = 2, expected 1".into())
        );
        assert!(matches!(
            CodeSpec::new(4, 3, 1, CodeVariant::Cd),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            CodeSpec::new(3, 1, 1, CodeVariant::Cd),
            Err(Error::Param(_))
        ));
        assert!(matches!(
            CodeSpec::new(3, 3, 0, CodeVariant::Cd),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn defining_set_over_f9() {
        let spec = CodeSpec::new(3, 2, 1, CodeVariant::Cd).unwrap();
        let ctx = spec.field().unwrap();
        let set = build_defining_set(&ctx, &spec).unwrap();
        let coords: Vec<&[u32]> = set.elements().iter().map(|x| x.coords()).collect();
        assert_eq!(coords, vec![&[1, 1][..], &[1, 2], &[2, 1], &[2, 2]]);
    }

    #[test]
    fn defining_set_lengths() {
        for (p, m, d, n) in [(3, 5, 2, 80), (5, 4, 5, 104)] {
            let spec = CodeSpec::new(p, m, d, CodeVariant::Cd).unwrap();
            let ctx = spec.field().unwrap();
            assert_eq!(build_defining_set(&ctx, &spec).unwrap().len(), n);
        }
    }

    #[test]
    fn frobenius_exponents_keep_the_square_set() {
        let ctx = FieldContext::new(3, 4).unwrap();
        let half = (ctx.order() - 1) / 2;
        for k in 0..4 {
            let d = 3u64.pow(k) % half + half;
            let spec = CodeSpec::new(3, 4, d, CodeVariant::Cd).unwrap();
            assert!(matches_square_set(&ctx, &spec).unwrap(), "d={d}");
        }
    }

    #[test]
    fn other_exponents_can_change_the_set() {
        let spec = CodeSpec::new(3, 5, 10, CodeVariant::Cd).unwrap();
        let ctx = spec.field().unwrap();
        assert!(!matches_square_set(&ctx, &spec).unwrap());
        // same size, different code
        assert_eq!(build_defining_set(&ctx, &spec).unwrap().len(), 80);
        let d1 = CodeSpec::new(3, 5, 1, CodeVariant::Cd).unwrap();
        assert_ne!(
            brute_force_cwe(&ctx, &spec).unwrap(),
            brute_force_cwe(&ctx, &d1).unwrap()
        );
    }

    #[test]
    fn mismatched_field_is_rejected() {
        let spec = CodeSpec::new(3, 3, 1, CodeVariant::Cd).unwrap();
        let ctx = FieldContext::new(3, 2).unwrap();
        assert!(matches!(
            build_defining_set(&ctx, &spec),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn compositions_over_f9() {
        let spec = CodeSpec::new(3, 2, 1, CodeVariant::Cd).unwrap();
        let ctx = spec.field().unwrap();
        let set = build_defining_set(&ctx, &spec).unwrap();
        let zero = ctx.zero();
        assert_eq!(
            codeword_composition(&ctx, &set, &zero, ctx.prime(0)),
            comp(&[4, 0, 0])
        );
        assert_eq!(
            codeword_composition(&ctx, &set, &zero, ctx.prime(1)),
            comp(&[0, 4, 0])
        );
        let a = ctx.element(&[1, 1]).unwrap();
        assert_eq!(
            codeword_composition(&ctx, &set, &a, ctx.prime(0)),
            comp(&[2, 1, 1])
        );
    }

    #[test]
    fn enumerator_over_f9() {
        let spec = CodeSpec::new(3, 2, 1, CodeVariant::Cd).unwrap();
        let ctx = spec.field().unwrap();
        let cwe = brute_force_cwe(&ctx, &spec).unwrap();
        let terms: Vec<_> = cwe.terms().map(|(c, k)| (c.counts().to_vec(), k)).collect();
        assert_eq!(
            terms,
            vec![(vec![4, 0, 0], 1), (vec![2, 1, 1], 4), (vec![0, 2, 2], 4)]
        );
        assert_eq!(cwe.to_string(), "w0^4 + 4 w0^2 w1 w2 + 4 w1^2 w2^2");
        assert_eq!(cwe.weight_distribution().to_string(), "1 + 4 z^2 + 4 z^4");
    }

    #[test]
    fn sweep_agrees_with_direct_evaluation() {
        for (p, m, d) in [
            (3, 2, 1),
            (3, 3, 1),
            (3, 4, 1),
            (5, 2, 1),
            (5, 3, 1),
            (7, 2, 1),
            (3, 5, 2),
        ] {
            for variant in [CodeVariant::Cd, CodeVariant::Cdb] {
                let spec = CodeSpec::new(p, m, d, variant).unwrap();
                let ctx = spec.field().unwrap();
                assert_eq!(
                    brute_force_cwe(&ctx, &spec).unwrap(),
                    naive_cwe(&ctx, &spec).unwrap(),
                    "p={p} m={m} {variant}"
                );
            }
        }
    }

    #[test]
    fn rank_matches_distinct_codeword_count() {
        for (p, m) in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            for variant in [CodeVariant::Cd, CodeVariant::Cdb] {
                let spec = CodeSpec::new(p, m, 1, variant).unwrap();
                let ctx = spec.field().unwrap();
                let set = build_defining_set(&ctx, &spec).unwrap();
                let dim = measured_dimension(&ctx, &set, variant);
                let distinct = count_distinct_codewords(&ctx, &set, variant);
                assert_eq!(
                    distinct,
                    (p as usize).pow(dim as u32),
                    "p={p} m={m} {variant}"
                );
            }
        }
    }

    #[test]
    fn empty_defining_set_when_quadric_is_anisotropic() {
        // p = 1 mod 4, m = 2: Tr(x^2) only vanishes at 0
        let spec = CodeSpec::new(5, 2, 1, CodeVariant::Cdb).unwrap();
        let ctx = spec.field().unwrap();
        let set = build_defining_set(&ctx, &spec).unwrap();
        assert!(set.is_empty());
        assert_eq!(measured_dimension(&ctx, &set, CodeVariant::Cd), 0);
        assert_eq!(count_distinct_codewords(&ctx, &set, CodeVariant::Cdb), 1);
    }

    #[test]
    fn counting_examples() {
        let f9 = FieldContext::new(3, 2).unwrap();
        let one = f9.one();
        assert_eq!(count_na_rho(&f9, &one, f9.prime(0)).unwrap(), 1);
        assert_eq!(count_na_rho(&f9, &one, f9.prime(1)).unwrap(), 2);
        assert!(matches!(
            count_na_rho(&f9, &f9.zero(), f9.prime(0)),
            Err(Error::Param(_))
        ));
        assert_eq!(count_n0(&f9).unwrap(), 5);
        assert_eq!(count_n0(&FieldContext::new(3, 5).unwrap()).unwrap(), 81);
        assert_eq!(count_n0(&FieldContext::new(5, 4).unwrap()).unwrap(), 105);

        let f27 = FieldContext::new(3, 3).unwrap();
        assert_eq!(count_ti(&f27).unwrap(), (8, 6, 12));
        assert_eq!(count_ti(&FieldContext::new(5, 3).unwrap()).unwrap().0, 24);
        assert!(matches!(count_ti(&f9), Err(Error::Param(_))));
    }

    #[test]
    fn quadric_counter_matches_direct_count() {
        let ctx = FieldContext::new(5, 3).unwrap();
        let counter = QuadricCounter::new(&ctx).unwrap();
        assert_eq!(counter.n0(), count_n0(&ctx).unwrap());
        for a in ctx.nonzero_elements().step_by(7) {
            let profile = counter.profile(&a);
            for rho in 0..5 {
                assert_eq!(
                    profile[rho as usize],
                    count_na_rho(&ctx, &a, ctx.prime(rho)).unwrap()
                );
            }
            assert_eq!(profile.iter().sum::<u64>(), counter.n0());
        }
    }

    #[test]
    fn diff_lists_only_disagreements() {
        let a = CompleteWeightEnumerator::from_terms(
            3,
            2,
            [(comp(&[2, 0, 0]), 1), (comp(&[0, 1, 1]), 2)],
        )
        .unwrap();
        let b = CompleteWeightEnumerator::from_terms(
            3,
            2,
            [(comp(&[2, 0, 0]), 1), (comp(&[1, 1, 0]), 2)],
        )
        .unwrap();
        let d = a.diff(&b);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].composition, comp(&[1, 1, 0]));
        assert_eq!((d[0].left, d[0].right), (0, 2));
        assert!(a.diff(&a).is_empty());
        assert!(CompleteWeightEnumerator::from_terms(3, 2, [(comp(&[1, 0, 0]), 1)]).is_err());
    }

    #[test]
    fn capacity_is_enforced() {
        let spec = CodeSpec::new(3, 14, 1, CodeVariant::Cd).unwrap();
        let ctx = spec.field().unwrap();
        assert!(matches!(
            brute_force_cwe(&ctx, &spec),
            Err(Error::Capacity { .. })
        ));
    }
}
