use std::collections::BTreeSet;

use trace_codes::closed_form::{predicted_length, predicted_n0};
use trace_codes::code::{codeword_composition, count_distinct_codewords, QuadricCounter};
use trace_codes::verify::{grid, within_cap};
use trace_codes::{
    brute_force_cwe, build_defining_set, matches_square_set, predicted_cwe_cd, predicted_cwe_cdb,
    predicted_wd_cd, predicted_wd_cdb, CodeSpec, CodeVariant, CompleteWeightEnumerator,
    FieldContext, PrimeElement,
};

/// Points walked codeword by codeword; brute-force sweeps cover the full grid elsewhere.
const SMALL_CAP: u64 = 3_000;
const GRID_CAP: u64 = 200_000;

fn small_points() -> Vec<(u64, usize)> {
    let mut points: Vec<_> = grid(&[3, 5, 7, 11, 13], 7)
        .into_iter()
        .filter(|&(p, m)| within_cap(p, m, SMALL_CAP))
        .collect();
    points.sort();
    points
}

fn spec(p: u64, m: usize, variant: CodeVariant) -> (FieldContext, CodeSpec) {
    let spec = CodeSpec::new(p, m, 1, variant).unwrap();
    (spec.field().unwrap(), spec)
}

#[test]
fn distinct_codewords_match_the_dimension() {
    for (p, m) in small_points() {
        for variant in [CodeVariant::Cd, CodeVariant::Cdb] {
            let (ctx, spec) = spec(p, m, variant);
            let set = build_defining_set(&ctx, &spec).unwrap();
            if set.is_empty() {
                continue;
            }
            let k = m as u32 + u32::from(variant == CodeVariant::Cdb);
            let distinct = count_distinct_codewords(&ctx, &set, variant);
            assert_eq!(distinct as u64, p.pow(k), "p={p} m={m} {variant}");
        }
    }
}

#[test]
fn empty_defining_sets_are_exactly_p_1_mod_4_with_m_2() {
    let empty: Vec<_> = grid(&[3, 5, 7, 11, 13, 17], 6)
        .into_iter()
        .filter(|&(p, m)| within_cap(p, m, GRID_CAP))
        .filter(|&(p, m)| {
            let (ctx, spec) = spec(p, m, CodeVariant::Cd);
            build_defining_set(&ctx, &spec).unwrap().is_empty()
        })
        .collect();
    assert_eq!(empty, vec![(5, 2), (13, 2), (17, 2)]);
    for (p, m) in empty {
        assert_eq!(predicted_length(p, m), 0);
    }
}

#[test]
fn b_slices_of_cdb_are_shifted_copies_of_cd() {
    for (p, m) in small_points() {
        let (ctx, cd) = spec(p, m, CodeVariant::Cd);
        let (_, cdb) = spec(p, m, CodeVariant::Cdb);
        let set = build_defining_set(&ctx, &cd).unwrap();
        let n = set.len() as u64;
        let slice = |b: u32| {
            let comps = ctx.elements().map(|a| {
                (
                    codeword_composition(&ctx, &set, &a, PrimeElement::new(b.into(), ctx.p())),
                    1,
                )
            });
            CompleteWeightEnumerator::from_terms(ctx.p(), n, comps).unwrap()
        };
        let cd_cwe = brute_force_cwe(&ctx, &cd).unwrap();
        assert_eq!(slice(0), cd_cwe, "p={p} m={m}");

        let all = (0..ctx.p()).flat_map(|b| {
            cd_cwe
                .terms()
                .map(move |(c, k)| (c.shifted(b), k))
                .collect::<Vec<_>>()
        });
        let union = CompleteWeightEnumerator::from_terms(ctx.p(), n, all).unwrap();
        assert_eq!(union, brute_force_cwe(&ctx, &cdb).unwrap(), "p={p} m={m}");
    }
}

#[test]
fn codeword_counts_are_slice_counts_minus_origin() {
    for (p, m) in small_points() {
        let (ctx, cd) = spec(p, m, CodeVariant::Cd);
        let set = build_defining_set(&ctx, &cd).unwrap();
        let counter = QuadricCounter::new(&ctx).unwrap();
        assert_eq!(counter.n0() as i64, predicted_n0(p, m));
        for a in ctx.nonzero_elements() {
            let comp = codeword_composition(&ctx, &set, &a, PrimeElement::new(0, ctx.p()));
            let profile = counter.profile(&a);
            assert_eq!(profile.iter().sum::<u64>(), counter.n0());
            for (rho, (&k, &big_n)) in comp.counts().iter().zip(&profile).enumerate() {
                assert_eq!(
                    k,
                    big_n - u64::from(rho == 0),
                    "p={p} m={m} a={a:?} rho={rho}"
                );
            }
        }
    }
}

#[test]
fn enumerators_conserve_totals_and_lengths() {
    for (p, m) in small_points() {
        for variant in [CodeVariant::Cd, CodeVariant::Cdb] {
            let (ctx, spec) = spec(p, m, variant);
            let e = brute_force_cwe(&ctx, &spec).unwrap();
            let k = m as u32 + u32::from(variant == CodeVariant::Cdb);
            assert_eq!(e.total(), p.pow(k));
            let n = predicted_length(p, m) as u64;
            assert!(e.terms().all(|(c, _)| c.length() == n));
        }
    }
}

/// `d` with `d = p^k mod (q-1)/2` for some `k`.
fn is_frobenius_exponent(p: u64, m: usize, d: u64) -> bool {
    let half = (p.pow(m as u32) - 1) / 2;
    (0..m as u32).any(|k| p.pow(k) % half == d % half)
}

#[test]
fn frobenius_exponents_keep_the_defining_set() {
    for (p, m) in small_points() {
        let (ctx, _) = spec(p, m, CodeVariant::Cd);
        let reference =
            brute_force_cwe(&ctx, &CodeSpec::new(p, m, 1, CodeVariant::Cd).unwrap()).unwrap();
        for d in 1..=50 {
            let Ok(s) = CodeSpec::new(p, m, d, CodeVariant::Cd) else {
                continue;
            };
            if is_frobenius_exponent(p, m, d) {
                assert!(matches_square_set(&ctx, &s).unwrap(), "p={p} m={m} d={d}");
                assert_eq!(brute_force_cwe(&ctx, &s).unwrap(), reference);
            }
        }
    }
}

#[test]
fn other_exponents_can_change_the_code() {
    // admissible, not a power of 3 mod 121, and the enumerator moves
    let s = CodeSpec::new(3, 5, 10, CodeVariant::Cd).unwrap();
    let ctx = s.field().unwrap();
    assert!(!matches_square_set(&ctx, &s).unwrap());
    assert_eq!(build_defining_set(&ctx, &s).unwrap().len(), 80);
    assert_ne!(
        brute_force_cwe(&ctx, &s).unwrap(),
        predicted_cwe_cd(3, 5).unwrap()
    );

    // d = 2 changes the set at (3,5) but not the enumerator
    let s = CodeSpec::new(3, 5, 2, CodeVariant::Cd).unwrap();
    assert!(!matches_square_set(&ctx, &s).unwrap());
    assert_eq!(
        brute_force_cwe(&ctx, &s).unwrap(),
        predicted_cwe_cd(3, 5).unwrap()
    );
}

#[test]
fn weight_tables_follow_from_the_enumerators() {
    for (p, m) in grid(&[3, 5, 7, 11, 13], 8) {
        assert_eq!(
            predicted_cwe_cd(p, m).unwrap().weight_distribution(),
            predicted_wd_cd(p, m).unwrap(),
            "p={p} m={m}"
        );
        assert_eq!(
            predicted_cwe_cdb(p, m).unwrap().weight_distribution(),
            predicted_wd_cdb(p, m).unwrap(),
            "p={p} m={m}"
        );
    }
}

#[test]
fn cdb_has_at_most_seven_or_five_nonzero_weights() {
    let mut merged = BTreeSet::new();
    for (p, m) in grid(&[3, 5, 7, 11], 6) {
        let count = predicted_wd_cdb(p, m).unwrap().nonzero_weight_count();
        let bound = if m % 2 == 1 { 7 } else { 5 };
        assert!(count <= bound, "p={p} m={m}: {count} weights");
        if count < bound {
            merged.insert((p, m, count));
        }
        println!("C_Db p={p} m={m}: {count} nonzero weights (bound {bound})");
    }
    // fewer weights only where families coincide or vanish
    println!("below the bound: {merged:?}");
    assert!(merged.contains(&(3, 2, 3)));
}
