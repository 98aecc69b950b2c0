use coded_caching::analysis::{
    compare_general, compare_special, memory_share, MemoryShareSpec, OperatingPoint, SchemeMetrics,
};
use coded_caching::constructions::{
    construct, construct_ext_special, construct_special, theorem_params, ConstructionParams, Family,
};
use coded_caching::pda::{
    canonicalize, emit, equivalent, params_of, parse, verify_pda, Condition, PdaArray, PdaCell,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

/// Desk-scale parameters valid for `family`.
fn small_params(family: Family) -> impl Strategy<Value = ConstructionParams> {
    (2u32..=5, 1u32..=2).prop_flat_map(move |(q, t)| {
        let t = if family.is_special() { 1 } else { t };
        (1..q, t + 1..=3).prop_map(move |(z, m)| ConstructionParams::new(q, z, m, t))
    })
}

/// Arbitrary small grids, not necessarily PDAs.
fn grid() -> impl Strategy<Value = PdaArray> {
    (1usize..6, 1usize..6).prop_flat_map(|(f, k)| {
        prop::collection::vec(prop_oneof![Just(None), (1u32..8).prop_map(Some)], f * k).prop_map(
            move |cells| {
                let cells = cells
                    .into_iter()
                    .map(|c| c.and_then(PdaCell::symbol).unwrap_or(PdaCell::Star))
                    .collect();
                PdaArray::new(f, k, cells).unwrap()
            },
        )
    })
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn lambda() -> impl Strategy<Value = BigRational> {
    (1i64..100).prop_map(|n| ratio(n, 100))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn emit_then_parse_is_identity((fam, p) in family().prop_flat_map(|f| (Just(f), small_params(f)))) {
        let arr = construct(fam, &p, 1_000_000).unwrap();
        let doc = parse(&emit(&arr)).unwrap();
        prop_assert_eq!(&doc.array, &arr);
        let params = params_of(&arr).unwrap();
        prop_assert_eq!(doc.header.z.to_string(), params.z.to_string());
        prop_assert_eq!(doc.header.s.to_string(), params.s.to_string());
    }

    #[test]
    fn parse_never_panics(text in "([0-9* #\n-]{0,6}\n?){0,6}") {
        let _ = parse(&text);
    }

    #[test]
    fn arbitrary_grids_round_trip(g in grid()) {
        let doc = parse(&emit(&g)).unwrap();
        prop_assert_eq!(doc.array, g);
    }

    #[test]
    fn canonicalize_is_idempotent_and_preserves_validity(g in grid()) {
        let c = canonicalize(&g);
        prop_assert_eq!(canonicalize(&c), c.clone());
        prop_assert!(equivalent(&g, &c));
        // Relabeling can only close symbol gaps (C2); C1 and C3 are untouched.
        let (rg, rc) = (verify_pda(&g), verify_pda(&c));
        if rg.valid {
            prop_assert!(rc.valid);
        }
        for cond in [Condition::C1, Condition::C3a, Condition::C3b] {
            prop_assert_eq!(rg.count(cond), rc.count(cond));
        }
        prop_assert_eq!(params_of(&g).ok(), params_of(&c).ok());
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(a in grid(), b in grid()) {
        prop_assert!(equivalent(&a, &a));
        prop_assert_eq!(equivalent(&a, &b), equivalent(&b, &a));
        let (ca, cb) = (canonicalize(&a), canonicalize(&b));
        prop_assert_eq!(equivalent(&a, &b), ca == cb);
        if equivalent(&a, &b) {
            prop_assert!(equivalent(&ca, &b));
        }
    }

    #[test]
    fn constructions_are_valid_and_match_closed_forms((fam, p) in family().prop_flat_map(|f| (Just(f), small_params(f)))) {
        let arr = construct(fam, &p, 1_000_000).unwrap();
        let report = verify_pda(&arr);
        prop_assert!(report.valid, "{fam} {p}: {report}");
        prop_assert_eq!(params_of(&arr).unwrap(), theorem_params(fam, &p).unwrap());
        // Deterministic: building twice gives identical arrays.
        prop_assert_eq!(construct(fam, &p, 1_000_000).unwrap(), arr);
    }

    #[test]
    fn special_families_coincide_at_z1(q in 2u32..=5, m in 1u32..=3) {
        let p = ConstructionParams::special(q, 1, m);
        prop_assert!(equivalent(&construct_special(&p).unwrap(), &construct_ext_special(&p).unwrap()));
    }

    #[test]
    fn memory_share_is_affine_in_lambda(
        (a_num, b_num) in (1i64..50, 50i64..99),
        (ra, rb) in (1i64..20, 1i64..20),
        l in lambda(),
    ) {
        let lo = SchemeMetrics::new(ratio(a_num, 100), ratio(ra, 3), 10u32.into()).unwrap();
        let hi = SchemeMetrics::new(ratio(b_num, 100), ratio(rb, 7), 20u32.into()).unwrap();
        let at = memory_share(&MemoryShareSpec::pair(lo.clone(), hi.clone(), l.clone()).unwrap());
        let flipped = memory_share(&MemoryShareSpec::pair(lo.clone(), hi.clone(), BigRational::one() - &l).unwrap());
        // Reflection: f(λ) + f(1-λ) = f(0) + f(1).
        prop_assert_eq!(&at.ratio + &flipped.ratio, &lo.ratio + &hi.ratio);
        prop_assert_eq!(&at.rate + &flipped.rate, &lo.rate + &hi.rate);
        prop_assert_eq!(at.f, Some(30u32.into()));
        prop_assert!(lo.ratio <= at.ratio && at.ratio <= hi.ratio);
    }

    #[test]
    fn advantage_implies_bounds_below_one(q in 3u32..=30, z_frac in 0.0f64..1.0, t in 1u32..=4, l in lambda()) {
        let z = 1 + ((q - 1) as f64 * z_frac) as u32;
        let z = z.min(q - 1);
        let g = compare_general(q, z, t, &l, OperatingPoint::Lattice).unwrap();
        if g.advantage {
            prop_assert!(g.r_ratio_bound_exact < BigRational::one());
            prop_assert!(g.f_ratio_actual < BigRational::one());
            // At z = q - 1 the bound 1/(q-z)^t is exactly 1.
            if z <= q - 2 {
                prop_assert!(g.f_ratio_exact < BigRational::one());
            }
        }
        prop_assert!(g.f_ratio_actual < g.f_ratio_exact);
        let s = compare_special(q, z, &l, OperatingPoint::Lattice).unwrap();
        if s.advantage {
            prop_assert!(s.r_ratio_bound_exact < BigRational::one());
            prop_assert!(s.f_ratio_exact < BigRational::one());
        }
    }
}

#[test]
fn special_f_ratio_is_an_equality() {
    // F_z / F_baseline = w/q with F_baseline = (q-1) q^m + q^m, checked exactly.
    for q in 2u32..=7 {
        for z in 1..q {
            for m in 1u32..=3 {
                let r = compare_special(q, z, &ratio(1, 2), OperatingPoint::Lattice).unwrap();
                let f_z = theorem_params(Family::Special, &ConstructionParams::special(q, z, m))
                    .unwrap()
                    .f;
                let base = BigInt::from(q).pow(m) * q;
                assert_eq!(
                    r.f_ratio_exact * BigRational::from_integer(base),
                    BigRational::from_integer(f_z.into())
                );
            }
        }
    }
}
