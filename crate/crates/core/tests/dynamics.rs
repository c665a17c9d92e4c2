use num_rational::Ratio;
use padic_dyn::dynamics::{
    classify, disjointness_matrix, distance, fixed_points, theorem_case, CaseTag, Character, FieldPolicy, PolyMap,
};
use padic_dyn::poly::Poly;
use padic_dyn::report::{find_suite, run_suite, suites, Overrides};
use padic_dyn::{ExtElement, NormValue, PadicContext, PadicNumber};

fn map(p: u64, n: u64, a: i64) -> PolyMap {
    let ctx = PadicContext::new(p, 30).unwrap();
    PolyMap::new(n, PadicNumber::from_i64(a, &ctx)).unwrap()
}

/// `v(T_m)` of `f(x0 + h) = sum T_m h^m`, expanded by repeated polynomial
/// multiplication instead of the closed-form coefficients.
fn expansion_valuations(f: &PolyMap, x0: &ExtElement) -> Vec<Option<Ratio<i64>>> {
    let k = x0.field();
    let shift = Poly::new(vec![x0.clone(), ExtElement::one(k)], k);
    let mut power = Poly::from_i64(&[1], k);
    let mut sum = Poly::from_i64(&[0], k);
    for (i, c) in f.as_poly(k).coeffs().iter().enumerate() {
        if i > 0 {
            power = power.mul(&shift);
        }
        sum = sum.add(&power.scale(c));
    }
    sum.coeffs()
        .iter()
        .map(|t| if t.is_zero_to_precision() { None } else { t.valuation().unwrap().valuation() })
        .collect()
}

const MAPS: [(u64, u64, i64); 6] = [(5, 1, 5), (5, 2, 5), (7, 3, 7), (13, 3, 13), (3, 1, 3), (7, 1, 49)];

#[test]
fn fixed_points_are_fixed_and_classified_by_multiplier() {
    for (p, n, a) in MAPS {
        let f = map(p, n, a);
        let family = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        let all = family.all();
        assert_eq!(all.len() as u64 + family.missing.0 + family.missing.1, 2 * n + 1, "({p},{n},{a})");
        for x in &all {
            let (residual, _) = distance(&f.evaluate(&x.value), &x.value).unwrap();
            assert!(residual <= NormValue::from_valuation(28), "({p},{n},{a}) {}: {residual}", x.label());
            let rec = classify(&f, x).unwrap();
            let lambda = rec.multiplier_norm;
            let expected = if lambda < NormValue::ONE {
                Character::Attracting
            } else if lambda == NormValue::ONE {
                Character::Indifferent
            } else {
                Character::Repelling
            };
            assert_eq!(rec.character, expected);
        }
    }
}

#[test]
fn radii_match_expanded_coefficients() {
    for (p, n, a) in MAPS {
        let f = map(p, n, a);
        let family = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        for x in family.all() {
            let rec = classify(&f, &x).unwrap();
            let v = expansion_valuations(&f, &x.value);
            let oracle = v
                .iter()
                .enumerate()
                .skip(2)
                .filter_map(|(m, vm)| vm.map(|vm| -vm / Ratio::from_integer(m as i64 - 1)))
                .fold(Ratio::from_integer(0), Ratio::max);
            let radius = rec.siegel_radius.or(rec.attraction_radius).expect("no repelling points here");
            assert_eq!(radius.bound, oracle, "({p},{n},{a}) {}", x.label());
        }
    }
}

#[test]
fn disjointness_matrix_is_a_symmetric_metric() {
    let f = map(13, 3, 13);
    let family = fixed_points(&f, &FieldPolicy::Auto).unwrap();
    let m = disjointness_matrix(&family.nonzero()).unwrap();
    for (i, row) in m.entries.iter().enumerate() {
        assert_eq!(row[i], NormValue::Zero);
        for (j, d) in row.iter().enumerate() {
            assert_eq!(*d, m.entries[j][i]);
            if i != j {
                assert_eq!(*d, NormValue::ONE);
            }
        }
    }
}

#[test]
fn case_tags_follow_divisibility() {
    for p in [3u64, 5, 7, 11] {
        for n in 1..=30u64 {
            let tags = theorem_case(p, n);
            let odd_coprime = (2 * n + 1) % p != 0;
            assert_eq!(tags.contains(&CaseTag::I), odd_coprime);
            assert_eq!(tags.contains(&CaseTag::V), !odd_coprime);
            assert_eq!(tags.contains(&CaseTag::Iii), odd_coprime && n % p != 0);
            let power = (0..6).any(|k| p.pow(k + 1) == n);
            assert_eq!(tags.contains(&CaseTag::Ii), power);
            assert_eq!(tags.contains(&CaseTag::Iv), n % p == 0 && !power);
        }
    }
}

#[test]
fn every_suite_is_seed_stable() {
    let small = Overrides {
        samples: Some(5),
        iters: Some(30),
        ..Overrides::default()
    };
    for s in suites().iter().filter(|s| !s.alias) {
        let a = run_suite(s, &small, false).unwrap();
        let b = run_suite(s, &small, false).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{}", s.id);
    }
    assert!(find_suite("theorem-3.12.v").unwrap().alias);
}
