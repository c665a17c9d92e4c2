//! The registry of named checks. Each entry carries its default
//! parameters and a runner producing evidence rows, so adding a check
//! needs no changes in the command-line front end.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::gcd;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Defaults, Overrides, SuiteConfig};
use super::{Evidence, Relation, VerificationReport};
use crate::dynamics::{
    c_pm, classify, distance, fixed_points, format_tags, preimage_field_degree, preimage_sphere_check, theorem_case,
    verify_attraction, verify_sphere_invariance, Branch, CaseTag, Character, FieldPolicy, FixedPoint,
    FixedPointFamily, PolyMap,
};
use crate::ext::{ExtElement, ExtField};
use crate::padic::{binomial_valuation, NormValue, PadicNumber};
use crate::poly::Poly;
use crate::roots::{nth_roots, nth_roots_of_unity, p_power_roots_of_unity, p_th_root};
use crate::{Error, Result};

type Runner = fn(&SuiteConfig) -> Result<Vec<Evidence>>;

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    pub defaults: Defaults,
    /// Alternative names for another entry; skipped by full runs.
    pub alias: bool,
    run: Runner,
}

const fn suite(id: &'static str, summary: &'static str, defaults: Defaults, run: Runner) -> Suite {
    Suite {
        id,
        summary,
        defaults,
        alias: false,
        run,
    }
}

const fn alias(id: &'static str, summary: &'static str, defaults: Defaults, run: Runner) -> Suite {
    Suite {
        id,
        summary,
        defaults,
        alias: true,
        run,
    }
}

static SUITES: &[Suite] = &[
    suite(
        "ultrametric",
        "strong triangle inequality and multiplicativity against a factorization oracle",
        Defaults::prime(5).sampled(10_000, 0),
        ultrametric,
    ),
    suite(
        "lemma-2.1",
        "units outside U_1(a) lie on S_1(a)",
        Defaults::prime(5).sampled(2_000, 0),
        lemma_2_1,
    ),
    suite(
        "lemma-2.2",
        "|C(n,k)| <= 1 for n <= 500",
        Defaults::prime(3).sampled(0, 0),
        lemma_2_2,
    ),
    suite(
        "lemma-2.3.2",
        "roots of unity of order prime to p lie on S_1(1)",
        Defaults::prime(3).sampled(0, 0),
        lemma_2_3_2,
    ),
    suite(
        "lemma-2.3.3",
        "|C(p^k, j)| <= 1/p for 0 < j < p^k <= 343",
        Defaults::prime(3).sampled(0, 0),
        lemma_2_3_3,
    ),
    suite(
        "lemma-2.3.4",
        "p-th roots of unity lie in U_1(1)",
        Defaults::prime(3).sampled(0, 0),
        lemma_2_3_4,
    ),
    suite(
        "lemma-3.1",
        "|c+-| = 1 and c+ c- = -1",
        Defaults::map(3, 1, "3").sampled(100, 0),
        lemma_3_1,
    ),
    suite(
        "lemma-3.2",
        "nonzero fixed points lie on S_1(0)",
        Defaults::map(5, 2, "5").sampled(0, 0),
        lemma_3_2,
    ),
    suite(
        "lemma-3.3",
        "preimages y != x_j of a fixed point lie on S_1(x_j)",
        Defaults::map(5, 1, "5").sampled(0, 0),
        lemma_3_3,
    ),
    suite(
        "theorem-3.4.i",
        "fixed points are Siegel centres with SI(x_j) = U_1(x_j)",
        Defaults::map(5, 1, "5"),
        theorem_3_4_i,
    ),
    suite(
        "theorem-3.4.ii",
        "for n = p^l the fixed points share the disk U_1(c^(1/n))",
        Defaults::map(3, 3, "9").sampled(50, 20),
        theorem_3_4_ii,
    ),
    suite(
        "lemma-3.5",
        "distinct n-th roots of c are at distance 1",
        Defaults::map(5, 2, "5").sampled(0, 0),
        lemma_3_5,
    ),
    suite(
        "lemma-3.6",
        "x_i on S_1(c^(1/n)) and disjoint Siegel disks within a family",
        Defaults::map(13, 3, "13").sampled(0, 0),
        lemma_3_6,
    ),
    suite(
        "lemma-3.7",
        "clusters xi_i eta_j share disks, different xi_i do not",
        Defaults::map(5, 10, "25").sampled(0, 0),
        lemma_3_7,
    ),
    suite(
        "lemma-3.8",
        "p | 2n+1: fixed points attract U_1(x_j)",
        Defaults::map(7, 3, "7").sampled(100, 200),
        lemma_3_8,
    ),
    suite(
        "lemma-3.9",
        "p | 2n+1: translated disks U_1(x_i xi) are attracted to x_i",
        Defaults::map(7, 10, "7").sampled(10, 200).in_field("unramified:4"),
        lemma_3_9,
    ),
    suite(
        "lemma-3.10",
        "roots of x^n = c+ and x^n = c- are at distance 1",
        Defaults::map(5, 2, "5").sampled(0, 0),
        lemma_3_10,
    ),
    suite(
        "lemma-3.11",
        "the disks of the two families are disjoint",
        Defaults::map(5, 2, "5").sampled(0, 0),
        lemma_3_11,
    ),
    suite(
        "theorem-2.4",
        "disk radii from the Taylor coefficients, cross-checked and sampled",
        Defaults::map(5, 1, "5").sampled(50, 30),
        theorem_2_4,
    ),
    suite(
        "theorem-3.12",
        "case dispatch and the checks of every applicable clause",
        Defaults::map(5, 1, "5").sampled(50, 20),
        theorem_3_12,
    ),
    alias(
        "theorem-3.12.i",
        "clause (i), see theorem-3.4.i",
        Defaults::map(5, 1, "5"),
        theorem_3_4_i,
    ),
    alias(
        "theorem-3.12.ii",
        "clause (ii), see theorem-3.4.ii",
        Defaults::map(3, 3, "9").sampled(50, 20),
        theorem_3_4_ii,
    ),
    alias(
        "theorem-3.12.iii",
        "clause (iii), see lemma-3.6 and lemma-3.11",
        Defaults::map(13, 3, "13").sampled(0, 0),
        clause_iii,
    ),
    alias(
        "theorem-3.12.iv",
        "clause (iv), see lemma-3.7",
        Defaults::map(5, 10, "25").sampled(0, 0),
        lemma_3_7,
    ),
    alias(
        "theorem-3.12.v",
        "clause (v), see lemma-3.9",
        Defaults::map(7, 10, "7").sampled(10, 200).in_field("unramified:4"),
        lemma_3_9,
    ),
];

pub fn suites() -> &'static [Suite] {
    SUITES
}

pub fn find_suite(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

pub fn run_suite(suite: &Suite, overrides: &Overrides, timing: bool) -> Result<VerificationReport> {
    let cfg = SuiteConfig::resolve(&suite.defaults, overrides)?;
    let start = Instant::now();
    let evidence = (suite.run)(&cfg)?;
    let mut report = VerificationReport::new(suite.id, cfg.params(), evidence);
    if timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn require(holds: bool, what: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("precondition fails: {what}")))
    }
}

/// `|x|` for a p-adic number, or the bound `p^-k` when it is `O(p^k)`.
fn padic_norm(x: &PadicNumber) -> NormValue {
    match x.valuation() {
        Ok(None) => NormValue::Zero,
        Ok(Some(v)) => NormValue::from_valuation(v),
        Err(_) => NormValue::from_valuation(x.abs_precision().unwrap_or(i64::MAX)),
    }
}

fn dist(x: &ExtElement, y: &ExtElement) -> Result<NormValue> {
    Ok(distance(x, y)?.0)
}

fn floor(cfg: &SuiteConfig) -> NormValue {
    NormValue::from_valuation(cfg.precision() - 2)
}

/// The map, its fixed points, and a row for every missing root.
fn load(cfg: &SuiteConfig, policy: &FieldPolicy) -> Result<(PolyMap, FixedPointFamily, Vec<Evidence>)> {
    let map = cfg.map()?;
    let family = fixed_points(&map, policy)?;
    let mut evidence = Vec::new();
    for (missing, name) in [(family.missing.0, "c+"), (family.missing.1, "c-")] {
        if missing > 0 {
            evidence.push(Evidence::not_representable(
                missing,
                format!(
                    "roots of x^{} = {name} outside {}: needs {}",
                    map.n(),
                    family.field.describe(),
                    family.hints.join("; ")
                ),
            ));
        }
    }
    Ok((map, family, evidence))
}

fn branch_points(family: &FixedPointFamily, branch: Branch) -> Vec<FixedPoint> {
    family.nonzero().into_iter().filter(|x| x.branch == branch).collect()
}

fn oracle_valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    };
    Some(count(r.numer().clone()) - count(r.denom().clone()))
}

fn oracle_norm(r: &BigRational, p: u64) -> NormValue {
    oracle_valuation(r, p).map_or(NormValue::Zero, NormValue::from_valuation)
}

/// `a / b` for norms with `a <= b` or `b != 0`.
fn quotient(a: NormValue, b: NormValue) -> NormValue {
    match (a, b) {
        (NormValue::Finite(x), NormValue::Finite(y)) => NormValue::Finite(x - y),
        _ => NormValue::Zero,
    }
}

fn random_rational(rng: &mut ChaCha8Rng, p: u64, unit: bool) -> BigRational {
    let p = p as i64;
    let mut draw = |lo: i64, hi: i64| loop {
        let x: i64 = rng.gen_range(lo..=hi);
        if !unit || x % p != 0 {
            break x;
        }
    };
    let (num, den) = (draw(-1_000_000, 1_000_000), draw(1, 10_000));
    if unit {
        return BigRational::new(num.into(), den.into());
    }
    let (kn, kd) = (rng.gen_range(0..4u32), rng.gen_range(0..3u32));
    BigRational::new(BigInt::from(num) * p.pow(kn), BigInt::from(den) * p.pow(kd))
}

fn ultrametric(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (ctx, p) = (&cfg.ctx, cfg.p());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.sampling.seed);
    let mut evidence = Vec::new();
    let mut mismatches = 0u32;
    let mut products = 0u32;
    let mut triangle = NormValue::Zero;
    let mut differing: Option<(NormValue, NormValue)> = None;
    let count = cfg.sampling.samples;
    for i in 0..count {
        let (r, s) = (random_rational(&mut rng, p, false), random_rational(&mut rng, p, false));
        let (x, y) = (PadicNumber::from_ratio(&r, ctx), PadicNumber::from_ratio(&s, ctx));
        let (sum, prod) = (x.add(&y), x.mul(&y));
        let (nx, ny, ns, np) = (x.norm()?, y.norm()?, sum.norm()?, prod.norm()?);
        let checks = [
            (nx, &r, "|x|"),
            (ny, &s, "|y|"),
            (ns, &(&r + &s), "|x+y|"),
            (np, &(&r * &s), "|xy|"),
        ];
        for (got, exact, what) in checks {
            let want = oracle_norm(exact, p);
            if got != want {
                mismatches += 1;
                evidence.push(Evidence::compare("oracle-agreement", got, Relation::Eq, want, format!("pair {i}: {what}")));
            }
        }
        if np != nx.mul(ny) {
            products += 1;
            evidence.push(Evidence::compare("multiplicativity", np, Relation::Eq, nx.mul(ny), format!("pair {i}")));
        }
        let ratio = quotient(ns, nx.max(ny));
        triangle = triangle.max(ratio);
        if nx != ny {
            differing = Some(match differing {
                None => (ratio, ratio),
                Some((lo, hi)) => (lo.min(ratio), hi.max(ratio)),
            });
        }
    }
    let location = format!("{count} seeded pairs");
    evidence.push(Evidence::matches("oracle-agreement", mismatches, 0, format!("{location}: mismatched norms")));
    evidence.push(Evidence::compare(
        "strong-triangle",
        triangle,
        Relation::Le,
        NormValue::ONE,
        format!("{location}: max |x+y| / max(|x|,|y|)"),
    ));
    if let Some((lo, hi)) = differing {
        for (v, what) in [(lo, "min"), (hi, "max")] {
            evidence.push(Evidence::compare(
                "norms-differ",
                v,
                Relation::Eq,
                NormValue::ONE,
                format!("{location}: {what} |x+y| / max(|x|,|y|) when |x| != |y|"),
            ));
        }
    }
    evidence.push(Evidence::matches("multiplicativity", products, 0, format!("{location}: |xy| != |x||y|")));
    Ok(evidence)
}

fn lemma_2_1(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (ctx, p) = (&cfg.ctx, cfg.p());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.sampling.seed);
    let mut range: Option<(NormValue, NormValue)> = None;
    let mut outside = 0u32;
    for _ in 0..cfg.sampling.samples {
        let a = PadicNumber::from_ratio(&random_rational(&mut rng, p, true), ctx);
        let x = PadicNumber::from_ratio(&random_rational(&mut rng, p, true), ctx);
        let d = x.sub(&a).norm()?;
        if d.is_small() {
            continue;
        }
        outside += 1;
        range = Some(match range {
            None => (d, d),
            Some((lo, hi)) => (lo.min(d), hi.max(d)),
        });
    }
    let mut evidence = Vec::new();
    if let Some((lo, hi)) = range {
        for (v, what) in [(lo, "min"), (hi, "max")] {
            evidence.push(Evidence::compare(
                "sphere-membership",
                v,
                Relation::Eq,
                NormValue::ONE,
                format!("{what} |x-a| over {outside} unit pairs outside U_1(a)"),
            ));
        }
    }
    Ok(evidence)
}

/// `v_p(j!)` for `j <= n`, by dividing out `p` from every factor.
fn factorial_valuations(n: u64, p: u64) -> Vec<i64> {
    let mut out = vec![0i64; n as usize + 1];
    for j in 1..=n {
        let (mut m, mut k) = (j, 0);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        out[j as usize] = out[j as usize - 1] + k;
    }
    out
}

/// Largest `|C(n, k)|` over the given pairs plus oracle mismatch rows.
fn binomial_scan(p: u64, pairs: impl Iterator<Item = (u64, u64)>, top: u64) -> (NormValue, Vec<Evidence>) {
    let fact = factorial_valuations(top, p);
    let mut largest = NormValue::Zero;
    let mut evidence = Vec::new();
    for (n, k) in pairs {
        let v = binomial_valuation(n, k, p) as i64;
        let oracle = fact[n as usize] - fact[k as usize] - fact[(n - k) as usize];
        if v != oracle {
            evidence.push(Evidence::compare(
                "oracle-agreement",
                NormValue::from_valuation(v),
                Relation::Eq,
                NormValue::from_valuation(oracle),
                format!("C({n},{k})"),
            ));
        }
        largest = largest.max(NormValue::from_valuation(v));
    }
    (largest, evidence)
}

fn lemma_2_2(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let p = cfg.p();
    let pairs = (0..=500u64).flat_map(|n| (0..=n).map(move |k| (n, k)));
    let (largest, mut evidence) = binomial_scan(p, pairs, 500);
    evidence.push(Evidence::compare(
        "binomial-norm",
        largest,
        Relation::Le,
        NormValue::ONE,
        "max |C(n,k)| over 0 <= k <= n <= 500",
    ));
    Ok(evidence)
}

fn lemma_2_3_3(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let p = cfg.p();
    let mut evidence = Vec::new();
    let mut q = p;
    while q <= 343 {
        let (largest, rows) = binomial_scan(p, (1..q).map(|j| (q, j)), q);
        evidence.extend(rows);
        evidence.push(Evidence::compare(
            "binomial-norm",
            largest,
            Relation::Le,
            NormValue::from_valuation(1),
            format!("max |C({q},j)| over 0 < j < {q}"),
        ));
        q *= p;
    }
    Ok(evidence)
}

fn lemma_2_3_2(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let field = ExtField::unramified(&cfg.ctx, 2)?;
    let m = cfg.p() * cfg.p() - 1;
    let set = nth_roots_of_unity(m, &field)?;
    let one = ExtElement::one(&field);
    let mut evidence = vec![Evidence::matches("root-count", set.len(), m, format!("order {m} in {}", field.describe()))];
    for (i, z) in set.members.iter().enumerate() {
        evidence.push(Evidence::compare(
            "root-of-unity",
            dist(&z.pow_u(m), &one)?,
            Relation::Le,
            floor(cfg),
            format!("zeta[{i}]^{m} - 1"),
        ));
    }
    for (i, z) in set.nontrivial().enumerate() {
        evidence.push(Evidence::compare(
            "unit-sphere-about-1",
            dist(z, &one)?,
            Relation::Eq,
            NormValue::ONE,
            format!("|zeta[{}] - 1|", i + 1),
        ));
    }
    Ok(evidence)
}

fn lemma_2_3_4(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let p = cfg.p();
    let set = p_power_roots_of_unity(1, &cfg.ctx)?;
    let one = ExtElement::one(&set.field);
    let expected = NormValue::Finite(Ratio::new(1, p as i64 - 1));
    let mut evidence = vec![Evidence::compare(
        "identity",
        dist(&set.members[0], &one)?,
        Relation::Eq,
        NormValue::Zero,
        "|zeta[0] - 1|",
    )];
    for (i, z) in set.members.iter().enumerate() {
        evidence.push(Evidence::compare(
            "root-of-unity",
            dist(&z.pow_u(p), &one)?,
            Relation::Le,
            floor(cfg),
            format!("zeta[{i}]^{p} - 1 in {}", set.field.describe()),
        ));
    }
    for (i, z) in set.nontrivial().enumerate() {
        let d = dist(z, &one)?;
        let location = format!("|zeta[{}] - 1|", i + 1);
        evidence.push(Evidence::compare("p-root-distance", d, Relation::Eq, expected, location.clone()));
        evidence.push(Evidence::compare("inside-unit-disk", d, Relation::Lt, NormValue::ONE, location));
    }
    Ok(evidence)
}

fn lemma_3_1(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (ctx, p) = (&cfg.ctx, cfg.p());
    let mut values: Vec<PadicNumber> = cfg.a.iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.sampling.seed);
    for _ in 0..cfg.sampling.samples {
        let unit = random_rational(&mut rng, p, true);
        let k = rng.gen_range(1..=3);
        values.push(PadicNumber::from_ratio(&unit, ctx).mul(&PadicNumber::p_power(k, ctx)));
    }
    let bound = NormValue::from_valuation(cfg.precision());
    let mut evidence = Vec::new();
    let mut norms: Option<(NormValue, NormValue)> = None;
    let (mut product, mut sum) = (NormValue::Zero, NormValue::Zero);
    for a in &values {
        let map = PolyMap::new(cfg.n.unwrap_or(1), a.clone())?;
        let (cp, cm) = c_pm(&map)?;
        for (c, name) in [(&cp, "c+"), (&cm, "c-")] {
            let v = c.norm()?;
            if v != NormValue::ONE {
                evidence.push(Evidence::compare("c-norm", v, Relation::Eq, NormValue::ONE, format!("{name} for a = {a}")));
            }
            norms = Some(match norms {
                None => (v, v),
                Some((lo, hi)) => (lo.min(v), hi.max(v)),
            });
        }
        let pr = padic_norm(&cp.mul(&cm).add(&PadicNumber::one(ctx)));
        let sm = padic_norm(&cp.add(&cm).add(a));
        for (v, what) in [(pr, "vieta-product"), (sm, "vieta-sum")] {
            if v > bound {
                evidence.push(Evidence::compare(what, v, Relation::Le, bound, format!("a = {a}")));
            }
        }
        product = product.max(pr);
        sum = sum.max(sm);
    }
    let location = format!("{} values of a", values.len());
    if let Some((lo, hi)) = norms {
        evidence.push(Evidence::compare("c-norm", lo, Relation::Eq, NormValue::ONE, format!("{location}: min |c+-|")));
        evidence.push(Evidence::compare("c-norm", hi, Relation::Eq, NormValue::ONE, format!("{location}: max |c+-|")));
    }
    evidence.push(Evidence::compare("vieta-product", product, Relation::Le, bound, format!("{location}: max |c+ c- + 1|")));
    evidence.push(Evidence::compare("vieta-sum", sum, Relation::Le, bound, format!("{location}: max |c+ + c- + a|")));
    Ok(evidence)
}

fn lemma_3_2(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    for x in family.nonzero() {
        let label = x.label();
        evidence.push(Evidence::compare(
            "fixed-point-residual",
            dist(&map.evaluate(&x.value), &x.value)?,
            Relation::Le,
            floor(cfg),
            label.clone(),
        ));
        evidence.push(Evidence::compare("unit-sphere", x.value.valuation()?, Relation::Eq, NormValue::ONE, label));
    }
    Ok(evidence)
}

fn lemma_3_3(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    require(gcd(map.degree(), cfg.p()) == 1, "gcd(2n+1, p) = 1")?;
    let (_, family, mut evidence) = load(cfg, &FieldPolicy::Base)?;
    let degree = preimage_field_degree(&map);
    if degree > 6 {
        evidence.push(Evidence::not_representable(
            u64::from(degree),
            "preimages need a residue field beyond degree 6",
        ));
        return Ok(evidence);
    }
    let field = if degree == 1 {
        ExtField::base(&cfg.ctx)
    } else {
        ExtField::unramified(&cfg.ctx, degree)?
    };
    for x in family.nonzero() {
        evidence.extend(preimage_sphere_check(&map, &x.value, &x.label(), &field)?);
    }
    Ok(evidence)
}

fn siegel_radius_row(map: &PolyMap, x: &FixedPoint) -> Result<Evidence> {
    let rec = classify(map, x)?;
    let radius = rec.siegel_radius.map_or_else(|| format!("{:?}", rec.character).to_lowercase(), |r| r.to_string());
    Ok(Evidence::matches("siegel-radius", radius, "all r < 1", x.label()))
}

fn theorem_3_4_i(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    require(gcd(map.degree(), cfg.p()) == 1, "gcd(2n+1, p) = 1")?;
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    for x in family.nonzero() {
        let rec = classify(&map, &x)?;
        evidence.push(Evidence::compare("multiplier", rec.multiplier_norm, Relation::Eq, NormValue::ONE, x.label()));
        evidence.push(siegel_radius_row(&map, &x)?);
        for j in 1..=4.min(cfg.precision() - 2) {
            evidence.extend(verify_sphere_invariance(&map, &x.value, &x.label(), j, cfg.sampling)?);
        }
    }
    Ok(evidence)
}

/// `c^(1/p^l)` in `Q_p` by repeated p-th roots.
fn p_power_root(c: &PadicNumber, levels: u32) -> Result<Option<PadicNumber>> {
    let mut x = c.clone();
    for _ in 0..levels {
        match p_th_root(&x)? {
            Some(y) => x = y,
            None => return Ok(None),
        }
    }
    Ok(Some(x))
}

fn p_adic_split(mut n: u64, p: u64) -> (u32, u64) {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (k, n)
}

fn theorem_3_4_ii(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    let (levels, rest) = p_adic_split(map.n(), cfg.p());
    require(levels > 0 && rest == 1, "n = p^l")?;
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    let sampling = cfg.sampling;
    for branch in [Branch::Plus, Branch::Minus] {
        let c = family.c(branch).expect("nonzero branch");
        let points = branch_points(&family, branch);
        let Some(eta) = p_power_root(c, levels)? else {
            evidence.push(Evidence::not_representable(
                map.n(),
                format!("c^(1/{}) for c = {c} is not in Q_{}", map.n(), cfg.p()),
            ));
            continue;
        };
        let eta = ExtElement::from_base(&eta, &family.field);
        for (i, x) in points.iter().enumerate() {
            let label = x.label();
            evidence.push(Evidence::compare(
                "shared-disk",
                dist(&x.value, &eta)?,
                Relation::Lt,
                NormValue::ONE,
                format!("{label} vs c^(1/n)"),
            ));
            for y in &points[i + 1..] {
                evidence.push(Evidence::compare(
                    "same-disk",
                    dist(&x.value, &y.value)?,
                    Relation::Lt,
                    NormValue::ONE,
                    format!("{label} vs {}", y.label()),
                ));
            }
            evidence.push(siegel_radius_row(&map, x)?);
            for j in 1..=2.min(cfg.precision() - 2) {
                evidence.extend(verify_sphere_invariance(&map, &x.value, &label, j, sampling)?);
            }
        }
    }
    Ok(evidence)
}

fn lemma_3_5(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    require(gcd(map.n(), cfg.p()) == 1, "gcd(n, p) = 1")?;
    let (_, family, mut evidence) = load(cfg, &cfg.field)?;
    for branch in [Branch::Plus, Branch::Minus] {
        let points = branch_points(&family, branch);
        for (i, x) in points.iter().enumerate() {
            for y in &points[i + 1..] {
                evidence.push(Evidence::compare(
                    "root-distance",
                    dist(&x.value, &y.value)?,
                    Relation::Eq,
                    NormValue::ONE,
                    format!("{} vs {}", x.label(), y.label()),
                ));
            }
        }
    }
    Ok(evidence)
}

fn lemma_3_6(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    require(gcd(map.degree(), cfg.p()) == 1, "gcd(2n+1, p) = 1")?;
    require(gcd(map.n(), cfg.p()) == 1, "gcd(n, p) = 1")?;
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    for branch in [Branch::Plus, Branch::Minus] {
        let points = branch_points(&family, branch);
        let Some(eta) = points.first() else { continue };
        for (i, x) in points.iter().enumerate() {
            evidence.push(siegel_radius_row(&map, x)?);
            if i > 0 {
                evidence.push(Evidence::compare(
                    "sphere-about-root",
                    dist(&x.value, &eta.value)?,
                    Relation::Eq,
                    NormValue::ONE,
                    format!("{} vs c^(1/n) = {}", x.label(), eta.label()),
                ));
            }
            for y in &points[i + 1..] {
                evidence.push(Evidence::compare(
                    "disjoint-siegel-disks",
                    dist(&x.value, &y.value)?,
                    Relation::Eq,
                    NormValue::ONE,
                    format!("{} vs {}", x.label(), y.label()),
                ));
            }
        }
    }
    Ok(evidence)
}

fn lemma_3_7(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    let p = cfg.p();
    let (k, m) = p_adic_split(map.n(), p);
    require(k > 0, "p | n")?;
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    if k > 1 {
        evidence.push(Evidence::not_representable(map.n(), format!("clusters need p^{k}-th roots of unity")));
        return Ok(evidence);
    }
    if !family.field.is_cyclotomic() {
        evidence.push(Evidence::not_representable(
            map.n(),
            format!("clusters need Q_{p}(zeta_{p}), got {}", family.field.describe()),
        ));
        return Ok(evidence);
    }
    let field = &family.field;
    let xis = match nth_roots_of_unity(m, &ExtField::base(&cfg.ctx)) {
        Ok(set) => set.members,
        Err(Error::RootsOfUnityNotInField { suggested_degree, .. }) => {
            evidence.push(Evidence::not_representable(
                m,
                format!("{m}-th roots of unity need residue degree {suggested_degree}"),
            ));
            return Ok(evidence);
        }
        Err(e) => return Err(e),
    };
    let zetas = p_power_roots_of_unity(1, &cfg.ctx)?.members;
    let base = ExtField::base(&cfg.ctx);
    for branch in [Branch::Plus, Branch::Minus] {
        let c = family.c(branch).expect("nonzero branch");
        // one n-th root: an m-th root of c, then its p-th root
        let w = nth_roots(&ExtElement::from_base(c, &base), m)?.roots.into_iter().next();
        let eta = match w.as_ref().and_then(ExtElement::base_part) {
            Some(w) => p_th_root(w)?,
            None => None,
        };
        let Some(eta) = eta else {
            evidence.push(Evidence::not_representable(map.n(), format!("c^(1/{}) for c = {c} is not in Q_{p}", map.n())));
            continue;
        };
        let eta = ExtElement::from_base(&eta, field);
        let mut cluster: Vec<(usize, usize, FixedPoint)> = Vec::new();
        for (i, xi) in xis.iter().enumerate() {
            let xi = ExtElement::from_base(&xi.coeffs()[0], field);
            for (j, zeta) in zetas.iter().enumerate() {
                cluster.push((
                    i,
                    j,
                    FixedPoint {
                        branch,
                        index: i * zetas.len() + j + 1,
                        value: xi.mul(&eta).mul(zeta),
                    },
                ));
            }
        }
        let sign = if branch == Branch::Plus { "+" } else { "-" };
        evidence.push(Evidence::matches(
            "cluster-count",
            cluster.len(),
            branch_points(&family, branch).len(),
            format!("c{sign}: xi_i eta_j versus fixed points found"),
        ));
        let name = |i: usize, j: usize| format!("c{sign}[{i},{j}]");
        for (n, (i, j, x)) in cluster.iter().enumerate() {
            evidence.push(Evidence::compare(
                "fixed-point-residual",
                dist(&map.evaluate(&x.value), &x.value)?,
                Relation::Le,
                floor(cfg),
                name(*i, *j),
            ));
            let rec = classify(&map, x)?;
            let radius = rec.siegel_radius.map_or("none".to_string(), |r| r.to_string());
            evidence.push(Evidence::matches("siegel-radius", radius, "all r < 1", name(*i, *j)));
            for (k, l, y) in &cluster[n + 1..] {
                let d = dist(&x.value, &y.value)?;
                let location = format!("{} vs {}", name(*i, *j), name(*k, *l));
                evidence.push(if i == k {
                    Evidence::compare("shared-disk", d, Relation::Lt, NormValue::ONE, location)
                } else {
                    Evidence::compare("disjoint-disks", d, Relation::Eq, NormValue::ONE, location)
                });
            }
        }
    }
    Ok(evidence)
}

fn lemma_3_8(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    require(map.degree() % cfg.p() == 0, "p | 2n+1")?;
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    let bound = NormValue::from_valuation(1);
    for x in family.all() {
        let rec = classify(&map, &x)?;
        let label = x.label();
        evidence.push(Evidence::compare("multiplier", rec.multiplier_norm, Relation::Le, bound, label.clone()));
        let radius = rec.attraction_radius.map_or("none".to_string(), |r| r.to_string());
        evidence.push(Evidence::matches("attraction-radius", radius, "all r < 1", label.clone()));
        evidence.extend(verify_attraction(&map, &x.value, &label, None, cfg.sampling)?);
    }
    Ok(evidence)
}

fn lemma_3_9(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let map = cfg.map()?;
    let (k, m) = p_adic_split(map.degree(), cfg.p());
    require(k > 0, "p | 2n+1")?;
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    let gamma = match nth_roots_of_unity(m, &family.field) {
        Ok(set) => set,
        Err(Error::RootsOfUnityNotInField { suggested_degree, .. }) => {
            evidence.push(Evidence::not_representable(
                m,
                format!("{m}-th roots of unity need residue degree {suggested_degree}"),
            ));
            return Ok(evidence);
        }
        Err(e) => return Err(e),
    };
    evidence.push(Evidence::matches("translate-count", gamma.len(), m, format!("{m}-th roots of unity")));
    for x in family.nonzero() {
        evidence.extend(verify_attraction(&map, &x.value, &x.label(), Some(&gamma), cfg.sampling)?);
    }
    Ok(evidence)
}

fn lemma_3_10(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (_, family, mut evidence) = load(cfg, &cfg.field)?;
    evidence.push(Evidence::compare(
        "c-distance",
        padic_norm(&family.c_plus.sub(&family.c_minus)),
        Relation::Eq,
        NormValue::ONE,
        "|c+ - c-|",
    ));
    for x in branch_points(&family, Branch::Plus) {
        for y in branch_points(&family, Branch::Minus) {
            evidence.push(Evidence::compare(
                "cross-family-distance",
                dist(&x.value, &y.value)?,
                Relation::Eq,
                NormValue::ONE,
                format!("{} vs {}", x.label(), y.label()),
            ));
        }
    }
    Ok(evidence)
}

/// Siegel disks when the points are indifferent, basins when they attract;
/// either way the disks are `U_1(x)` and disjoint exactly when `|x - y| = 1`.
fn lemma_3_11(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    let minus = branch_points(&family, Branch::Minus);
    for x in family.nonzero() {
        let rec = classify(&map, &x)?;
        let (kind, radius) = match rec.character {
            Character::Attracting => ("attraction-radius", rec.attraction_radius),
            _ => ("siegel-radius", rec.siegel_radius),
        };
        let radius = radius.map_or("none".to_string(), |r| r.to_string());
        evidence.push(Evidence::matches(kind, radius, "all r < 1", x.label()));
    }
    for x in branch_points(&family, Branch::Plus) {
        for y in &minus {
            evidence.push(Evidence::compare(
                "disjoint-disks",
                dist(&x.value, &y.value)?,
                Relation::Eq,
                NormValue::ONE,
                format!("{} vs {}", x.label(), y.label()),
            ));
        }
    }
    Ok(evidence)
}

fn clause_iii(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let mut evidence = lemma_3_6(cfg)?;
    evidence.extend(lemma_3_11(cfg)?);
    Ok(evidence)
}

/// Radius bound recomputed from the coefficients of `f(x0 + h)`.
fn expansion_bound(map: &PolyMap, x0: &ExtElement, first: usize) -> Result<Option<Ratio<i64>>> {
    let k = x0.field();
    let shift = Poly::new(vec![x0.clone(), ExtElement::one(k)], k);
    let mut power = Poly::from_i64(&[1], k);
    let mut expanded = Poly::from_i64(&[0], k);
    for (i, c) in map.as_poly(k).coeffs().iter().enumerate() {
        if i > 0 {
            power = power.mul(&shift);
        }
        expanded = expanded.add(&power.scale(c));
    }
    let mut bound: Option<Ratio<i64>> = None;
    for (m, t) in expanded.coeffs().iter().enumerate().skip(first) {
        if t.is_zero_to_precision() {
            continue;
        }
        let v = match t.valuation() {
            Ok(v) => v.valuation(),
            Err(Error::PrecisionUnderflow { .. }) => continue,
            Err(e) => return Err(e),
        };
        let Some(v) = v else { continue };
        if m == 1 {
            if v <= Ratio::zero() {
                return Ok(None);
            }
            continue;
        }
        let b = -v / Ratio::from_integer(m as i64 - 1);
        bound = Some(bound.map_or(b, |x| x.max(b)));
    }
    Ok(bound)
}

fn theorem_2_4(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let (map, family, mut evidence) = load(cfg, &cfg.field)?;
    for x in family.all() {
        let rec = classify(&map, &x)?;
        let label = x.label();
        let (radius, first) = match rec.character {
            Character::Attracting => (rec.attraction_radius, 1),
            Character::Indifferent => (rec.siegel_radius, 2),
            Character::Repelling => {
                evidence.push(Evidence::matches("repelling", "no disk", "no disk", label));
                continue;
            }
        };
        let oracle = expansion_bound(&map, &x.value, first)?;
        let shown = |b: Option<Ratio<i64>>| b.map_or("none".to_string(), |b| NormValue::Finite(b).to_string());
        evidence.push(Evidence::matches(
            "radius-oracle",
            shown(radius.map(|r| r.bound)),
            shown(oracle),
            format!("{label}: sup radius vs f(x0+h) expansion"),
        ));
        let Some(radius) = radius else { continue };
        match rec.character {
            Character::Indifferent if radius.largest_integer <= cfg.precision() - 2 => {
                evidence.extend(verify_sphere_invariance(
                    &map,
                    &x.value,
                    &label,
                    radius.largest_integer.max(1),
                    cfg.sampling,
                )?);
            }
            Character::Attracting => {
                evidence.extend(verify_attraction(&map, &x.value, &label, None, cfg.sampling)?);
            }
            _ => {}
        }
    }
    Ok(evidence)
}

/// Reference instances of the case analysis.
const DISPATCH: &[(u64, u64, &str)] = &[
    (5, 1, "{i,iii}"),
    (3, 3, "{i,ii}"),
    (7, 3, "{v}"),
    (3, 6, "{i,iv}"),
    (3, 1, "{v}"),
    // 2n+1 = 11 = p
    (11, 5, "{v}"),
    (11, 4, "{i,iii}"),
];

fn theorem_3_12(cfg: &SuiteConfig) -> Result<Vec<Evidence>> {
    let mut evidence: Vec<Evidence> = DISPATCH
        .iter()
        .map(|&(p, n, want)| Evidence::matches("dispatch", format_tags(&theorem_case(p, n)), want, format!("p={p} n={n}")))
        .collect();
    let map = cfg.map()?;
    for tag in theorem_case(cfg.p(), map.n()) {
        let run: Runner = match tag {
            CaseTag::I => theorem_3_4_i,
            CaseTag::Ii => theorem_3_4_ii,
            CaseTag::Iii => clause_iii,
            CaseTag::Iv => lemma_3_7,
            CaseTag::V => lemma_3_9,
        };
        for mut e in run(cfg)? {
            e.location = format!("({tag}) {}", e.location);
            evidence.push(e);
        }
    }
    Ok(evidence)
}
