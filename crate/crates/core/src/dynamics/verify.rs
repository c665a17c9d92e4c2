use num_bigint::{BigInt, RandBigInt};
use num_integer::gcd;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::orbit::distance;
use super::{FixedPoint, PolyMap};
use crate::ext::{ExtElement, ExtField};
use crate::padic::{multiplicative_order, NormValue, PadicNumber};
use crate::report::{Evidence, Relation};
use crate::roots::{newton_lift, RootsOfUnitySet};
use crate::{Error, Result};

/// Sample count, orbit length and seed of a randomized check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub samples: u32,
    pub iters: u32,
    pub seed: u64,
}

/// A unit of `field` whose constant coordinate is a random p-adic unit
/// and whose other coordinates are random integers, all below `p^digits`.
pub fn random_unit(field: &ExtField, rng: &mut ChaCha8Rng, digits: u32) -> ExtElement {
    let ctx = field.ctx();
    let p = ctx.p();
    let bound = ctx.pow_p(digits as i64 - 1).into_owned().to_biguint().expect("positive");
    let coeffs = (0..field.degree())
        .map(|i| {
            let high = BigInt::from(rng.gen_biguint_below(&bound)) * p;
            let low = if i == 0 { rng.gen_range(1..p) } else { rng.gen_range(0..p) };
            PadicNumber::from_integer(&(high + low), ctx)
        })
        .collect();
    ExtElement::from_coeffs(coeffs, field).expect("degree-many coordinates")
}

/// `x0 + p^j u` for a random unit `u`, known to the working precision.
fn sample_at(x0: &ExtElement, j: i64, rng: &mut ChaCha8Rng) -> ExtElement {
    let field = x0.field();
    let n = field.ctx().precision();
    let pj = PadicNumber::p_power(j, field.ctx());
    let u = random_unit(field, rng, n).mul_base(&pj);
    x0.add(&u).with_error_bound(Ratio::from_integer(n as i64))
}

fn describe(d: NormValue, below_precision: bool) -> String {
    if below_precision {
        format!("<= {d}")
    } else {
        d.to_string()
    }
}

/// Samples `x0 + p^j u` and checks `|f^i(x) - x0| = p^-j` exactly for
/// every `i <= iters`.
pub fn verify_sphere_invariance(
    map: &PolyMap,
    x0: &ExtElement,
    label: &str,
    j: i64,
    sampling: Sampling,
) -> Result<Vec<Evidence>> {
    let n = map.ctx().precision() as i64;
    if j < 1 || j > n - 2 {
        return Err(Error::InvalidArgument(format!("radius exponent {j} outside 1..={}", n - 2)));
    }
    let radius = NormValue::from_valuation(j);
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut evidence = Vec::new();
    for s in 0..sampling.samples {
        let mut y = sample_at(x0, j, &mut rng);
        for i in 1..=sampling.iters {
            y = map.evaluate(&y);
            let (d, below) = distance(&y, x0)?;
            if below || d != radius {
                let relation = if below || d < radius { Relation::Lt } else { Relation::Gt };
                evidence.push(Evidence::violation(
                    "sphere-invariance",
                    describe(d, below),
                    relation,
                    radius,
                    format!("{label} j={j} sample {s} iter {i}"),
                ));
                break;
            }
        }
    }
    if evidence.is_empty() {
        evidence.push(Evidence::compare(
            "sphere-invariance",
            radius,
            Relation::Eq,
            radius,
            format!("{label} j={j}: {} samples x {} iters", sampling.samples, sampling.iters),
        ));
    }
    Ok(evidence)
}

/// Samples `x0 xi + p u` for each `xi` in `translates` (just `xi = 1`
/// without it) and checks that the orbit reaches `|f^i(y) - x0| <= p^-(N-1)`
/// within `iters` steps. At the origin every step must also contract,
/// `|f(y)| < |y|`.
pub fn verify_attraction(
    map: &PolyMap,
    x0: &ExtElement,
    label: &str,
    translates: Option<&RootsOfUnitySet>,
    sampling: Sampling,
) -> Result<Vec<Evidence>> {
    let field = x0.field();
    let target = NormValue::from_valuation(map.ctx().precision() as i64 - 1);
    let centers: Vec<ExtElement> = match translates {
        Some(set) => set.members.iter().map(|xi| embed(xi, field)).collect::<Result<_>>()?,
        None => vec![ExtElement::one(field)],
    };
    let origin = x0.is_exact_zero();
    let mut evidence = Vec::new();
    for (c, xi) in centers.iter().enumerate() {
        let center = x0.mul(xi);
        let disk = match translates {
            Some(_) => format!("{label} xi[{c}]"),
            None => label.to_string(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let mut worst = NormValue::Zero;
        let mut longest = 0;
        let mut contraction = NormValue::Zero;
        let mut failed = false;
        for s in 0..sampling.samples {
            let mut y = sample_at(&center, 1, &mut rng);
            let mut reached = None;
            for i in 1..=sampling.iters {
                let next = map.evaluate(&y);
                if origin {
                    let (before, _) = distance(&y, x0)?;
                    let (after, below) = distance(&next, x0)?;
                    if !below {
                        let ratio = match (after, before) {
                            (NormValue::Finite(a), NormValue::Finite(b)) => NormValue::Finite(a - b),
                            _ => NormValue::Zero,
                        };
                        contraction = contraction.max(ratio);
                    }
                }
                y = next;
                let (d, below) = distance(&y, x0)?;
                if d <= target {
                    reached = Some((i, d));
                    break;
                }
                if i == sampling.iters {
                    evidence.push(Evidence::violation(
                        "attraction",
                        describe(d, below),
                        Relation::Gt,
                        target,
                        format!("{disk} sample {s} after {i} iters"),
                    ));
                    failed = true;
                }
            }
            if let Some((i, d)) = reached {
                worst = worst.max(d);
                longest = longest.max(i);
            }
        }
        if !failed {
            evidence.push(Evidence::compare(
                "attraction",
                worst,
                Relation::Le,
                target,
                format!("{disk}: {} samples, <= {longest} iters", sampling.samples),
            ));
        }
        if origin {
            evidence.push(Evidence::compare(
                "origin-contraction",
                contraction,
                Relation::Lt,
                NormValue::ONE,
                format!("{label}: max |f(y)|/|y| over all steps"),
            ));
        }
    }
    Ok(evidence)
}

fn embed(x: &ExtElement, field: &ExtField) -> Result<ExtElement> {
    if x.field() == field {
        return Ok(x.clone());
    }
    match x.base_part() {
        Some(b) if x.field().degree() == 1 => Ok(ExtElement::from_base(b, field)),
        _ => Err(Error::FieldMismatch),
    }
}

/// Pairwise distances between fixed points.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<NormValue>>,
}

pub fn disjointness_matrix(points: &[FixedPoint]) -> Result<DistanceMatrix> {
    let labels = points.iter().map(FixedPoint::label).collect();
    if points.len() < 2 {
        return Ok(DistanceMatrix {
            labels,
            entries: Vec::new(),
        });
    }
    let entries = points
        .iter()
        .map(|x| {
            points
                .iter()
                .map(|y| {
                    if std::ptr::eq(x, y) {
                        Ok(NormValue::Zero)
                    } else {
                        distance(&x.value, &y.value).map(|(d, _)| d)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(DistanceMatrix { labels, entries })
}

/// Degree of an unramified extension whose residue field holds every root
/// of `y^(2n+1) = c (mod p)` for units `c` of `Q_p`.
pub fn preimage_field_degree(map: &PolyMap) -> u32 {
    let p = map.ctx().p();
    multiplicative_order(p, map.degree() * (p - 1))
}

/// Lifts every simple residue solution of `f(y) = x_j` in `field` and
/// checks `|y - x_j| = 1` for each lifted `y != x_j`.
pub fn preimage_sphere_check(map: &PolyMap, xj: &ExtElement, label: &str, field: &ExtField) -> Result<Vec<Evidence>> {
    let p = map.ctx().p();
    if gcd(map.degree(), p) != 1 {
        return Err(Error::InvalidArgument(format!("2n+1 = {} is divisible by p = {p}", map.degree())));
    }
    let xj = embed(xj, field)?;
    let n = map.ctx().precision() as i64;
    let g = map.as_poly(field);
    let mut coeffs = g.coeffs().to_vec();
    coeffs[0] = coeffs[0].sub(&xj);
    let g = crate::poly::Poly::new(coeffs, field);
    let dg = g.derivative();
    let mut evidence = Vec::new();
    let mut lifted = 0;
    for idx in 0..field.residue_field_size() {
        let r = ExtElement::residue_representative(idx, field);
        if !g.eval(&r).in_maximal_ideal() {
            continue;
        }
        let location = format!("{label} residue {idx}");
        if dg.eval(&r).in_maximal_ideal() {
            evidence.push(Evidence::matches("unlifted-multiple-root", idx, idx, location));
            continue;
        }
        let (y, _) = newton_lift(&g, &r, n)?;
        let (d, below) = distance(&y, &xj)?;
        if below || d <= NormValue::from_valuation(n - 1) {
            evidence.push(Evidence::compare("preimage-is-fixed-point", d, Relation::Le, NormValue::from_valuation(n - 1), location));
            continue;
        }
        lifted += 1;
        evidence.push(Evidence::compare("preimage-distance", d, Relation::Eq, NormValue::ONE, location));
    }
    evidence.push(Evidence::matches(
        "preimages-lifted",
        lifted,
        lifted,
        format!("{label} in {}", field.describe()),
    ));
    Ok(evidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{fixed_points, FieldPolicy};
    use crate::padic::PadicContext;
    use crate::roots::nth_roots_of_unity;

    fn map(p: u64, n: u64, a: i64) -> PolyMap {
        let ctx = PadicContext::new(p, 40).unwrap();
        PolyMap::new(n, PadicNumber::from_i64(a, &ctx)).unwrap()
    }

    const QUICK: Sampling = Sampling {
        samples: 20,
        iters: 30,
        seed: 42,
    };

    fn passes(ev: &[Evidence]) -> bool {
        !ev.is_empty() && ev.iter().all(|e| !e.is_violation())
    }

    #[test]
    fn random_units_are_units() {
        let k = ExtField::cyclotomic(&PadicContext::new(5, 20).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(random_unit(&k, &mut rng, 20).valuation().unwrap(), NormValue::ONE);
        }
    }

    #[test]
    fn siegel_spheres() {
        let f = map(5, 1, 5);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        for x in fam.nonzero() {
            for j in [1, 3] {
                let ev = verify_sphere_invariance(&f, &x.value, &x.label(), j, QUICK).unwrap();
                assert!(passes(&ev), "{ev:?}");
            }
        }
        let x = &fam.roots_plus[0];
        assert!(verify_sphere_invariance(&f, x, "x", 39, QUICK).is_err());
        assert!(verify_sphere_invariance(&f, x, "x", 0, QUICK).is_err());
    }

    #[test]
    fn attracting_point_breaks_sphere_invariance() {
        let f = map(7, 3, 7);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        let ev = verify_sphere_invariance(&f, &fam.roots_plus[0], "x+1", 1, QUICK).unwrap();
        assert!(ev.iter().all(Evidence::is_violation));
        assert_eq!(ev.len(), QUICK.samples as usize);
        assert_eq!(ev[0].relation, Relation::Lt);
    }

    #[test]
    fn attraction_and_origin() {
        let f = map(7, 3, 7);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        let s = Sampling { iters: 200, ..QUICK };
        for x in fam.all() {
            let ev = verify_attraction(&f, &x.value, &x.label(), None, s).unwrap();
            assert!(passes(&ev), "{ev:?}");
        }
    }

    #[test]
    fn translated_disks_are_attracted() {
        // 2n+1 = 21 = 7 * 3
        let f = map(7, 10, 7);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        let gamma = nth_roots_of_unity(3, &fam.field).unwrap();
        let x = &fam.nonzero()[0];
        let s = Sampling { iters: 200, ..QUICK };
        let ev = verify_attraction(&f, &x.value, &x.label(), Some(&gamma), s).unwrap();
        assert!(passes(&ev), "{ev:?}");
        assert_eq!(ev.len(), 3);
    }

    #[test]
    fn distance_matrix() {
        let f = map(5, 2, 5);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        let m = disjointness_matrix(&fam.nonzero()).unwrap();
        assert_eq!(m.labels.len(), 4);
        for (i, row) in m.entries.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                assert_eq!(*d, if i == j { NormValue::Zero } else { NormValue::ONE });
            }
        }
        assert!(disjointness_matrix(&fam.nonzero()[..1]).unwrap().entries.is_empty());
    }

    #[test]
    fn shared_disks_in_cyclotomic_field() {
        let f = map(3, 3, 9);
        let fam = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        let m = disjointness_matrix(&fam.nonzero()).unwrap();
        let half = NormValue::Finite(Ratio::new(1, 2));
        for (i, row) in m.entries.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                let expected = if i == j {
                    NormValue::Zero
                } else if i / 3 == j / 3 {
                    half
                } else {
                    NormValue::ONE
                };
                assert_eq!(*d, expected, "{i} {j}");
            }
        }
    }

    #[test]
    fn preimages_on_unit_sphere() {
        let f = map(5, 1, 5);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        let degree = preimage_field_degree(&f);
        assert_eq!(degree, 2);
        let k = ExtField::unramified(f.ctx(), degree).unwrap();
        for x in fam.nonzero() {
            let ev = preimage_sphere_check(&f, &x.value, &x.label(), &k).unwrap();
            assert!(passes(&ev), "{ev:?}");
            // the cubic y^3 + 5y^2 - x splits into three simple residue roots
            assert_eq!(ev.iter().filter(|e| e.kind == "preimage-distance").count(), 2);
            assert_eq!(ev.iter().filter(|e| e.kind == "preimage-is-fixed-point").count(), 1);
        }
        let g = map(7, 3, 7);
        let x = fixed_points(&g, &FieldPolicy::Base).unwrap().roots_plus[0].clone();
        assert!(preimage_sphere_check(&g, &x, "x", &ExtField::base(g.ctx())).is_err());
    }
}
