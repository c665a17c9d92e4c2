use std::fmt;

use num_integer::gcd;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::{FixedPoint, PolyMap};
use crate::ext::ExtElement;
use crate::padic::NormValue;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    Attracting,
    Indifferent,
    Repelling,
}

impl Character {
    pub fn of(multiplier: NormValue) -> Self {
        match multiplier.cmp(&NormValue::ONE) {
            std::cmp::Ordering::Less => Character::Attracting,
            std::cmp::Ordering::Equal => Character::Indifferent,
            std::cmp::Ordering::Greater => Character::Repelling,
        }
    }
}

/// An open disk radius: every `r < p^-bound` satisfies the disk condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiskRadius {
    pub bound: Ratio<i64>,
    /// Smallest integer `j` with `p^-j` inside the admissible range.
    pub largest_integer: i64,
}

impl DiskRadius {
    fn new(bound: Ratio<i64>) -> Self {
        Self {
            bound,
            largest_integer: bound.floor().to_integer() + 1,
        }
    }

    pub fn sup(&self) -> NormValue {
        NormValue::Finite(self.bound)
    }

    /// Whether `r = p^-rho` satisfies the condition.
    pub fn admits(&self, rho: Ratio<i64>) -> bool {
        rho > self.bound
    }
}

impl fmt::Display for DiskRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bound.is_zero() {
            write!(f, "all r < 1")
        } else {
            write!(f, "all r < {}", self.sup())
        }
    }
}

impl Serialize for DiskRadius {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DiskRadius", 3)?;
        st.serialize_field("sup", &self.sup())?;
        st.serialize_field("exclusive", &true)?;
        st.serialize_field("largest", &NormValue::from_valuation(self.largest_integer))?;
        st.end()
    }
}

/// Clauses of the case analysis for the map with parameters `(p, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "i",
            CaseTag::Ii => "ii",
            CaseTag::Iii => "iii",
            CaseTag::Iv => "iv",
            CaseTag::V => "v",
        })
    }
}

/// `{i, iii}` style rendering.
pub fn format_tags(tags: &[CaseTag]) -> String {
    let inner: Vec<String> = tags.iter().map(CaseTag::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn theorem_case(p: u64, n: u64) -> Vec<CaseTag> {
    let mut tags = Vec::new();
    let odd_coprime = gcd(2 * n + 1, p) == 1;
    if odd_coprime {
        tags.push(CaseTag::I);
    }
    if is_power_of(n, p) {
        tags.push(CaseTag::Ii);
    }
    if odd_coprime && gcd(n, p) == 1 {
        tags.push(CaseTag::Iii);
    }
    if n.is_multiple_of(p) && !is_power_of(n, p) {
        tags.push(CaseTag::Iv);
    }
    if !odd_coprime {
        tags.push(CaseTag::V);
    }
    tags
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointRecord {
    pub label: String,
    #[serde(serialize_with = "display")]
    pub value: ExtElement,
    #[serde(serialize_with = "display")]
    pub multiplier: ExtElement,
    pub multiplier_norm: NormValue,
    pub character: Character,
    pub siegel_radius: Option<DiskRadius>,
    pub attraction_radius: Option<DiskRadius>,
    pub case_tags: Vec<CaseTag>,
    /// The origin, which the usual list `x_1..x_2n` leaves out.
    pub paper_omitted: bool,
}

fn display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Valuation of `x`, falling back to the guaranteed lower bound when the
/// value is lost in the precision. `None` is `+inf`.
fn valuation_or_bound(x: &ExtElement) -> Result<Option<Ratio<i64>>> {
    match x.valuation() {
        Ok(v) => Ok(v.valuation()),
        Err(Error::PrecisionUnderflow { .. }) => Ok(x.coordinate_lower_bound()),
        Err(e) => Err(e),
    }
}

/// Radius condition `max_m |f^(m)(x0)/m!| r^(m-1) < 1` over `m >= first`.
/// Only `m <= 2n + 1` matter since `f` is a polynomial.
pub fn disk_radius(map: &PolyMap, x0: &ExtElement, first: u64) -> Result<Option<DiskRadius>> {
    let mut bound = Ratio::zero();
    for m in first..=map.degree() {
        let Some(v) = valuation_or_bound(&map.taylor_coefficient(x0, m))? else {
            continue;
        };
        if m == 1 {
            if v <= Ratio::zero() {
                return Ok(None);
            }
            continue;
        }
        bound = bound.max(-v / Ratio::from_integer(m as i64 - 1));
    }
    Ok(Some(DiskRadius::new(bound)))
}

pub fn classify(map: &PolyMap, fp: &FixedPoint) -> Result<FixedPointRecord> {
    let x0 = &fp.value;
    let multiplier = map.derivative(x0);
    let multiplier_norm = if multiplier.is_exact_zero() {
        NormValue::Zero
    } else {
        multiplier.valuation()?
    };
    let character = Character::of(multiplier_norm);
    let (siegel_radius, attraction_radius) = match character {
        Character::Attracting => (None, disk_radius(map, x0, 1)?),
        Character::Indifferent => (disk_radius(map, x0, 2)?, None),
        Character::Repelling => (None, None),
    };
    Ok(FixedPointRecord {
        label: fp.label(),
        value: x0.clone(),
        multiplier,
        multiplier_norm,
        character,
        siegel_radius,
        attraction_radius,
        case_tags: theorem_case(map.ctx().p(), map.n()),
        paper_omitted: x0.is_exact_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{fixed_points, FieldPolicy};
    use crate::ext::ExtField;
    use crate::padic::{PadicContext, PadicNumber};
    use crate::poly::Poly;
    use CaseTag::*;

    fn map(p: u64, n: u64, a: i64) -> PolyMap {
        let ctx = PadicContext::new(p, 30).unwrap();
        PolyMap::new(n, PadicNumber::from_i64(a, &ctx)).unwrap()
    }

    #[test]
    fn dispatch_table() {
        assert_eq!(theorem_case(5, 1), [I, Iii]);
        assert_eq!(theorem_case(3, 3), [I, Ii]);
        assert_eq!(theorem_case(7, 3), [V]);
        assert_eq!(theorem_case(3, 6), [I, Iv]);
        assert_eq!(theorem_case(3, 1), [V]);
        // 2n+1 = 11 = p
        assert_eq!(theorem_case(11, 5), [V]);
        assert_eq!(theorem_case(11, 4), [I, Iii]);
        assert_eq!(theorem_case(5, 25), [I, Ii]);
        assert_eq!(format_tags(&theorem_case(5, 1)), "{i,iii}");
    }

    #[test]
    fn dispatch_partition() {
        for p in [3u64, 5, 7, 11] {
            for n in 1..200 {
                let tags = theorem_case(p, n);
                assert!(tags.contains(&I) ^ tags.contains(&V), "p={p} n={n}");
                assert!(!(tags.contains(&Ii) && tags.contains(&Iv)));
                // the clauses for p | n cover it exactly
                assert_eq!(tags.contains(&Ii) || tags.contains(&Iv), n % p == 0);
            }
        }
    }

    #[test]
    fn siegel_points() {
        let f = map(5, 1, 5);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        for fp in fam.nonzero() {
            let rec = classify(&f, &fp).unwrap();
            assert_eq!(rec.character, Character::Indifferent);
            assert_eq!(rec.multiplier_norm, NormValue::ONE);
            let r = rec.siegel_radius.unwrap();
            assert_eq!(r.to_string(), "all r < 1");
            assert_eq!(r.largest_integer, 1);
            assert!(rec.attraction_radius.is_none());
        }
    }

    #[test]
    fn attracting_points() {
        let f = map(7, 3, 7);
        let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
        for fp in fam.all() {
            let rec = classify(&f, &fp).unwrap();
            assert_eq!(rec.character, Character::Attracting, "{}", rec.label);
            assert!(rec.multiplier_norm <= NormValue::from_valuation(1));
            assert_eq!(rec.attraction_radius.unwrap().bound, Ratio::zero());
        }
        let origin = classify(&f, &fam.all().pop().unwrap()).unwrap();
        assert_eq!(origin.multiplier_norm, NormValue::Zero);
        assert!(origin.paper_omitted);
    }

    /// `max_m |T_m| r^(m-1) < 1` evaluated from the expansion of `f(x0 + h)`.
    fn brute_force_condition(f: &PolyMap, x0: &ExtElement, first: usize, rho: i64) -> bool {
        let k = x0.field();
        let shift = Poly::new(vec![x0.clone(), ExtElement::one(k)], k);
        let mut power = Poly::from_i64(&[1], k);
        let mut expanded = Poly::from_i64(&[0], k);
        for (i, c) in f.as_poly(k).coeffs().iter().enumerate() {
            if i > 0 {
                power = power.mul(&shift);
            }
            expanded = expanded.add(&power.scale(c));
        }
        expanded.coeffs().iter().enumerate().skip(first).all(|(m, t)| {
            if t.is_zero_to_precision() {
                return true;
            }
            // |t| r^(m-1) < 1  <=>  v(t) + rho (m-1) > 0
            t.valuation().unwrap().valuation().unwrap() + Ratio::from_integer(rho * (m as i64 - 1)) > Ratio::zero()
        })
    }

    #[test]
    fn radii_agree_with_expansion() {
        let cases = [(5, 1, 5), (7, 3, 7), (5, 2, 5), (3, 1, 3), (3, 2, 9)];
        for (p, n, a) in cases {
            let f = map(p, n, a);
            let fam = fixed_points(&f, &FieldPolicy::Base).unwrap();
            for fp in fam.all() {
                let rec = classify(&f, &fp).unwrap();
                let (radius, first) = match rec.character {
                    Character::Attracting => (rec.attraction_radius.unwrap(), 1),
                    _ => (rec.siegel_radius.unwrap(), 2),
                };
                for rho in -2..5 {
                    assert_eq!(
                        radius.admits(Ratio::from_integer(rho)),
                        brute_force_condition(&f, &fp.value, first, rho),
                        "p={p} n={n} {} rho={rho}",
                        rec.label
                    );
                }
            }
        }
    }

    #[test]
    fn ramified_point_radius() {
        let f = map(3, 3, 9);
        let fam = fixed_points(&f, &FieldPolicy::Auto).unwrap();
        let k: &ExtField = &fam.field;
        assert!(k.is_cyclotomic());
        for fp in fam.nonzero() {
            let rec = classify(&f, &fp).unwrap();
            assert_eq!(rec.character, Character::Indifferent);
            assert_eq!(rec.siegel_radius.unwrap().bound, Ratio::zero());
        }
    }
}
