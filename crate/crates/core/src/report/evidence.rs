use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::padic::NormValue;

/// Comparison between two norms, serialized as the bare symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    pub fn admits(self, ord: Ordering) -> bool {
        match self {
            Relation::Eq => ord.is_eq(),
            Relation::Lt => ord.is_lt(),
            Relation::Le => ord.is_le(),
            Relation::Gt => ord.is_gt(),
            Relation::Ge => ord.is_ge(),
        }
    }

    fn of(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Relation::Lt,
            Ordering::Equal => Relation::Eq,
            Ordering::Greater => Relation::Gt,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One exact statement `lhs relation rhs` about norms.
///
/// A statement that turned out false is kept with kind `violation:<kind>`
/// and the relation that actually holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub kind: String,
    pub lhs_exponent: String,
    pub relation: Relation,
    pub rhs_exponent: String,
    pub location: String,
}

const VIOLATION: &str = "violation:";

/// Kind of the row recording roots that need a larger field.
pub const NOT_REPRESENTABLE: &str = "not-representable";

impl Evidence {
    /// Checks `lhs expected rhs`, producing a violation row when it fails.
    pub fn compare(
        kind: &str,
        lhs: NormValue,
        expected: Relation,
        rhs: NormValue,
        location: impl Into<String>,
    ) -> Self {
        let ord = lhs.cmp(&rhs);
        let (kind, relation) = if expected.admits(ord) {
            (kind.to_string(), expected)
        } else {
            (format!("{VIOLATION}{kind}"), Relation::of(ord))
        };
        Evidence {
            kind,
            lhs_exponent: lhs.exponent_string(),
            relation,
            rhs_exponent: rhs.exponent_string(),
            location: location.into(),
        }
    }

    /// An equality between two non-norm quantities (tags, counts).
    pub fn matches(kind: &str, lhs: impl fmt::Display, rhs: impl fmt::Display, location: impl Into<String>) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        let (kind, relation) = if lhs == rhs {
            (kind.to_string(), Relation::Eq)
        } else {
            (format!("{VIOLATION}{kind}"), Relation::Gt)
        };
        Evidence {
            kind,
            lhs_exponent: lhs,
            relation,
            rhs_exponent: rhs,
            location: location.into(),
        }
    }

    /// A violation whose left side is only known as a bound (`<= p^-k`).
    pub fn violation(kind: &str, lhs: String, relation: Relation, rhs: NormValue, location: impl Into<String>) -> Self {
        Evidence {
            kind: format!("{VIOLATION}{kind}"),
            lhs_exponent: lhs,
            relation,
            rhs_exponent: rhs.exponent_string(),
            location: location.into(),
        }
    }

    /// `missing` roots live outside the working field.
    pub fn not_representable(missing: u64, location: impl Into<String>) -> Self {
        Evidence {
            kind: NOT_REPRESENTABLE.into(),
            lhs_exponent: missing.to_string(),
            relation: Relation::Gt,
            rhs_exponent: "0".into(),
            location: location.into(),
        }
    }

    pub fn is_violation(&self) -> bool {
        self.kind.starts_with(VIOLATION)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_keeps_expected_relation() {
        let e = Evidence::compare("norm", NormValue::ONE, Relation::Eq, NormValue::ONE, "x");
        assert!(!e.is_violation());
        assert_eq!(e.lhs_exponent, "p^0");
        let e = Evidence::compare("norm", NormValue::from_valuation(1), Relation::Le, NormValue::ONE, "x");
        assert_eq!(e.relation, Relation::Le);
    }

    #[test]
    fn compare_reports_actual_relation() {
        let e = Evidence::compare("norm", NormValue::from_valuation(1), Relation::Eq, NormValue::ONE, "x");
        assert!(e.is_violation());
        assert_eq!(e.kind, "violation:norm");
        assert_eq!(e.relation, Relation::Lt);
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains(r#""relation":"<""#), "{json}");
    }

    #[test]
    fn matches_on_strings() {
        assert!(!Evidence::matches("tags", "i,iii", "i,iii", "").is_violation());
        assert!(Evidence::matches("tags", "v", "i", "").is_violation());
    }
}
