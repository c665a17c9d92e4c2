use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

/// A p-adic absolute value stored as an exact exponent.
///
/// `Finite(v)` is the norm `p^(-v)`; `v` is the valuation and may be
/// fractional in ramified extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormValue {
    Zero,
    Finite(Ratio<i64>),
}

impl NormValue {
    pub const ONE: NormValue = NormValue::Finite(Ratio::new_raw(0, 1));

    pub fn from_valuation(v: i64) -> Self {
        NormValue::Finite(Ratio::from_integer(v))
    }

    pub fn valuation(&self) -> Option<Ratio<i64>> {
        match self {
            NormValue::Zero => None,
            NormValue::Finite(v) => Some(*v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormValue::Zero)
    }

    /// `|x| < 1`.
    pub fn is_small(&self) -> bool {
        match self {
            NormValue::Zero => true,
            NormValue::Finite(v) => v.is_positive(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, NormValue::Finite(v) if v.is_zero())
    }

    /// Product of norms; valuations add.
    pub fn mul(self, other: NormValue) -> NormValue {
        match (self, other) {
            (NormValue::Finite(a), NormValue::Finite(b)) => NormValue::Finite(a + b),
            _ => NormValue::Zero,
        }
    }

    /// Exponent form, `p^-2`, `p^1/2`, `0`.
    pub fn exponent_string(&self) -> String {
        self.to_string()
    }
}

impl Ord for NormValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NormValue::Zero, NormValue::Zero) => Ordering::Equal,
            (NormValue::Zero, _) => Ordering::Less,
            (_, NormValue::Zero) => Ordering::Greater,
            // larger valuation means smaller norm
            (NormValue::Finite(a), NormValue::Finite(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for NormValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Zero => write!(f, "0"),
            NormValue::Finite(v) => {
                let e = -*v;
                if e.is_integer() {
                    write!(f, "p^{}", e.numer())
                } else {
                    write!(f, "p^{}/{}", e.numer(), e.denom())
                }
            }
        }
    }
}

impl Serialize for NormValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_follows_norms() {
        let third = NormValue::from_valuation(1);
        let nine = NormValue::from_valuation(2);
        assert!(nine < third);
        assert!(NormValue::Zero < nine);
        assert!(third < NormValue::ONE);
        assert!(NormValue::Finite(Ratio::new(1, 2)) < NormValue::ONE);
    }

    #[test]
    fn exponent_strings() {
        assert_eq!(NormValue::from_valuation(2).to_string(), "p^-2");
        assert_eq!(NormValue::from_valuation(-1).to_string(), "p^1");
        assert_eq!(NormValue::ONE.to_string(), "p^0");
        assert_eq!(NormValue::Finite(Ratio::new(1, 2)).to_string(), "p^-1/2");
        assert_eq!(NormValue::Zero.to_string(), "0");
    }

    #[test]
    fn multiplicative() {
        let a = NormValue::Finite(Ratio::new(1, 2));
        assert_eq!(a.mul(a), NormValue::from_valuation(1));
        assert_eq!(a.mul(NormValue::Zero), NormValue::Zero);
    }
}
