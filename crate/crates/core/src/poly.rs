//! Dense univariate polynomials with coefficients in an [`ExtField`].

use std::fmt;

use crate::ext::{ExtElement, ExtField};
use crate::padic::PadicNumber;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: ExtField,
    /// Constant term first; never empty.
    coeffs: Vec<ExtElement>,
}

impl Poly {
    pub fn new(coeffs: Vec<ExtElement>, field: &ExtField) -> Self {
        assert!(coeffs.iter().all(|c| c.field() == field), "coefficients from another field");
        let coeffs = if coeffs.is_empty() {
            vec![ExtElement::zero(field)]
        } else {
            coeffs
        };
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_base(coeffs: &[PadicNumber], field: &ExtField) -> Self {
        Self::new(coeffs.iter().map(|c| ExtElement::from_base(c, field)).collect(), field)
    }

    pub fn from_i64(coeffs: &[i64], field: &ExtField) -> Self {
        Self::new(coeffs.iter().map(|&c| ExtElement::from_i64(c, field)).collect(), field)
    }

    /// `x^n - c`.
    pub fn binomial(n: usize, c: &ExtElement) -> Self {
        let field = c.field();
        let mut coeffs = vec![ExtElement::zero(field); n + 1];
        coeffs[0] = c.neg();
        coeffs[n] = ExtElement::one(field);
        Self::new(coeffs, field)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[ExtElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &ExtElement) -> ExtElement {
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![], &self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_i64(i as i64))
            .collect();
        Self::new(coeffs, &self.field)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = ExtElement::zero(&self.field);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        Self::new(coeffs, &self.field)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![ExtElement::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::new(coeffs, &self.field)
    }

    pub fn scale(&self, k: &ExtElement) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(k)).collect(), &self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field.describe())
    }
}
