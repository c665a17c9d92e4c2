use serde::Serialize;

use super::PolyMap;
use crate::ext::ExtElement;
use crate::padic::NormValue;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// The distance reached `p^-N` or fell below what the working
    /// precision can see.
    Converged,
    /// Every iterate stayed at the starting distance.
    SpherePreserved,
    /// An iterate left the open unit disk around the reference.
    Escaped,
    MaxIters,
}

/// Distance `|f^i(x) - reference|`. When the difference is lost in the
/// precision, `distance` is the upper bound `p^-k` and `below_precision`
/// is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitStep {
    pub index: u32,
    pub distance: NormValue,
    pub below_precision: bool,
}

#[derive(Debug, Clone)]
pub struct OrbitTrace {
    pub start: ExtElement,
    pub reference: ExtElement,
    pub steps: Vec<OrbitStep>,
    pub termination: Termination,
}

impl OrbitTrace {
    pub fn last(&self) -> &OrbitStep {
        self.steps.last().expect("orbit has its starting point")
    }
}

/// `|x - y|`, or an upper bound flagged as such.
pub fn distance(x: &ExtElement, y: &ExtElement) -> Result<(NormValue, bool)> {
    let d = x.sub(y);
    if d.is_exact_zero() {
        return Ok((NormValue::Zero, false));
    }
    let bound = || match d.coordinate_lower_bound() {
        Some(v) => (NormValue::Finite(v), true),
        None => (NormValue::Zero, true),
    };
    if d.is_zero_to_precision() {
        return Ok(bound());
    }
    match d.valuation() {
        Ok(v) => Ok((v, false)),
        Err(Error::PrecisionUnderflow { .. }) => Ok(bound()),
        Err(e) => Err(e),
    }
}

/// Iterates `f` up to `k` times from `x`, recording distances to
/// `reference` (step 0 is `x` itself).
pub fn iterate(map: &PolyMap, x: &ExtElement, k: u32, reference: &ExtElement) -> Result<OrbitTrace> {
    if k == 0 {
        return Err(Error::InvalidArgument("iteration count must be positive".into()));
    }
    let floor = NormValue::from_valuation(map.ctx().precision() as i64);
    let mut steps = Vec::new();
    let mut y = x.clone();
    let mut termination = None;
    for index in 0..=k {
        if index > 0 {
            y = map.evaluate(&y);
        }
        let (distance, below_precision) = distance(&y, reference)?;
        steps.push(OrbitStep {
            index,
            distance,
            below_precision,
        });
        if below_precision || distance <= floor {
            termination = Some(Termination::Converged);
        } else if !distance.is_small() {
            termination = Some(Termination::Escaped);
        }
        if termination.is_some() {
            break;
        }
    }
    let termination = termination.unwrap_or_else(|| {
        if steps.iter().all(|s| s.distance == steps[0].distance) {
            Termination::SpherePreserved
        } else {
            Termination::MaxIters
        }
    });
    Ok(OrbitTrace {
        start: x.clone(),
        reference: reference.clone(),
        steps,
        termination,
    })
}
