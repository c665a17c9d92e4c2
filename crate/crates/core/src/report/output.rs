use std::fmt::Write;

use serde::Serialize;

use super::{Evidence, NOT_REPRESENTABLE};
use crate::dynamics::{
    classify, disjointness_matrix, fixed_points, format_tags, iterate, theorem_case, CaseTag, DistanceMatrix,
    FixedPointRecord, OrbitStep, Termination,
};
use crate::ext::ExtElement;
use crate::report::config::SuiteConfig;
use crate::report::literal::parse_literal;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    pub p: u64,
    pub n: Option<u64>,
    pub a: Option<String>,
    pub precision: u32,
    pub seed: u64,
    pub samples: u32,
    pub iters: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    NotRepresentable,
    Fail,
}

impl Verdict {
    /// Any violation fails; otherwise a missing root makes the run
    /// inconclusive.
    pub fn of(evidence: &[Evidence]) -> Self {
        if evidence.iter().any(Evidence::is_violation) {
            Verdict::Fail
        } else if evidence.iter().any(|e| e.kind == NOT_REPRESENTABLE) {
            Verdict::NotRepresentable
        } else {
            Verdict::Pass
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::NotRepresentable => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotRepresentable => "not-representable",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: Params,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check_id: &str, params: Params, evidence: Vec<Evidence>) -> Self {
        Self {
            check_id: check_id.to_string(),
            params,
            verdict: Verdict::of(&evidence),
            evidence,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "check    {}", self.check_id);
        let _ = writeln!(out, "params   {}", params_line(&self.params));
        let _ = writeln!(out, "verdict  {}", self.verdict.as_str());
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time     {ms} ms");
        }
        let rows: Vec<Vec<String>> = self
            .evidence
            .iter()
            .map(|e| {
                vec![
                    e.kind.clone(),
                    e.lhs_exponent.clone(),
                    e.relation.to_string(),
                    e.rhs_exponent.clone(),
                    e.location.clone(),
                ]
            })
            .collect();
        out.push_str(&table(&["kind", "lhs", "rel", "rhs", "location"], &rows));
        out
    }
}

fn params_line(p: &Params) -> String {
    let mut s = format!("p={}", p.p);
    if let Some(n) = p.n {
        let _ = write!(s, " n={n}");
    }
    if let Some(a) = &p.a {
        let _ = write!(s, " a={a}");
    }
    let _ = write!(
        s,
        " precision={} seed={} samples={} iters={}",
        p.precision, p.seed, p.samples, p.iters
    );
    s
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut l = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                l.push_str(cell);
            } else {
                let _ = write!(l, "{cell:<w$}  ");
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Missing {
    pub plus: u64,
    pub minus: u64,
    pub hints: Vec<String>,
}

/// Fixed points of one map with their classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub params: Params,
    pub field: String,
    pub c_plus: String,
    pub c_minus: String,
    pub case_tags: Vec<CaseTag>,
    pub fixed_points: Vec<FixedPointRecord>,
    pub missing: Missing,
    pub disjointness: DistanceMatrix,
}

impl ClassifyReport {
    pub fn build(cfg: &SuiteConfig) -> Result<Self> {
        let map = cfg.map()?;
        let family = fixed_points(&map, &cfg.field)?;
        let fixed_points = family
            .all()
            .iter()
            .map(|fp| classify(&map, fp))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params: cfg.params(),
            field: family.field.describe(),
            c_plus: family.c_plus.to_string(),
            c_minus: family.c_minus.to_string(),
            case_tags: theorem_case(cfg.p(), map.n()),
            fixed_points,
            missing: Missing {
                plus: family.missing.0,
                minus: family.missing.1,
                hints: family.hints.clone(),
            },
            disjointness: disjointness_matrix(&family.nonzero())?,
        })
    }

    pub fn is_complete(&self) -> bool {
        self.missing.plus == 0 && self.missing.minus == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "params   {}", params_line(&self.params));
        let _ = writeln!(out, "field    {}", self.field);
        let _ = writeln!(out, "cases    {}", format_tags(&self.case_tags));
        let _ = writeln!(out, "c+       {}", self.c_plus);
        let _ = writeln!(out, "c-       {}", self.c_minus);
        if !self.is_complete() {
            let _ = writeln!(
                out,
                "missing  {} roots for c+, {} for c-: {}",
                self.missing.plus,
                self.missing.minus,
                self.missing.hints.join("; ")
            );
        }
        out.push('\n');
        let rows: Vec<Vec<String>> = self
            .fixed_points
            .iter()
            .map(|r| {
                let radius = r.siegel_radius.map(|d| format!("SI: {d}"));
                let radius = radius.or(r.attraction_radius.map(|d| format!("A: {d}")));
                vec![
                    r.label.clone(),
                    format!("{:?}", r.character).to_lowercase(),
                    r.multiplier_norm.to_string(),
                    radius.unwrap_or_else(|| "-".into()),
                    r.value.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["point", "character", "|lambda|", "disk", "value"], &rows));
        if !self.disjointness.entries.is_empty() {
            out.push('\n');
            let mut headers = vec![""];
            headers.extend(self.disjointness.labels.iter().map(String::as_str));
            let rows: Vec<Vec<String>> = self
                .disjointness
                .labels
                .iter()
                .zip(&self.disjointness.entries)
                .map(|(l, row)| std::iter::once(l.clone()).chain(row.iter().map(|d| d.to_string())).collect())
                .collect();
            out.push_str(&table(&headers, &rows));
        }
        out
    }
}

/// An orbit measured against its nearest fixed point.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub params: Params,
    pub start: String,
    pub reference: String,
    pub steps: Vec<OrbitStep>,
    pub termination: Termination,
}

impl OrbitReport {
    pub fn build(cfg: &SuiteConfig, start: &str) -> Result<Self> {
        let map = cfg.map()?;
        let family = fixed_points(&map, &cfg.field)?;
        let x = ExtElement::from_base(&parse_literal(start, &cfg.ctx)?, &family.field);
        let mut best = None;
        for fp in family.all() {
            let (d, _) = crate::dynamics::distance(&x, &fp.value)?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, fp));
            }
        }
        let (_, reference) = best.expect("the origin is always a fixed point");
        let trace = iterate(&map, &x, cfg.sampling.iters, &reference.value)?;
        Ok(Self {
            params: cfg.params(),
            start: x.to_string(),
            reference: reference.label(),
            steps: trace.steps,
            termination: trace.termination,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "params     {}", params_line(&self.params));
        let _ = writeln!(out, "start      {}", self.start);
        let _ = writeln!(out, "reference  {}", self.reference);
        let rows: Vec<Vec<String>> = self
            .steps
            .iter()
            .map(|s| {
                let v = match (s.distance.valuation(), s.below_precision) {
                    (None, _) => "+inf".to_string(),
                    (Some(v), true) => format!(">= {v}"),
                    (Some(v), false) => v.to_string(),
                };
                vec![s.index.to_string(), v, s.distance.to_string()]
            })
            .collect();
        out.push_str(&table(&["i", "valuation", "distance"], &rows));
        let _ = writeln!(out, "termination {}", serde_json::to_value(self.termination).expect("enum").as_str().unwrap_or(""));
        out
    }
}
