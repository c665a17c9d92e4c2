use crate::dynamics::{FieldPolicy, PolyMap, Sampling};
use crate::ext::ExtField;
use crate::padic::{PadicContext, PadicNumber};
use crate::report::literal::{format_literal, parse_literal};
use crate::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 40;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: u32 = 200;
pub const DEFAULT_ITERS: u32 = 50;

/// Values given on the command line; anything left out falls back to the
/// suite's own defaults and then to the global ones.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p: Option<u64>,
    pub n: Option<u64>,
    pub a: Option<String>,
    pub precision: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<u32>,
    pub iters: Option<u32>,
    pub field: Option<String>,
}

/// Parameters a suite runs with when nothing overrides them.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub p: u64,
    pub n: Option<u64>,
    pub a: Option<&'static str>,
    pub samples: u32,
    pub iters: u32,
    pub field: Option<&'static str>,
}

impl Defaults {
    pub const fn prime(p: u64) -> Self {
        Self {
            p,
            n: None,
            a: None,
            samples: DEFAULT_SAMPLES,
            iters: DEFAULT_ITERS,
            field: None,
        }
    }

    pub const fn map(p: u64, n: u64, a: &'static str) -> Self {
        Self {
            p,
            n: Some(n),
            a: Some(a),
            samples: DEFAULT_SAMPLES,
            iters: DEFAULT_ITERS,
            field: None,
        }
    }

    pub const fn sampled(self, samples: u32, iters: u32) -> Self {
        Self { samples, iters, ..self }
    }

    /// A field spec as accepted by `--field`.
    pub const fn in_field(self, spec: &'static str) -> Self {
        Self {
            field: Some(spec),
            ..self
        }
    }
}

/// Fully resolved run parameters.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub ctx: PadicContext,
    pub n: Option<u64>,
    pub a: Option<PadicNumber>,
    pub sampling: Sampling,
    pub field: FieldPolicy,
}

impl SuiteConfig {
    pub fn resolve(defaults: &Defaults, o: &Overrides) -> Result<Self> {
        let p = o.p.unwrap_or(defaults.p);
        let ctx = PadicContext::new(p, o.precision.unwrap_or(DEFAULT_PRECISION))?;
        let a = match (&o.a, defaults.a) {
            (Some(text), _) => Some(parse_literal(text, &ctx)?),
            (None, Some(text)) => Some(parse_literal(text, &ctx)?),
            (None, None) => None,
        };
        let field = match o.field.as_deref().or(defaults.field) {
            Some(spec) => parse_field_spec(spec, &ctx)?,
            None => FieldPolicy::Auto,
        };
        Ok(Self {
            n: o.n.or(defaults.n),
            a,
            sampling: Sampling {
                samples: o.samples.unwrap_or(defaults.samples),
                iters: o.iters.unwrap_or(defaults.iters),
                seed: o.seed.unwrap_or(DEFAULT_SEED),
            },
            field,
            ctx,
        })
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn precision(&self) -> i64 {
        self.ctx.precision() as i64
    }

    pub fn map(&self) -> Result<PolyMap> {
        let n = self.n.ok_or_else(|| Error::InvalidArgument("this check needs --n".into()))?;
        let a = self.a.clone().ok_or_else(|| Error::InvalidArgument("this check needs --a".into()))?;
        PolyMap::new(n, a)
    }

    pub fn params(&self) -> super::Params {
        super::Params {
            p: self.p(),
            n: self.n,
            a: self.a.as_ref().map(format_literal),
            precision: self.ctx.precision(),
            seed: self.sampling.seed,
            samples: self.sampling.samples,
            iters: self.sampling.iters,
        }
    }
}

/// `auto`, `base`, `cyclotomic`, `unramified:<f>`, or the modulus
/// coefficients constant term first, e.g. `3,3,1` for `t^2 + 3t + 3`.
pub fn parse_field_spec(spec: &str, ctx: &PadicContext) -> Result<FieldPolicy> {
    let spec = spec.trim();
    match spec {
        "auto" => return Ok(FieldPolicy::Auto),
        "base" => return Ok(FieldPolicy::Base),
        "cyclotomic" => return Ok(FieldPolicy::Given(ExtField::cyclotomic(ctx)?)),
        _ => {}
    }
    if let Some(f) = spec.strip_prefix("unramified:") {
        let f = f
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad residue degree in {spec:?}")))?;
        return Ok(FieldPolicy::Given(ExtField::unramified(ctx, f)?));
    }
    let coeffs = spec
        .split(',')
        .map(|c| c.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::InvalidArgument(format!("bad field modulus {spec:?}")))?;
    Ok(FieldPolicy::Given(ExtField::from_integer_modulus(&coeffs, ctx)?))
}
