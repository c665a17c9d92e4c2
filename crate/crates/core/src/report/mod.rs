//! Literal grammar, verification reports and the suite registry.

pub mod config;
pub mod evidence;
pub mod literal;
pub mod output;
pub mod suites;

pub use config::{parse_field_spec, Defaults, Overrides, SuiteConfig};
pub use evidence::{Evidence, Relation, NOT_REPRESENTABLE};
pub use literal::{format_literal, parse_literal, ParseError};
pub use output::{ClassifyReport, OrbitReport, Params, Verdict, VerificationReport};
pub use suites::{find_suite, run_suite, suites, Suite};
