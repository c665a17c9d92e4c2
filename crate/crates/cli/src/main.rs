use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use padic_dyn::report::{
    find_suite, run_suite, suites, ClassifyReport, Defaults, OrbitReport, Overrides, SuiteConfig, Verdict,
    VerificationReport,
};

/// Exact p-adic experiments on f(x) = x^(2n+1) + a x^(n+1).
#[derive(Debug, Parser)]
#[command(name = "padic-dyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Args)]
struct Flags {
    /// The prime (at least 3)
    #[arg(long, global = true)]
    p: Option<u64>,
    #[arg(long, global = true)]
    n: Option<u64>,
    /// Coefficient literal, e.g. `5`, `3/7` or `2*5 + 4*5^2 + O(5^10)`
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    /// Digits of precision
    #[arg(long, global = true, env = "PADIC_PRECISION")]
    precision: Option<u32>,
    #[arg(long, global = true, env = "PADIC_SEED")]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<u32>,
    #[arg(long, global = true)]
    iters: Option<u32>,
    /// auto, base, cyclotomic, unramified:<f>, or modulus coefficients (constant first)
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in reports
    #[arg(long, global = true)]
    timing: bool,
    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fixed points, multipliers, disks and case tags of one map
    Classify,
    /// Iterate from a start point and measure against the nearest fixed point
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
    },
    /// Run one named check
    Verify { suite: String },
    /// Run every check with its own parameters
    ReportAll,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            p: self.p,
            n: self.n,
            a: self.a.clone(),
            precision: self.precision,
            seed: self.seed,
            samples: self.samples,
            iters: self.iters,
            field: self.field.clone(),
        }
    }

    /// Map parameters for `classify` and `orbit`, which have no defaults.
    fn map_config(&self) -> Result<SuiteConfig, String> {
        let (Some(p), Some(n), Some(_)) = (self.p, self.n, &self.a) else {
            return Err("--p, --n and --a are required".into());
        };
        let defaults = Defaults {
            n: Some(n),
            ..Defaults::prime(p)
        };
        SuiteConfig::resolve(&defaults, &self.overrides()).map_err(|e| e.to_string())
    }

    fn emit(&self, text: String) -> Result<(), String> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn classify(flags: &Flags) -> Result<u8, String> {
    let report = ClassifyReport::build(&flags.map_config()?).map_err(|e| e.to_string())?;
    flags.emit(if flags.json { report.to_json() + "\n" } else { report.to_text() })?;
    Ok(if report.is_complete() { 0 } else { Verdict::NotRepresentable.exit_code() as u8 })
}

fn orbit(flags: &Flags, start: &str) -> Result<u8, String> {
    let report = OrbitReport::build(&flags.map_config()?, start).map_err(|e| e.to_string())?;
    flags.emit(if flags.json { report.to_json() + "\n" } else { report.to_text() })?;
    Ok(0)
}

fn verify(flags: &Flags, id: &str) -> Result<u8, String> {
    let Some(suite) = find_suite(id) else {
        let known: Vec<_> = suites().iter().map(|s| s.id).collect();
        return Err(format!("unknown suite {id:?}; known: {}", known.join(", ")));
    };
    let report = run_suite(suite, &flags.overrides(), flags.timing).map_err(|e| e.to_string())?;
    flags.emit(if flags.json { report.to_json() + "\n" } else { report.to_text() })?;
    Ok(report.verdict.exit_code() as u8)
}

fn report_all(flags: &Flags) -> Result<u8, String> {
    if flags.p.is_some() || flags.n.is_some() || flags.a.is_some() || flags.field.is_some() {
        return Err("report-all runs each check with its own map; drop --p, --n, --a and --field".into());
    }
    let overrides = Overrides {
        precision: flags.precision,
        seed: flags.seed,
        samples: flags.samples,
        iters: flags.iters,
        ..Overrides::default()
    };
    let start = Instant::now();
    let mut reports: Vec<VerificationReport> = Vec::new();
    for suite in suites().iter().filter(|s| !s.alias) {
        reports.push(run_suite(suite, &overrides, flags.timing).map_err(|e| format!("{}: {e}", suite.id))?);
    }
    let worst = reports.iter().map(|r| r.verdict).max().unwrap_or(Verdict::Pass);
    let text = if flags.json {
        serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
    } else {
        let mut out = String::new();
        let width = reports.iter().map(|r| r.check_id.len()).max().unwrap_or(0);
        for r in &reports {
            let violations = r.evidence.iter().filter(|e| e.is_violation()).count();
            let mut line = format!("{:width$}  {:17}  {:5} rows", r.check_id, r.verdict.as_str(), r.evidence.len());
            if violations > 0 {
                line += &format!(", {violations} violations");
            }
            if let Some(ms) = r.timing_ms {
                line += &format!(", {ms} ms");
            }
            out += line.trim_end();
            out.push('\n');
        }
        if flags.timing {
            out += &format!("total {} ms\n", start.elapsed().as_millis());
        }
        out += &format!("overall {}\n", worst.as_str());
        out
    };
    flags.emit(text)?;
    Ok(worst.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = &cli.flags;
    let result = match &cli.command {
        Command::Classify => classify(flags),
        Command::Orbit { start } => orbit(flags, start),
        Command::Verify { suite } => verify(flags, suite),
        Command::ReportAll => report_all(flags),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
