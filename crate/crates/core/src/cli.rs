//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::DEFAULT_ORDER;
use crate::error::{Error, Result};
use crate::germ::Germ;
use crate::invariants::{classify_profiles, compare, profile, InvariantProfile, PairReport};
use crate::newton2d::resolve;
use crate::pipeline::{compute, from_resolution, Method, ZetaResult};
use crate::resolution::ResolutionData;

#[derive(Debug, Parser)]
#[command(
    name = "motzeta",
    version,
    about = "Motivic zeta functions and blow-Nash invariants of real polynomial germs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the naive and sign zeta functions.
    Zeta(Inputs),
    /// Compute resolution data with the Newton-polygon pipeline and write it.
    Resolve {
        #[arg(long, allow_hyphen_values = true)]
        germ: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Destination file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the invariant profile.
    Invariants(Inputs),
    /// Compare the invariants of two germs.
    Compare(Inputs),
    /// Group germs into classes with equal invariants.
    Classify(Inputs),
    /// Check a resolution file for consistency.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliMethod {
    Direct,
    Newton,
    File,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Germ expression; repeat for several germs.
    #[arg(long, allow_hyphen_values = true)]
    germ: Vec<String>,
    /// Resolution file, used with `--method file`; repeatable.
    #[arg(long)]
    file: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = CliMethod::Auto)]
    method: CliMethod,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Ambient dimension, when larger than the variables used.
    #[arg(long)]
    dim: Option<usize>,
}

/// Exit status and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = if e.is_input_error() { 2 } else { 1 };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}: {e}\n", e.name()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    let result = match command {
        Command::Zeta(inputs) => zeta(&inputs),
        Command::Resolve { germ, dim, output } => resolve_cmd(&germ, dim, output),
        Command::Invariants(inputs) => invariants(&inputs),
        Command::Compare(inputs) => compare_cmd(&inputs),
        Command::Classify(inputs) => classify_cmd(&inputs),
        Command::Validate { file, format } => return validate(&file, format),
    };
    match result {
        Ok(text) => Outcome::ok(text),
        Err(e) => Outcome::error(&e),
    }
}

fn usage(msg: &str) -> Error {
    Error::Io(msg.to_string())
}

fn parse_germ(text: &str, dim: Option<usize>) -> Result<Germ> {
    match dim {
        Some(d) => Germ::parse_with_dim(text, d),
        None => Germ::parse(text),
    }
}

/// One input to evaluate, with the label it is reported under.
struct Source {
    label: String,
    result: Result<ZetaResult>,
}

fn sources(inputs: &Inputs) -> Result<Vec<Source>> {
    if inputs.method == CliMethod::File {
        if !inputs.germ.is_empty() {
            return Err(usage("--method file takes --file, not --germ"));
        }
        if inputs.file.is_empty() {
            return Err(usage("--method file needs at least one --file"));
        }
        return Ok(inputs
            .file
            .iter()
            .map(|path| Source {
                label: path.display().to_string(),
                result: ResolutionData::load(path).and_then(|r| {
                    let bad = r.validate();
                    if bad.is_empty() {
                        from_resolution(&r, inputs.order)
                    } else {
                        Err(Error::InvalidData(format!(
                            "{}: {}",
                            path.display(),
                            bad[0]
                        )))
                    }
                }),
            })
            .collect());
    }
    if !inputs.file.is_empty() {
        return Err(usage("--file requires --method file"));
    }
    if inputs.germ.is_empty() {
        return Err(usage("at least one --germ is required"));
    }
    let method = match inputs.method {
        CliMethod::Direct => Method::Direct,
        CliMethod::Newton => Method::Newton,
        _ => Method::Auto,
    };
    // Parse everything first so syntax errors win over math errors.
    let germs = inputs
        .germ
        .iter()
        .map(|t| parse_germ(t, inputs.dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(germs
        .iter()
        .map(|g| Source {
            label: g.to_string(),
            result: compute(g, method, inputs.order),
        })
        .collect())
}

fn single(inputs: &Inputs) -> Result<Source> {
    let mut all = sources(inputs)?;
    if all.len() != 1 {
        return Err(usage("exactly one germ or file is expected"));
    }
    Ok(all.remove(0))
}

fn machine<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn zeta(inputs: &Inputs) -> Result<String> {
    let z = single(inputs)?.result?;
    if inputs.format == Format::Machine {
        return Ok(machine(&z));
    }
    let mut out = String::new();
    let closed = z.closed.as_ref();
    let rows = [
        ("Z", Some(&z.naive), closed.map(|c| &c.naive)),
        ("Z+", z.plus.as_ref(), closed.and_then(|c| c.plus.as_ref())),
        (
            "Z-",
            z.minus.as_ref(),
            closed.and_then(|c| c.minus.as_ref()),
        ),
    ];
    for (name, series, form) in rows {
        match series {
            None => writeln!(out, "{name}: unavailable (no sign data)").unwrap(),
            Some(s) => {
                if let Some(form) = form {
                    writeln!(out, "{name} = {form}").unwrap();
                }
                writeln!(out, "{name} = {s}").unwrap();
            }
        }
    }
    Ok(out)
}

fn resolve_cmd(germ: &str, dim: Option<usize>, output: Option<PathBuf>) -> Result<String> {
    let g = parse_germ(germ, dim)?;
    let r = resolve(&g)?;
    match output {
        Some(path) => {
            r.store(&path)?;
            Ok(format!(
                "wrote {} divisors and {} strata to {}\n",
                r.divisors.len(),
                r.strata.len(),
                path.display()
            ))
        }
        None => Ok(r.to_json() + "\n"),
    }
}

fn profile_of(z: &ZetaResult) -> Result<InvariantProfile> {
    profile(&z.naive, z.plus.as_ref(), z.minus.as_ref())
}

fn render_profile(p: &InvariantProfile) -> String {
    fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
        x.as_ref()
            .map_or("unavailable".to_string(), ToString::to_string)
    }
    let mut out = String::new();
    writeln!(out, "order          {}", p.order).unwrap();
    writeln!(out, "z1             {}", p.z1).unwrap();
    writeln!(out, "z2_mod2        {}", p.z2_mod2).unwrap();
    writeln!(out, "z0_plus        {}", opt(&p.z0_plus)).unwrap();
    writeln!(out, "z0_minus       {}", opt(&p.z0_minus)).unwrap();
    writeln!(out, "z1_plus_mod2   {}", opt(&p.z1_plus_mod2)).unwrap();
    writeln!(out, "z1_minus_mod2  {}", opt(&p.z1_minus_mod2)).unwrap();
    writeln!(out, "kp_naive       {}", p.kp_naive).unwrap();
    writeln!(out, "kp_plus        {}", opt(&p.kp_plus)).unwrap();
    writeln!(out, "kp_minus       {}", opt(&p.kp_minus)).unwrap();
    out
}

fn invariants(inputs: &Inputs) -> Result<String> {
    let p = profile_of(&single(inputs)?.result?)?;
    Ok(match inputs.format {
        Format::Machine => machine(&p),
        Format::Text => render_profile(&p),
    })
}

fn compare_cmd(inputs: &Inputs) -> Result<String> {
    let all = sources(inputs)?;
    if all.len() != 2 {
        return Err(usage("compare takes exactly two germs or files"));
    }
    let mut profiles = Vec::new();
    for s in all.iter() {
        profiles.push(profile_of(s.result.as_ref().map_err(Clone::clone)?)?);
    }
    let report = compare(&profiles[0], &profiles[1])?;
    let witness = report.witness();
    let pair = PairReport {
        a: all[0].label.clone(),
        b: all[1].label.clone(),
        verdict: report.summary(),
        witness_invariant: witness.map(|(w, _)| w.to_string()),
        witness_order: witness.map(|(_, n)| n),
    };
    Ok(match inputs.format {
        Format::Machine => {
            machine(&json!({ "order": report.order, "entries": report.entries, "pairs": [pair] }))
        }
        Format::Text => format!("{} vs {}\n{report}\n", pair.a, pair.b),
    })
}

fn classify_cmd(inputs: &Inputs) -> Result<String> {
    let all = sources(inputs)?;
    let labels: Vec<String> = all.iter().map(|s| s.label.clone()).collect();
    let profiles: Vec<Result<InvariantProfile>> = all
        .iter()
        .map(|s| s.result.as_ref().map_err(Clone::clone).and_then(profile_of))
        .collect();
    let c = classify_profiles(&labels, &profiles, inputs.order);
    Ok(match inputs.format {
        Format::Machine => machine(&c),
        Format::Text => c.to_string(),
    })
}

fn validate(path: &std::path::Path, format: Format) -> Outcome {
    let r = match ResolutionData::load(path) {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let violations = r.validate();
    let stdout = match format {
        Format::Machine => {
            machine(&json!({ "valid": violations.is_empty(), "violations": violations }))
        }
        Format::Text if violations.is_empty() => format!("{}: valid\n", path.display()),
        Format::Text => {
            let mut out = format!("{}: {} violation(s)\n", path.display(), violations.len());
            for v in &violations {
                writeln!(out, "  {v}").unwrap();
            }
            out
        }
    };
    Outcome {
        code: if violations.is_empty() { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}
