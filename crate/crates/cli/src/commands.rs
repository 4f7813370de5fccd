//! Command line definition and dispatch.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use rcx_core::json::{
    chain_to_json, development_to_json, dyadic_to_json, gadget_to_json, ip_to_json,
    series_to_json,
};
use rcx_core::{
    chain_run, dyadic_check, gadget_build, ip_exp, ip_floor, Development, Error, GadgetSpec,
    IpElement, Registry, Series, Triple, Verdict,
};

use crate::eval::{eval_monomial, Env, EvalError, DEFAULT_LADDER};
use crate::expr::{parse_expr, SyntaxError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "rcx", version, about = "Exact Hahn series, developments and exponential integer parts")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Relative cutoff monomial for divisions and roots, e.g. "x^-8".
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    /// Depth of the log ladder y0 = x, y1 = log2 y0, ...
    #[arg(long, global = true, default_value_t = DEFAULT_LADDER)]
    pub ladder: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression to a series.
    Eval {
        #[arg(long)]
        expr: String,
    },
    /// Development of an element over the full monomial group.
    Dev {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Integer part of an element.
    Ip {
        #[arg(long)]
        expr: String,
    },
    /// Two to the power of the integer part of an element.
    Ipexp {
        #[arg(long)]
        expr: String,
    },
    /// Check the dyadic condition after running the group chain.
    DyadicCheck {
        #[arg(long)]
        agenda: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        stages: usize,
        #[arg(long, default_value = "x")]
        y: String,
        /// Monomials to check; defaults to the basis of H.
        #[arg(long)]
        sample: Vec<String>,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Run the group chain H_0 ⊆ ... ⊆ H_J over an agenda file.
    Chain {
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        agenda: PathBuf,
        #[arg(long, default_value = "x")]
        y: String,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Build the constants c[beta,i] and check their interleaving with the ladder.
    Gadget {
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        imax: usize,
        /// Comma separated successor levels standing in for a limit level.
        #[arg(long, value_delimiter = ',')]
        limit: Option<Vec<usize>>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Domain(#[from] Error),
    /// A failure that still produced a report.
    #[error("{message}")]
    Partial { message: String, output: Output },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// A command result in both output formats.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub text: String,
}

fn parse(src: &str) -> Result<crate::expr::Expr, CliError> {
    parse_expr(src).map_err(CliError::Syntax)
}

fn eval_str(env: &mut Env, src: &str) -> Result<Series, CliError> {
    Ok(env.eval(&parse(src)?)?)
}

/// Reads an agenda file: one expression per line, `#` starts a comment.
pub fn read_agenda(path: &Path, env: &mut Env) -> Result<Vec<Series>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let e = parse_expr(line).map_err(|e| {
            CliError::Usage(format!("{}:{}: {e}", path.display(), n + 1))
        })?;
        out.push(env.eval(&e)?);
    }
    Ok(out)
}

fn dev_text(d: &Development, reg: &Registry) -> String {
    let mut s = String::new();
    for (k, st) in d.steps.iter().enumerate() {
        let _ = writeln!(s, "{k}: {} * {}", st.a, reg.fmt_monomial(&st.g));
    }
    let _ = writeln!(s, "prefix: {}", d.prefix.display(reg));
    let _ = write!(s, "complete: {}", d.complete);
    if let Some(g) = &d.gap {
        let _ = write!(s, "\ngap: {}", reg.fmt_monomial(g));
    }
    s
}

fn ip_text(e: &IpElement, reg: &Registry) -> String {
    format!(
        "infinite: {}\nz: {}{}",
        e.infinite.display(reg),
        e.z,
        if e.non_integral { "\nnon-integral" } else { "" }
    )
}

fn verdict_text(v: &Verdict, reg: &Registry) -> String {
    match v {
        Verdict::Consistent => "consistent".into(),
        Verdict::ValueGap(g) => format!("value gap at {}", reg.fmt_monomial(g)),
        Verdict::NonMaximal => "non-maximal".into(),
    }
}

fn chain_env(env: &mut Env, y: &str, agenda: Option<&Path>) -> Result<(Series, Vec<Series>), CliError> {
    let y = eval_str(env, y)?;
    let agenda = match agenda {
        Some(p) => read_agenda(p, env)?,
        None => Vec::new(),
    };
    Ok((y, agenda))
}

/// Runs one command against a fresh environment.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let mut env = Env::new(cli.ladder)?;
    if let Some(c) = &cli.cutoff {
        let m = eval_monomial(&mut env, &parse(c)?)?;
        env = env.with_cutoff(m);
    }
    match &cli.command {
        Command::Eval { expr } => {
            let s = eval_str(&mut env, expr)?;
            Ok(Output {
                json: series_to_json(&s),
                text: s.display(&env.reg),
            })
        }
        Command::Dev { expr, len } => {
            let s = eval_str(&mut env, expr)?;
            let tri = Triple::full(env.reg);
            match tri.develop(&s, *len) {
                Ok(d) => Ok(Output {
                    json: development_to_json(&d),
                    text: dev_text(&d, &tri.registry),
                }),
                Err(Error::CutoffExhausted(d)) => {
                    let mut json = development_to_json(&d);
                    json["cutoff_exhausted"] = json!(true);
                    Err(CliError::Partial {
                        message: format!(
                            "cutoff exhausted after {} of {len} steps; lower --cutoff",
                            d.steps.len()
                        ),
                        output: Output {
                            json,
                            text: dev_text(&d, &tri.registry),
                        },
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Ip { expr } => {
            let s = eval_str(&mut env, expr)?;
            let e = ip_floor(&s, &env.reg)?;
            Ok(Output {
                json: ip_to_json(&e),
                text: ip_text(&e, &env.reg),
            })
        }
        Command::Ipexp { expr } => {
            let s = eval_str(&mut env, expr)?;
            let e = ip_floor(&s, &env.reg)?;
            let x = ip_exp(&e, &mut env.reg)?;
            Ok(Output {
                json: json!({"floor": ip_to_json(&e), "exp": ip_to_json(&x)}),
                text: format!(
                    "floor: {}\nexp: {}",
                    e.to_series(&env.reg)?.display(&env.reg),
                    x.to_series(&env.reg)?.display(&env.reg)
                ),
            })
        }
        Command::DyadicCheck {
            agenda,
            stages,
            y,
            sample,
            len,
        } => {
            let (y, agenda) = chain_env(&mut env, y, agenda.as_deref())?;
            let mut samples = Vec::new();
            for s in sample {
                samples.push(eval_monomial(&mut env, &parse(s)?)?);
            }
            let state = chain_run(env.reg, &y, *stages, &agenda, *len)?;
            if samples.is_empty() {
                samples = state.triple.h_basis().to_vec();
            }
            let r = dyadic_check(&state.triple, &samples)?;
            let text = format!(
                "passed: {}\nsamples: {}\nimages: {}\nboundary: {}\nfailures: {}",
                r.passed(),
                r.samples_checked,
                r.images_checked,
                r.boundary.len(),
                r.failures.len()
            );
            let json = dyadic_to_json(&r);
            if r.passed() {
                Ok(Output { json, text })
            } else {
                Err(CliError::Partial {
                    message: "dyadic condition fails".into(),
                    output: Output { json, text },
                })
            }
        }
        Command::Chain {
            stages,
            agenda,
            y,
            len,
        } => {
            let (y, agenda) = chain_env(&mut env, y, Some(agenda))?;
            let state = chain_run(env.reg, &y, *stages, &agenda, *len)?;
            let reg = &state.triple.registry;
            let mut text = String::new();
            for ev in &state.trace {
                let names: Vec<String> = ev.new_generators.iter().map(|g| reg.gen_name(*g)).collect();
                let _ = writeln!(text, "stage {}: new [{}]", ev.j, names.join(", "));
                for (r, _, v) in &ev.developments {
                    let _ = writeln!(text, "  {}: {}", r.display(reg), verdict_text(v, reg));
                }
                let _ = writeln!(
                    text,
                    "  dyadic: {} ({} pending)",
                    if ev.dyadic.passed() { "passed" } else { "failed" },
                    ev.dyadic.pending.len()
                );
            }
            Ok(Output {
                json: chain_to_json(&state),
                text: text.trim_end().to_string(),
            })
        }
        Command::Gadget { beta, imax, limit } => {
            let g = gadget_build(&GadgetSpec {
                beta_max: *beta,
                i_max: *imax,
                ladder_depth: cli.ladder,
                limit: limit.clone(),
            })?;
            let mut text = String::new();
            for ((b, i), c) in &g.constants {
                let _ = writeln!(text, "c[{b},{i}] = {}", c.display(&g.registry));
            }
            for c in &g.interleaving {
                let _ = writeln!(
                    text,
                    "{} > {}: {}",
                    c.left,
                    c.right,
                    if c.holds() { "yes" } else { "no" }
                );
            }
            for s in &g.stages {
                let _ = writeln!(
                    text,
                    "c[{},{}] stage {}{}",
                    s.beta,
                    s.i,
                    s.stage,
                    if s.new_at_stage { "" } else { " (not new)" }
                );
            }
            let _ = write!(text, "passed: {}", g.passed());
            Ok(Output {
                json: gadget_to_json(&g),
                text,
            })
        }
    }
}

fn emit(out: &mut dyn Write, format: Format, o: &Output) {
    let _ = match format {
        Format::Json => writeln!(out, "{}", o.json),
        Format::Text => writeln!(out, "{}", o.text),
    };
}

/// Executes `cli`, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli) {
        Ok(o) => {
            emit(out, cli.format, &o);
            0
        }
        Err(e) => {
            if let CliError::Partial { output, .. } = &e {
                emit(out, cli.format, output);
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

