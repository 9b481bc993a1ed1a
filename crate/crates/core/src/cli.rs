//! Command-line front end. Exit codes: 0 pass, 1 failed check, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use serde_json::json;

use crate::algebra::normalize;
use crate::chains::{chern, specialize_chain, Specialization};
use crate::parse::parse_expr;
use crate::reps::{Sign, TruncatedRep};
use crate::verify::{self, RepParams, Target};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qsphere", version, about = "Exact computations on the quantum 4-sphere")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the Chern-Connes component ch_n of the instanton idempotent.
    Chern(ChernArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the normal form of an expression.
    Normalize(NormalizeArgs),
    /// Relator residuals of a truncated representation, or the matrix of an expression.
    Rep(RepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QMode {
    Symbolic,
    UnitCircle,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Idempotent,
    Selfadjoint,
    Prop1,
    Prop2,
    Cycle,
    Rep,
    Characters,
    Isomorphism,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Idempotent => Target::Idempotent,
            TargetArg::Selfadjoint => Target::Selfadjoint,
            TargetArg::Prop1 => Target::Prop1,
            TargetArg::Prop2 => Target::Prop2,
            TargetArg::Cycle => Target::Cycle,
            TargetArg::Rep => Target::Rep,
            TargetArg::Characters => Target::Characters,
            TargetArg::Isomorphism => Target::Isomorphism,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for the contraction (default: available cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct ChernArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
    n: u8,
    #[arg(long, value_enum, default_value_t = QMode::Symbolic)]
    q_mode: QMode,
    /// Parameter value for numeric mode, as RE,IM.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    q: Option<Complex64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RepFlags {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0.7,0.1")]
    zeta: Complex64,
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    sign: Sign,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0.5,0")]
    q: Complex64,
    #[arg(long, default_value_t = 32)]
    dim: usize,
}

impl RepFlags {
    fn params(&self) -> RepParams {
        RepParams {
            zeta: self.zeta,
            sign: self.sign,
            q0: self.q,
            dim: self.dim,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: TargetArg,
    #[command(flatten)]
    rep: RepFlags,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct NormalizeArgs {
    expr: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RepArgs {
    #[command(flatten)]
    rep: RepFlags,
    /// Evaluate this expression instead of reporting residuals.
    #[arg(long)]
    expr: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Parses `RE,IM` or a bare real number.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
    Usage(String),
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let output = match &cli.command {
        Command::Chern(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Normalize(a) => &a.output,
        Command::Rep(a) => &a.output,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    match output.workers {
        Some(0) => {
            let _ = writeln!(stderr, "error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        Some(k) => builder = builder.num_threads(k),
        None => {}
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = pool.install(|| dispatch(&cli.command));
    let (code, body) = match outcome {
        Outcome::Pass(s) => (EXIT_PASS, s),
        Outcome::Fail(s) => (EXIT_FAIL, s),
        Outcome::Usage(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    code
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Chern(a) => cmd_chern(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Normalize(a) => cmd_normalize(a),
        Command::Rep(a) => cmd_rep(a),
    }
}

fn cmd_chern(a: &ChernArgs) -> Outcome {
    let mode = match (a.q_mode, a.q) {
        (QMode::Symbolic, _) => None,
        (QMode::UnitCircle, _) => Some(Specialization::UnitCircle),
        (QMode::Numeric, None) => return Outcome::Usage("--q-mode numeric requires --q RE,IM".into()),
        (QMode::Numeric, Some(q)) if q == Complex64::new(0.0, 0.0) => {
            return Outcome::Usage("--q must be nonzero".into())
        }
        (QMode::Numeric, Some(q)) => Some(Specialization::Numeric(q)),
    };
    let ch = match chern(a.n as usize) {
        Ok(ch) => ch,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let body = match mode {
        None => match a.output.format {
            Format::Text => ch.render_text(),
            Format::Json => ch.to_json(),
        },
        Some(m) => match specialize_chain(&ch, m) {
            Ok(s) => match a.output.format {
                Format::Text => s.to_string(),
                Format::Json => s.to_json(),
            },
            Err(e) => return Outcome::Usage(e.to_string()),
        },
    };
    Outcome::Pass(body)
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    match verify::run(a.target.into(), &a.rep.params()) {
        Ok(report) => {
            let body = match a.output.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            if report.pass {
                Outcome::Pass(body)
            } else {
                Outcome::Fail(body)
            }
        }
        Err(e) => Outcome::Usage(e),
    }
}

fn cmd_normalize(a: &NormalizeArgs) -> Outcome {
    let free = match parse_expr(&a.expr) {
        Ok(x) => x,
        Err(e) => return Outcome::Usage(format!("{e}\n  {}", a.expr)),
    };
    let nf = normalize(&free);
    match a.output.format {
        Format::Text => Outcome::Pass(nf.to_string()),
        Format::Json => {
            let terms: Vec<_> = nf
                .terms()
                .map(|(m, c)| json!({"monomial": m.to_string(), "coeff": c.to_string()}))
                .collect();
            let doc = json!({"input": a.expr, "normal_form": nf.to_string(), "terms": terms});
            Outcome::Pass(serde_json::to_string_pretty(&doc).expect("serializes"))
        }
    }
}

fn cmd_rep(a: &RepArgs) -> Outcome {
    let p = a.rep.params();
    let rep = match TruncatedRep::new(p.zeta, p.sign, p.q0, p.dim) {
        Ok(rep) => rep,
        Err(e) => return Outcome::Usage(e.to_string()),
    };
    let Some(expr) = &a.expr else {
        let report = rep.report();
        let body = match a.output.format {
            Format::Json => serde_json::to_string_pretty(&report).expect("serializes"),
            Format::Text => {
                let mut s = format!(
                    "zeta = {}{:+}i, sign {}, q0 = {}{:+}i, N = {}\n",
                    p.zeta.re, p.zeta.im, p.sign, p.q0.re, p.q0.im, p.dim
                );
                for r in &report.residuals {
                    s.push_str(&format!(
                        "  {:<4} interior {:.3e}  boundary {:.3e}\n",
                        r.name, r.interior, r.boundary
                    ));
                }
                s.push_str(&format!(
                    "  r6 boundary defect {:.6e}, closed form {:.6e}\n",
                    report.r6_boundary_defect, report.r6_boundary_expected
                ));
                s
            }
        };
        return if report.pass {
            Outcome::Pass(body)
        } else {
            Outcome::Fail(body)
        };
    };
    let free = match parse_expr(expr) {
        Ok(x) => x,
        Err(e) => return Outcome::Usage(format!("{e}\n  {expr}")),
    };
    let m = rep.eval(&normalize(&free));
    let body = match a.output.format {
        Format::Json => {
            let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect();
            serde_json::to_string(&json!({"dim": p.dim, "matrix": rows})).expect("serializes")
        }
        Format::Text => (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| format!("{:>9.5}{:+.5}i", m[(i, j)].re, m[(i, j)].im))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Outcome::Pass(body)
}
