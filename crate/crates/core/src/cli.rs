//! Command dispatch for the `leavitt` binary.
//!
//! Exit codes: 0 success, 1 negative answer, 2 usage or syntax error,
//! 3 semantic input error, 4 theorem violation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::algebra::AlgebraElement;
use crate::analysis::{self, HomStatus};
use crate::error::{AlgebraError, AnalysisError, GroupoidError, ParseError, RingError};
use crate::graph::Graph;
use crate::groupoid::GroupoidElement;
use crate::par::Exec;
use crate::parse::{self, InputError};
use crate::ring::{kind_instance_check, KindVerdict, RingElement, StarRing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "leavitt",
    version,
    about = "Exact computation in Leavitt path algebras"
)]
struct Cli {
    /// Graph file (JSON)
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Coefficient ring: Z, Zi, Z_half or Q
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// Run batch checks on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an expression
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiply expressions left to right
    Mul {
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Apply the involution
    Star {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Degree-n homogeneous component
    Grade {
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide whether p = p* = p²
    ProjCheck {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide membership in the diagonal subalgebra
    Diag {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Replay the diagonality argument for a projection at level k
    Trace {
        #[arg(short = 'k')]
        k: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Validate a *-homomorphism and check that it preserves the diagonal
    HomCheck {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Test one instance (λ₀, …, λₙ) of the kindness condition
    KindCheck {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        tuple: Vec<String>,
    },
    /// Decide condition (L)
    ConditionL,
    /// Canonicalize a boundary path
    Boundary {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        shift: Option<usize>,
    },
    /// Graph groupoid arithmetic
    Gpd {
        #[command(subcommand)]
        op: GpdOp,
    },
}

#[derive(Debug, Subcommand)]
enum GpdOp {
    /// Check (x, k, y) and find its minimal witness
    Make {
        x: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        y: String,
    },
    /// Inverse of (x, k, y)
    Inverse {
        x: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        y: String,
    },
    /// Product (x, k, y)(w, l, z)
    Compose {
        x: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        y: String,
        w: String,
        #[arg(allow_hyphen_values = true)]
        l: i64,
        z: String,
    },
}

/// Result of one invocation: the exit code and the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub text: String,
}

impl Report {
    fn new(code: i32, text: impl Into<String>) -> Self {
        Self {
            code,
            text: text.into(),
        }
    }
}

struct Failure(i32, String);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure(parse_code(&e), e.to_string())
    }
}

fn parse_code(e: &ParseError) -> i32 {
    match e {
        ParseError::Syntax(_) => EXIT_USAGE,
        _ => EXIT_INPUT,
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let code = match &e {
            InputError::Format { .. } => EXIT_USAGE,
            InputError::Image { source, .. } => parse_code(source),
            InputError::Hom { source, .. } => analysis_code(source),
            InputError::Io { .. } | InputError::Graph { .. } => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        Failure(analysis_code(&e), e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

impl From<GroupoidError> for Failure {
    fn from(e: GroupoidError) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        let code = match &e {
            RingError::KindContradiction { .. } => EXIT_VIOLATION,
            RingError::Malformed(_) | RingError::UnknownRing(_) => EXIT_USAGE,
            RingError::NotInRing { .. } | RingError::MixedRings(..) => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

fn analysis_code(e: &AnalysisError) -> i32 {
    match e {
        AnalysisError::TheoremViolation(_) | AnalysisError::Inconsistent(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Report::new(code, e.render().to_string());
        }
    };
    match run(cli) {
        Ok(r) => r,
        Err(Failure(code, msg)) => Report::new(code, format!("error: {msg}\n")),
    }
}

struct Context {
    graph: Option<PathBuf>,
    ring: StarRing,
    exec: Exec,
}

impl Context {
    fn graph(&self) -> Result<Arc<Graph>, Failure> {
        let Some(path) = &self.graph else {
            return Err(Failure(
                EXIT_USAGE,
                "this command requires --graph FILE".into(),
            ));
        };
        Ok(Arc::new(parse::parse_graph_file(path)?))
    }

    fn expr(&self, g: &Arc<Graph>, src: &str) -> Result<AlgebraElement, Failure> {
        Ok(parse::parse_expression(src, g, self.ring)?)
    }
}

fn line(text: impl std::fmt::Display) -> String {
    format!("{text}\n")
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let ring: StarRing = cli.ring.parse()?;
    let ctx = Context {
        graph: cli.graph,
        ring,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::default()
        },
    };
    match cli.command {
        Command::Normalize { expr } => {
            let g = ctx.graph()?;
            Ok(Report::new(EXIT_OK, line(ctx.expr(&g, &expr)?)))
        }
        Command::Mul { exprs } => {
            let g = ctx.graph()?;
            let mut acc = ctx.expr(&g, &exprs[0])?;
            for src in &exprs[1..] {
                acc = acc.mul_with(&ctx.expr(&g, src)?, ctx.exec)?;
            }
            Ok(Report::new(EXIT_OK, line(acc)))
        }
        Command::Star { expr } => {
            let g = ctx.graph()?;
            Ok(Report::new(EXIT_OK, line(ctx.expr(&g, &expr)?.star())))
        }
        Command::Grade { n, expr } => {
            let g = ctx.graph()?;
            Ok(Report::new(
                EXIT_OK,
                line(ctx.expr(&g, &expr)?.graded_component(n)),
            ))
        }
        Command::ProjCheck { expr } => {
            let g = ctx.graph()?;
            let p = ctx.expr(&g, &expr)?;
            Ok(match analysis::projection_failure(&p) {
                None => Report::new(EXIT_OK, "true\n"),
                Some(why) => Report::new(EXIT_NEGATIVE, format!("false: {why}\n")),
            })
        }
        Command::Diag { expr } => {
            let g = ctx.graph()?;
            let p = ctx.expr(&g, &expr)?;
            let a = analysis::diagonal_analyze(&p)?;
            Ok(match a.decomposition {
                Some(d) => Report::new(
                    EXIT_OK,
                    format!("member: true\n{}\n", d.reconstruct(g.clone(), ring)),
                ),
                None => Report::new(EXIT_NEGATIVE, "member: false\n"),
            })
        }
        Command::Trace { k, expr } => {
            let g = ctx.graph()?;
            let p = ctx.expr(&g, &expr)?;
            let t = analysis::proof_trace(&p, k)?;
            let list = |ps: &[crate::graph::Path]| {
                ps.iter()
                    .map(|b| b.display(&g).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            let mut out = String::new();
            writeln!(out, "level: {}", t.level).unwrap();
            writeln!(out, "A: {}", list(&t.a)).unwrap();
            writeln!(out, "B: {}", list(&t.b)).unwrap();
            for r in &t.records {
                let f = r
                    .f_beta
                    .iter()
                    .map(|e| g.edge_name(*e))
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    out,
                    "beta {}: m={} F={{{}}} gamma={} lambda={} expected={} closed-forms {} = {}",
                    r.beta.display(&g),
                    r.m_beta,
                    f,
                    r.gamma,
                    r.diagonal_coeff,
                    if r.m_beta % 2 == 0 { 1 } else { -1 },
                    r.lhs_scalar,
                    r.rhs_scalar,
                )
                .unwrap();
            }
            writeln!(out, "verified: {}", t.verified()).unwrap();
            let code = if t.verified() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            Ok(Report::new(code, out))
        }
        Command::HomCheck { spec, depth } => {
            let hom = parse::parse_hom_file(&spec)?.validate();
            if let HomStatus::Invalid(f) = hom.status() {
                return Ok(Report::new(EXIT_NEGATIVE, format!("invalid: {f}\n")));
            }
            let report = hom.check_diagonal_preservation(depth, ctx.exec)?;
            let mut out = format!("valid\nchecked: {} diagonal generators\n", report.checked);
            if report.failures.is_empty() {
                out.push_str("preserves diagonal: true\n");
                return Ok(Report::new(EXIT_OK, out));
            }
            out.push_str("preserves diagonal: false\n");
            let src = hom.source();
            for (mu, img) in &report.failures {
                let m = mu.display(src);
                writeln!(out, "{m} {m}^* \u{21a6} {img}").unwrap();
            }
            Ok(Report::new(EXIT_NEGATIVE, out))
        }
        Command::KindCheck { tuple } => {
            let lambdas = tuple
                .iter()
                .map(|s| RingElement::parse(ring, s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match kind_instance_check(ring, &lambdas)? {
                KindVerdict::HypothesisNotMet => Report::new(EXIT_OK, "hypothesis-not-met\n"),
                KindVerdict::Consistent => Report::new(EXIT_OK, "consistent\n"),
                KindVerdict::KindnessViolated { witness } => {
                    let nonzero = witness
                        .iter()
                        .enumerate()
                        .skip(1)
                        .filter(|(_, l)| !l.is_zero())
                        .map(|(i, l)| format!("\u{3bb}{i}={l}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    Report::new(
                        EXIT_NEGATIVE,
                        format!("kindness-violated: witness {nonzero}\n"),
                    )
                }
            })
        }
        Command::ConditionL => {
            let g = ctx.graph()?;
            Ok(match g.condition_l() {
                (true, _) => Report::new(EXIT_OK, "true\n"),
                (false, witness) => {
                    let mut out = String::from("false\n");
                    if let Some(c) = witness {
                        writeln!(out, "cycle without exit: {}", c.display(&g)).unwrap();
                    }
                    Report::new(EXIT_NEGATIVE, out)
                }
            })
        }
        Command::Boundary { point, shift } => {
            let g = ctx.graph()?;
            let x = parse::parse_boundary(&point, &g)?;
            let mut out = String::new();
            writeln!(out, "canonical: {}", x.display(&g)).unwrap();
            writeln!(out, "isolated: {}", x.is_isolated(&g)).unwrap();
            writeln!(out, "isotropy: {}", x.isotropy()).unwrap();
            if let Some(n) = shift {
                writeln!(out, "shift {n}: {}", x.shift(&g, n)?.display(&g)).unwrap();
            }
            Ok(Report::new(EXIT_OK, out))
        }
        Command::Gpd { op } => {
            let g = ctx.graph()?;
            let point = |s: &str| parse::parse_boundary(s, &g);
            let make = |x: &str, k: i64, y: &str| -> Result<Option<GroupoidElement>, Failure> {
                match GroupoidElement::new(&g, point(x)?, k, point(y)?) {
                    Ok(el) => Ok(Some(el)),
                    Err(GroupoidError::NoWitness) => Ok(None),
                    Err(e) => Err(e.into()),
                }
            };
            let no_witness = || Report::new(EXIT_NEGATIVE, "false: no witness\n");
            match op {
                GpdOp::Make { x, k, y } => Ok(match make(&x, k, &y)? {
                    Some(el) => Report::new(EXIT_OK, line(el.display(&g))),
                    None => no_witness(),
                }),
                GpdOp::Inverse { x, k, y } => Ok(match make(&x, k, &y)? {
                    Some(el) => Report::new(EXIT_OK, line(el.inverse(&g)?.display(&g))),
                    None => no_witness(),
                }),
                GpdOp::Compose { x, k, y, w, l, z } => {
                    let (Some(a), Some(b)) = (make(&x, k, &y)?, make(&w, l, &z)?) else {
                        return Ok(no_witness());
                    };
                    Ok(match a.compose(&g, &b) {
                        Ok(c) => Report::new(EXIT_OK, line(c.display(&g))),
                        Err(GroupoidError::NotComposable) => {
                            Report::new(EXIT_NEGATIVE, "false: not composable\n")
                        }
                        Err(e) => return Err(e.into()),
                    })
                }
            }
        }
    }
}
