//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::diagram::{parse_diagram, DiagramVector, JacobiGraph, Kind};
use crate::error::{Error, Result};
use crate::liealg::{builtin, load_algebra, MetricLieAlgebra};
use crate::rational::fmt_q;
use crate::relations::{self, Basis, DEFAULT_MAX_DEGREE};
use crate::ribbon::{closure_invariant, BraidWord};
use crate::weights::WeightSystem;
use crate::wheeling::wheeling_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "vassiliev", version, about = "Jacobi diagrams, weight systems, wheeling and truncated link invariants")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Scalar,
    #[value(alias = "U")]
    U,
    #[value(alias = "S")]
    S,
    Sdual,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the graded pieces of A or B.
    Dims {
        #[arg(long, value_enum)]
        space: SpaceArg,
        /// Largest degree (number of trivalent plus univalent vertices).
        #[arg(long)]
        degree: Option<usize>,
        /// Trivalent vertices of a single B piece.
        #[arg(long)]
        v: Option<usize>,
        /// Legs of a single B piece.
        #[arg(long)]
        legs: Option<usize>,
        /// Largest degree the relation solver accepts.
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        budget: usize,
    },
    /// Expresses a diagram in the basis of its graded piece.
    Reduce {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Evaluates a weight system on a diagram.
    Eval {
        /// Built-in algebra name or JSON algebra file.
        #[arg(long)]
        alg: String,
        #[arg(long, default_value = "fund")]
        rep: String,
        #[arg(long)]
        diagram: PathBuf,
        /// Defaults to `scalar` for A and `s` for B.
        #[arg(long, value_enum)]
        target: Option<Target>,
    },
    /// Checks the wheeling theorem through a weight system.
    Wheeling {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        max_degree: usize,
        /// Negates every wheel; the checks are then expected to fail.
        #[arg(long)]
        flip_omega: bool,
    },
    /// The truncated invariant of a braid closure.
    Link {
        /// Space-separated letters; `k` is σ_k and `-k` its inverse.
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        alg: String,
        #[arg(long, default_value = "fund")]
        rep: String,
        /// Highest power of h kept.
        #[arg(long)]
        order: usize,
        /// Multiplies by the inverse twist to the power of the writhe.
        #[arg(long)]
        normalize: bool,
    },
    /// Checks the axioms of an algebra and its representations.
    Validate {
        #[arg(long)]
        alg: String,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// A built-in name, or a path to a JSON algebra file.
pub fn resolve_algebra(name_or_path: &str) -> Result<MetricLieAlgebra> {
    if Path::new(name_or_path).is_file() {
        load_algebra(name_or_path)
    } else {
        builtin(name_or_path)
    }
}

fn read_diagram(path: &Path) -> Result<JacobiGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_diagram(&text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
    if !text.ends_with('\n') {
        out.write_all(b"\n").map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(())
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Dims { space, degree, v, legs, budget } => {
            emit(out, &run_dims(*space, *degree, *v, *legs, *budget, text)?)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { diagram } => {
            emit(out, &run_reduce(&read_diagram(diagram)?, text)?)?;
            Ok(EXIT_OK)
        }
        Command::Eval { alg, rep, diagram, target } => {
            let g = resolve_algebra(alg)?;
            g.rep(rep)?;
            let d = read_diagram(diagram)?;
            emit(out, &run_eval(&g, rep, &d, *target)?)?;
            Ok(EXIT_OK)
        }
        Command::Wheeling { alg, max_degree, flip_omega } => {
            let g = resolve_algebra(alg)?;
            relations::b_basis_up_to(*max_degree)?;
            let checks = wheeling_report(&g, *max_degree, *flip_omega)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            if text {
                s.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            }
            emit(out, &s)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_PROPERTY })
        }
        Command::Link { braid, strands, alg, rep, order, normalize } => {
            let word = BraidWord::parse(braid, *strands)?;
            let g = resolve_algebra(alg)?;
            g.rep(rep)?;
            let labels = vec![rep.as_str(); *strands];
            let value = closure_invariant(&g, &labels, &word, *order, *normalize)?;
            let s = if text { format!("{word}\t{value}") } else { value.to_string() };
            emit(out, &s)?;
            Ok(EXIT_OK)
        }
        Command::Validate { alg } => {
            let g = match resolve_algebra(alg) {
                Err(Error::Validation(msg)) => {
                    emit(out, &msg)?;
                    return Ok(EXIT_PROPERTY);
                }
                g => g?,
            };
            let report = g.validate();
            emit(out, &report.to_string())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_PROPERTY })
        }
    }
}

/// Rows `degree<TAB>dim` for A, or `v<TAB>legs<TAB>dim` for B.
pub fn run_dims(
    space: SpaceArg,
    degree: Option<usize>,
    v: Option<usize>,
    legs: Option<usize>,
    budget: usize,
    text: bool,
) -> Result<String> {
    let over = |d: usize| {
        if d > budget {
            Err(Error::Budget(format!("degree {d} exceeds the budget {budget}")))
        } else {
            Ok(())
        }
    };
    let mut s = String::new();
    match space {
        SpaceArg::A => {
            if v.is_some() || legs.is_some() {
                return Err(Error::Unknown("--v and --legs apply to --space B".into()));
            }
            let degree = degree.ok_or_else(|| Error::Unknown("--space A needs --degree".into()))?;
            over(degree)?;
            for n in 0..=degree / 2 {
                let dim = relations::dim_a_with_budget(n, budget)?;
                s.push_str(&if text { format!("dim A_{} = {dim}\n", 2 * n) } else { format!("{}\t{dim}\n", 2 * n) });
            }
        }
        SpaceArg::B => {
            let pieces: Vec<(usize, usize)> = match (v, legs, degree) {
                (Some(v), Some(l), None) => vec![(v, l)],
                (None, None, Some(d)) => (0..=d).flat_map(|t| (0..=t).map(move |v| (v, t - v))).collect(),
                _ => return Err(Error::Unknown("--space B needs either --v and --legs or --degree".into())),
            };
            for (v, l) in pieces {
                over(v + l)?;
                if (v + l) % 2 == 1 && degree.is_some() {
                    continue;
                }
                let dim = relations::dim_b(v, l)?;
                s.push_str(&if text { format!("dim B^{{{v},{l}}} = {dim}\n") } else { format!("{v}\t{l}\t{dim}\n") });
            }
        }
    }
    Ok(s)
}

fn basis_for(d: &JacobiGraph) -> Result<Basis> {
    match d.kind() {
        Kind::A => {
            if d.degree() % 2 == 1 {
                return Err(Error::Grading(format!("{d} has odd degree")));
            }
            relations::basis_a(d.degree() / 2)
        }
        Kind::B => {
            let (v, l) = d.bigrading();
            relations::basis_b(v, l)
        }
    }
}

/// The coordinates of a diagram in the representatives of its piece, one per line.
pub fn run_reduce(d: &JacobiGraph, text: bool) -> Result<String> {
    let basis = basis_for(d)?;
    let coords = basis.reduce(&DiagramVector::from_graph(d))?;
    let mut s = String::new();
    if text {
        s.push_str(&format!("{} has dimension {}\n", basis.space, basis.dim()));
    }
    for (c, r) in coords.iter().zip(&basis.representatives) {
        if !c.is_zero() {
            s.push_str(&format!("{}\t{}\n", fmt_q(c), r));
        }
    }
    if coords.iter().all(Zero::is_zero) {
        s.push_str("0\n");
    }
    Ok(s)
}

/// A weight system value in the requested target.
pub fn run_eval(g: &MetricLieAlgebra, rep: &str, d: &JacobiGraph, target: Option<Target>) -> Result<String> {
    let w = WeightSystem::new(g);
    let v = DiagramVector::from_graph(d);
    let names = g.basis_names();
    let duals: Vec<String> = names.iter().map(|n| format!("{n}*")).collect();
    let target = target.unwrap_or(match d.kind() {
        Kind::A => Target::Scalar,
        Kind::B => Target::S,
    });
    let need = |k: Kind| {
        if d.kind() == k {
            Ok(())
        } else {
            Err(Error::KindMismatch { expected: k.name(), found: d.kind().name() })
        }
    };
    Ok(match target {
        Target::Scalar => match d.kind() {
            Kind::A => fmt_q(&w.closed_a(rep, &v)?),
            Kind::B => {
                let s = w.b_to_s(&v)?.0;
                if s.is_zero() {
                    "0".into()
                } else if s.max_degree() == Some(0) {
                    fmt_q(&s.coeff(&[]))
                } else {
                    return Err(Error::Grading("a scalar value needs a diagram without legs".into()));
                }
            }
        },
        Target::U => {
            need(Kind::A)?;
            w.a_to_u(&v)?.render(names)
        }
        Target::S => {
            need(Kind::B)?;
            w.b_to_s(&v)?.0.render(names)
        }
        Target::Sdual => {
            need(Kind::B)?;
            w.b_to_sdual(&v)?.0.render(&duals)
        }
    })
}
