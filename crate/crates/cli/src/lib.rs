//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the rendered output, so it can be driven in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use quiver_si::enumerate::{
    enumerate_decompositions, minimal_generating_set_with, path_admissible, type_diagram, EnumOptions,
    DEFAULT_ARROW_CAP,
};
use quiver_si::symalg::{render_poly, sigma};
use quiver_si::treelike::{two_vertex_count_char2, two_vertex_count_not_char2, two_vertex_generating_set};
use quiver_si::verify::{relation_suite, verify_invariance, verify_minimality, verify_spanning, Report, DEFAULT_DEGREE_CAP};
use quiver_si::{FieldSpec, Quiver};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] quiver_si::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "quiver-si", version, about = "Generators of semi-invariants of quivers in dimension (2,...,2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the minimal generating set.
    Gens {
        file: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = DEFAULT_ARROW_CAP)]
        arrow_cap: usize,
    },
    /// Print the size of the minimal generating set.
    Count {
        file: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = DEFAULT_ARROW_CAP)]
        arrow_cap: usize,
    },
    /// Print the trace polynomial of a closed path.
    Poly {
        file: PathBuf,
        #[arg(long)]
        path: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Print every decomposition of a multilinear closed path with its type
    /// diagram, then the admissibility verdict.
    Decomp {
        file: PathBuf,
        #[arg(long)]
        path: String,
    },
    /// Run verification checks and print a PASS/FAIL report.
    Verify {
        /// Not needed for the relations suite.
        file: Option<PathBuf>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        max_deg: u32,
    },
    /// Generators of the two-vertex quiver with p loops, q loops and l
    /// arrows between the vertices.
    Twovertex {
        p: usize,
        q: usize,
        l: usize,
        /// Without it, both characteristic branches are reported.
        #[arg(long = "char")]
        characteristic: Option<u64>,
        /// Also print the generators.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Relations,
    Minimality,
    Spanning,
    Invariance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(path: &Path) -> Result<Quiver, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Quiver::parse(&text)?)
}

fn report_code(r: &Report) -> i32 {
    if r.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<i32, CliError> {
    match command {
        Command::Gens {
            file,
            characteristic,
            arrow_cap,
        } => {
            let q = load(&file)?;
            let set = minimal_generating_set_with(&q, FieldSpec::new(characteristic)?, &EnumOptions { arrow_cap })?;
            out.push_str(&set.serialize(&q));
        }
        Command::Count {
            file,
            characteristic,
            arrow_cap,
        } => {
            let q = load(&file)?;
            let set = minimal_generating_set_with(&q, FieldSpec::new(characteristic)?, &EnumOptions { arrow_cap })?;
            writeln!(out, "{}", set.len()).unwrap();
        }
        Command::Poly {
            file,
            path,
            characteristic,
        } => {
            let q = load(&file)?;
            let fs = FieldSpec::new(characteristic)?;
            let w = q.parse_word(&path)?;
            writeln!(out, "{}", render_poly(&q, &sigma(&q, 1, &w)?, fs)).unwrap();
        }
        Command::Decomp { file, path } => {
            let q = load(&file)?;
            let w = q.parse_word(&path)?;
            for (i, d) in enumerate_decompositions(&q, &w)?.iter().enumerate() {
                let labels: Vec<String> = (1..=d.parts.len()).map(|k| format!("p{k}")).collect();
                let dg = type_diagram(&q, d);
                let parts: Vec<String> = d
                    .parts
                    .iter()
                    .zip(&labels)
                    .map(|(p, l)| format!("{l} = {}", q.display_word(p)))
                    .collect();
                writeln!(out, "decomposition {}: {}", i + 1, parts.join(", ")).unwrap();
                writeln!(out, "  diagram: {}", dg.render(&labels)).unwrap();
                let ok = quiver_si::enumerate::decomposition_admissible(&q, d);
                writeln!(out, "  admissible: {}", if ok { "yes" } else { "no" }).unwrap();
            }
            match path_admissible(&q, &w)? {
                Some(d) => writeln!(out, "verdict: admissible via {}", d.display(&q)).unwrap(),
                None => writeln!(out, "verdict: not admissible").unwrap(),
            }
        }
        Command::Verify {
            file,
            characteristic,
            suite,
            max_deg,
        } => {
            let fs = FieldSpec::new(characteristic)?;
            let mut report = Report::new();
            if matches!(suite, Suite::All | Suite::Relations) {
                report.extend(relation_suite(fs)?);
            }
            if suite != Suite::Relations {
                let Some(file) = file else {
                    return Err(CliError::Usage("this suite needs a quiver file".into()));
                };
                let q = load(&file)?;
                if matches!(suite, Suite::All | Suite::Invariance) {
                    report.extend(verify_invariance(&q, fs, max_deg)?);
                }
                if matches!(suite, Suite::All | Suite::Minimality) {
                    report.extend(verify_minimality(&q, fs, max_deg)?);
                }
                if matches!(suite, Suite::All | Suite::Spanning) {
                    report.extend(verify_spanning(&q, fs, max_deg)?);
                }
            }
            out.push_str(&report.render());
            return Ok(report_code(&report));
        }
        Command::Twovertex {
            p,
            q,
            l,
            characteristic,
            list,
        } => {
            let branches = match characteristic {
                Some(c) => vec![FieldSpec::new(c)?],
                None => vec![FieldSpec::Prime(2), FieldSpec::Rational],
            };
            let mut code = EXIT_OK;
            for fs in &branches {
                let tv = two_vertex_generating_set(p, q, l, *fs)?;
                let (p64, q64, l64) = (p as u64, q as u64, l as u64);
                let closed = if fs.is_char2() {
                    two_vertex_count_char2(p64, q64, l64)
                } else {
                    two_vertex_count_not_char2(p64, q64, l64)
                };
                if tv.count() as u128 != closed {
                    code = EXIT_FAIL;
                    writeln!(out, "FAIL listed {} generators, closed form gives {closed}", tv.count()).unwrap();
                }
                if branches.len() == 1 {
                    writeln!(out, "{}", tv.count()).unwrap();
                } else {
                    let label = if fs.is_char2() { "char 2" } else { "char != 2" };
                    writeln!(out, "{label}: {}", tv.count()).unwrap();
                }
                if list {
                    out.push_str(&tv.set.serialize(&tv.quiver));
                }
            }
            return Ok(code);
        }
    }
    Ok(EXIT_OK)
}
