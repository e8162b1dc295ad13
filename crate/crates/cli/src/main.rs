//! `lmt`: compute Kauffman polynomials of PD diagrams and check the
//! linking-number formula at `z = -a - a^-1`.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal invariant violation,
//! 3 a verification check failed.

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lmt::braid::RandomBraids;
use lmt::corpus::{self, CorpusEntry};
use lmt::lmt::{lmt_rhs, verify_all_with, Convention, VerificationReport};
use lmt::transfer::g_tau;
use lmt::{parse_pd, Diagram, Engine, OrientationMask};

#[derive(Parser)]
#[command(name = "lmt", version, about = "Kauffman polynomial engine and specialization checker")]
struct Cli {
    /// Machine-readable `key=value` output.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Λ(D), optionally the oriented polynomial and its specialization.
    Compute {
        /// PD file, or `-` for standard input.
        path: PathBuf,
        /// Normalize to the 0-framed oriented link.
        #[arg(long)]
        oriented: bool,
        /// Evaluate at z = -a - a^-1.
        #[arg(long)]
        specialize: bool,
        /// Bitstring over components; `1` reverses a component.
        #[arg(long, value_name = "MASK")]
        orientation: Option<String>,
    },
    /// Print the sum over orientations gτ.
    Gtau { path: PathBuf },
    /// Print the linking-number generating function.
    Lmt {
        path: PathBuf,
        #[arg(long, value_name = "MASK")]
        orientation: Option<String>,
    },
    /// Run every identity check on a file, the corpus, or random braid closures.
    Verify {
        path: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        /// Number of random braid closures.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, value_name = "K", default_value_t = 8)]
        max_crossings: usize,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
        /// Negate linking numbers on the right-hand side (a negative control).
        #[arg(long, hide = true)]
        corrupt_convention: bool,
    },
    /// Inspect the built-in corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Show { name: String },
}

enum CliError {
    Input(String),
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

fn internal(err: impl fmt::Display) -> CliError {
    CliError::Internal(err.to_string())
}

/// Collects output lines as `key=value` or aligned `key: value`.
struct Out {
    porcelain: bool,
    lines: Vec<String>,
}

impl Out {
    fn kv(&mut self, key: &str, value: impl fmt::Display) {
        if self.porcelain {
            self.lines.push(format!("{key}={value}"));
        } else {
            self.lines.push(format!("{:<16}{value}", format!("{key}:")));
        }
    }

    fn flush(&mut self) {
        for line in self.lines.drain(..) {
            println!("{line}");
        }
    }
}

fn read_diagram(path: &Path) -> Result<Diagram, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    parse_pd(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn orientation(d: &Diagram, mask: Option<&str>) -> Result<OrientationMask, CliError> {
    let com = d.component_count();
    let Some(mask) = mask else {
        return Ok(OrientationMask::reference(com));
    };
    let o: OrientationMask = mask.parse().map_err(CliError::Input)?;
    if o.len() != com {
        return Err(CliError::Input(format!(
            "orientation mask `{mask}` has {} bits, the diagram has {com} components",
            o.len()
        )));
    }
    Ok(o)
}

fn nonempty(d: &Diagram) -> Result<(), CliError> {
    if d.component_count() == 0 {
        return Err(CliError::Input("the diagram has no components".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let mut out = Out { porcelain: cli.porcelain, lines: Vec::new() };
    match cli.command {
        Command::Compute { path, oriented, specialize, orientation: mask } => {
            let d = read_diagram(&path)?;
            nonempty(&d)?;
            let o = orientation(&d, mask.as_deref())?;
            let mut engine = Engine::from_env();
            let lambda = engine.lambda(&d).map_err(internal)?;
            out.kv("crossings", d.crossing_count());
            out.kv("components", d.component_count());
            out.kv("lambda", &lambda);
            if oriented {
                out.kv("writhe", d.writhe(&o));
                let f = engine.f_oriented(&d, &o).map_err(internal)?;
                out.kv("f", &f);
                if specialize {
                    out.kv("f_specialized", f.substitute_z().map_err(internal)?);
                }
            } else if specialize {
                out.kv("lambda_specialized", lambda.substitute_z().map_err(internal)?);
            }
        }
        Command::Gtau { path } => {
            let d = read_diagram(&path)?;
            nonempty(&d)?;
            out.kv("components", d.component_count());
            out.kv("g_tau", g_tau(&d));
        }
        Command::Lmt { path, orientation: mask } => {
            let d = read_diagram(&path)?;
            nonempty(&d)?;
            let o = orientation(&d, mask.as_deref())?;
            out.kv("components", d.component_count());
            out.kv("lmt_rhs", lmt_rhs(&d, &o).map_err(internal)?);
        }
        Command::Verify { path, corpus, random, max_crossings, seed, corrupt_convention } => {
            let mut subjects: Vec<(String, Diagram)> = Vec::new();
            if let Some(path) = path {
                subjects.push((path.display().to_string(), read_diagram(&path)?));
            }
            if corpus {
                subjects.extend(corpus::corpus().into_iter().map(|e| (e.name.clone(), e.diagram())));
            }
            if let Some(n) = random {
                if max_crossings == 0 {
                    return Err(CliError::Input("--max-crossings must be positive".into()));
                }
                for (i, b) in RandomBraids::new(seed, max_crossings).take(n).enumerate() {
                    subjects.push((format!("random-{i}:{b}"), b.closure()));
                }
            }
            if subjects.is_empty() {
                return Err(CliError::Input("nothing to verify: give a file, --corpus, or --random N".into()));
            }
            let convention = if corrupt_convention { Convention::Mirrored } else { Convention::Standard };
            return verify(&mut out, subjects, convention);
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for e in corpus::corpus() {
                    if out.porcelain {
                        out.lines.push(format!("entry={}|{}|{}", e.name, e.expected_com, e.notes));
                    } else {
                        out.lines.push(format!("{:<26}{} component(s)  {}", e.name, e.expected_com, e.notes));
                    }
                }
            }
            CorpusAction::Show { name } => {
                let e: CorpusEntry = corpus::find(&name)
                    .ok_or_else(|| CliError::Input(format!("no corpus entry named `{name}`")))?;
                out.lines.push(format!("# {}: {}", e.name, e.notes));
                out.lines.extend(e.pd_text.lines().map(str::to_string));
            }
        },
    }
    out.flush();
    Ok(ExitCode::SUCCESS)
}

fn verify(out: &mut Out, subjects: Vec<(String, Diagram)>, convention: Convention) -> Result<ExitCode, CliError> {
    let mut engine = Engine::from_env();
    let (mut checks, mut failed) = (0usize, 0usize);
    let n = subjects.len();
    for (name, d) in subjects {
        nonempty(&d).map_err(|_| CliError::Input(format!("{name}: the diagram has no components")))?;
        let o = OrientationMask::reference(d.component_count());
        let reports: Vec<VerificationReport> = verify_all_with(&mut engine, &d, &o, convention)
            .map_err(|e| CliError::Internal(format!("{name}: {e}")))?
            .into_iter()
            .map(|r| r.with_subject(name.clone()))
            .collect();
        checks += reports.len();
        let bad = reports.iter().filter(|r| !r.pass).count();
        failed += bad;
        if out.porcelain {
            for r in &reports {
                let status = if r.pass { "pass" } else { "FAIL" };
                let mut line = format!("report={}|{}|{status}", r.subject, r.claim);
                if !r.pass {
                    line.push_str(&format!("|lhs={}|rhs={}", r.lhs, r.rhs));
                }
                out.lines.push(line);
            }
        } else if bad == 0 {
            out.lines.push(format!("ok    {name} ({} checks)", reports.len()));
        } else {
            for r in reports.iter().filter(|r| !r.pass) {
                out.lines.push(format!("FAIL  {name} {}", r.claim));
                out.lines.push(format!("      lhs: {}", r.lhs));
                out.lines.push(format!("      rhs: {}", r.rhs));
            }
        }
        out.flush();
    }
    out.kv("diagrams", n);
    out.kv("checks", checks);
    out.kv("failed", failed);
    out.flush();
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(match err {
                CliError::Input(_) => 1,
                CliError::Internal(_) => 2,
            })
        }
    }
}
