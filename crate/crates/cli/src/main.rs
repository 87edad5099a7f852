use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dwl_epc::coherent::refine;
use dwl_epc::derive::{derivable_closure_oracle, Position};
use dwl_epc::dwl::{run_trace, DwlTrace, Outcome};
use dwl_epc::pipeline::{input_axioms, refute, RefuteError};
use dwl_epc::prooflog::{check, Mode, Proof};
use dwl_epc::sketch::sketch;
use dwl_epc::structures::{cfi_pair, Structure, UnionStructure};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const EXIT_USAGE: u8 = 64;
const EXIT_DOMAIN: u8 = 65;
const EXIT_NOINPUT: u8 = 66;
const EXIT_CANTCREATE: u8 = 73;

#[derive(Parser, Debug)]
#[command(name = "dwl-epc", version, about = "Compile DWL traces into checked EPC3 refutations of graph isomorphism")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for commands that shuffle vertex labels (`cfi`).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Overrides the vertex budget of the trace header.
    #[arg(long, global = true, env = "DWL_EPC_BUDGET_VERTICES")]
    budget_vertices: Option<usize>,

    /// Overrides the step budget of the trace header.
    #[arg(long, global = true, env = "DWL_EPC_BUDGET_STEPS")]
    budget_steps: Option<usize>,

    /// Worker threads for refinement and proof checking (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Print a machine-readable `key value` report instead of prose.
    #[arg(long, global = true)]
    report: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the algebraic sketch of a structure's stable colouring.
    Refine { graph: PathBuf },
    /// Print the isomorphism axioms of two structures.
    Piso { g: PathBuf, h: PathBuf },
    /// Run a trace and print the side sketches of every state.
    Dwl { g: PathBuf, h: PathBuf, trace: PathBuf },
    /// Compile a trace into a refutation and write it to `-o`.
    Refute {
        g: PathBuf,
        h: PathBuf,
        trace: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a proof against the axioms of two structures.
    Check {
        proof: PathBuf,
        #[arg(long, num_args = 2, value_names = ["G", "H"], required = true)]
        axioms: Vec<PathBuf>,
        /// Checking regime; defaults to the proof header.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Require restricted extension forms (implied by a restricted header).
        #[arg(long)]
        restricted: bool,
    },
    /// Print a CFI companion of a base graph.
    Cfi {
        base: PathBuf,
        #[arg(long)]
        twist: bool,
        #[arg(long)]
        ordered: bool,
    },
    /// Print the positions from which the first player wins the 3-pebble game.
    Oracle { g: PathBuf, h: PathBuf },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::parse(s).ok_or_else(|| format!("unknown mode {s:?}, expected mc3, pc3 or epc3"))
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } => EXIT_NOINPUT,
            CliError::Write { .. } => EXIT_CANTCREATE,
            CliError::Input { .. } | CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Text to print and the exit status of a successful run.
struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn load_structure(path: &Path) -> Result<Structure, CliError> {
    Structure::parse(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn load_trace(cli: &Cli, path: &Path) -> Result<DwlTrace, CliError> {
    let mut trace = DwlTrace::parse(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    if let Some(b) = cli.budget_vertices {
        trace.budget_vertices = b;
    }
    if let Some(b) = cli.budget_steps {
        trace.budget_steps = b;
    }
    Ok(trace)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Refine { graph } => {
            let s = load_structure(graph)?;
            Ok(Output::ok(sketch(&s, &refine(&s)).to_text()))
        }
        Command::Piso { g, h } => {
            let sys = input_axioms(&load_structure(g)?, &load_structure(h)?).map_err(domain)?;
            Ok(Output::ok(sys.to_text()))
        }
        Command::Dwl { g, h, trace } => dwl(cli, g, h, trace),
        Command::Refute { g, h, trace, output } => refute_cmd(cli, g, h, trace, output),
        Command::Check {
            proof,
            axioms,
            mode,
            restricted,
        } => check_cmd(cli, proof, &axioms[0], &axioms[1], *mode, *restricted),
        Command::Cfi { base, twist, ordered } => {
            let (_, s) = cfi_pair(&load_structure(base)?, *twist, *ordered).map_err(domain)?;
            let s = match cli.seed {
                Some(seed) => {
                    let mut perm: Vec<u32> = (0..s.len() as u32).collect();
                    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                    s.relabel(&perm)
                }
                None => s,
            };
            Ok(Output::ok(s.to_text()))
        }
        Command::Oracle { g, h } => {
            let u = UnionStructure::new(&load_structure(g)?, &load_structure(h)?).map_err(domain)?;
            let wins = derivable_closure_oracle(&u).map_err(domain)?;
            let mut text = String::new();
            for p in &wins {
                writeln!(text, "win {p}").unwrap();
            }
            writeln!(text, "spoiler_wins {}", u8::from(wins.contains(&Position::empty()))).unwrap();
            Ok(Output::ok(text))
        }
    }
}

fn dwl(cli: &Cli, g: &Path, h: &Path, trace: &Path) -> Result<Output, CliError> {
    let (g, h, trace) = (load_structure(g)?, load_structure(h)?, load_trace(cli, trace)?);
    let run = run_trace(&g, &h, &trace).map_err(domain)?;
    let mut text = String::new();
    for (i, s) in run.states.iter().enumerate() {
        let origin = s.origin.map_or("start".to_string(), |(op, c)| format!("{op} c{c}"));
        writeln!(
            text,
            "state {i} {origin} vertices={}+{} distinguished={}",
            s.union.left_size,
            s.union.right_size(),
            u8::from(s.distinguished())
        )
        .unwrap();
        for c in s.operable_colors() {
            let (u, v) = s.history.representative(c);
            writeln!(text, "operable c{c} rep=({u},{v})").unwrap();
        }
        text.push_str("sketch left\n");
        text.push_str(&s.sketch_left.to_text());
        text.push_str("sketch right\n");
        text.push_str(&s.sketch_right.to_text());
    }
    let (word, status) = match run.outcome {
        Outcome::Distinguished => ("DISTINGUISHED", 0),
        Outcome::NotDistinguished => ("NOT_DISTINGUISHED", 1),
    };
    writeln!(text, "outcome {word}").unwrap();
    Ok(Output { text, status })
}

fn refute_cmd(cli: &Cli, g: &Path, h: &Path, trace: &Path, output: &Path) -> Result<Output, CliError> {
    let (g, h, trace) = (load_structure(g)?, load_structure(h)?, load_trace(cli, trace)?);
    match refute(&g, &h, &trace) {
        Ok(r) => {
            fs::write(output, r.proof.to_text()).map_err(|source| CliError::Write {
                path: output.to_owned(),
                source,
            })?;
            let text = if cli.report {
                format!("outcome REFUTED\nproof {}\n{}", output.display(), r.report())
            } else {
                let m = &r.verdict.metrics;
                format!(
                    "REFUTED after {} DWL steps: {} lines, size {}, {} extension variables, written to {}\n",
                    r.steps,
                    r.proof.steps.len(),
                    m.size,
                    m.extensions,
                    output.display()
                )
            };
            Ok(Output::ok(text))
        }
        Err(RefuteError::NotDistinguished) => {
            let text = if cli.report {
                "outcome NOT_DISTINGUISHED\n".to_string()
            } else {
                "NOT_DISTINGUISHED: the trace ends with equal sketches; no proof written\n".to_string()
            };
            Ok(Output { text, status: 1 })
        }
        Err(e) => Err(domain(e)),
    }
}

fn check_cmd(cli: &Cli, proof: &Path, g: &Path, h: &Path, mode: Option<Mode>, restricted: bool) -> Result<Output, CliError> {
    let axioms = input_axioms(&load_structure(g)?, &load_structure(h)?).map_err(domain)?.polys();
    let rejected = |why: String| Output {
        text: format!("REJECT {why}\n"),
        status: 2,
    };
    let mut p = match Proof::parse(&read(proof)?) {
        Ok(p) => p,
        Err(e) => return Ok(rejected(e.to_string())),
    };
    if let Some(m) = mode {
        p.mode = m;
    }
    p.restricted |= restricted;
    Ok(match check(&p, &axioms) {
        Ok(v) => {
            let word = if v.refutation { "REFUTATION" } else { "ACCEPT" };
            let text = if cli.report {
                format!("verdict {word}\n{}\n", v.metrics.to_text().replace(' ', "\n").replace('=', " "))
            } else {
                format!("{word} {}\n", v.metrics.to_text())
            };
            Output {
                text,
                status: if v.refutation { 0 } else { 1 },
            }
        }
        Err(e) => rejected(format!("{}: {e}", e.code())),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("dwl-epc: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("dwl-epc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
