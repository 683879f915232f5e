use std::collections::BTreeMap;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use psyq::bracket::check_bracket;
use psyq::coloring::enumerate_colorings;
use psyq::diagram::{BraidWord, Mode};
use psyq::error::{Error, Result};
use psyq::format;
use psyq::psyquandle::{check_axioms, Psyquandle};
use psyq::search::{parse_token, resume_token, search_brackets_with, unflatten, SearchSpec};
use psyq::statesum::{coefficient_label, per_coloring_values, state_breakdown, InvariantMultiset, Smoothing};
use psyq::{bracket_multiset, PsyBracket, Ring};

/// Psyquandle counting invariants and bracket multisets of singular knots
/// and pseudoknots.
#[derive(Parser)]
#[command(name = "psyq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a psyquandle file against the axioms.
    VerifyPsyquandle {
        file: PathBuf,
        /// Also require pI-adequacy.
        #[arg(long)]
        pi: bool,
    },
    /// Check a bracket file over a psyquandle.
    VerifyBracket {
        #[arg(long)]
        psyquandle: PathBuf,
        file: PathBuf,
        /// Also require pI-adequacy.
        #[arg(long)]
        pi: bool,
    },
    /// List the colorings of a diagram.
    Colorings {
        #[arg(long)]
        psyquandle: PathBuf,
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Compute the bracket multiset of a diagram.
    Invariant {
        #[arg(long)]
        psyquandle: PathBuf,
        #[arg(long)]
        bracket: PathBuf,
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Print the value of every coloring.
        #[arg(long)]
        per_coloring: bool,
        /// Print the state expansion of every coloring.
        #[arg(long)]
        states: bool,
    },
    /// Search for brackets over Z_m.
    Search {
        #[arg(long)]
        psyquandle: PathBuf,
        #[arg(long = "mod")]
        modulus: u32,
        /// Keep only pI-adequate brackets.
        #[arg(long)]
        pi: bool,
        #[arg(long)]
        limit: Option<usize>,
        /// Continue after this result (dot-separated entries).
        #[arg(long)]
        resume: Option<String>,
        /// Print search statistics to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Group the diagrams of a batch file by bracket multiset.
    Table {
        #[arg(long)]
        psyquandle: PathBuf,
        #[arg(long)]
        bracket: PathBuf,
        diagrams: PathBuf,
    },
}

#[derive(Args)]
struct DiagramArgs {
    /// Diagram file; replaces --strands, --word and --mode.
    #[arg(long, conflicts_with_all = ["strands", "word"])]
    diagram: Option<PathBuf>,
    #[arg(long)]
    strands: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    #[arg(long, default_value = "singular")]
    mode: String,
}

impl DiagramArgs {
    fn load(&self) -> Result<BraidWord> {
        if let Some(path) = &self.diagram {
            return format::parse_diagram(&read(path)?);
        }
        let strands =
            self.strands.ok_or_else(|| Error::Precondition("give --diagram or --strands with --word".into()))?;
        let mode: Mode = self.mode.parse()?;
        BraidWord::parse(self.word.as_deref().unwrap_or(""), strands, mode)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_psyquandle(path: &Path) -> Result<Psyquandle> {
    format::parse_psyquandle(&read(path)?)
}

fn load_bracket(q: &Psyquandle, path: &Path) -> Result<PsyBracket> {
    format::parse_bracket(&read(path)?, q)
}

/// Exit status for a completed check.
fn verdict(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PsyquandleAxioms(_) | Error::BracketAxioms(_) => 1,
        Error::Parse { .. } | Error::Io(_) => 2,
        Error::Domain(_) | Error::Precondition(_) | Error::RingMismatch { .. } | Error::Guard(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(code) if flushed.is_ok() => code,
        Ok(_) => ExitCode::from(2),
        Err(e) => {
            eprintln!("psyq: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<ExitCode> {
    match command {
        Command::VerifyPsyquandle { file, pi } => {
            let [ut, ot, ub, ob] = format::parse_psyquandle_tables(&read(&file)?)?;
            let report = check_axioms(&ut, &ot, &ub, &ob);
            if !report.pass() {
                write!(out, "{report}")?;
                return Ok(verdict(false));
            }
            if pi {
                let q = Psyquandle::from_tables(ut, ot, ub, ob)?;
                let report = q.pi_report();
                if !report.pass() {
                    write!(out, "{report}")?;
                    return Ok(verdict(false));
                }
            }
            writeln!(out, "PASS")?;
            Ok(verdict(true))
        }
        Command::VerifyBracket { psyquandle, file, pi } => {
            let q = load_psyquandle(&psyquandle)?;
            let t = format::parse_bracket_tables(&read(&file)?, q.size())?;
            let [a, b, p, s] = &t.tables;
            let report = check_bracket(&q, &t.ring, [a, b, p, s]);
            if !report.pass() {
                write!(out, "{report}")?;
                return Ok(verdict(false));
            }
            let [a, b, p, s] = t.tables;
            let br = PsyBracket::from_tables(q, t.ring, a, b, p, s)?;
            if pi {
                let mut report = br.base().pi_report();
                let own = br.pi_report();
                report.total += own.total;
                report.failures.extend(own.failures);
                if !report.pass() {
                    write!(out, "{report}")?;
                    return Ok(verdict(false));
                }
            }
            writeln!(out, "PASS")?;
            writeln!(out, "delta {}", br.delta())?;
            writeln!(out, "w {}", br.w())?;
            Ok(verdict(true))
        }
        Command::Colorings { psyquandle, diagram } => {
            let q = load_psyquandle(&psyquandle)?;
            let d = diagram.load()?.close();
            let h = enumerate_colorings(&d, &q)?;
            for c in &h.colorings {
                writeln!(out, "{}", c.render())?;
            }
            writeln!(out, "count {}", h.count())?;
            Ok(verdict(true))
        }
        Command::Invariant { psyquandle, bracket, diagram, per_coloring, states } => {
            let q = load_psyquandle(&psyquandle)?;
            let br = load_bracket(&q, &bracket)?;
            let d = diagram.load()?.close();
            if !per_coloring && !states {
                writeln!(out, "{}", bracket_multiset(&d, &br)?)?;
                return Ok(verdict(true));
            }
            let values = per_coloring_values(&d, &br)?;
            let r = br.ring();
            for (c, v) in &values {
                if states {
                    writeln!(out, "coloring {}", c.render())?;
                    let pairs = psyq::statesum::coefficient_pairs(&d, c);
                    for t in state_breakdown(&d, c, &br) {
                        let factors: Vec<String> = t
                            .state
                            .choices
                            .iter()
                            .zip(d.crossings())
                            .zip(&pairs)
                            .map(|((&s, x), &(i, j))| format!("{}[{},{}]", coefficient_label(x.kind, s), i + 1, j + 1))
                            .collect();
                        let bits: String =
                            t.state.choices.iter().map(|s| if *s == Smoothing::Oriented { 'o' } else { 'd' }).collect();
                        writeln!(
                            out,
                            "  {bits} {} delta^{} = {}  (product {})",
                            if factors.is_empty() { "1".to_string() } else { factors.join(" ") },
                            t.circles,
                            t.contribution,
                            t.product
                        )?;
                    }
                    let (p, n) = d.writhe_counts();
                    let factor = r.pow(br.w(), n as i64 - p as i64).expect("w is a unit");
                    writeln!(out, "  w^({n}-{p}) = {factor}")?;
                    writeln!(out, "  value {v}")?;
                } else {
                    writeln!(out, "{} : {v}", c.render())?;
                }
            }
            let m: InvariantMultiset = values.iter().map(|(_, v)| *v).collect();
            writeln!(out, "{m}")?;
            Ok(verdict(true))
        }
        Command::Search { psyquandle, modulus, pi, limit, resume, stats } => {
            let q = load_psyquandle(&psyquandle)?;
            let mut spec = SearchSpec::new(q.clone(), modulus);
            spec.require_pi = pi;
            spec.limit = limit.unwrap_or(usize::MAX);
            if let Some(token) = &resume {
                spec.resume = Some(parse_token(token, q.size(), modulus)?);
            }
            let ring = psyq::FiniteRing::new(modulus)?;
            let mut first = true;
            let mut last = None;
            let mut failure = None;
            let st = search_brackets_with(&spec, |vals| {
                let [a, b, p, s] = unflatten(vals, q.size());
                let step = PsyBracket::from_tables(q.clone(), ring, a, b, p, s).and_then(|br| {
                    if !first {
                        writeln!(out)?;
                    }
                    write!(out, "{br}")?;
                    first = false;
                    last = Some(resume_token(&br));
                    Ok(())
                });
                match step {
                    Ok(()) => ControlFlow::Continue(()),
                    Err(e) => {
                        failure = Some(e);
                        ControlFlow::Break(())
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            if stats {
                eprintln!("{st}");
            }
            if let (Some(token), Some(limit)) = (last, limit) {
                if st.results >= limit {
                    eprintln!("resume {token}");
                }
            }
            Ok(verdict(true))
        }
        Command::Table { psyquandle, bracket, diagrams } => {
            let q = load_psyquandle(&psyquandle)?;
            let br = load_bracket(&q, &bracket)?;
            let batch = format::parse_batch(&read(&diagrams)?)?;
            let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for (name, word) in batch {
                let m = bracket_multiset(&word.close(), &br)?;
                groups.entry(m.to_string()).or_default().push(name);
            }
            for (m, mut names) in groups {
                names.sort();
                writeln!(out, "{m} | {}", names.join(", "))?;
            }
            Ok(verdict(true))
        }
    }
}
