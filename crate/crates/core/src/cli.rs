//! The `dualized` command line. `run` is the whole program; the binary only
//! forwards `std::env::args` and exits with the returned code.
//!
//! Exit codes: 0 accepted / valid / found, 1 rejected / countermodel / not
//! found, 2 usage or parse error.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::deriv_format::{parse_dil_derivation, parse_l_derivation, print_dil_derivation};
use crate::dil::{check_dil, prove_dil, CutMode};
use crate::kripke::{validate_l, validate_parallel, Validity};
use crate::lcalc::{activations, check_l, l_sequent, nonempty_right};
use crate::parse::{
    parse_any_sequent, parse_formula, parse_goal, parse_graph, parse_l_sequent, parse_node, parse_polarity,
    parse_sequent, parse_term, AnySequent,
};
use crate::reach::reaches;
use crate::reduce::{normalize, Strategy};
use crate::typing::{check, elaborate_case};

pub const OK: i32 = 0;
pub const REJECTED: i32 = 1;
pub const USAGE: i32 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "dualized", version, about = "Dualized intuitionistic logic and type theory toolkit")]
struct Cli {
    /// Human-readable or line-oriented output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type-check a goal file: a sequent, then `|-` and a term.
    Check { file: String },
    /// Normalize the term in FILE.
    Normalize {
        file: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// `lo` or `rand:SEED`.
        #[arg(long, default_value = "lo")]
        strategy: String,
    },
    /// Decide `N1 <=[POL]* N2` in GRAPH.
    Reach { graph: String, n1: String, pol: String, n2: String },
    /// Check a DIL derivation file.
    DilCheck {
        file: String,
        #[arg(long, default_value = "general")]
        mode: String,
    },
    /// Bounded proof search for a DIL sequent.
    DilProve {
        seq: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Check an L derivation file.
    LCheck { file: String },
    /// Translate an L sequent to its DIL activations or a DIL sequent to L.
    Translate {
        #[arg(long, conflicts_with = "to_l", required_unless_present = "to_l")]
        to_dil: bool,
        #[arg(long)]
        to_l: bool,
        file: String,
    },
    /// Search finite Kripke models for a countermodel.
    KripkeValidate {
        seq: String,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Comma-separated atom alphabet; defaults to the sequent's atoms.
        #[arg(long)]
        atoms: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Expand the derived case eliminator into cuts.
    CaseElab {
        #[arg(long)]
        scrutinee: String,
        #[arg(long)]
        var: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value = "+")]
        pol: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "n")]
        node: String,
    },
}

/// Output sinks and the selected format.
struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn fail(&mut self, code: i32, s: impl AsRef<str>) -> i32 {
        let _ = writeln!(self.err, "{}", s.as_ref());
        code
    }

    fn machine(&self) -> bool {
        self.format == Format::Machine
    }
}

/// A file's contents when `arg` names an existing file, else `arg` itself.
fn inline_or_file(arg: &str) -> Result<String, String> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))
    } else {
        Ok(arg.to_string())
    }
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return OK;
                }
                _ => USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { out, err, format: cli.format };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(msg) => io.fail(USAGE, msg),
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<i32, String> {
    match cmd {
        Command::Check { file } => cmd_check(&read_file(&file)?, io),
        Command::Normalize { file, trace, max_steps, strategy } => {
            let strategy: Strategy = strategy.parse()?;
            cmd_normalize(&read_file(&file)?, trace, max_steps, strategy, io)
        }
        Command::Reach { graph, n1, pol, n2 } => {
            let g = parse_graph(&graph).map_err(|e| format!("graph: {e}"))?;
            let p = parse_polarity(&pol).map_err(|e| format!("polarity: {e}"))?;
            let a = parse_node(&n1).map_err(|e| format!("node: {e}"))?;
            let b = parse_node(&n2).map_err(|e| format!("node: {e}"))?;
            let yes = reaches(&g, &a, p, &b);
            if io.machine() {
                io.line(format!("reaches {yes}"));
            } else {
                io.line(format!("{a} <={p}* {b}: {}", if yes { "yes" } else { "no" }));
            }
            Ok(if yes { OK } else { REJECTED })
        }
        Command::DilCheck { file, mode } => {
            let mode: CutMode = mode.parse()?;
            let d = parse_dil_derivation(&read_file(&file)?).map_err(|e| format!("{file}: {e}"))?;
            Ok(match check_dil(&d, mode) {
                Ok(()) => {
                    io.line(if io.machine() { "valid".to_string() } else { format!("valid: {}", d.conclusion) });
                    OK
                }
                Err(e) => io.fail(REJECTED, format!("invalid {e}")),
            })
        }
        Command::DilProve { seq, depth } => {
            let s = parse_sequent(&inline_or_file(&seq)?).map_err(|e| format!("sequent: {e}"))?;
            Ok(match prove_dil(&s, depth) {
                Ok(d) => {
                    let _ = write!(io.out, "{}", print_dil_derivation(&d));
                    OK
                }
                Err(e) => {
                    io.line(if io.machine() { "not-found".to_string() } else { e.to_string() });
                    REJECTED
                }
            })
        }
        Command::LCheck { file } => {
            let d = parse_l_derivation(&read_file(&file)?).map_err(|e| format!("{file}: {e}"))?;
            Ok(match check_l(&d) {
                Ok(()) => {
                    io.line(if io.machine() { "valid".to_string() } else { format!("valid: {}", d.conclusion) });
                    OK
                }
                Err(e) => io.fail(REJECTED, format!("invalid {e}")),
            })
        }
        Command::Translate { to_dil, to_l: _, file } => {
            let text = inline_or_file(&file)?;
            if to_dil {
                let s = parse_l_sequent(&text).map_err(|e| format!("L sequent: {e}"))?;
                let acts = activations(&nonempty_right(&s)).map_err(|e| e.to_string())?;
                for a in acts {
                    io.line(a.to_string());
                }
            } else {
                let s = parse_sequent(&text).map_err(|e| format!("sequent: {e}"))?;
                io.line(l_sequent(&s).to_string());
            }
            Ok(OK)
        }
        Command::KripkeValidate { seq, max_worlds, atoms, jobs } => {
            if max_worlds == 0 {
                return Err("--max-worlds must be at least 1".into());
            }
            let any = parse_any_sequent(&inline_or_file(&seq)?).map_err(|e| format!("sequent: {e}"))?;
            let atoms: Vec<String> = match atoms {
                Some(list) => list.split(',').map(str::trim).filter(|a| !a.is_empty()).map(String::from).collect(),
                None => match &any {
                    AnySequent::Dil(s) => s.atoms().into_iter().collect(),
                    AnySequent::L(s) => s.atoms().into_iter().collect(),
                },
            };
            let v = match &any {
                AnySequent::Dil(s) => validate_parallel(s, max_worlds, &atoms, jobs),
                AnySequent::L(s) => validate_l(s, max_worlds, &atoms),
            }
            .map_err(|e| e.to_string())?;
            Ok(match v {
                Validity::Valid => {
                    io.line("valid");
                    OK
                }
                Validity::Countermodel(c) => {
                    io.line("countermodel");
                    let _ = write!(io.out, "{c}");
                    REJECTED
                }
            })
        }
        Command::CaseElab { scrutinee, var, left, right, pol, a, b, c, node } => {
            let term = |s: &str, what: &str| parse_term(s).map_err(|e| format!("{what}: {e}"));
            let formula = |s: &str, what: &str| parse_formula(s).map_err(|e| format!("{what}: {e}"));
            let t = elaborate_case(
                &term(&scrutinee, "scrutinee")?,
                &var,
                &term(&left, "left branch")?,
                &term(&right, "right branch")?,
                parse_polarity(&pol).map_err(|e| format!("polarity: {e}"))?,
                &formula(&a, "A")?,
                &formula(&b, "B")?,
                &formula(&c, "C")?,
                &parse_node(&node).map_err(|e| format!("node: {e}"))?,
            );
            io.line(t.to_string());
            Ok(OK)
        }
    }
}

fn cmd_check(text: &str, io: &mut Io<'_>) -> Result<i32, String> {
    let (s, t) = parse_goal(text).map_err(|e| format!("goal: {e}"))?;
    Ok(match check(&s, &t) {
        Ok(trace) => {
            if io.machine() {
                io.line(format!("accepted {}", trace.size()));
            } else {
                io.line(format!("accepted: {s} |- {t}"));
            }
            OK
        }
        Err(e) => io.fail(REJECTED, format!("rejected {e}")),
    })
}

/// The term of a normalize file: a bare term, or the term of a goal file.
fn normalize_input(text: &str) -> Result<crate::term::Term, String> {
    match parse_term(text) {
        Ok(t) => Ok(t),
        Err(term_err) => parse_goal(text).map(|(_, t)| t).map_err(|_| format!("term: {term_err}")),
    }
}

fn cmd_normalize(text: &str, trace: bool, max_steps: usize, strategy: Strategy, io: &mut Io<'_>) -> Result<i32, String> {
    let t = normalize_input(text)?;
    Ok(match normalize(&t, max_steps, strategy) {
        Ok(nf) => {
            if trace {
                for (i, r) in nf.trace.iter().enumerate() {
                    io.line(format!("{} {}", i + 1, r.trace_line()));
                }
                if nf.trace.is_empty() {
                    io.line(nf.term.to_string());
                }
            } else if io.machine() {
                io.line(format!("steps {}", nf.trace.len()));
                io.line(format!("normal {}", nf.term));
            } else {
                io.line(nf.term.to_string());
            }
            OK
        }
        Err(e) => io.fail(REJECTED, e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dualized").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn reach_flip() {
        let (code, out, _) = run_str(&["reach", "n1 <=[+] n2", "n2", "-", "n1"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(run_str(&["reach", "n1 <=[+] n2", "n2", "+", "n1"]).0, 1);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["reach", "n1 <=[+", "a", "+", "b"]).0, 2);
        assert_eq!(run_str(&["translate", "x"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn kripke_countermodel() {
        let (code, out, _) = run_str(&["kripke-validate", "; |- + a @ n", "--max-worlds", "1", "--atoms", "a"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("countermodel\nworlds 0\n"), "{out}");
        let (code, _, _) = run_str(&["kripke-validate", ". ; . |- + a ->[+] a @ n", "--jobs", "3"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn prove_and_case() {
        let (code, out, _) = run_str(&["dil-prove", ". ; . |- + <+> @ n", "--depth", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("(rule unit"), "{out}");
        assert_eq!(run_str(&["dil-prove", ". ; . |- + a @ n", "--depth", "3"]).0, 1);
        let (code, out, _) = run_str(&[
            "case-elab", "--scrutinee", "s", "--var", "x", "--left", "x", "--right", "x", "--a", "a", "--b", "a", "--c", "a",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("nu "), "{out}");
    }
}
