//! Command-line driver: solving, equivalence checking, translation, and
//! benchmark generation over the text formats.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use aspeq::bench::{self, EvenSubsetsVariant, QueensVariant};
use aspeq::{
    enumerate, find_one_with_stats, format_model, has_enough_visible_exact,
    has_enough_visible_overapprox, parse_program, parse_wc_program, print_program, tr_sns,
    verify_naive, verify_oracle, verify_translation, Direction, Error, EvaMode, EvaStatus,
    Program, Reason, Result, Verdict, VerifyOptions, WCProgram,
};

#[derive(Parser)]
#[command(name = "aspeq", version, about = "Solve, compare, and translate ground answer-set programs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find one stable model of a program, or all of them.
    Solve {
        /// Program file to solve.
        file: PathBuf,
        /// Enumerate every stable model instead of stopping at the first.
        #[arg(long)]
        all: bool,
        /// Print a statistics line after the models.
        #[arg(long)]
        stats: bool,
    },
    /// Combine two programs into one whose stable models witness their
    /// non-equivalence on visible atoms.
    Eqt {
        /// Left program file.
        p: PathBuf,
        /// Right program file.
        q: PathBuf,
        /// Expand choice rules by repeating the body per head atom instead
        /// of routing it through one auxiliary atom per rule.
        #[arg(long)]
        quadratic_choice: bool,
        /// Write the translation here instead of standard output.
        #[arg(short, long, value_name = "OUT.lp")]
        out: Option<PathBuf>,
    },
    /// Decide whether two programs have matching stable models on their
    /// visible atoms.
    Verify {
        /// Left program file.
        p: PathBuf,
        /// Right program file.
        q: PathBuf,
        /// Probe each side's models against the other program directly
        /// instead of going through the combined translation.
        #[arg(long, conflicts_with = "oracle")]
        naive: bool,
        /// Enumerate both sides fully and match visible projections by
        /// count.
        #[arg(long)]
        oracle: bool,
        /// How to establish first that the hidden parts are deterministic.
        #[arg(long, value_enum, default_value = "overapprox")]
        eva: EvaArg,
        /// Keep searching the reverse direction after a witness is found.
        #[arg(long)]
        both_directions: bool,
    },
    /// Check that a program's hidden part admits exactly one completion
    /// per visible context.
    EvaCheck {
        /// Program file to analyze.
        file: PathBuf,
        /// Decide exactly by enumerating visible contexts instead of the
        /// syntactic test.
        #[arg(long)]
        exact: bool,
    },
    /// Compile a weight-constraint program into the plain rule forms.
    Sns {
        /// Weight-constraint program file to compile.
        file: PathBuf,
        /// Write the compilation here instead of standard output.
        #[arg(short, long, value_name = "OUT.lp")]
        out: Option<PathBuf>,
    },
    /// Generate benchmark program families.
    Bench {
        #[command(subcommand)]
        cmd: BenchCmd,
    },
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Write a generated program to standard output.
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Column-wise queens with hidden complement atoms.
    #[command(name = "queens-x1")]
    QueensX1 { n: u64 },
    /// Queens with a choice rule and cardinality guards per column.
    #[command(name = "queens-x2")]
    QueensX2 { n: u64 },
    /// Row-wise queens with hidden complement atoms.
    #[command(name = "queens-y")]
    QueensY { n: u64 },
    /// Seeded random 3-SAT instance, encoded so that the stable models
    /// are the falsifying assignments (or the satisfying ones with
    /// `--plain`).
    #[command(name = "3sat")]
    ThreeSat {
        v: u64,
        c: u64,
        seed: u64,
        /// Emit the satisfiability encoding itself: choices plus clause
        /// rules plus a compute statement rejecting falsified clauses.
        #[arg(long)]
        plain: bool,
    },
    /// Subsets of even cardinality over n generator atoms.
    #[command(name = "even-subsets")]
    EvenSubsets {
        #[arg(value_enum)]
        which: SideArg,
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    /// One rule per odd-cardinality subset.
    P,
    /// Linear chain of parity counters.
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvaArg {
    /// Enumerate visible contexts and demand a unique completion for each.
    Exact,
    /// Syntactic test first, exact check as a small-base fallback.
    Overapprox,
    /// Trust the caller without checking.
    Assume,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::VisibleBaseMismatch { .. } | Error::HiddenComputeAtom(_) => 2,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Solve { file, all, stats } => cmd_solve(&file, all, stats),
        Cmd::Eqt { p, q, quadratic_choice, out } => {
            cmd_eqt(&p, &q, quadratic_choice, out.as_deref())
        }
        Cmd::Verify { p, q, naive, oracle, eva, both_directions } => {
            cmd_verify(&p, &q, naive, oracle, eva, both_directions)
        }
        Cmd::EvaCheck { file, exact } => cmd_eva_check(&file, exact),
        Cmd::Sns { file, out } => cmd_sns(&file, out.as_deref()),
        Cmd::Bench { cmd: BenchCmd::Gen { family } } => cmd_gen(family),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn load_program(path: &Path) -> Result<Program> {
    let text = read_text(path)?;
    let parsed = parse_program(&text, &path.display().to_string())?;
    warn_all(path, &parsed.warnings);
    Ok(parsed.program)
}

fn load_wc_program(path: &Path) -> Result<WCProgram> {
    let text = read_text(path)?;
    let parsed = parse_wc_program(&text, &path.display().to_string())?;
    warn_all(path, &parsed.warnings);
    Ok(parsed.program)
}

fn warn_all(path: &Path, warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_solve(file: &Path, all: bool, stats: bool) -> Result<u8> {
    let p = load_program(file)?;
    let (found, st) = if all {
        let stream = enumerate(&p);
        for m in stream.models() {
            println!("{}", format_model(&p, m));
        }
        (stream.stats().models > 0, stream.stats())
    } else {
        let (found, st) = find_one_with_stats(&p);
        if let Some(m) = &found {
            println!("{}", format_model(&p, m));
        }
        (found.is_some(), st)
    };
    if stats {
        println!("choice_points={} models={}", st.choice_points, st.models);
    }
    Ok(if found { 0 } else { 1 })
}

fn cmd_eqt(pfile: &Path, qfile: &Path, quadratic: bool, out: Option<&Path>) -> Result<u8> {
    let p = load_program(pfile)?;
    let q = load_program(qfile)?;
    let (t, _) = aspeq::eqt(&p, &q, !quadratic)?;
    emit(out, &print_program(&t))?;
    Ok(0)
}

fn cmd_verify(
    pfile: &Path,
    qfile: &Path,
    naive: bool,
    oracle: bool,
    eva: EvaArg,
    both_directions: bool,
) -> Result<u8> {
    let p = load_program(pfile)?;
    let q = load_program(qfile)?;
    let verdict = if naive {
        verify_naive(&p, &q)
    } else if oracle {
        verify_oracle(&p, &q)
    } else {
        if eva == EvaArg::Assume {
            eprintln!(
                "warning: trusting without a check that the hidden parts are deterministic; \
                 the verdict is unreliable if they are not"
            );
        }
        let opts = VerifyOptions {
            eva: match eva {
                EvaArg::Exact => EvaMode::Exact,
                EvaArg::Overapprox => EvaMode::Overapprox,
                EvaArg::Assume => EvaMode::Assume,
            },
            both_directions,
            ..VerifyOptions::default()
        };
        verify_translation(&p, &q, &opts)
    };
    Ok(report_verdict(&p, &q, &verdict))
}

fn report_verdict(p: &Program, q: &Program, verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Equivalent => {
            println!("equivalent");
            0
        }
        Verdict::NotEquivalent { direction, witness } => {
            let (src, tgt) = match direction {
                Direction::LeftToRight => (p, q),
                Direction::RightToLeft => (q, p),
            };
            eprintln!("note: unmatched stable model in the {direction} direction");
            println!("M = {}", format_model(src, &witness.m));
            println!("N = {}", format_model(tgt, &witness.n));
            println!("L = {}", format_model(tgt, &witness.l));
            let reason = match witness.reason {
                Reason::ReductMismatch => "reduct-mismatch",
                Reason::ComputeViolation => "compute-violation",
            };
            println!("reason = {reason}");
            1
        }
        Verdict::Inapplicable { why } => {
            println!("inapplicable: {why}");
            2
        }
    }
}

fn cmd_eva_check(file: &Path, exact: bool) -> Result<u8> {
    let p = load_program(file)?;
    if exact {
        return Ok(match has_enough_visible_exact(&p) {
            Ok(true) => {
                println!("enough visible atoms: yes");
                0
            }
            Ok(false) => {
                println!("enough visible atoms: no");
                1
            }
            Err(e) => {
                println!("inapplicable: {e}");
                2
            }
        });
    }
    Ok(match has_enough_visible_overapprox(&p) {
        EvaStatus::Guaranteed => {
            println!("enough visible atoms: guaranteed");
            0
        }
        EvaStatus::Unknown => {
            println!("enough visible atoms: unknown");
            2
        }
    })
}

fn cmd_sns(file: &Path, out: Option<&Path>) -> Result<u8> {
    let wcp = load_wc_program(file)?;
    let t = tr_sns(&wcp)?;
    for w in &t.warnings {
        eprintln!("warning: {w}");
    }
    emit(out, &print_program(&t.program))?;
    Ok(0)
}

fn cmd_gen(family: GenCmd) -> Result<u8> {
    let p = match family {
        GenCmd::QueensX1 { n } => bench::gen_queens(QueensVariant::X1, n)?,
        GenCmd::QueensX2 { n } => bench::gen_queens(QueensVariant::X2, n)?,
        GenCmd::QueensY { n } => bench::gen_queens(QueensVariant::Y, n)?,
        GenCmd::ThreeSat { v, c, seed, plain } => bench::gen_3sat(v, c, seed, plain)?,
        GenCmd::EvenSubsets { which, n } => {
            let variant = match which {
                SideArg::P => EvenSubsetsVariant::P,
                SideArg::Q => EvenSubsetsVariant::Q,
            };
            bench::gen_even_subsets(variant, n)?
        }
    };
    print!("{}", print_program(&p));
    Ok(0)
}
