use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use ltl2aut::hoa::HoaAcceptance;
use ltl2aut::random;
use ltl2aut::sweep::Mode;
use ltl2aut::write_hoa;
use ltl2aut_core::oracle::lasso_sat;
use ltl2aut_core::{Error, Limits, Session};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Translate LTL formulas into Rabin, Büchi or limit-deterministic Büchi
/// automata in HOA format.
#[derive(Parser, Debug)]
#[command(name = "ltl2aut", version)]
struct Args {
    /// The formula, or `-` to read one formula per line from stdin.
    #[arg(long, short)]
    formula: String,
    #[arg(long, value_enum, default_value_t = CliMode::Dra)]
    mode: CliMode,
    /// Comma-separated atomic propositions. Defaults to the atoms of the
    /// formula in order of appearance.
    #[arg(long, value_delimiter = ',')]
    ap: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Output::Hoa)]
    output: Output,
    /// After construction, compare the automaton with the LTL semantics on
    /// N random lasso words.
    #[arg(long, value_name = "N", default_value_t = 0)]
    check: usize,
    /// Seed for `--check`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Limits::default().max_states)]
    max_states: usize,
    /// Maximum number of fixed-point subformulas; the translations try
    /// 2^n advice pairs.
    #[arg(long, default_value_t = Limits::default().max_advice)]
    max_advice: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CliMode {
    Dra,
    Nba,
    Ldba,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Hoa,
    Stats,
}

const EXIT_PARSE: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownAtom(_) | Error::TooManyAtoms => EXIT_PARSE,
            Error::StateLimit { .. } | Error::AdviceLimit { .. } => EXIT_CAP,
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn translate(args: &Args, text: &str) -> Result<String, Failure> {
    let mut s = match &args.ap {
        Some(ap) => Session::with_atoms(ap)?,
        None => Session::new(),
    };
    let f = s.parse(text)?;
    let mode = match args.mode {
        CliMode::Dra => Mode::Dra,
        CliMode::Nba => Mode::Nba,
        CliMode::Ldba => Mode::Ldba,
    };
    let limits = Limits { max_states: args.max_states, max_advice: args.max_advice };
    let start = Instant::now();
    let a = mode.translate(&mut s, f, &limits)?;
    let elapsed = start.elapsed();

    if args.check > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for _ in 0..args.check {
            let w = random::lasso(&mut rng, s.num_atoms(), 6, 6);
            let want = lasso_sat(&s, &w, f);
            if mode.accepts(&a, &w)? != want {
                return Err(Failure {
                    code: EXIT_MISMATCH,
                    message: format!("automaton and formula disagree on {} (formula is {want})", w.render(&s)),
                });
            }
        }
    }

    match args.output {
        Output::Hoa => Ok(write_hoa(&s, &a)?),
        Output::Stats => {
            let acc = HoaAcceptance::of(&a)?;
            let mut out = format!(
                "formula: {}\nmode: {}\nstates: {}\ntransitions: {}\n",
                s.show(f),
                format!("{mode:?}").to_lowercase(),
                a.num_states(),
                a.num_transitions()
            );
            match acc {
                HoaAcceptance::Rabin(k) => out += &format!("acceptance: Rabin\nrabin pairs: {k}\n"),
                HoaAcceptance::Buchi => out += "acceptance: Buchi\n",
                HoaAcceptance::CoBuchi => out += "acceptance: co-Buchi\n",
            }
            if args.check > 0 {
                out += &format!("checked lassos: {}\n", args.check);
            }
            out += &format!("time: {:.3} ms\n", elapsed.as_secs_f64() * 1e3);
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if args.formula != "-" {
        return match translate(&args, &args.formula) {
            Ok(text) => {
                let _ = out.write_all(text.as_bytes());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}", e.message);
                ExitCode::from(e.code)
            }
        };
    }
    // Batch mode: every line is independent; the exit code is the largest
    // code of any line.
    let mut worst = 0u8;
    for (i, line) in io::stdin().lock().lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: reading stdin: {e}");
                return ExitCode::from(EXIT_PARSE);
            }
        };
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        match translate(&args, text) {
            Ok(t) => {
                let _ = out.write_all(t.as_bytes());
                if args.output == Output::Stats {
                    let _ = out.write_all(b"\n");
                }
                eprintln!("line {}: ok", i + 1);
            }
            Err(e) => {
                eprintln!("line {}: error: {}", i + 1, e.message);
                worst = worst.max(e.code);
            }
        }
    }
    ExitCode::from(worst)
}
