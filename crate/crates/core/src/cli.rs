//! Command-line front end. Results go to `out`, diagnostics to `err`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::automaton::{product_intersection, Automaton, Symbol, Word};
use crate::error::{Error, Result};
use crate::generatability::{analyze_capped, canonical_generate};
use crate::grammar::PdaCaps;
use crate::text;
use crate::tm::{decide_halting, encode, history_length, joint_intersection, Oracle, RunEnd};
use crate::witness::{build, verify_witness, WitnessParams, DEFAULT_VERIFY_BUDGET};

#[derive(Parser, Debug)]
#[command(name = "genlimit", version, about = "Exact generation bounds for families of formal languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate every subfamily intersection and print minimal_m.
    Analyze {
        family: PathBuf,
        /// Abort when an intersection exceeds this many states.
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Run the canonical generator on a set of examples.
    Generate {
        family: PathBuf,
        /// Comma-separated example words.
        #[arg(long)]
        examples: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Product of every automaton in the given files.
    Intersect {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Number of accepted words, or `inf`.
    Count { file: PathBuf },
    /// Length of the longest accepted word, `inf`, or `none` when empty.
    Longest { file: PathBuf },
    /// Accepted words in shortlex order.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Prints `true` or `false`.
    Member { file: PathBuf, word: String },
    /// Block-structured witness families.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Context-free grammars.
    #[command(subcommand)]
    Cfg(CfgCommand),
    /// Pushdown automata.
    #[command(subcommand)]
    Pda(PdaCommand),
    /// Turing machines and their history encoding.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Halting decisions from generatability bounds.
    #[command(subcommand)]
    Reduction(ReductionCommand),
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    padded: bool,
}

impl WitnessArgs {
    fn params(&self) -> WitnessParams {
        WitnessParams {
            n: self.n,
            k: self.k,
            padded: self.padded,
        }
    }
}

#[derive(Subcommand, Debug)]
enum WitnessCommand {
    /// Write the family file.
    Build {
        #[command(flatten)]
        params: WitnessArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the family's extremal properties.
    Verify {
        #[command(flatten)]
        params: WitnessArgs,
        /// Cap on intersection states.
        #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CfgCommand {
    /// Number of words generated, or `inf`.
    Count {
        grammar: PathBuf,
        /// Cap on materialized words for finite languages.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PdaCommand {
    /// Print an equivalent grammar.
    ToCfg { pda: PathBuf },
    /// Prints `true` or `false`.
    Member {
        pda: PathBuf,
        word: String,
        #[arg(long)]
        max_stack: Option<usize>,
        #[arg(long)]
        max_configs: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TmCommand {
    /// Print the configurations of a bounded run.
    Run {
        tm: PathBuf,
        #[arg(long)]
        max_configs: usize,
    },
    /// Write the two history-checking PDAs.
    Encode {
        tm: PathBuf,
        #[arg(long)]
        out1: PathBuf,
        #[arg(long)]
        out2: PathBuf,
    },
    /// Words up to the given length accepted by both encoded PDAs.
    Intersect {
        tm: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 5_000_000)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ReductionCommand {
    /// Decide halting from a generatability bound.
    DecideHalting {
        tm: PathBuf,
        /// A bound under which the encoded family is generatable.
        #[arg(long, conflicts_with = "oracle_auto")]
        oracle: Option<BigUint>,
        /// Derive the bound by running the machine.
        #[arg(long)]
        oracle_auto: bool,
        /// Configurations run when deriving the bound automatically.
        #[arg(long, default_value_t = 100_000)]
        auto_cap: usize,
        /// Cap on materialized grammar words.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

/// Parses arguments (including the program name) and executes the command,
/// returning the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

/// Reads a command-line word: `@` is the empty word, `.` separates
/// multi-character symbols, and otherwise a token that is not itself a
/// symbol is split into characters.
pub fn parse_word(token: &str, alphabet: &[Symbol]) -> Word {
    if token == "@" {
        Vec::new()
    } else if alphabet.iter().any(|s| s == token) {
        vec![token.to_string()]
    } else if token.contains('.') {
        token.split('.').map(str::to_string).collect()
    } else {
        token.chars().map(String::from).collect()
    }
}

/// Splits on commas outside square brackets.
pub fn split_words(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in list.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&list[start..]);
    out
}

/// Renders a word for output, concatenated when every symbol is one character.
pub fn format_word(word: &[Symbol], alphabet: &[Symbol]) -> String {
    if word.is_empty() {
        "@".to_string()
    } else if alphabet.iter().all(|s| s.chars().count() == 1) {
        word.concat()
    } else {
        word.join(".")
    }
}

fn single_automaton(path: &Path) -> Result<Automaton> {
    Ok(text::parse_automaton(&read(path)?)?.1)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze { family, max_states } => {
            let f = text::parse_family(&read(&family)?)?;
            let report = analyze_capped(&f, max_states.unwrap_or(usize::MAX))?;
            out.write_all(report.render(&f).as_bytes())?;
        }
        Command::Generate {
            family,
            examples,
            max_len,
            count,
        } => {
            let f = text::parse_family(&read(&family)?)?;
            let words: Vec<Word> = split_words(&examples).iter().map(|w| parse_word(w, f.alphabet())).collect();
            let g = canonical_generate(&f, &words)?;
            let support: Vec<&str> = g.support.iter().map(|&i| f.members()[i].0.as_str()).collect();
            writeln!(out, "support {}", support.join(","))?;
            out.write_all(text::write_automaton("generated", &g.automaton).as_bytes())?;
            writeln!(out, "words")?;
            for w in g.automaton.enumerate(max_len, count) {
                writeln!(out, "{}", format_word(&w, f.alphabet()))?;
            }
            writeln!(out, "status {}", g.status)?;
        }
        Command::Intersect { files } => {
            let mut automata = Vec::new();
            for path in &files {
                automata.extend(text::parse_automata(&read(path)?)?.into_iter().map(|(_, a)| a));
            }
            let product = product_intersection(&automata)?;
            out.write_all(text::write_automaton("intersection", &product).as_bytes())?;
        }
        Command::Count { file } => {
            writeln!(out, "{}", single_automaton(&file)?.cardinality())?;
        }
        Command::Longest { file } => match single_automaton(&file)?.longest_word_length() {
            Some(c) => writeln!(out, "{c}")?,
            None => writeln!(out, "none")?,
        },
        Command::Enumerate { file, max_len, count } => {
            let a = single_automaton(&file)?;
            for w in a.enumerate(max_len, count) {
                writeln!(out, "{}", format_word(&w, a.alphabet()))?;
            }
        }
        Command::Member { file, word } => {
            let a = single_automaton(&file)?;
            writeln!(out, "{}", a.member(&parse_word(&word, a.alphabet()))?)?;
        }
        Command::Witness(WitnessCommand::Build { params, out: path }) => {
            let f = build(params.params())?;
            write_file(&path, &text::write_family(&f))?;
            writeln!(out, "wrote {} members to {}", f.len(), path.display())?;
        }
        Command::Witness(WitnessCommand::Verify { params, budget }) => {
            let report = verify_witness(params.params(), budget)?;
            write!(out, "{report}")?;
            if !report.ok() {
                return Ok(1);
            }
        }
        Command::Cfg(CfgCommand::Count { grammar, budget }) => {
            let (_, g) = text::parse_grammar(&read(&grammar)?)?;
            writeln!(out, "{}", g.cardinality(budget)?)?;
        }
        Command::Pda(PdaCommand::ToCfg { pda }) => {
            let (name, p) = text::parse_pda(&read(&pda)?)?;
            out.write_all(text::write_grammar(&name, &p.to_cfg()).as_bytes())?;
        }
        Command::Pda(PdaCommand::Member {
            pda,
            word,
            max_stack,
            max_configs,
        }) => {
            let (_, p) = text::parse_pda(&read(&pda)?)?;
            let w = parse_word(&word, p.input_alphabet());
            let defaults = PdaCaps::for_input(&p, w.len());
            let caps = PdaCaps {
                max_stack: max_stack.unwrap_or(defaults.max_stack),
                max_configs: max_configs.unwrap_or(defaults.max_configs),
            };
            writeln!(out, "{}", p.member(&w, caps)?)?;
        }
        Command::Tm(TmCommand::Run { tm, max_configs }) => {
            if max_configs == 0 {
                return Err(Error::InvalidParams("--max-configs must be at least 1".into()));
            }
            let (_, m) = text::parse_tm(&read(&tm)?)?;
            let run = m.run(max_configs);
            for c in &run.configs {
                writeln!(out, "{}", c.tokens(&m).join(" "))?;
            }
            let end = match run.end {
                RunEnd::Halted => "halted",
                RunEnd::Timeout => "timeout",
                RunEnd::Stalled => "stalled",
            };
            writeln!(out, "{end} {}", run.configs.len())?;
        }
        Command::Tm(TmCommand::Encode { tm, out1, out2 }) => {
            let (name, m) = text::parse_tm(&read(&tm)?)?;
            let (p1, p2) = encode(&m);
            write_file(&out1, &text::write_pda(&format!("{name}_1"), &p1))?;
            write_file(&out2, &text::write_pda(&format!("{name}_2"), &p2))?;
            writeln!(out, "wrote {} and {}", out1.display(), out2.display())?;
        }
        Command::Tm(TmCommand::Intersect { tm, max_len, budget }) => {
            let (_, m) = text::parse_tm(&read(&tm)?)?;
            let (p1, p2) = encode(&m);
            let words = joint_intersection(&p1, &p2, max_len, budget)?;
            for w in &words {
                writeln!(out, "{}", format_word(w, p1.input_alphabet()))?;
            }
            writeln!(out, "count {}", words.len())?;
            if words.is_empty() {
                if let Some(len) = history_length(&m, 100_000).filter(|&l| l > max_len) {
                    writeln!(out, "note history words have length {len}")?;
                }
            }
        }
        Command::Reduction(ReductionCommand::DecideHalting {
            tm,
            oracle,
            oracle_auto,
            auto_cap,
            budget,
        }) => {
            let (_, m) = text::parse_tm(&read(&tm)?)?;
            let oracle = match (oracle, oracle_auto) {
                (Some(v), _) => Oracle::Value(v),
                (None, true) => Oracle::Auto(auto_cap),
                (None, false) => Oracle::None,
            };
            let d = decide_halting(&m, &oracle, budget)?;
            writeln!(out, "first {}", d.first)?;
            if let Some(second) = &d.second {
                writeln!(out, "second {second}")?;
            }
            if let Some(v) = &d.oracle_m {
                writeln!(out, "oracle_m {v}")?;
            }
            writeln!(out, "case {}", d.case)?;
            writeln!(out, "bound {}", d.bound)?;
            writeln!(out, "configs {}", d.configs_run)?;
            writeln!(out, "{}", d.verdict)?;
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_syntax() {
        let bin: Vec<Symbol> = vec!["0".into(), "1".into()];
        assert_eq!(parse_word("@", &bin), Vec::<Symbol>::new());
        assert_eq!(parse_word("101", &bin), ["1", "0", "1"]);
        assert_eq!(parse_word("1.0", &bin), ["1", "0"]);
        let tm: Vec<Symbol> = vec!["_".into(), "[0,_]".into(), "#0".into()];
        assert_eq!(parse_word("[0,_].#0", &tm), ["[0,_]", "#0"]);
        assert_eq!(parse_word("#0", &tm), ["#0"]);
        assert_eq!(split_words("[0,_].#0,@,01"), ["[0,_].#0", "@", "01"]);
        assert_eq!(format_word(&[], &bin), "@");
        assert_eq!(format_word(&parse_word("[0,_].#0", &tm), &tm), "[0,_].#0");
    }
}
