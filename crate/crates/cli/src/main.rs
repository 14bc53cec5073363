//! `pangram` — decision procedures, reductions, canonical machines and
//! brute-force oracles for pangram language problems, over JSON files.
//!
//! Every command prints one JSON document on standard output; diagnostics
//! go to standard error. Exit codes: 0 for any completed operation
//! (including "undecidable" verdicts), 2 for input errors, 3 when a size
//! cap or search budget is exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pangram_core::automata::{
    exact_length_dfa, minimize, non_pangram_nfa, not_exact_length_dfa, not_prefixed_dfa,
    pangram_dfa, perfect_pangram_dfa,
};
use pangram_core::corpus;
use pangram_core::deciders::{decide, Acceptor, Answer, Decision, Machine, Problem};
use pangram_core::json::{
    betweenness_to_doc, decision_to_value, graph_to_doc, machine_to_doc, parse_betweenness,
    parse_graph, parse_machine, renaming_to_value,
};
use pangram_core::lang::Alphabet;
use pangram_core::oracle;
use pangram_core::reductions::{
    betweenness_to_3spt, hamiltonian_to_3slt, hamiltonian_to_perfect_pangram_dfa,
    perfect_to_pangram, to_cofinite, universality_to_pangram_cover,
};
use pangram_core::{Caps, Error};

#[derive(Parser)]
#[command(name = "pangram", version, about = "Pangram decision problems over formal-language acceptors")]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CapArgs {
    /// Maximum alphabet size for bitmask-based searches.
    #[arg(long, global = true)]
    cap_alphabet: Option<usize>,
    /// Maximum state count for subset-style constructions.
    #[arg(long, global = true)]
    cap_subsets: Option<usize>,
    /// Maximum alphabet size for permutation enumeration.
    #[arg(long, global = true)]
    cap_permutations: Option<usize>,
    /// Maximum number of words examined by enumeration.
    #[arg(long, global = true)]
    cap_enumeration: Option<u64>,
    /// Step budget for configuration-space searches.
    #[arg(long, global = true)]
    cap_steps: Option<u64>,
}

impl CapArgs {
    fn to_caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(v) = self.cap_alphabet {
            caps.alphabet = v;
        }
        if let Some(v) = self.cap_subsets {
            caps.subsets = v;
        }
        if let Some(v) = self.cap_permutations {
            caps.permutations = v;
        }
        if let Some(v) = self.cap_enumeration {
            caps.enumeration = v;
        }
        if let Some(v) = self.cap_steps {
            caps.steps = v;
        }
        caps
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a problem for the acceptor in the given file.
    Decide {
        /// One of: contains-pangram, contains-perfect-pangram,
        /// covers-pangrams, covers-perfect-pangrams, all-pangrams,
        /// all-perfect-pangrams.
        problem: String,
        input: PathBuf,
    },
    /// Transform a problem instance by a named reduction.
    Reduce {
        /// One of: hamiltonian-to-perfect-pangram-dfa, hamiltonian-to-3slt,
        /// betweenness-to-3spt, perfect-to-pangram, to-cofinite,
        /// universality-to-pangram-cover.
        name: String,
        input: PathBuf,
        /// Output file; a `.map.json` sidecar appears next to it when the
        /// reduction had to rename symbols.
        output: PathBuf,
    },
    /// Emit a canonical machine for a given alphabet.
    Canon {
        /// One of: pangram-dfa, perfect-pangram-dfa, non-pangram-nfa,
        /// exact-length-dfa, not-exact-length-dfa, not-prefixed-dfa.
        builder: String,
        /// Comma-separated symbol tokens.
        #[arg(long)]
        alphabet: String,
        /// Word length for the exact-length builders.
        #[arg(long)]
        length: Option<usize>,
        /// Comma-separated prefix word for not-prefixed-dfa.
        #[arg(long)]
        word: Option<String>,
    },
    /// Minimize the DFA in the given file.
    Minimize {
        input: PathBuf,
        /// Optional output file; the result is always printed to stdout.
        output: Option<PathBuf>,
    },
    /// Answer a problem by brute-force enumeration instead of the decider.
    Oracle {
        problem: String,
        input: PathBuf,
        /// Enumeration bound for the length-bounded problems.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Generate a seeded corpus of random instances.
    GenCorpus {
        /// One of: dfa, nfa, cfg, slt, spt, graph, betweenness.
        kind: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Comma-separated symbol tokens (acceptor kinds only).
        #[arg(long, default_value = "a,b,c")]
        alphabet: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = cli.caps.to_caps();
    match run(cli.cmd, &caps) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Input(_) => ExitCode::from(2),
                Error::SizeLimit { .. } | Error::Budget(_) => ExitCode::from(3),
            }
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable value"));
}

fn parse_problem(name: &str) -> Result<Problem, Error> {
    Problem::from_name(name).ok_or_else(|| {
        Error::input(format!(
            "problem: unknown problem `{name}` (expected one of {})",
            Problem::ALL.map(|p| p.name()).join(", ")
        ))
    })
}

fn parse_alphabet(spec: &str) -> Result<Alphabet, Error> {
    Alphabet::new(spec.split(',').map(str::to_string))
}

fn machine_value(m: &Machine) -> serde_json::Value {
    serde_json::to_value(machine_to_doc(m)).expect("serializable document")
}

fn run(cmd: Cmd, caps: &Caps) -> Result<(), Error> {
    match cmd {
        Cmd::Decide { problem, input } => {
            let problem = parse_problem(&problem)?;
            let machine = parse_machine(&read_file(&input)?)?;
            let decision = decide(&machine, problem, caps)?;
            print_json(&decision_to_value(problem.name(), &decision, machine.acceptor.alphabet()));
            Ok(())
        }
        Cmd::Reduce { name, input, output } => run_reduce(&name, &input, &output, caps),
        Cmd::Canon { builder, alphabet, length, word } => {
            let sigma = parse_alphabet(&alphabet)?;
            let need_length = || {
                length.ok_or_else(|| Error::input(format!("{builder} requires --length")))
            };
            let acceptor = match builder.as_str() {
                "pangram-dfa" => Acceptor::Dfa(pangram_dfa(&sigma, caps)?),
                "perfect-pangram-dfa" => Acceptor::Dfa(perfect_pangram_dfa(&sigma, caps)?),
                "non-pangram-nfa" => Acceptor::Nfa(non_pangram_nfa(&sigma)),
                "exact-length-dfa" => Acceptor::Dfa(exact_length_dfa(&sigma, need_length()?)),
                "not-exact-length-dfa" => Acceptor::Dfa(not_exact_length_dfa(&sigma, need_length()?)),
                "not-prefixed-dfa" => {
                    let spec = word
                        .ok_or_else(|| Error::input("not-prefixed-dfa requires --word"))?;
                    let w = sigma.word_from_tokens(&spec.split(',').collect::<Vec<_>>())?;
                    Acceptor::Dfa(not_prefixed_dfa(&w, &sigma)?)
                }
                other => return Err(Error::input(format!("canon: unknown builder `{other}`"))),
            };
            print_json(&machine_value(&Machine::untagged(acceptor)?));
            Ok(())
        }
        Cmd::Minimize { input, output } => {
            let machine = parse_machine(&read_file(&input)?)?;
            let Acceptor::Dfa(x) = &machine.acceptor else {
                return Err(Error::input("minimize: input must be a DFA document"));
            };
            let out = Machine::new(Acceptor::Dfa(minimize(x)), machine.tags.clone())?;
            let value = machine_value(&out);
            if let Some(path) = output {
                write_json(&path, &value)?;
            }
            print_json(&value);
            Ok(())
        }
        Cmd::Oracle { problem, input, max_len } => {
            let problem = parse_problem(&problem)?;
            let machine = parse_machine(&read_file(&input)?)?;
            let decision = run_oracle(&machine, problem, max_len, caps)?;
            print_json(&decision_to_value(problem.name(), &decision, machine.acceptor.alphabet()));
            Ok(())
        }
        Cmd::GenCorpus { kind, seed, count, alphabet } => {
            let sigma = parse_alphabet(&alphabet)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut docs = Vec::with_capacity(count);
            for _ in 0..count {
                let value = match kind.as_str() {
                    "dfa" => machine_value(&Machine::untagged(Acceptor::Dfa(
                        corpus::random_dfa(&sigma, 6, &mut rng),
                    ))?),
                    "nfa" => machine_value(&Machine::untagged(Acceptor::Nfa(
                        corpus::random_nfa(&sigma, 6, &mut rng),
                    ))?),
                    "cfg" => machine_value(&Machine::untagged(Acceptor::Cfg(
                        corpus::random_finite_cfg(&sigma, 6, 5, &mut rng).0,
                    ))?),
                    "slt" => machine_value(&Machine::untagged(Acceptor::Slt(
                        corpus::random_slt(&sigma, 2, &mut rng),
                    ))?),
                    "spt" => machine_value(&Machine::untagged(Acceptor::Spt(
                        corpus::random_spt(&sigma, 3, 4, &mut rng),
                    ))?),
                    "graph" => serde_json::to_value(graph_to_doc(&corpus::random_graph(
                        5, 0.4, &mut rng,
                    )))
                    .expect("serializable document"),
                    "betweenness" => serde_json::to_value(betweenness_to_doc(
                        &corpus::random_betweenness(4, 3, &mut rng),
                    ))
                    .expect("serializable document"),
                    other => return Err(Error::input(format!("gen-corpus: unknown kind `{other}`"))),
                };
                docs.push(value);
            }
            print_json(&serde_json::Value::Array(docs));
            Ok(())
        }
    }
}

fn run_reduce(name: &str, input: &Path, output: &Path, _caps: &Caps) -> Result<(), Error> {
    let text = read_file(input)?;
    let value = match name {
        "hamiltonian-to-perfect-pangram-dfa" => {
            let g = parse_graph(&text)?;
            machine_value(&Machine::untagged(Acceptor::Dfa(
                hamiltonian_to_perfect_pangram_dfa(&g)?,
            ))?)
        }
        "hamiltonian-to-3slt" => {
            let g = parse_graph(&text)?;
            let red = hamiltonian_to_3slt(&g)?;
            let renamed: BTreeMap<String, String> = red
                .counters
                .iter()
                .enumerate()
                .filter(|(i, tok)| **tok != (i + 1).to_string())
                .map(|(i, tok)| ((i + 1).to_string(), tok.clone()))
                .collect();
            if !renamed.is_empty() {
                let sidecar = sidecar_path(output);
                write_json(&sidecar, &renaming_to_value(&renamed))?;
                eprintln!("note: counters renamed; mapping written to {}", sidecar.display());
            }
            machine_value(&Machine::untagged(Acceptor::Slt(red.spec))?)
        }
        "betweenness-to-3spt" => {
            let b = parse_betweenness(&text)?;
            machine_value(&Machine::untagged(Acceptor::Spt(betweenness_to_3spt(&b)?))?)
        }
        "perfect-to-pangram" => {
            let m = parse_machine(&text)?;
            let Acceptor::Dfa(x) = &m.acceptor else {
                return Err(Error::input("perfect-to-pangram: input must be a DFA document"));
            };
            machine_value(&Machine::untagged(Acceptor::Dfa(perfect_to_pangram(x)?))?)
        }
        "to-cofinite" => {
            let m = parse_machine(&text)?;
            let Acceptor::Dfa(x) = &m.acceptor else {
                return Err(Error::input("to-cofinite: input must be a DFA document"));
            };
            let cofinite = to_cofinite(x)?;
            machine_value(&Machine::new(
                Acceptor::Dfa(cofinite),
                std::collections::BTreeSet::from([pangram_core::deciders::Tag::Cofinite]),
            )?)
        }
        "universality-to-pangram-cover" => {
            let m = parse_machine(&text)?;
            let Acceptor::Cfg(g) = &m.acceptor else {
                return Err(Error::input(
                    "universality-to-pangram-cover: input must be a CFG document",
                ));
            };
            machine_value(&Machine::untagged(Acceptor::Cfg(universality_to_pangram_cover(g)?))?)
        }
        other => return Err(Error::input(format!("reduce: unknown reduction `{other}`"))),
    };
    write_json(output, &value)?;
    print_json(&value);
    Ok(())
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".map.json");
    output.with_file_name(name)
}

fn run_oracle(m: &Machine, problem: Problem, max_len: usize, caps: &Caps) -> Result<Decision, Error> {
    let sigma = m.acceptor.alphabet().clone();
    let member = m.acceptor.membership();
    let bounded_note =
        |kind: &str| format!("{kind} found by enumeration of all words up to length {max_len}");
    let (answer, witness, note) = match problem {
        Problem::ContainsPangram => {
            match oracle::contains_pangram_up_to(&member, &sigma, max_len, caps)? {
                Some(w) => (Answer::Yes, Some(w), None),
                None => (Answer::No, None, Some(bounded_note("no pangram member"))),
            }
        }
        Problem::ContainsPerfectPangram => {
            match oracle::contains_perfect_pangram_bruteforce(&member, &sigma, caps)? {
                Some(w) => (Answer::Yes, Some(w), None),
                None => (Answer::No, None, None),
            }
        }
        Problem::CoversPangrams => {
            match oracle::covers_pangrams_counterexample_up_to(&member, &sigma, max_len, caps)? {
                Some(w) => (Answer::No, Some(w), None),
                None => (Answer::Yes, None, Some(bounded_note("no missing pangram"))),
            }
        }
        Problem::CoversPerfectPangrams => {
            match oracle::covers_perfect_pangrams_counterexample(&member, &sigma, caps)? {
                Some(w) => (Answer::No, Some(w), None),
                None => (Answer::Yes, None, None),
            }
        }
        Problem::AllPangrams => {
            match oracle::all_pangrams_counterexample_up_to(&member, &sigma, max_len, caps)? {
                Some(w) => (Answer::No, Some(w), None),
                None => (Answer::Yes, None, Some(bounded_note("no non-pangram member"))),
            }
        }
        Problem::AllPerfectPangrams => {
            match oracle::all_perfect_pangrams_counterexample_up_to(&member, &sigma, max_len, caps)? {
                Some(w) => (Answer::No, Some(w), None),
                None => (Answer::Yes, None, Some(bounded_note("no imperfect member"))),
            }
        }
    };
    Ok(Decision { answer, witness, witness_note: note })
}
