//! Seeded random instance generators, used for cross-validation against
//! the brute-force oracles and for emitting test corpora from the CLI.
//! All generators are deterministic given the caller's RNG state.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{Dfa, Graph, Nfa, StateId};
use crate::grammars::{Cfg, CfgSym, Rule};
use crate::lang::{Alphabet, Word};
use crate::reductions::Betweenness;
use crate::subregular::{SltSpec, SptSpec};

pub fn random_word(sigma: &Alphabet, len: usize, rng: &mut impl Rng) -> Word {
    (0..len).map(|_| rng.gen_range(0..sigma.len())).collect()
}

/// Random total DFA with up to `max_states` states. Initial state 0; every
/// state accepts with probability 1/2.
pub fn random_dfa(sigma: &Alphabet, max_states: usize, rng: &mut impl Rng) -> Dfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let states = (0..n).map(|i| format!("q{i}")).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let transitions = (0..n)
        .map(|_| (0..sigma.len()).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    Dfa { alphabet: sigma.clone(), states, initial: 0, accepting, transitions }
}

/// Random NFA with up to `max_states` states and roughly one or two
/// successors per (state, symbol) pair.
pub fn random_nfa(sigma: &Alphabet, max_states: usize, rng: &mut impl Rng) -> Nfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let states = (0..n).map(|i| format!("q{i}")).collect();
    let mut initials: BTreeSet<StateId> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    if initials.is_empty() {
        initials.insert(rng.gen_range(0..n));
    }
    let accepting = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let p = (1.5 / n as f64).min(1.0);
    let transitions = (0..n)
        .map(|_| {
            (0..sigma.len())
                .map(|_| (0..n).filter(|_| rng.gen_bool(p)).collect())
                .collect()
        })
        .collect();
    Nfa { alphabet: sigma.clone(), states, initials, accepting, transitions }
}

/// Random directed graph without self-loops; each of the n(n−1) possible
/// edges is present with probability `edge_prob`.
pub fn random_graph(n: usize, edge_prob: f64, rng: &mut impl Rng) -> Graph {
    let nodes: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(nodes, edges).expect("generated edges are in range and distinct")
}

/// Random betweenness instance over `n` items with `num_constraints`
/// constraints on distinct item triples.
pub fn random_betweenness(n: usize, num_constraints: usize, rng: &mut impl Rng) -> Betweenness {
    assert!(n >= 3, "betweenness needs at least three items");
    let items: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let all: Vec<usize> = (0..n).collect();
    let constraints = (0..num_constraints)
        .map(|_| {
            let pick: Vec<usize> = all.choose_multiple(rng, 3).copied().collect();
            let mut t = pick.clone();
            t.shuffle(rng);
            (t[0], t[1], t[2])
        })
        .collect();
    Betweenness::new(items, constraints).expect("generated constraints are valid")
}

fn random_word_set(sigma: &Alphabet, len: usize, keep_prob: f64, rng: &mut impl Rng) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Word> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == len {
            if rng.gen_bool(keep_prob) {
                out.insert(w);
            }
            continue;
        }
        for s in 0..sigma.len() {
            let mut v = w.clone();
            v.push(s);
            stack.push(v);
        }
    }
    out
}

/// Random k-SLT acceptor: each candidate prefix/window/suffix is kept with
/// an independent coin flip.
pub fn random_slt(sigma: &Alphabet, k: usize, rng: &mut impl Rng) -> SltSpec {
    let prefixes = random_word_set(sigma, k - 1, 0.5, rng);
    let infixes = random_word_set(sigma, k, 0.5, rng);
    let suffixes = random_word_set(sigma, k - 1, 0.5, rng);
    SltSpec::new(k, sigma.clone(), prefixes, infixes, suffixes).expect("generated sets are well-formed")
}

/// Random k-SPT acceptor with up to `max_forbidden` forbidden words of
/// length ≤ k.
pub fn random_spt(sigma: &Alphabet, k: usize, max_forbidden: usize, rng: &mut impl Rng) -> SptSpec {
    let count = rng.gen_range(0..=max_forbidden);
    let forbidden: BTreeSet<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=k);
            random_word(sigma, len, rng)
        })
        .collect();
    SptSpec::new(k, sigma.clone(), forbidden).expect("generated words are well-formed")
}

/// Random finite-language grammar: one rule per member word. Returns the
/// grammar together with its exact language, for use as an oracle.
pub fn random_finite_cfg(
    sigma: &Alphabet,
    max_words: usize,
    max_len: usize,
    rng: &mut impl Rng,
) -> (Cfg, BTreeSet<Word>) {
    let count = rng.gen_range(1..=max_words.max(1));
    let words: BTreeSet<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            random_word(sigma, len, rng)
        })
        .collect();
    let rules = words
        .iter()
        .map(|w| Rule { lhs: 0, rhs: w.iter().map(|&s| CfgSym::T(s)).collect() })
        .collect();
    let g = Cfg {
        terminals: sigma.clone(),
        nonterminals: vec!["S".into()],
        start: 0,
        rules,
    };
    (g, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_valid_instances() {
        let sigma = Alphabet::of_chars("abc");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            random_dfa(&sigma, 6, &mut rng).validate().unwrap();
            random_nfa(&sigma, 6, &mut rng).validate().unwrap();
            let g = random_graph(5, 0.4, &mut rng);
            assert_eq!(g.nodes.len(), 5);
            random_betweenness(4, 3, &mut rng);
            random_slt(&sigma, 2, &mut rng);
            random_spt(&sigma, 3, 4, &mut rng);
            let (cfg, words) = random_finite_cfg(&sigma, 5, 4, &mut rng);
            cfg.validate().unwrap();
            assert_eq!(cfg.rules.len(), words.len());
        }
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let sigma = Alphabet::of_chars("ab");
        let a = random_dfa(&sigma, 8, &mut ChaCha8Rng::seed_from_u64(42));
        let b = random_dfa(&sigma, 8, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a.transitions, b.transitions);
        assert_eq!(a.accepting, b.accepting);
        let c = random_dfa(&sigma, 8, &mut ChaCha8Rng::seed_from_u64(43));
        assert!(a.transitions != c.transitions || a.accepting != c.accepting);
    }

    #[test]
    fn finite_cfg_language_matches_reported_words() {
        let sigma = Alphabet::of_chars("ab");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (g, words) = random_finite_cfg(&sigma, 4, 3, &mut rng);
        let cnf = crate::grammars::to_cnf(&g);
        for w in crate::oracle::words_up_to(&sigma, 4, &crate::Caps::default()).unwrap() {
            assert_eq!(
                crate::grammars::cyk_member_cnf(&cnf, &w).unwrap(),
                words.contains(&w),
                "{w:?}"
            );
        }
    }
}
