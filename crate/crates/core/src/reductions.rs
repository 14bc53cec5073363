//! Hardness reductions as executable instance transformers: each function
//! maps an instance of a source problem to an acceptor such that the
//! answers (and witnesses) transfer back and forth.

use std::collections::BTreeSet;

use crate::automata::{
    exact_length_dfa, not_exact_length_dfa, not_prefixed_dfa, product_dfa, Dfa, Graph,
    ProductMode, StateId,
};
use crate::grammars::{concat_word_cfg, dfa_to_cfg, union_cfg, Cfg};
use crate::lang::{Alphabet, Symbol, Word};
use crate::subregular::{SltSpec, SptSpec};
use crate::{Error, Result};

/// DFA over Σ = V accepting exactly the walks of the graph. Its language
/// contains a perfect pangram iff the graph has a Hamiltonian path.
pub fn hamiltonian_to_perfect_pangram_dfa(g: &Graph) -> Result<Dfa> {
    let n = g.nodes.len();
    let sigma = Alphabet::new(g.nodes.clone())?;
    let src = n;
    let fail = n + 1;
    let mut states = g.nodes.clone();
    states.push("q_src".to_string());
    states.push("q_fail".to_string());
    let mut accepting = vec![true; n + 2];
    accepting[src] = false;
    accepting[fail] = false;
    let mut transitions: Vec<Vec<StateId>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|u| if g.edges.contains(&(v, u)) { u } else { fail })
                .collect()
        })
        .collect();
    transitions.push((0..n).collect()); // from q_src any vertex may start
    transitions.push(vec![fail; n]);
    Ok(Dfa { alphabet: sigma, states, initial: src, accepting, transitions })
}

/// Restricts a DFA's language to the words of length |Σ|. The result
/// contains a pangram iff the original contains a perfect pangram, since
/// fixing the length makes every pangram perfect.
pub fn perfect_to_pangram(x: &Dfa) -> Result<Dfa> {
    product_dfa(x, &exact_length_dfa(&x.alphabet, x.alphabet.len()), ProductMode::Intersection)
}

/// Adds every word of length ≠ |Σ| to a DFA's language. The result is
/// cofinite and agrees with the original on the words of length |Σ|, so
/// perfect-pangram answers transfer.
pub fn to_cofinite(x: &Dfa) -> Result<Dfa> {
    product_dfa(x, &not_exact_length_dfa(&x.alphabet, x.alphabet.len()), ProductMode::Union)
}

/// Output of [`hamiltonian_to_3slt`]: the acceptor plus the tokens chosen
/// for the position counters 1..=|V| (renamed when they would collide with
/// vertex names).
#[derive(Debug, Clone)]
pub struct Slt3Reduction {
    pub spec: SltSpec,
    pub counters: Vec<String>,
}

/// 3-SLT acceptor over Σ = V ∪ {1..|V|} whose language contains a pangram
/// iff the graph has a Hamiltonian path. A path v₁→⋯→vₙ corresponds to
/// the word v₁ 1 v₂ 2 ⋯ vₙ n: allowed windows interleave edges of the
/// graph with an incrementing counter.
pub fn hamiltonian_to_3slt(g: &Graph) -> Result<Slt3Reduction> {
    let n = g.nodes.len();
    let mut counters: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    while counters.iter().any(|c| g.nodes.contains(c)) {
        for c in &mut counters {
            c.insert(0, '#');
        }
    }
    let mut tokens = g.nodes.clone();
    tokens.extend(counters.iter().cloned());
    let sigma = Alphabet::new(tokens)?;
    // vertex v ↦ symbol v, counter k ↦ symbol n + k − 1
    let ctr = |k: usize| n + k - 1;
    let prefixes: BTreeSet<Word> = (0..n).map(|v| vec![v, ctr(1)]).collect();
    let suffixes: BTreeSet<Word> = (0..n).map(|v| vec![v, ctr(n)]).collect();
    let mut infixes: BTreeSet<Word> = BTreeSet::new();
    for &(v, u) in &g.edges {
        for k in 1..=n {
            infixes.insert(vec![v, ctr(k), u]);
        }
    }
    for v in 0..n {
        for k in 1..n {
            infixes.insert(vec![ctr(k), v, ctr(k + 1)]);
        }
    }
    let spec = SltSpec::new(3, sigma, prefixes, infixes, suffixes)?;
    Ok(Slt3Reduction { spec, counters })
}

/// Reads a Hamiltonian path back out of a pangram witness for either
/// Hamiltonian reduction: the vertex symbols of the word, in order of
/// occurrence (duplicates dropped for the walk-DFA case).
pub fn hamiltonian_path_from_witness(w: &[Symbol], num_vertices: usize) -> Vec<usize> {
    let mut path = Vec::new();
    for &s in w {
        if s < num_vertices && !path.contains(&s) {
            path.push(s);
        }
    }
    path
}

/// A betweenness instance: find a total order of the items in which, for
/// every constraint (a, b, c), item b lies between a and c.
#[derive(Debug, Clone)]
pub struct Betweenness {
    pub items: Vec<String>,
    pub constraints: Vec<(usize, usize, usize)>,
}

impl Betweenness {
    pub fn new(items: Vec<String>, constraints: Vec<(usize, usize, usize)>) -> Result<Self> {
        let n = items.len();
        for (i, item) in items.iter().enumerate() {
            if items[..i].contains(item) {
                return Err(Error::input(format!("duplicate item `{item}`")));
            }
        }
        for &(a, b, c) in &constraints {
            if a >= n || b >= n || c >= n {
                return Err(Error::input("betweenness constraint index out of range"));
            }
            if a == b || a == c || b == c {
                return Err(Error::input("betweenness constraint items must be distinct"));
            }
        }
        Ok(Betweenness { items, constraints })
    }

    /// Does the order given as a permutation of item indices satisfy all
    /// constraints?
    pub fn satisfied_by(&self, order: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.items.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        self.constraints.iter().all(|&(a, b, c)| {
            (pos[a] < pos[b] && pos[b] < pos[c]) || (pos[c] < pos[b] && pos[b] < pos[a])
        })
    }
}

/// 3-SPT acceptor over Σ = items whose language contains a pangram iff
/// the betweenness instance is satisfiable. Each constraint (a, b, c)
/// forbids the four subsequence orders of {a, b, c} in which b is not in
/// the middle; the surviving permutations are exactly the valid orders.
pub fn betweenness_to_3spt(b: &Betweenness) -> Result<SptSpec> {
    let sigma = Alphabet::new(b.items.clone())?;
    let mut forbidden: BTreeSet<Word> = BTreeSet::new();
    for &(a, bb, c) in &b.constraints {
        forbidden.insert(vec![a, c, bb]);
        forbidden.insert(vec![c, a, bb]);
        forbidden.insert(vec![bb, a, c]);
        forbidden.insert(vec![bb, c, a]);
    }
    SptSpec::new(3, sigma, forbidden)
}

/// Grammar for w·L(g) ∪ NS_w where w lists the whole alphabet and NS_w is
/// the set of words not starting with w. The result covers the pangrams
/// iff L(g) = Σ*, so a pangram-coverage decision procedure for grammars
/// would decide grammar universality. Construction only — the coverage
/// question itself stays undecidable.
pub fn universality_to_pangram_cover(g: &Cfg) -> Result<Cfg> {
    let w = g.terminals.full_word();
    let prefixed = concat_word_cfg(&w, g)?;
    let ns = dfa_to_cfg(&not_prefixed_dfa(&w, &g.terminals)?);
    union_cfg(&prefixed, &ns)
}
