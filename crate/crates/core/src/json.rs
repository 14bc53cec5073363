//! JSON document types and conversions for every object the CLI reads or
//! writes. Documents refer to states and symbols by name; conversion
//! resolves names to indices and validates the result. Partial DFA
//! transition tables are completed with a fresh rejecting sink.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::automata::{Dfa, Graph, Nfa};
use crate::deciders::{Acceptor, Answer, Decision, Machine, Tag};
use crate::grammars::{Cfg, CfgSym, Rule};
use crate::lang::{Alphabet, Word};
use crate::reductions::Betweenness;
use crate::subregular::{SltSpec, SptSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: String,
    pub symbol: String,
    pub to: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleDoc {
    pub lhs: String,
    /// Mixed terminal and nonterminal tokens; empty array encodes ε.
    pub rhs: Vec<String>,
}

/// Tagged acceptor document, discriminated by the `kind` field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AcceptorDoc {
    Dfa {
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: String,
        accepting: Vec<String>,
        transitions: Vec<TransitionDoc>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<String>,
    },
    Nfa {
        alphabet: Vec<String>,
        states: Vec<String>,
        initials: Vec<String>,
        accepting: Vec<String>,
        transitions: Vec<TransitionDoc>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<String>,
    },
    Cfg {
        terminals: Vec<String>,
        nonterminals: Vec<String>,
        start: String,
        rules: Vec<RuleDoc>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<String>,
    },
    Slt {
        k: usize,
        alphabet: Vec<String>,
        prefixes: Vec<Vec<String>>,
        infixes: Vec<Vec<String>>,
        suffixes: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<String>,
    },
    Spt {
        k: usize,
        alphabet: Vec<String>,
        forbidden: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tags: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetweennessDoc {
    pub items: Vec<String>,
    pub constraints: Vec<(String, String, String)>,
}

fn parse_tags(tags: &[String]) -> Result<BTreeSet<Tag>> {
    tags.iter()
        .map(|t| match t.as_str() {
            "finite" => Ok(Tag::Finite),
            "cofinite" => Ok(Tag::Cofinite),
            other => Err(Error::input(format!("tags: unknown tag `{other}`"))),
        })
        .collect()
}

fn tags_to_doc(tags: &BTreeSet<Tag>) -> Vec<String> {
    tags.iter()
        .map(|t| match t {
            Tag::Finite => "finite".to_string(),
            Tag::Cofinite => "cofinite".to_string(),
        })
        .collect()
}

fn state_id(states: &[String], name: &str, field: &str) -> Result<usize> {
    states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::input(format!("{field}: unknown state `{name}`")))
}

fn words_from_doc(sigma: &Alphabet, words: &[Vec<String>], field: &str) -> Result<BTreeSet<Word>> {
    words
        .iter()
        .map(|w| {
            sigma
                .word_from_tokens(w)
                .map_err(|e| Error::input(format!("{field}: {e}")))
        })
        .collect()
}

fn fresh_state_name(states: &[String]) -> String {
    let mut name = "sink".to_string();
    while states.contains(&name) {
        name.push('\'');
    }
    name
}

fn dfa_from_doc(
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: String,
    accepting: Vec<String>,
    transitions: Vec<TransitionDoc>,
) -> Result<Dfa> {
    let sigma = Alphabet::new(alphabet)?;
    let mut states = states;
    if states.is_empty() {
        return Err(Error::input("states: a machine needs at least one state"));
    }
    for (i, s) in states.iter().enumerate() {
        if states[..i].contains(s) {
            return Err(Error::input(format!("states: duplicate state `{s}`")));
        }
    }
    let initial = state_id(&states, &initial, "initial")?;
    let mut accepting_flags = vec![false; states.len()];
    for name in &accepting {
        accepting_flags[state_id(&states, name, "accepting")?] = true;
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for t in &transitions {
        let from = state_id(&states, &t.from, "transitions")?;
        let to = state_id(&states, &t.to, "transitions")?;
        let sym = sigma
            .index_of(&t.symbol)
            .ok_or_else(|| Error::input(format!("transitions: unknown symbol `{}`", t.symbol)))?;
        if let Some(&prev) = table.get(&(from, sym)) {
            if prev != to {
                return Err(Error::input(format!(
                    "transitions: conflicting targets for state `{}` on `{}`",
                    t.from, t.symbol
                )));
            }
        }
        table.insert((from, sym), to);
    }
    // Complete a partial table with a fresh rejecting sink.
    let total = table.len() == states.len() * sigma.len();
    let sink = if total {
        None
    } else {
        states.push(fresh_state_name(&states));
        accepting_flags.push(false);
        Some(states.len() - 1)
    };
    let rows = (0..states.len())
        .map(|q| {
            (0..sigma.len())
                .map(|s| table.get(&(q, s)).copied().unwrap_or_else(|| sink.unwrap()))
                .collect()
        })
        .collect();
    let d = Dfa {
        alphabet: sigma,
        states,
        initial,
        accepting: accepting_flags,
        transitions: rows,
    };
    d.validate()?;
    Ok(d)
}

fn nfa_from_doc(
    alphabet: Vec<String>,
    states: Vec<String>,
    initials: Vec<String>,
    accepting: Vec<String>,
    transitions: Vec<TransitionDoc>,
) -> Result<Nfa> {
    let sigma = Alphabet::new(alphabet)?;
    if states.is_empty() {
        return Err(Error::input("states: a machine needs at least one state"));
    }
    for (i, s) in states.iter().enumerate() {
        if states[..i].contains(s) {
            return Err(Error::input(format!("states: duplicate state `{s}`")));
        }
    }
    let mut initial_set = BTreeSet::new();
    for name in &initials {
        initial_set.insert(state_id(&states, name, "initials")?);
    }
    let mut accepting_flags = vec![false; states.len()];
    for name in &accepting {
        accepting_flags[state_id(&states, name, "accepting")?] = true;
    }
    let mut rows: Vec<Vec<BTreeSet<usize>>> = vec![vec![BTreeSet::new(); sigma.len()]; states.len()];
    for t in &transitions {
        let from = state_id(&states, &t.from, "transitions")?;
        let to = state_id(&states, &t.to, "transitions")?;
        let sym = sigma
            .index_of(&t.symbol)
            .ok_or_else(|| Error::input(format!("transitions: unknown symbol `{}`", t.symbol)))?;
        rows[from][sym].insert(to);
    }
    let n = Nfa {
        alphabet: sigma,
        states,
        initials: initial_set,
        accepting: accepting_flags,
        transitions: rows,
    };
    n.validate()?;
    Ok(n)
}

fn cfg_from_doc(
    terminals: Vec<String>,
    nonterminals: Vec<String>,
    start: String,
    rules: Vec<RuleDoc>,
) -> Result<Cfg> {
    let sigma = Alphabet::new(terminals)?;
    let start = nonterminals
        .iter()
        .position(|n| *n == start)
        .ok_or_else(|| Error::input(format!("start: unknown nonterminal `{start}`")))?;
    let rules = rules
        .iter()
        .map(|r| {
            let lhs = nonterminals
                .iter()
                .position(|n| n == &r.lhs)
                .ok_or_else(|| Error::input(format!("rules: unknown nonterminal `{}`", r.lhs)))?;
            let rhs = r
                .rhs
                .iter()
                .map(|tok| {
                    if let Some(n) = nonterminals.iter().position(|n| n == tok) {
                        Ok(CfgSym::N(n))
                    } else if let Some(t) = sigma.index_of(tok) {
                        Ok(CfgSym::T(t))
                    } else {
                        Err(Error::input(format!("rules: unknown symbol `{tok}`")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Rule { lhs, rhs })
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Cfg { terminals: sigma, nonterminals, start, rules };
    g.validate()?;
    Ok(g)
}

/// Builds the verified machine described by a document.
pub fn machine_from_doc(doc: &AcceptorDoc) -> Result<Machine> {
    let (acceptor, tags) = match doc.clone() {
        AcceptorDoc::Dfa { alphabet, states, initial, accepting, transitions, tags } => (
            Acceptor::Dfa(dfa_from_doc(alphabet, states, initial, accepting, transitions)?),
            tags,
        ),
        AcceptorDoc::Nfa { alphabet, states, initials, accepting, transitions, tags } => (
            Acceptor::Nfa(nfa_from_doc(alphabet, states, initials, accepting, transitions)?),
            tags,
        ),
        AcceptorDoc::Cfg { terminals, nonterminals, start, rules, tags } => {
            (Acceptor::Cfg(cfg_from_doc(terminals, nonterminals, start, rules)?), tags)
        }
        AcceptorDoc::Slt { k, alphabet, prefixes, infixes, suffixes, tags } => {
            let sigma = Alphabet::new(alphabet)?;
            let spec = SltSpec::new(
                k,
                sigma.clone(),
                words_from_doc(&sigma, &prefixes, "prefixes")?,
                words_from_doc(&sigma, &infixes, "infixes")?,
                words_from_doc(&sigma, &suffixes, "suffixes")?,
            )?;
            (Acceptor::Slt(spec), tags)
        }
        AcceptorDoc::Spt { k, alphabet, forbidden, tags } => {
            let sigma = Alphabet::new(alphabet)?;
            let spec = SptSpec::new(k, sigma.clone(), words_from_doc(&sigma, &forbidden, "forbidden")?)?;
            (Acceptor::Spt(spec), tags)
        }
    };
    Machine::new(acceptor, parse_tags(&tags)?)
}

fn accepting_names(states: &[String], accepting: &[bool]) -> Vec<String> {
    states
        .iter()
        .zip(accepting)
        .filter(|(_, &a)| a)
        .map(|(s, _)| s.clone())
        .collect()
}

fn words_to_doc(sigma: &Alphabet, words: &BTreeSet<Word>) -> Vec<Vec<String>> {
    words.iter().map(|w| sigma.render(w)).collect()
}

/// Renders a machine back into document form.
pub fn machine_to_doc(m: &Machine) -> AcceptorDoc {
    let tags = tags_to_doc(&m.tags);
    match &m.acceptor {
        Acceptor::Dfa(x) => AcceptorDoc::Dfa {
            alphabet: x.alphabet.symbols().to_vec(),
            states: x.states.clone(),
            initial: x.states[x.initial].clone(),
            accepting: accepting_names(&x.states, &x.accepting),
            transitions: (0..x.states.len())
                .flat_map(|q| {
                    (0..x.alphabet.len()).map(move |s| (q, s))
                })
                .map(|(q, s)| TransitionDoc {
                    from: x.states[q].clone(),
                    symbol: x.alphabet.symbol(s).to_string(),
                    to: x.states[x.transitions[q][s]].clone(),
                })
                .collect(),
            tags,
        },
        Acceptor::Nfa(x) => AcceptorDoc::Nfa {
            alphabet: x.alphabet.symbols().to_vec(),
            states: x.states.clone(),
            initials: x.initials.iter().map(|&q| x.states[q].clone()).collect(),
            accepting: accepting_names(&x.states, &x.accepting),
            transitions: (0..x.states.len())
                .flat_map(|q| (0..x.alphabet.len()).map(move |s| (q, s)))
                .flat_map(|(q, s)| {
                    x.transitions[q][s].iter().map(move |&t| (q, s, t)).collect::<Vec<_>>()
                })
                .map(|(q, s, t)| TransitionDoc {
                    from: x.states[q].clone(),
                    symbol: x.alphabet.symbol(s).to_string(),
                    to: x.states[t].clone(),
                })
                .collect(),
            tags,
        },
        Acceptor::Cfg(g) => AcceptorDoc::Cfg {
            terminals: g.terminals.symbols().to_vec(),
            nonterminals: g.nonterminals.clone(),
            start: g.nonterminals[g.start].clone(),
            rules: g
                .rules
                .iter()
                .map(|r| RuleDoc {
                    lhs: g.nonterminals[r.lhs].clone(),
                    rhs: r
                        .rhs
                        .iter()
                        .map(|sym| match *sym {
                            CfgSym::T(t) => g.terminals.symbol(t).to_string(),
                            CfgSym::N(n) => g.nonterminals[n].clone(),
                        })
                        .collect(),
                })
                .collect(),
            tags,
        },
        Acceptor::Slt(s) => AcceptorDoc::Slt {
            k: s.k,
            alphabet: s.alphabet.symbols().to_vec(),
            prefixes: words_to_doc(&s.alphabet, &s.prefixes),
            infixes: words_to_doc(&s.alphabet, &s.infixes),
            suffixes: words_to_doc(&s.alphabet, &s.suffixes),
            tags,
        },
        Acceptor::Spt(s) => AcceptorDoc::Spt {
            k: s.k,
            alphabet: s.alphabet.symbols().to_vec(),
            forbidden: words_to_doc(&s.alphabet, &s.forbidden),
            tags,
        },
    }
}

pub fn parse_machine(input: &str) -> Result<Machine> {
    let doc: AcceptorDoc =
        serde_json::from_str(input).map_err(|e| Error::input(format!("acceptor document: {e}")))?;
    machine_from_doc(&doc)
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<Graph> {
    let node_id = |name: &str| {
        doc.nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::input(format!("edges: unknown node `{name}`")))
    };
    let edges = doc
        .edges
        .iter()
        .map(|(u, v)| Ok((node_id(u)?, node_id(v)?)))
        .collect::<Result<Vec<_>>>()?;
    Graph::new(doc.nodes.clone(), edges)
}

pub fn graph_to_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        nodes: g.nodes.clone(),
        edges: g
            .edges
            .iter()
            .map(|&(u, v)| (g.nodes[u].clone(), g.nodes[v].clone()))
            .collect(),
    }
}

pub fn parse_graph(input: &str) -> Result<Graph> {
    let doc: GraphDoc =
        serde_json::from_str(input).map_err(|e| Error::input(format!("graph document: {e}")))?;
    graph_from_doc(&doc)
}

pub fn betweenness_from_doc(doc: &BetweennessDoc) -> Result<Betweenness> {
    let item_id = |name: &str| {
        doc.items
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::input(format!("constraints: unknown item `{name}`")))
    };
    let constraints = doc
        .constraints
        .iter()
        .map(|(a, b, c)| Ok((item_id(a)?, item_id(b)?, item_id(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Betweenness::new(doc.items.clone(), constraints)
}

pub fn betweenness_to_doc(b: &Betweenness) -> BetweennessDoc {
    BetweennessDoc {
        items: b.items.clone(),
        constraints: b
            .constraints
            .iter()
            .map(|&(x, y, z)| (b.items[x].clone(), b.items[y].clone(), b.items[z].clone()))
            .collect(),
    }
}

pub fn parse_betweenness(input: &str) -> Result<Betweenness> {
    let doc: BetweennessDoc = serde_json::from_str(input)
        .map_err(|e| Error::input(format!("betweenness document: {e}")))?;
    betweenness_from_doc(&doc)
}

/// The decision output object: `answer` is a plain boolean for searched
/// decisions and a string for trivial or undecidable outcomes.
pub fn decision_to_value(problem: &str, d: &Decision, sigma: &Alphabet) -> serde_json::Value {
    let answer = match d.answer {
        Answer::Yes => serde_json::json!(true),
        Answer::No => serde_json::json!(false),
        Answer::TrivialYes => serde_json::json!("trivial-true"),
        Answer::TrivialNo => serde_json::json!("trivial-false"),
        Answer::Undecidable => serde_json::json!("undecidable"),
    };
    let mut obj = serde_json::Map::new();
    obj.insert("problem".into(), serde_json::json!(problem));
    obj.insert("answer".into(), answer);
    if let Some(w) = &d.witness {
        obj.insert("witness".into(), serde_json::json!(sigma.render(w)));
    }
    if let Some(note) = &d.witness_note {
        obj.insert("witness_note".into(), serde_json::json!(note));
    }
    serde_json::Value::Object(obj)
}

/// Sidecar mapping emitted when a reduction renames symbols: original
/// label → token actually used in the produced acceptor.
pub fn renaming_to_value(mapping: &BTreeMap<String, String>) -> serde_json::Value {
    serde_json::json!({ "renamed": mapping })
}
