//! The six decision problems over the five acceptor classes, behind a
//! single dispatch surface.
//!
//! Existential problems: does the language contain a pangram / a perfect
//! pangram? Coverage problems: does it contain *every* pangram / perfect
//! pangram? Inclusion problems: is every member a pangram / perfect
//! pangram? Each decider returns a [`Decision`] carrying the answer and,
//! when one exists, a checkable witness word.

use std::collections::{BTreeSet, VecDeque};

use crate::automata::{
    complement_dfa, determinize, is_empty_dfa, is_finite_language, pangram_dfa, product_dfa,
    shortest_accepted, useful_states, Dfa, Nfa, ProductMode, StateId,
};
use crate::grammars::{
    cyk_member_cnf, dfa_to_cfg, is_empty_cfg, nfa_to_cfg, subset_of_pangrams,
    subset_of_perfect_pangrams, to_cnf, Cfg, CfgSym, Cnf, Rule,
};
use crate::lang::{Alphabet, Word};
use crate::subregular::{
    slt2_contains_pangram, slt_member, slt_to_dfa, spt2_contains_pangram, spt_member, spt_to_dfa,
    SltSpec, SptSpec,
};
use crate::{Caps, Error, Result};

/// One of the five acceptor classes.
#[derive(Debug, Clone)]
pub enum Acceptor {
    Dfa(Dfa),
    Nfa(Nfa),
    Cfg(Cfg),
    Slt(SltSpec),
    Spt(SptSpec),
}

/// Promised language properties. Tags are only allowed on DFAs, where the
/// promise is checked rather than trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    /// The language is finite.
    Finite,
    /// The complement of the language is finite.
    Cofinite,
}

/// An acceptor together with its verified tags.
#[derive(Debug, Clone)]
pub struct Machine {
    pub acceptor: Acceptor,
    pub tags: BTreeSet<Tag>,
}

impl Acceptor {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Acceptor::Dfa(x) => &x.alphabet,
            Acceptor::Nfa(x) => &x.alphabet,
            Acceptor::Cfg(g) => &g.terminals,
            Acceptor::Slt(s) => &s.alphabet,
            Acceptor::Spt(s) => &s.alphabet,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Acceptor::Dfa(x) => x.validate(),
            Acceptor::Nfa(x) => x.validate(),
            Acceptor::Cfg(g) => g.validate(),
            // SLT/SPT specs are validated at construction time.
            Acceptor::Slt(_) | Acceptor::Spt(_) => Ok(()),
        }
    }

    /// Membership test closure. Grammars are normalized once up front, so
    /// repeated queries stay cheap.
    pub fn membership(&self) -> Box<dyn Fn(&[crate::lang::Symbol]) -> Result<bool> + '_> {
        match self {
            Acceptor::Dfa(x) => Box::new(move |w| x.accepts(w)),
            Acceptor::Nfa(x) => Box::new(move |w| x.accepts(w)),
            Acceptor::Slt(s) => Box::new(move |w| slt_member(s, w)),
            Acceptor::Spt(s) => Box::new(move |w| spt_member(s, w)),
            Acceptor::Cfg(g) => {
                let cnf = to_cnf(g);
                Box::new(move |w| cyk_member_cnf(&cnf, w))
            }
        }
    }
}

impl Machine {
    /// Wraps an acceptor, verifying every tag against the actual language.
    pub fn new(acceptor: Acceptor, tags: BTreeSet<Tag>) -> Result<Self> {
        acceptor.validate()?;
        for &tag in &tags {
            let Acceptor::Dfa(x) = &acceptor else {
                return Err(Error::input("language tags are only supported on DFAs"));
            };
            let ok = match tag {
                Tag::Finite => is_finite_language(x),
                Tag::Cofinite => is_finite_language(&complement_dfa(x)),
            };
            if !ok {
                return Err(Error::input(format!(
                    "tag {tag:?} does not hold for the given machine"
                )));
            }
        }
        Ok(Machine { acceptor, tags })
    }

    pub fn untagged(acceptor: Acceptor) -> Result<Self> {
        Machine::new(acceptor, BTreeSet::new())
    }
}

/// The six decision problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    ContainsPangram,
    ContainsPerfectPangram,
    CoversPangrams,
    CoversPerfectPangrams,
    AllPangrams,
    AllPerfectPangrams,
}

impl Problem {
    pub const ALL: [Problem; 6] = [
        Problem::ContainsPangram,
        Problem::ContainsPerfectPangram,
        Problem::CoversPangrams,
        Problem::CoversPerfectPangrams,
        Problem::AllPangrams,
        Problem::AllPerfectPangrams,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Problem::ContainsPangram => "contains-pangram",
            Problem::ContainsPerfectPangram => "contains-perfect-pangram",
            Problem::CoversPangrams => "covers-pangrams",
            Problem::CoversPerfectPangrams => "covers-perfect-pangrams",
            Problem::AllPangrams => "all-pangrams",
            Problem::AllPerfectPangrams => "all-perfect-pangrams",
        }
    }

    pub fn from_name(name: &str) -> Option<Problem> {
        Problem::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// How a decision was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    /// Yes, by a verified language tag rather than a search.
    TrivialYes,
    /// No, by a verified language tag rather than a search.
    TrivialNo,
    /// The problem is undecidable for this acceptor class.
    Undecidable,
}

impl Answer {
    /// The boolean content, when there is one.
    pub fn holds(&self) -> Option<bool> {
        match self {
            Answer::Yes | Answer::TrivialYes => Some(true),
            Answer::No | Answer::TrivialNo => Some(false),
            Answer::Undecidable => None,
        }
    }
}

/// Decision outcome. For existential problems the witness certifies a yes;
/// for coverage and inclusion problems it is a counterexample certifying a
/// no. `witness_note` explains an absent or unusual witness.
#[derive(Debug, Clone)]
pub struct Decision {
    pub answer: Answer,
    pub witness: Option<Word>,
    pub witness_note: Option<String>,
}

impl Decision {
    fn of(answer: Answer, witness: Option<Word>) -> Self {
        Decision { answer, witness, witness_note: None }
    }

    fn with_note(answer: Answer, witness: Option<Word>, note: impl Into<String>) -> Self {
        Decision { answer, witness, witness_note: Some(note.into()) }
    }
}

pub fn decide(m: &Machine, problem: Problem, caps: &Caps) -> Result<Decision> {
    match problem {
        Problem::ContainsPangram => contains_pangram(m, caps),
        Problem::ContainsPerfectPangram => contains_perfect_pangram(m, caps),
        Problem::CoversPangrams => covers_pangrams(m, caps),
        Problem::CoversPerfectPangrams => covers_perfect_pangrams(m, caps),
        Problem::AllPangrams => all_pangrams(m, caps),
        Problem::AllPerfectPangrams => all_perfect_pangrams(m, caps),
    }
}

fn check_alphabet_cap(sigma: &Alphabet, caps: &Caps) -> Result<()> {
    if sigma.len() > caps.alphabet {
        return Err(Error::size_limit(
            format!("alphabet of size {} for a seen-set search", sigma.len()),
            caps.alphabet as u64,
        ));
    }
    Ok(())
}

fn check_config_budget(configs: u64, caps: &Caps) -> Result<()> {
    if configs > caps.steps {
        return Err(Error::Budget(format!(
            "configuration space of size {configs} exceeds the step budget {}",
            caps.steps
        )));
    }
    Ok(())
}

/// BFS over (state, seen-letter-set) configurations of a DFA restricted to
/// `allowed` states. `forbid_repeats` makes reading an already-seen letter
/// kill the run, which turns the search into a perfect-pangram search.
fn dfa_seen_set_search(
    x: &Dfa,
    allowed: &[bool],
    forbid_repeats: bool,
    caps: &Caps,
) -> Result<Option<Word>> {
    check_alphabet_cap(&x.alphabet, caps)?;
    let n = x.alphabet.len();
    let masks = 1usize << n;
    check_config_budget(x.states.len() as u64 * masks as u64, caps)?;
    if !allowed[x.initial] {
        return Ok(None);
    }
    let full = masks - 1;
    let found = shortest_accepted(
        x.states.len() * masks,
        n,
        &[x.initial * masks],
        |c| x.accepting[c / masks] && c % masks == full,
        |c, s| {
            let (q, mask) = (c / masks, c % masks);
            if forbid_repeats && mask >> s & 1 == 1 {
                return Vec::new();
            }
            let t = x.transitions[q][s];
            if allowed[t] {
                vec![t * masks + (mask | 1 << s)]
            } else {
                Vec::new()
            }
        },
    );
    Ok(found)
}

/// Same search over an NFA, one configuration per (state, seen-set) pair.
fn nfa_seen_set_search(x: &Nfa, forbid_repeats: bool, caps: &Caps) -> Result<Option<Word>> {
    check_alphabet_cap(&x.alphabet, caps)?;
    let n = x.alphabet.len();
    let masks = 1usize << n;
    check_config_budget(x.states.len() as u64 * masks as u64, caps)?;
    let allowed = nfa_useful_states(x);
    let full = masks - 1;
    let initials: Vec<usize> = x
        .initials
        .iter()
        .filter(|&&q| allowed[q])
        .map(|&q| q * masks)
        .collect();
    let found = shortest_accepted(
        x.states.len() * masks,
        n,
        &initials,
        |c| x.accepting[c / masks] && c % masks == full,
        |c, s| {
            let (q, mask) = (c / masks, c % masks);
            if forbid_repeats && mask >> s & 1 == 1 {
                return Vec::new();
            }
            x.transitions[q][s]
                .iter()
                .filter(|&&t| allowed[t])
                .map(|&t| t * masks + (mask | 1 << s))
                .collect()
        },
    );
    Ok(found)
}

/// NFA states on some path from an initial to an accepting state.
fn nfa_useful_states(x: &Nfa) -> Vec<bool> {
    let n = x.states.len();
    let k = x.alphabet.len();
    let mut forward = vec![false; n];
    let mut queue: VecDeque<StateId> = x.initials.iter().copied().collect();
    for &q in &x.initials {
        forward[q] = true;
    }
    while let Some(q) = queue.pop_front() {
        for s in 0..k {
            for &t in &x.transitions[q][s] {
                if !forward[t] {
                    forward[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for q in 0..n {
        for s in 0..k {
            for &t in &x.transitions[q][s] {
                rev[t].push(q);
            }
        }
    }
    let mut backward = vec![false; n];
    let mut queue: VecDeque<StateId> = (0..n).filter(|&q| x.accepting[q]).collect();
    for &q in &queue {
        backward[q] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &p in &rev[q] {
            if !backward[p] {
                backward[p] = true;
                queue.push_back(p);
            }
        }
    }
    (0..n).map(|q| forward[q] && backward[q]).collect()
}

/// Permutations of the alphabet in lexicographic order, with the size cap
/// enforced.
fn permutations(sigma: &Alphabet, caps: &Caps) -> Result<Vec<Word>> {
    if sigma.len() > caps.permutations {
        return Err(Error::size_limit(
            format!("alphabet of size {} for permutation enumeration", sigma.len()),
            caps.permutations as u64,
        ));
    }
    use itertools::Itertools;
    Ok((0..sigma.len()).permutations(sigma.len()).collect())
}

/// Intersection of a CNF language with a DFA by the state-pair
/// construction. Only the non-ε part of the language is represented; the
/// result is for emptiness checks and is never validated by name.
fn cnf_intersect_dfa(c: &Cnf, d: &Dfa) -> Cfg {
    let q = d.states.len();
    let nn = c.cfg.nonterminals.len();
    let idx = |a: usize, p: usize, r: usize| (a * q + p) * q + r;
    let start = nn * q * q;
    let nonterminals: Vec<String> = (0..=start).map(|i| format!("I{i}")).collect();
    let mut rules = Vec::new();
    for rule in &c.cfg.rules {
        match rule.rhs[..] {
            [CfgSym::T(t)] => {
                for p in 0..q {
                    rules.push(Rule {
                        lhs: idx(rule.lhs, p, d.transitions[p][t]),
                        rhs: vec![CfgSym::T(t)],
                    });
                }
            }
            [CfgSym::N(a), CfgSym::N(b)] => {
                for p in 0..q {
                    for mid in 0..q {
                        for r in 0..q {
                            rules.push(Rule {
                                lhs: idx(rule.lhs, p, r),
                                rhs: vec![CfgSym::N(idx(a, p, mid)), CfgSym::N(idx(b, mid, r))],
                            });
                        }
                    }
                }
            }
            _ => unreachable!("non-CNF rule in Cnf"),
        }
    }
    for f in 0..q {
        if d.accepting[f] {
            rules.push(Rule { lhs: start, rhs: vec![CfgSym::N(idx(c.cfg.start, d.initial, f))] });
        }
    }
    Cfg { terminals: d.alphabet.clone(), nonterminals, start, rules }
}

fn contains_pangram(m: &Machine, caps: &Caps) -> Result<Decision> {
    let trivially = m.tags.contains(&Tag::Cofinite);
    let yes = |w: Option<Word>| {
        Decision::of(if trivially { Answer::TrivialYes } else { Answer::Yes }, w)
    };
    match &m.acceptor {
        Acceptor::Dfa(x) => {
            let allowed = useful_states(x);
            match dfa_seen_set_search(x, &allowed, false, caps)? {
                Some(w) => Ok(yes(Some(w))),
                None => Ok(Decision::of(Answer::No, None)),
            }
        }
        Acceptor::Nfa(x) => match nfa_seen_set_search(x, false, caps)? {
            Some(w) => Ok(yes(Some(w))),
            None => Ok(Decision::of(Answer::No, None)),
        },
        Acceptor::Slt(s) if s.k == 2 => {
            let v = slt2_contains_pangram(s)?;
            Ok(Decision::of(if v.answer { Answer::Yes } else { Answer::No }, v.witness))
        }
        Acceptor::Slt(s) => {
            let d = slt_to_dfa(s, caps)?;
            let allowed = useful_states(&d);
            match dfa_seen_set_search(&d, &allowed, false, caps)? {
                Some(w) => Ok(Decision::of(Answer::Yes, Some(w))),
                None => Ok(Decision::of(Answer::No, None)),
            }
        }
        Acceptor::Spt(s) => {
            // SPT languages are downward closed: they contain a pangram iff
            // they contain a permutation of the alphabet.
            if s.forbidden.iter().all(|f| f.len() <= 2) {
                let v = spt2_contains_pangram(s)?;
                return Ok(Decision::of(if v.answer { Answer::Yes } else { Answer::No }, v.witness));
            }
            for p in permutations(&s.alphabet, caps)? {
                if spt_member(s, &p)? {
                    return Ok(Decision::of(Answer::Yes, Some(p)));
                }
            }
            Ok(Decision::of(Answer::No, None))
        }
        Acceptor::Cfg(g) => {
            // A pangram is in L(g) iff a permutation of the alphabet is in
            // the downward closure of L(g).
            let closure = to_cnf(&crate::grammars::downward_closure(g));
            let hit = permutations(&g.terminals, caps)?
                .into_iter()
                .find(|p| cyk_member_cnf(&closure, p).unwrap_or(false));
            let Some(perm) = hit else {
                return Ok(Decision::of(Answer::No, None));
            };
            // Try to recover an actual member of L(g) that is a pangram,
            // via intersection with the pangram machine.
            let cnf = to_cnf(g);
            let q = 1u64 << g.terminals.len();
            let bin = cnf
                .cfg
                .rules
                .iter()
                .filter(|r| r.rhs.len() == 2)
                .count() as u64;
            if bin.saturating_mul(q * q * q) <= caps.steps {
                let pang = pangram_dfa(&g.terminals, caps)?;
                let inter = cnf_intersect_dfa(&cnf, &pang);
                let v = is_empty_cfg(&inter);
                if let Some(w) = v.witness {
                    return Ok(Decision::of(Answer::Yes, Some(w)));
                }
            }
            Ok(Decision::with_note(
                Answer::Yes,
                Some(perm),
                "witness lies in the downward closure of the language; some member \
                 containing it as a subsequence is a pangram",
            ))
        }
    }
}

fn contains_perfect_pangram(m: &Machine, caps: &Caps) -> Result<Decision> {
    match &m.acceptor {
        Acceptor::Dfa(x) => {
            let allowed = vec![true; x.states.len()];
            match dfa_seen_set_search(x, &allowed, true, caps)? {
                Some(w) => Ok(Decision::of(Answer::Yes, Some(w))),
                None => Ok(Decision::of(Answer::No, None)),
            }
        }
        Acceptor::Nfa(x) => match nfa_seen_set_search(x, true, caps)? {
            Some(w) => Ok(Decision::of(Answer::Yes, Some(w))),
            None => Ok(Decision::of(Answer::No, None)),
        },
        Acceptor::Slt(s) => {
            let d = slt_to_dfa(s, caps)?;
            let allowed = vec![true; d.states.len()];
            match dfa_seen_set_search(&d, &allowed, true, caps)? {
                Some(w) => Ok(Decision::of(Answer::Yes, Some(w))),
                None => Ok(Decision::of(Answer::No, None)),
            }
        }
        Acceptor::Spt(s) => {
            for p in permutations(&s.alphabet, caps)? {
                if spt_member(s, &p)? {
                    return Ok(Decision::of(Answer::Yes, Some(p)));
                }
            }
            Ok(Decision::of(Answer::No, None))
        }
        Acceptor::Cfg(g) => {
            let cnf = to_cnf(g);
            for p in permutations(&g.terminals, caps)? {
                if cyk_member_cnf(&cnf, &p)? {
                    return Ok(Decision::of(Answer::Yes, Some(p)));
                }
            }
            Ok(Decision::of(Answer::No, None))
        }
    }
}

/// Missing-pangram search for DFAs: emptiness of `P_Σ ∖ L`.
fn dfa_missing_pangram(x: &Dfa, caps: &Caps) -> Result<Option<Word>> {
    let pang = pangram_dfa(&x.alphabet, caps)?;
    let diff = product_dfa(&pang, &complement_dfa(x), ProductMode::Intersection)?;
    Ok(is_empty_dfa(&diff).witness)
}

fn covers_pangrams(m: &Machine, caps: &Caps) -> Result<Decision> {
    let trivially = m.tags.contains(&Tag::Finite);
    let no = |w: Option<Word>| {
        Decision::of(if trivially { Answer::TrivialNo } else { Answer::No }, w)
    };
    match &m.acceptor {
        Acceptor::Dfa(x) => match dfa_missing_pangram(x, caps)? {
            Some(w) => Ok(no(Some(w))),
            None => Ok(Decision::of(Answer::Yes, None)),
        },
        Acceptor::Nfa(x) => {
            let d = determinize(x, caps)?;
            match dfa_missing_pangram(&d, caps)? {
                Some(w) => Ok(Decision::of(Answer::No, Some(w))),
                None => Ok(Decision::of(Answer::Yes, None)),
            }
        }
        Acceptor::Slt(s) => {
            let d = slt_to_dfa(s, caps)?;
            match dfa_missing_pangram(&d, caps)? {
                Some(w) => Ok(Decision::of(Answer::No, Some(w))),
                None => Ok(Decision::of(Answer::Yes, None)),
            }
        }
        Acceptor::Spt(s) => {
            // Downward-closed languages cover the pangrams only when they
            // are all of Σ*; any forbidden word extends to an excluded
            // pangram.
            match s.forbidden.iter().next() {
                None => Ok(Decision::of(Answer::Yes, None)),
                Some(f) => {
                    let mut w = f.clone();
                    for c in 0..s.alphabet.len() {
                        if !f.contains(&c) {
                            w.push(c);
                        }
                    }
                    Ok(Decision::of(Answer::No, Some(w)))
                }
            }
        }
        Acceptor::Cfg(_) => Ok(Decision::with_note(
            Answer::Undecidable,
            None,
            "pangram coverage for context-free grammars reduces from grammar \
             universality and is undecidable",
        )),
    }
}

fn covers_perfect_pangrams(m: &Machine, caps: &Caps) -> Result<Decision> {
    let sigma = m.acceptor.alphabet().clone();
    let perms = permutations(&sigma, caps)?;
    let missing = match &m.acceptor {
        Acceptor::Dfa(x) => {
            let mut out = None;
            for p in perms {
                if !x.accepts(&p)? {
                    out = Some(p);
                    break;
                }
            }
            out
        }
        Acceptor::Nfa(x) => {
            let mut out = None;
            for p in perms {
                if !x.accepts(&p)? {
                    out = Some(p);
                    break;
                }
            }
            out
        }
        Acceptor::Slt(s) => {
            let mut out = None;
            for p in perms {
                if !slt_member(s, &p)? {
                    out = Some(p);
                    break;
                }
            }
            out
        }
        Acceptor::Spt(s) => {
            let mut out = None;
            for p in perms {
                if !spt_member(s, &p)? {
                    out = Some(p);
                    break;
                }
            }
            out
        }
        Acceptor::Cfg(g) => {
            let cnf = to_cnf(g);
            let mut out = None;
            for p in perms {
                if !cyk_member_cnf(&cnf, &p)? {
                    out = Some(p);
                    break;
                }
            }
            out
        }
    };
    match missing {
        Some(p) => Ok(Decision::of(Answer::No, Some(p))),
        None => Ok(Decision::of(Answer::Yes, None)),
    }
}

/// Any acceptor as a grammar, so the inclusion problems share one code
/// path.
fn acceptor_to_cfg(a: &Acceptor, caps: &Caps) -> Result<Cfg> {
    Ok(match a {
        Acceptor::Dfa(x) => dfa_to_cfg(x),
        Acceptor::Nfa(x) => nfa_to_cfg(x),
        Acceptor::Cfg(g) => g.clone(),
        Acceptor::Slt(s) => dfa_to_cfg(&slt_to_dfa(s, caps)?),
        Acceptor::Spt(s) => dfa_to_cfg(&spt_to_dfa(s, caps)?),
    })
}

fn all_pangrams(m: &Machine, caps: &Caps) -> Result<Decision> {
    let g = acceptor_to_cfg(&m.acceptor, caps)?;
    let v = subset_of_pangrams(&g);
    Ok(Decision::of(if v.answer { Answer::Yes } else { Answer::No }, v.witness))
}

fn all_perfect_pangrams(m: &Machine, caps: &Caps) -> Result<Decision> {
    let g = acceptor_to_cfg(&m.acceptor, caps)?;
    let v = subset_of_perfect_pangrams(&g);
    Ok(Decision::of(if v.answer { Answer::Yes } else { Answer::No }, v.witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{exact_length_dfa, non_pangram_nfa, not_exact_length_dfa, perfect_pangram_dfa};
    use crate::lang::{is_pangram, is_perfect_pangram};

    fn caps() -> Caps {
        Caps::default()
    }

    fn dfa_machine(x: Dfa) -> Machine {
        Machine::untagged(Acceptor::Dfa(x)).unwrap()
    }

    #[test]
    fn tags_are_verified() {
        let ab = Alphabet::of_chars("ab");
        let fin = exact_length_dfa(&ab, 2);
        assert!(Machine::new(Acceptor::Dfa(fin.clone()), BTreeSet::from([Tag::Finite])).is_ok());
        assert!(Machine::new(Acceptor::Dfa(fin.clone()), BTreeSet::from([Tag::Cofinite])).is_err());
        let cofin = not_exact_length_dfa(&ab, 2);
        assert!(Machine::new(Acceptor::Dfa(cofin), BTreeSet::from([Tag::Cofinite])).is_ok());
        assert!(Machine::new(
            Acceptor::Nfa(non_pangram_nfa(&ab)),
            BTreeSet::from([Tag::Finite])
        )
        .is_err());
    }

    #[test]
    fn contains_pangram_dfa_examples() {
        let ab = Alphabet::of_chars("ab");
        let d = pangram_dfa(&ab, &caps()).unwrap();
        let dec = contains_pangram(&dfa_machine(d), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        assert_eq!(ab.render_compact(&dec.witness.unwrap()), "ab");

        let dec = contains_pangram(&dfa_machine(perfect_pangram_dfa(&ab, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        assert_eq!(ab.render_compact(&dec.witness.unwrap()), "ab");

        // only words over {a}: no pangram over {a, b}
        let only_a = Dfa {
            alphabet: ab.clone(),
            states: vec!["q".into(), "dead".into()],
            initial: 0,
            accepting: vec![true, false],
            transitions: vec![vec![0, 1], vec![1, 1]],
        };
        let dec = contains_pangram(&dfa_machine(only_a), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
        assert!(dec.witness.is_none());
    }

    #[test]
    fn contains_pangram_cofinite_is_trivial() {
        let ab = Alphabet::of_chars("ab");
        let m = Machine::new(
            Acceptor::Dfa(not_exact_length_dfa(&ab, 2)),
            BTreeSet::from([Tag::Cofinite]),
        )
        .unwrap();
        let dec = contains_pangram(&m, &caps()).unwrap();
        assert_eq!(dec.answer, Answer::TrivialYes);
        let w = dec.witness.unwrap();
        assert!(is_pangram(&w, &ab).unwrap());
        assert_ne!(w.len(), 2);
    }

    #[test]
    fn contains_pangram_nfa_examples() {
        let ab = Alphabet::of_chars("ab");
        let dec = contains_pangram(
            &Machine::untagged(Acceptor::Nfa(non_pangram_nfa(&ab))).unwrap(),
            &caps(),
        )
        .unwrap();
        assert_eq!(dec.answer, Answer::No);

        // union-of-initials NFA that does reach a pangram
        let d = pangram_dfa(&ab, &caps()).unwrap();
        let nfa = Nfa {
            alphabet: ab.clone(),
            states: d.states.clone(),
            initials: BTreeSet::from([0]),
            accepting: d.accepting.clone(),
            transitions: d
                .transitions
                .iter()
                .map(|row| row.iter().map(|&t| BTreeSet::from([t])).collect())
                .collect(),
        };
        let dec = contains_pangram(&Machine::untagged(Acceptor::Nfa(nfa)).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        assert_eq!(ab.render_compact(&dec.witness.unwrap()), "ab");
    }

    #[test]
    fn contains_pangram_cfg_examples() {
        let ab = Alphabet::of_chars("ab");
        // S → a S b | a b: "ab" is the shortest pangram member
        let g = Cfg {
            terminals: ab.clone(),
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(0), CfgSym::T(1)] },
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::T(1)] },
            ],
        };
        let dec = contains_pangram(&Machine::untagged(Acceptor::Cfg(g.clone())).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        let w = dec.witness.unwrap();
        assert!(is_pangram(&w, &ab).unwrap());
        assert!(crate::grammars::cyk_member(&g, &w).unwrap());

        // S → a S | a: never sees b
        let g = Cfg {
            terminals: ab.clone(),
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(0)] },
                Rule { lhs: 0, rhs: vec![CfgSym::T(0)] },
            ],
        };
        let dec = contains_pangram(&Machine::untagged(Acceptor::Cfg(g)).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
    }

    #[test]
    fn contains_perfect_pangram_examples() {
        let ab = Alphabet::of_chars("ab");
        let dec = contains_perfect_pangram(&dfa_machine(pangram_dfa(&ab, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        let w = dec.witness.unwrap();
        assert!(is_perfect_pangram(&w, &ab).unwrap());
        assert_eq!(ab.render_compact(&w), "ab");

        let dec = contains_perfect_pangram(&dfa_machine(exact_length_dfa(&ab, 1)), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);

        let dec = contains_perfect_pangram(&dfa_machine(exact_length_dfa(&ab, 2)), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        assert_eq!(ab.render_compact(&dec.witness.unwrap()), "ab");
    }

    #[test]
    fn covers_pangrams_examples() {
        let ab = Alphabet::of_chars("ab");
        let dec = covers_pangrams(&dfa_machine(pangram_dfa(&ab, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);

        let dec = covers_pangrams(&dfa_machine(perfect_pangram_dfa(&ab, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
        assert_eq!(ab.render_compact(&dec.witness.unwrap()), "aab");

        // finite tag: trivially no, counterexample still a real pangram
        let m = Machine::new(Acceptor::Dfa(exact_length_dfa(&ab, 1)), BTreeSet::from([Tag::Finite])).unwrap();
        let dec = covers_pangrams(&m, &caps()).unwrap();
        assert_eq!(dec.answer, Answer::TrivialNo);
        let w = dec.witness.unwrap();
        assert!(is_pangram(&w, &ab).unwrap());

        // CFG: declared undecidable, no witness
        let g = dfa_to_cfg(&pangram_dfa(&ab, &caps()).unwrap());
        let dec = covers_pangrams(&Machine::untagged(Acceptor::Cfg(g)).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Undecidable);
        assert!(dec.witness_note.is_some());
    }

    #[test]
    fn covers_pangrams_nfa_and_spt() {
        let ab = Alphabet::of_chars("ab");
        let dec = covers_pangrams(
            &Machine::untagged(Acceptor::Nfa(non_pangram_nfa(&ab))).unwrap(),
            &caps(),
        )
        .unwrap();
        assert_eq!(dec.answer, Answer::No);
        let w = dec.witness.unwrap();
        assert!(is_pangram(&w, &ab).unwrap());

        let free = SptSpec::new(2, ab.clone(), BTreeSet::new()).unwrap();
        let dec = covers_pangrams(&Machine::untagged(Acceptor::Spt(free)).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);

        let blocked = SptSpec::new(2, ab.clone(), BTreeSet::from([ab.word_from_str("ab").unwrap()])).unwrap();
        let dec = covers_pangrams(&Machine::untagged(Acceptor::Spt(blocked.clone())).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
        let w = dec.witness.unwrap();
        assert!(is_pangram(&w, &ab).unwrap());
        assert!(!spt_member(&blocked, &w).unwrap());
    }

    #[test]
    fn covers_perfect_pangrams_examples() {
        let ab = Alphabet::of_chars("ab");
        let dec = covers_perfect_pangrams(&dfa_machine(perfect_pangram_dfa(&ab, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);

        let dec = covers_perfect_pangrams(&dfa_machine(exact_length_dfa(&ab, 2)), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);

        // only "ab": misses "ba"
        let only_ab = Dfa {
            alphabet: ab.clone(),
            states: vec!["0".into(), "1".into(), "2".into(), "dead".into()],
            initial: 0,
            accepting: vec![false, false, true, false],
            transitions: vec![vec![1, 3], vec![3, 2], vec![3, 3], vec![3, 3]],
        };
        let dec = covers_perfect_pangrams(&dfa_machine(only_ab), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
        assert_eq!(ab.render_compact(&dec.witness.unwrap()), "ba");
    }

    #[test]
    fn inclusion_examples() {
        let ab = Alphabet::of_chars("ab");
        let p = pangram_dfa(&ab, &caps()).unwrap();
        let dec = all_pangrams(&dfa_machine(p.clone()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);

        let dec = all_perfect_pangrams(&dfa_machine(p.clone()), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
        let w = dec.witness.unwrap();
        assert!(p.accepts(&w).unwrap());
        assert!(!is_perfect_pangram(&w, &ab).unwrap());

        let e = perfect_pangram_dfa(&ab, &caps()).unwrap();
        assert_eq!(all_pangrams(&dfa_machine(e.clone()), &caps()).unwrap().answer, Answer::Yes);
        assert_eq!(all_perfect_pangrams(&dfa_machine(e), &caps()).unwrap().answer, Answer::Yes);

        let dec = all_pangrams(&dfa_machine(not_exact_length_dfa(&ab, 2)), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::No);
        let w = dec.witness.unwrap();
        assert!(!is_pangram(&w, &ab).unwrap());
    }

    #[test]
    fn slt_and_spt_dispatch_agrees_with_dfa_route() {
        let abc = Alphabet::of_chars("abc");
        let words = |ws: &[&str]| -> BTreeSet<Word> {
            ws.iter().map(|w| abc.word_from_str(w).unwrap()).collect()
        };
        let s = SltSpec::new(
            2,
            abc.clone(),
            words(&["a"]),
            words(&["ab", "bc", "ca"]),
            words(&["c"]),
        )
        .unwrap();
        let via_slt = contains_pangram(&Machine::untagged(Acceptor::Slt(s.clone())).unwrap(), &caps()).unwrap();
        let via_dfa = contains_pangram(&dfa_machine(slt_to_dfa(&s, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(via_slt.answer.holds(), via_dfa.answer.holds());
        let w = via_slt.witness.unwrap();
        assert!(slt_member(&s, &w).unwrap());
        assert!(is_pangram(&w, &abc).unwrap());

        let s = SptSpec::new(2, abc.clone(), words(&["ab"])).unwrap();
        let via_spt = contains_pangram(&Machine::untagged(Acceptor::Spt(s.clone())).unwrap(), &caps()).unwrap();
        let via_dfa = contains_pangram(&dfa_machine(spt_to_dfa(&s, &caps()).unwrap()), &caps()).unwrap();
        assert_eq!(via_spt.answer.holds(), via_dfa.answer.holds());
        // SPT with a 3-letter forbidden word goes through permutation search
        let s = SptSpec::new(3, abc.clone(), words(&["abc"])).unwrap();
        let dec = contains_pangram(&Machine::untagged(Acceptor::Spt(s.clone())).unwrap(), &caps()).unwrap();
        assert_eq!(dec.answer, Answer::Yes);
        let w = dec.witness.unwrap();
        assert!(spt_member(&s, &w).unwrap());
        assert!(is_pangram(&w, &abc).unwrap());
    }

    #[test]
    fn dispatcher_matches_direct_calls() {
        let ab = Alphabet::of_chars("ab");
        let m = dfa_machine(pangram_dfa(&ab, &caps()).unwrap());
        for p in Problem::ALL {
            let dec = decide(&m, p, &caps()).unwrap();
            assert!(dec.answer.holds().is_some(), "{p:?}");
        }
        assert_eq!(Problem::from_name("covers-pangrams"), Some(Problem::CoversPangrams));
        assert_eq!(Problem::from_name("nope"), None);
    }
}
