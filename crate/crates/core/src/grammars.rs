//! Context-free grammars: Chomsky normal form, CYK membership, emptiness
//! with shortest-derivation witnesses, downward closure, and the two
//! linear-per-letter subset checks (all members pangrams / perfect
//! pangrams).

use std::collections::{HashMap, HashSet, VecDeque};

use crate::automata::{Dfa, Nfa};
use crate::lang::{Alphabet, Symbol, Verdict, Word};
use crate::{Error, Result};

/// A right-hand-side symbol: terminal or nonterminal, both by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfgSym {
    T(Symbol),
    N(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: usize,
    pub rhs: Vec<CfgSym>,
}

#[derive(Debug, Clone)]
pub struct Cfg {
    pub terminals: Alphabet,
    pub nonterminals: Vec<String>,
    pub start: usize,
    pub rules: Vec<Rule>,
}

impl Cfg {
    /// Grammar size: total symbol count over all rules (left-hand sides
    /// included), the quantity complexity claims are stated in.
    pub fn size(&self) -> usize {
        self.rules.iter().map(|r| 1 + r.rhs.len()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, n) in self.nonterminals.iter().enumerate() {
            if self.nonterminals[..i].contains(n) {
                return Err(Error::input(format!("duplicate nonterminal `{n}`")));
            }
            if self.terminals.index_of(n).is_some() {
                return Err(Error::input(format!("nonterminal `{n}` collides with a terminal")));
            }
        }
        if self.start >= self.nonterminals.len() {
            return Err(Error::input("cfg: start nonterminal out of range"));
        }
        for r in &self.rules {
            if r.lhs >= self.nonterminals.len() {
                return Err(Error::input("cfg: rule lhs out of range"));
            }
            for sym in &r.rhs {
                match *sym {
                    CfgSym::T(t) if t >= self.terminals.len() => {
                        return Err(Error::input("cfg: rule rhs terminal out of range"))
                    }
                    CfgSym::N(n) if n >= self.nonterminals.len() => {
                        return Err(Error::input("cfg: rule rhs nonterminal out of range"))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// A grammar in Chomsky normal form. The rule set only contains shapes
/// `N → A B` and `N → a`; whether ε belongs to the language is tracked by
/// the separate flag.
#[derive(Debug, Clone)]
pub struct Cnf {
    pub cfg: Cfg,
    pub accepts_empty: bool,
}

fn fresh_name(base: &str, used: &mut HashSet<String>) -> String {
    let mut name = base.to_string();
    while used.contains(&name) {
        name.push('\'');
    }
    used.insert(name.clone());
    name
}

/// Standard TERM / BIN / DEL / UNIT pipeline. Language-equivalent modulo ε,
/// which is recorded in the returned flag.
pub fn to_cnf(g: &Cfg) -> Cnf {
    let mut nts: Vec<String> = g.nonterminals.clone();
    let mut used: HashSet<String> =
        nts.iter().cloned().chain(g.terminals.symbols().iter().cloned()).collect();
    let mut rules: Vec<Rule> = g.rules.clone();
    let mut start = g.start;

    // Fresh start when the start symbol occurs on a right-hand side.
    if rules.iter().any(|r| r.rhs.contains(&CfgSym::N(start))) {
        let name = fresh_name(&format!("{}0", g.nonterminals[g.start]), &mut used);
        nts.push(name);
        let s0 = nts.len() - 1;
        rules.insert(0, Rule { lhs: s0, rhs: vec![CfgSym::N(start)] });
        start = s0;
    }

    // TERM: terminals in long right-hand sides become proxy nonterminals.
    let mut term_proxy: HashMap<Symbol, usize> = HashMap::new();
    let mut proxy_rules: Vec<Rule> = Vec::new();
    for r in &mut rules {
        if r.rhs.len() >= 2 {
            for sym in &mut r.rhs {
                if let CfgSym::T(t) = *sym {
                    let id = *term_proxy.entry(t).or_insert_with(|| {
                        let name = fresh_name(&format!("T_{}", g.terminals.symbol(t)), &mut used);
                        nts.push(name);
                        let id = nts.len() - 1;
                        proxy_rules.push(Rule { lhs: id, rhs: vec![CfgSym::T(t)] });
                        id
                    });
                    *sym = CfgSym::N(id);
                }
            }
        }
    }
    rules.extend(proxy_rules);

    // BIN: split right-hand sides longer than two.
    let mut binned: Vec<Rule> = Vec::new();
    for r in rules {
        if r.rhs.len() <= 2 {
            binned.push(r);
            continue;
        }
        let mut lhs = r.lhs;
        let mut rest = r.rhs;
        while rest.len() > 2 {
            let first = rest.remove(0);
            let name = fresh_name(&format!("B{}", binned.len()), &mut used);
            nts.push(name);
            let cont = nts.len() - 1;
            binned.push(Rule { lhs, rhs: vec![first, CfgSym::N(cont)] });
            lhs = cont;
        }
        binned.push(Rule { lhs, rhs: rest });
    }
    let rules = binned;

    // DEL: remove ε-rules, tracking nullability of the start symbol.
    let mut nullable = vec![false; nts.len()];
    loop {
        let mut changed = false;
        for r in &rules {
            if !nullable[r.lhs]
                && r.rhs.iter().all(|s| matches!(s, CfgSym::N(n) if nullable[*n]))
            {
                nullable[r.lhs] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let accepts_empty = nullable[start];
    let mut deleted: Vec<Rule> = Vec::new();
    let mut seen: HashSet<(usize, Vec<CfgSym>)> = HashSet::new();
    for r in &rules {
        // All variants dropping any subset of nullable occurrences (rhs ≤ 2).
        let positions: Vec<usize> = r
            .rhs
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, CfgSym::N(n) if nullable[*n]))
            .map(|(i, _)| i)
            .collect();
        for mask in 0..(1u32 << positions.len()) {
            let rhs: Vec<CfgSym> = r
                .rhs
                .iter()
                .enumerate()
                .filter(|(i, _)| {
                    positions.iter().position(|p| p == i).map_or(true, |j| mask >> j & 1 == 0)
                })
                .map(|(_, &s)| s)
                .collect();
            if rhs.is_empty() {
                continue;
            }
            if seen.insert((r.lhs, rhs.clone())) {
                deleted.push(Rule { lhs: r.lhs, rhs });
            }
        }
    }
    let rules = deleted;

    // UNIT: eliminate unit rules via closure.
    let mut unit_succ: Vec<Vec<usize>> = vec![Vec::new(); nts.len()];
    for r in &rules {
        if let [CfgSym::N(m)] = r.rhs[..] {
            unit_succ[r.lhs].push(m);
        }
    }
    let mut final_rules: Vec<Rule> = Vec::new();
    let mut seen: HashSet<(usize, Vec<CfgSym>)> = HashSet::new();
    for n in 0..nts.len() {
        // closure of unit successors
        let mut closure = vec![n];
        let mut visited: HashSet<usize> = HashSet::from([n]);
        let mut i = 0;
        while i < closure.len() {
            for &m in &unit_succ[closure[i]] {
                if visited.insert(m) {
                    closure.push(m);
                }
            }
            i += 1;
        }
        for &m in &closure {
            for r in &rules {
                if r.lhs == m && !matches!(r.rhs[..], [CfgSym::N(_)]) {
                    if seen.insert((n, r.rhs.clone())) {
                        final_rules.push(Rule { lhs: n, rhs: r.rhs.clone() });
                    }
                }
            }
        }
    }

    // Only CNF shapes survive the pipeline.
    debug_assert!(final_rules
        .iter()
        .all(|r| matches!(r.rhs[..], [CfgSym::T(_)] | [CfgSym::N(_), CfgSym::N(_)])));

    Cnf {
        cfg: Cfg { terminals: g.terminals.clone(), nonterminals: nts, start, rules: final_rules },
        accepts_empty,
    }
}

/// CYK membership on a prepared CNF grammar.
pub fn cyk_member_cnf(c: &Cnf, w: &[Symbol]) -> Result<bool> {
    for &s in w {
        if s >= c.cfg.terminals.len() {
            return Err(Error::input(format!("letter index {s} outside the grammar's alphabet")));
        }
    }
    if w.is_empty() {
        return Ok(c.accepts_empty);
    }
    let n = w.len();
    let nn = c.cfg.nonterminals.len();
    let mut term_rules: Vec<Vec<usize>> = vec![Vec::new(); c.cfg.terminals.len()];
    let mut bin_rules: Vec<(usize, usize, usize)> = Vec::new();
    for r in &c.cfg.rules {
        match r.rhs[..] {
            [CfgSym::T(t)] => term_rules[t].push(r.lhs),
            [CfgSym::N(a), CfgSym::N(b)] => bin_rules.push((r.lhs, a, b)),
            _ => unreachable!("non-CNF rule in Cnf"),
        }
    }
    // table[len-1][i][nt]
    let mut table = vec![vec![vec![false; nn]; n]; n];
    for i in 0..n {
        for &lhs in &term_rules[w[i]] {
            table[0][i][lhs] = true;
        }
    }
    for len in 2..=n {
        for i in 0..=n - len {
            for &(lhs, a, b) in &bin_rules {
                if table[len - 1][i][lhs] {
                    continue;
                }
                for split in 1..len {
                    if table[split - 1][i][a] && table[len - split - 1][i + split][b] {
                        table[len - 1][i][lhs] = true;
                        break;
                    }
                }
            }
        }
    }
    Ok(table[n - 1][0][c.cfg.start])
}

/// CYK membership; converts to CNF internally.
pub fn cyk_member(g: &Cfg, w: &[Symbol]) -> Result<bool> {
    cyk_member_cnf(&to_cnf(g), w)
}

/// Minimal derivable word length per nonterminal, with the rule that
/// achieves it. Iterated relaxation; the chosen-rule graph is acyclic, so
/// witness expansion terminates.
fn min_lengths(num_nts: usize, rules: &[Rule]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut min: Vec<Option<usize>> = vec![None; num_nts];
    let mut chosen: Vec<Option<usize>> = vec![None; num_nts];
    loop {
        let mut changed = false;
        for (ri, r) in rules.iter().enumerate() {
            let mut sum = 0usize;
            let mut defined = true;
            for sym in &r.rhs {
                match *sym {
                    CfgSym::T(_) => sum += 1,
                    CfgSym::N(n) => match min[n] {
                        Some(m) => sum += m,
                        None => {
                            defined = false;
                            break;
                        }
                    },
                }
            }
            if defined && min[r.lhs].map_or(true, |cur| sum < cur) {
                min[r.lhs] = Some(sum);
                chosen[r.lhs] = Some(ri);
                changed = true;
            }
        }
        if !changed {
            return (min, chosen);
        }
    }
}

fn expand_min(rules: &[Rule], chosen: &[Option<usize>], nt: usize, out: &mut Word) {
    let r = &rules[chosen[nt].expect("expand_min on non-generating nonterminal")];
    for sym in &r.rhs {
        match *sym {
            CfgSym::T(t) => out.push(t),
            CfgSym::N(n) => expand_min(rules, chosen, n, out),
        }
    }
}

/// Emptiness of the generated language. Nonempty languages come with a
/// shortest derivable word as witness (ties resolved by rule order).
pub fn is_empty_cfg(g: &Cfg) -> Verdict {
    let (min, chosen) = min_lengths(g.nonterminals.len(), &g.rules);
    if min[g.start].is_none() {
        return Verdict::yes(None);
    }
    let mut w = Vec::new();
    expand_min(&g.rules, &chosen, g.start, &mut w);
    Verdict::no(Some(w))
}

/// Grammar for the set of subsequences of members of `L(g)`:
/// CNF plus an ε-rule for every (generating) nonterminal. Non-generating
/// nonterminals are pruned first; an ε-rule would otherwise make them
/// produce words no member of `L(g)` contains.
pub fn downward_closure(g: &Cfg) -> Cfg {
    let cnf = to_cnf(g);
    let (min, _) = min_lengths(cnf.cfg.nonterminals.len(), &cnf.cfg.rules);
    if min[cnf.cfg.start].is_none() {
        // no nonempty members; the closure is {ε} if ε is one, else empty
        let rules = if cnf.accepts_empty {
            vec![Rule { lhs: 0, rhs: Vec::new() }]
        } else {
            Vec::new()
        };
        return Cfg {
            terminals: cnf.cfg.terminals,
            nonterminals: vec![cnf.cfg.nonterminals[cnf.cfg.start].clone()],
            start: 0,
            rules,
        };
    }
    let generating = |n: usize| min[n].is_some();
    let mut rules: Vec<Rule> = cnf
        .cfg
        .rules
        .iter()
        .filter(|r| r.rhs.iter().all(|s| !matches!(s, CfgSym::N(n) if !generating(*n))))
        .cloned()
        .collect();
    for n in 0..cnf.cfg.nonterminals.len() {
        if generating(n) {
            rules.push(Rule { lhs: n, rhs: Vec::new() });
        }
    }
    Cfg { terminals: cnf.cfg.terminals, nonterminals: cnf.cfg.nonterminals, start: cnf.cfg.start, rules }
}

/// Decides `L(g) ⊆ P_Σ` by, for each letter, dropping every rule whose
/// right-hand side mentions it and testing emptiness of what remains. A
/// nonempty restriction yields a member missing that letter.
pub fn subset_of_pangrams(g: &Cfg) -> Verdict {
    for t in 0..g.terminals.len() {
        let restricted: Vec<Rule> = g
            .rules
            .iter()
            .filter(|r| !r.rhs.contains(&CfgSym::T(t)))
            .cloned()
            .collect();
        let (min, chosen) = min_lengths(g.nonterminals.len(), &restricted);
        if min[g.start].is_some() {
            let mut w = Vec::new();
            expand_min(&restricted, &chosen, g.start, &mut w);
            return Verdict::no(Some(w));
        }
    }
    Verdict::yes(None)
}

/// Keeps only rules over generating nonterminals whose left-hand side is
/// reachable from the start symbol.
fn prune_useless(g: &Cfg) -> Vec<Rule> {
    let (min, _) = min_lengths(g.nonterminals.len(), &g.rules);
    let rules: Vec<Rule> = g
        .rules
        .iter()
        .filter(|r| {
            min[r.lhs].is_some()
                && r.rhs.iter().all(|s| !matches!(s, CfgSym::N(n) if min[*n].is_none()))
        })
        .cloned()
        .collect();
    let mut reachable = vec![false; g.nonterminals.len()];
    reachable[g.start] = true;
    let mut queue = VecDeque::from([g.start]);
    while let Some(n) = queue.pop_front() {
        for r in &rules {
            if r.lhs == n {
                for sym in &r.rhs {
                    if let CfgSym::N(m) = *sym {
                        if !reachable[m] {
                            reachable[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
    }
    rules.into_iter().filter(|r| reachable[r.lhs]).collect()
}

/// Builds a word from the start symbol in which one occurrence of
/// `rules[forced].lhs` is expanded by the forced rule and everything else
/// minimally. Assumes the lhs is reachable (rules are pruned).
fn word_forcing_rule(
    g: &Cfg,
    rules: &[Rule],
    chosen: &[Option<usize>],
    forced: usize,
) -> Word {
    let target = rules[forced].lhs;
    // BFS from start over "lhs mentions nonterminal" links.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.nonterminals.len()]; // (rule, pos)
    let mut visited = vec![false; g.nonterminals.len()];
    visited[g.start] = true;
    let mut queue = VecDeque::from([g.start]);
    while let Some(n) = queue.pop_front() {
        if n == target {
            break;
        }
        for (ri, r) in rules.iter().enumerate() {
            if r.lhs != n {
                continue;
            }
            for (pos, sym) in r.rhs.iter().enumerate() {
                if let CfgSym::N(m) = *sym {
                    if !visited[m] {
                        visited[m] = true;
                        parent[m] = Some((ri, pos));
                        queue.push_back(m);
                    }
                }
            }
        }
    }
    // Chain of (rule, pos) links from start down to target.
    let mut chain: Vec<(usize, usize)> = Vec::new();
    let mut cur = target;
    while cur != g.start {
        let (ri, pos) = parent[cur].expect("target nonterminal unreachable from start");
        chain.push((ri, pos));
        cur = rules[ri].lhs;
    }
    chain.reverse();

    fn build(
        rules: &[Rule],
        chosen: &[Option<usize>],
        chain: &[(usize, usize)],
        depth: usize,
        forced: usize,
        out: &mut Word,
    ) {
        let (ri, forced_pos) = if depth == chain.len() {
            (forced, usize::MAX)
        } else {
            chain[depth]
        };
        let r = &rules[ri];
        for (pos, sym) in r.rhs.iter().enumerate() {
            match *sym {
                CfgSym::T(t) => out.push(t),
                CfgSym::N(n) => {
                    if pos == forced_pos && depth < chain.len() {
                        build(rules, chosen, chain, depth + 1, forced, out);
                    } else {
                        expand_min(rules, chosen, n, out);
                    }
                }
            }
        }
    }
    let mut w = Vec::new();
    build(rules, chosen, &chain, 0, forced, &mut w);
    w
}

/// Decides `L(g) ⊆ E_Σ`: the language must be pangram-only and every
/// member must have length `|Σ|`. Useless nonterminals are pruned first;
/// dead rules would otherwise create spurious length conflicts.
pub fn subset_of_perfect_pangrams(g: &Cfg) -> Verdict {
    let (min_all, _) = min_lengths(g.nonterminals.len(), &g.rules);
    if min_all[g.start].is_none() {
        return Verdict::yes(None); // empty language, vacuous inclusion
    }
    let sp = subset_of_pangrams(g);
    if !sp.answer {
        return sp;
    }
    let rules = prune_useless(g);
    let (min, chosen) = min_lengths(g.nonterminals.len(), &rules);
    for (ri, r) in rules.iter().enumerate() {
        let sum: usize = r
            .rhs
            .iter()
            .map(|sym| match *sym {
                CfgSym::T(_) => 1,
                CfgSym::N(n) => min[n].expect("pruned rules are generating"),
            })
            .sum();
        if sum != min[r.lhs].unwrap() {
            // Two derivable lengths for this nonterminal: at most one of the
            // two words below can have length |Σ|.
            let forced = word_forcing_rule(g, &rules, &chosen, ri);
            if forced.len() != g.terminals.len() {
                return Verdict::no(Some(forced));
            }
            let mut minimal = Vec::new();
            expand_min(&rules, &chosen, g.start, &mut minimal);
            return Verdict::no(Some(minimal));
        }
    }
    if min[g.start].unwrap() != g.terminals.len() {
        let mut w = Vec::new();
        expand_min(&rules, &chosen, g.start, &mut w);
        return Verdict::no(Some(w));
    }
    Verdict::yes(None)
}

fn state_nonterminals(
    terminals: &Alphabet,
    state_names: &[String],
    extra: usize,
) -> (Vec<String>, usize) {
    // Prefix state names so they cannot collide with terminal tokens.
    let mut prefix = "Q_".to_string();
    loop {
        let candidate: Vec<String> = state_names.iter().map(|s| format!("{prefix}{s}")).collect();
        let collides = candidate.iter().any(|n| terminals.index_of(n).is_some());
        if !collides {
            let mut names = candidate;
            let mut used: HashSet<String> =
                names.iter().cloned().chain(terminals.symbols().iter().cloned()).collect();
            for _ in 0..extra {
                names.push(fresh_name("S_start", &mut used));
            }
            return (names, state_names.len());
        }
        prefix.push('_');
    }
}

/// Right-linear grammar with one nonterminal per automaton state.
pub fn dfa_to_cfg(x: &Dfa) -> Cfg {
    let (nonterminals, _) = state_nonterminals(&x.alphabet, &x.states, 0);
    let mut rules = Vec::new();
    for q in 0..x.states.len() {
        for s in 0..x.alphabet.len() {
            rules.push(Rule { lhs: q, rhs: vec![CfgSym::T(s), CfgSym::N(x.transitions[q][s])] });
        }
        if x.accepting[q] {
            rules.push(Rule { lhs: q, rhs: Vec::new() });
        }
    }
    Cfg { terminals: x.alphabet.clone(), nonterminals, start: x.initial, rules }
}

/// Right-linear grammar for an NFA; a fresh start nonterminal branches to
/// the initial states.
pub fn nfa_to_cfg(x: &Nfa) -> Cfg {
    let (nonterminals, n) = state_nonterminals(&x.alphabet, &x.states, 1);
    let start = n; // the fresh one
    let mut rules = Vec::new();
    for &q in &x.initials {
        rules.push(Rule { lhs: start, rhs: vec![CfgSym::N(q)] });
    }
    for q in 0..n {
        for s in 0..x.alphabet.len() {
            for &t in &x.transitions[q][s] {
                rules.push(Rule { lhs: q, rhs: vec![CfgSym::T(s), CfgSym::N(t)] });
            }
        }
        if x.accepting[q] {
            rules.push(Rule { lhs: q, rhs: Vec::new() });
        }
    }
    Cfg { terminals: x.alphabet.clone(), nonterminals, start, rules }
}

/// Grammar for `w·L(g)`.
pub fn concat_word_cfg(w: &[Symbol], g: &Cfg) -> Result<Cfg> {
    for &s in w {
        if s >= g.terminals.len() {
            return Err(Error::input("concat_word_cfg: word uses a foreign letter"));
        }
    }
    let mut out = g.clone();
    let mut used: HashSet<String> =
        out.nonterminals.iter().cloned().chain(g.terminals.symbols().iter().cloned()).collect();
    let name = fresh_name("S_cat", &mut used);
    out.nonterminals.push(name);
    let s = out.nonterminals.len() - 1;
    let mut rhs: Vec<CfgSym> = w.iter().map(|&t| CfgSym::T(t)).collect();
    rhs.push(CfgSym::N(out.start));
    out.rules.push(Rule { lhs: s, rhs });
    out.start = s;
    Ok(out)
}

/// Grammar for `L(g) ∪ L(h)`; requires identical terminal alphabets.
pub fn union_cfg(g: &Cfg, h: &Cfg) -> Result<Cfg> {
    if g.terminals != h.terminals {
        return Err(Error::input("union_cfg: terminal alphabets differ"));
    }
    let mut nonterminals = g.nonterminals.clone();
    let mut used: HashSet<String> =
        nonterminals.iter().cloned().chain(g.terminals.symbols().iter().cloned()).collect();
    let offset = nonterminals.len();
    for n in &h.nonterminals {
        nonterminals.push(fresh_name(n, &mut used));
    }
    let mut rules = g.rules.clone();
    for r in &h.rules {
        rules.push(Rule {
            lhs: r.lhs + offset,
            rhs: r
                .rhs
                .iter()
                .map(|sym| match *sym {
                    CfgSym::T(t) => CfgSym::T(t),
                    CfgSym::N(n) => CfgSym::N(n + offset),
                })
                .collect(),
        });
    }
    let name = fresh_name("S_union", &mut used);
    nonterminals.push(name);
    let s = nonterminals.len() - 1;
    rules.push(Rule { lhs: s, rhs: vec![CfgSym::N(g.start)] });
    rules.push(Rule { lhs: s, rhs: vec![CfgSym::N(h.start + offset)] });
    Ok(Cfg { terminals: g.terminals.clone(), nonterminals, start: s, rules })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{pangram_dfa, is_empty_dfa};
    use crate::lang::is_subsequence;
    use crate::Caps;

    fn all_words(n: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![vec![]];
        let mut layer: Vec<Word> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..n {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// S → a S b | a b over {a, b}
    fn balanced() -> Cfg {
        let ab = Alphabet::of_chars("ab");
        Cfg {
            terminals: ab,
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(0), CfgSym::T(1)] },
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::T(1)] },
            ],
        }
    }

    #[test]
    fn cnf_preserves_membership() {
        let g = balanced();
        let cnf = to_cnf(&g);
        assert!(!cnf.accepts_empty);
        // brute-force derivation of L up to length 6: {ab, aabb, aaabbb}
        let expected = |w: &[Symbol]| {
            let s = g.terminals.render_compact(w);
            s == "ab" || s == "aabb" || s == "aaabbb"
        };
        for w in all_words(2, 6) {
            assert_eq!(cyk_member_cnf(&cnf, &w).unwrap(), expected(&w), "{w:?}");
        }
    }

    #[test]
    fn cnf_of_epsilon_only_grammar() {
        let a = Alphabet::of_chars("a");
        let g = Cfg {
            terminals: a,
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![Rule { lhs: 0, rhs: vec![] }],
        };
        let cnf = to_cnf(&g);
        assert!(cnf.accepts_empty);
        assert!(cnf.cfg.rules.is_empty());
    }

    #[test]
    fn cnf_of_cnf_shape_is_stable() {
        let a = Alphabet::of_chars("ab");
        let g = Cfg {
            terminals: a,
            nonterminals: vec!["S".into(), "A".into(), "B".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::N(1), CfgSym::N(2)] },
                Rule { lhs: 1, rhs: vec![CfgSym::T(0)] },
                Rule { lhs: 2, rhs: vec![CfgSym::T(1)] },
            ],
        };
        let cnf = to_cnf(&g);
        assert_eq!(cnf.cfg.rules.len(), 3);
        assert_eq!(cnf.cfg.nonterminals.len(), 3);
    }

    #[test]
    fn cyk_examples() {
        let g = balanced();
        assert!(cyk_member(&g, &g.terminals.word_from_str("aabb").unwrap()).unwrap());
        assert!(!cyk_member(&g, &g.terminals.word_from_str("abab").unwrap()).unwrap());
        assert!(!cyk_member(&g, &[]).unwrap());
        assert!(cyk_member(&g, &[9]).is_err());
    }

    #[test]
    fn emptiness_examples() {
        let a = Alphabet::of_chars("a");
        let no_base = Cfg {
            terminals: a.clone(),
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(0)] }],
        };
        assert_eq!(is_empty_cfg(&no_base), Verdict::yes(None));
        let single = Cfg {
            terminals: a.clone(),
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![Rule { lhs: 0, rhs: vec![CfgSym::T(0)] }],
        };
        assert_eq!(is_empty_cfg(&single), Verdict::no(Some(vec![0])));
        let ab = Alphabet::of_chars("ab");
        let two = Cfg {
            terminals: ab,
            nonterminals: vec!["S".into(), "A".into(), "B".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::N(1), CfgSym::N(2)] },
                Rule { lhs: 1, rhs: vec![CfgSym::T(0)] },
                Rule { lhs: 2, rhs: vec![CfgSym::T(1)] },
            ],
        };
        assert_eq!(is_empty_cfg(&two), Verdict::no(Some(vec![0, 1])));
    }

    fn finite_lang_cfg(words: &[&str], sigma: &Alphabet) -> Cfg {
        let rules = words
            .iter()
            .map(|w| Rule {
                lhs: 0,
                rhs: sigma.word_from_str(w).unwrap().into_iter().map(CfgSym::T).collect(),
            })
            .collect();
        Cfg { terminals: sigma.clone(), nonterminals: vec!["S".into()], start: 0, rules }
    }

    #[test]
    fn downward_closure_examples() {
        let ab = Alphabet::of_chars("ab");
        let g = finite_lang_cfg(&["ab"], &ab);
        let closure = downward_closure(&g);
        let cnf = to_cnf(&closure);
        let members: Vec<String> = all_words(2, 3)
            .into_iter()
            .filter(|w| cyk_member_cnf(&cnf, w).unwrap())
            .map(|w| ab.render_compact(&w))
            .collect();
        assert_eq!(members, vec!["ε", "a", "b", "ab"]);

        let abc = Alphabet::of_chars("abc");
        let g = finite_lang_cfg(&["abc"], &abc);
        let cnf = to_cnf(&downward_closure(&g));
        let count = all_words(3, 4).into_iter().filter(|w| cyk_member_cnf(&cnf, w).unwrap()).count();
        assert_eq!(count, 8);
    }

    #[test]
    fn downward_closure_of_empty_language_is_empty() {
        let a = Alphabet::of_chars("a");
        let g = Cfg {
            terminals: a,
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(0)] }],
        };
        let closure = downward_closure(&g);
        let cnf = to_cnf(&closure);
        for w in all_words(1, 3) {
            assert!(!cyk_member_cnf(&cnf, &w).unwrap());
        }
    }

    #[test]
    fn downward_closure_prunes_dead_branches() {
        // S → a B | c ; B has no rules. L = {c}, closure = {ε, c}.
        let abc = Alphabet::of_chars("abc");
        let g = Cfg {
            terminals: abc.clone(),
            nonterminals: vec!["S".into(), "B".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(1)] },
                Rule { lhs: 0, rhs: vec![CfgSym::T(2)] },
            ],
        };
        let cnf = to_cnf(&downward_closure(&g));
        for w in all_words(3, 3) {
            let expected = w.is_empty() || w == vec![2];
            assert_eq!(cyk_member_cnf(&cnf, &w).unwrap(), expected, "{w:?}");
        }
    }

    #[test]
    fn subset_of_pangrams_examples() {
        let abc = Alphabet::of_chars("abc");
        // S → abc | abc S: every member contains all three letters
        let g = Cfg {
            terminals: abc.clone(),
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::T(1), CfgSym::T(2)] },
                Rule {
                    lhs: 0,
                    rhs: vec![CfgSym::T(0), CfgSym::T(1), CfgSym::T(2), CfgSym::N(0)],
                },
            ],
        };
        assert_eq!(subset_of_pangrams(&g), Verdict::yes(None));

        let ab = Alphabet::of_chars("ab");
        let g = Cfg {
            terminals: ab.clone(),
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![
                Rule { lhs: 0, rhs: vec![CfgSym::T(0), CfgSym::N(0)] },
                Rule { lhs: 0, rhs: vec![CfgSym::T(0)] },
            ],
        };
        let v = subset_of_pangrams(&g);
        assert!(!v.answer);
        assert_eq!(ab.render_compact(&v.witness.unwrap()), "a");

        // empty language: vacuous
        let empty = Cfg {
            terminals: ab,
            nonterminals: vec!["S".into()],
            start: 0,
            rules: vec![],
        };
        assert_eq!(subset_of_pangrams(&empty), Verdict::yes(None));
    }

    #[test]
    fn subset_of_perfect_pangrams_examples() {
        let ab = Alphabet::of_chars("ab");
        let g = finite_lang_cfg(&["ab", "ba"], &ab);
        assert_eq!(subset_of_perfect_pangrams(&g), Verdict::yes(None));

        let g = finite_lang_cfg(&["ab", "aabb"], &ab);
        let v = subset_of_perfect_pangrams(&g);
        assert!(!v.answer);
        assert_eq!(ab.render_compact(&v.witness.unwrap()), "aabb");

        let abc = Alphabet::of_chars("abc");
        let g = finite_lang_cfg(&["ab"], &abc);
        let v = subset_of_perfect_pangrams(&g);
        assert!(!v.answer);
        assert_eq!(abc.render_compact(&v.witness.unwrap()), "ab");

        // ε in L forces a counterexample
        let mut g = finite_lang_cfg(&["ab"], &ab);
        g.rules.push(Rule { lhs: 0, rhs: vec![] });
        let v = subset_of_perfect_pangrams(&g);
        assert!(!v.answer);
        assert!(v.witness.unwrap().len() != 2);
    }

    #[test]
    fn subset_perfect_implies_subset_pangrams_on_samples() {
        let ab = Alphabet::of_chars("ab");
        for words in [vec!["ab"], vec!["ab", "ba"], vec!["a"], vec!["ab", "aab"]] {
            let g = finite_lang_cfg(&words, &ab);
            if subset_of_perfect_pangrams(&g).answer {
                assert!(subset_of_pangrams(&g).answer);
            }
        }
    }

    #[test]
    fn dfa_to_cfg_agrees_with_dfa() {
        let ab = Alphabet::of_chars("ab");
        let d = pangram_dfa(&ab, &Caps::default()).unwrap();
        let g = dfa_to_cfg(&d);
        g.validate().unwrap();
        let cnf = to_cnf(&g);
        for w in all_words(2, 4) {
            assert_eq!(cyk_member_cnf(&cnf, &w).unwrap(), d.accepts(&w).unwrap(), "{w:?}");
        }
        // ε ∈ L iff initial accepting
        let mut d2 = d.clone();
        d2.accepting[0] = true;
        assert!(cyk_member(&dfa_to_cfg(&d2), &[]).unwrap());
        // empty DFA → empty CFG
        let mut d3 = d.clone();
        d3.accepting = vec![false; d3.states.len()];
        assert!(is_empty_dfa(&d3).answer);
        assert!(is_empty_cfg(&dfa_to_cfg(&d3)).answer);
    }

    #[test]
    fn concat_and_union_examples() {
        let abc = Alphabet::of_chars("abc");
        let g = finite_lang_cfg(&["c"], &abc);
        let w = abc.word_from_str("ab").unwrap();
        let cat = concat_word_cfg(&w, &g).unwrap();
        let cnf = to_cnf(&cat);
        for v in all_words(3, 4) {
            assert_eq!(cyk_member_cnf(&cnf, &v).unwrap(), abc.render_compact(&v) == "abc", "{v:?}");
        }
        let ga = finite_lang_cfg(&["a"], &abc);
        let gb = finite_lang_cfg(&["b"], &abc);
        let u = union_cfg(&ga, &gb).unwrap();
        u.validate().unwrap();
        let cnf = to_cnf(&u);
        for v in all_words(3, 2) {
            let s = abc.render_compact(&v);
            assert_eq!(cyk_member_cnf(&cnf, &v).unwrap(), s == "a" || s == "b", "{v:?}");
        }
        let other = finite_lang_cfg(&["a"], &Alphabet::of_chars("ax"));
        assert!(union_cfg(&ga, &other).is_err());
    }
}
