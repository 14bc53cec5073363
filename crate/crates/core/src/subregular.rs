//! Strictly locally testable and strictly piecewise testable acceptors,
//! their membership semantics, DFA conversion, and the two linear-time
//! pangram deciders for the k = 2 fragments.

use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};

use crate::automata::{Dfa, StateId};
use crate::lang::{Alphabet, Symbol, Verdict, Word};
use crate::{Caps, Error, Result};

/// A k-strictly-locally-testable acceptor: allowed prefixes of length
/// k−1, allowed length-k windows, allowed suffixes of length k−1.
///
/// Words shorter than k−1 (including ε) are non-members: no valid prefix
/// exists for them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SltSpec {
    pub k: usize,
    pub alphabet: Alphabet,
    pub prefixes: BTreeSet<Word>,
    pub infixes: BTreeSet<Word>,
    pub suffixes: BTreeSet<Word>,
}

/// A k-strictly-piecewise-testable acceptor: forbidden subsequences of
/// length ≤ k. The language is always downward closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SptSpec {
    pub k: usize,
    pub alphabet: Alphabet,
    pub forbidden: BTreeSet<Word>,
}

fn check_words(sigma: &Alphabet, words: &BTreeSet<Word>, len: Option<usize>, what: &str) -> Result<()> {
    for w in words {
        if let Some(l) = len {
            if w.len() != l {
                return Err(Error::input(format!("{what} word has length {}, expected {l}", w.len())));
            }
        }
        for &s in w {
            if s >= sigma.len() {
                return Err(Error::input(format!("{what} word uses a foreign letter")));
            }
        }
    }
    Ok(())
}

impl SltSpec {
    pub fn new(
        k: usize,
        alphabet: Alphabet,
        prefixes: BTreeSet<Word>,
        infixes: BTreeSet<Word>,
        suffixes: BTreeSet<Word>,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::input("slt: k must be at least 2"));
        }
        check_words(&alphabet, &prefixes, Some(k - 1), "prefix")?;
        check_words(&alphabet, &infixes, Some(k), "infix")?;
        check_words(&alphabet, &suffixes, Some(k - 1), "suffix")?;
        Ok(SltSpec { k, alphabet, prefixes, infixes, suffixes })
    }

    /// Acceptor size |S| + |I| + |E|.
    pub fn size(&self) -> usize {
        self.prefixes.len() + self.infixes.len() + self.suffixes.len()
    }
}

impl SptSpec {
    pub fn new(k: usize, alphabet: Alphabet, forbidden: BTreeSet<Word>) -> Result<Self> {
        if k < 1 {
            return Err(Error::input("spt: k must be at least 1"));
        }
        check_words(&alphabet, &forbidden, None, "forbidden")?;
        for w in &forbidden {
            if w.len() > k {
                return Err(Error::input(format!(
                    "forbidden word of length {} exceeds k = {k}",
                    w.len()
                )));
            }
        }
        Ok(SptSpec { k, alphabet, forbidden })
    }
}

/// Membership for an SLT acceptor: valid prefix, valid suffix, and every
/// length-k window allowed.
pub fn slt_member(s: &SltSpec, w: &[Symbol]) -> Result<bool> {
    for &c in w {
        if c >= s.alphabet.len() {
            return Err(Error::input("word uses a letter outside the acceptor's alphabet"));
        }
    }
    let k = s.k;
    if w.len() < k - 1 {
        return Ok(false);
    }
    if !s.prefixes.contains(&w[..k - 1].to_vec()) {
        return Ok(false);
    }
    if !s.suffixes.contains(&w[w.len() - (k - 1)..].to_vec()) {
        return Ok(false);
    }
    for window in w.windows(k) {
        if !s.infixes.contains(&window.to_vec()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership for an SPT acceptor: no forbidden word embeds as a
/// subsequence.
pub fn spt_member(s: &SptSpec, w: &[Symbol]) -> Result<bool> {
    for &c in w {
        if c >= s.alphabet.len() {
            return Err(Error::input("word uses a letter outside the acceptor's alphabet"));
        }
    }
    Ok(!s.forbidden.iter().any(|f| crate::lang::is_subsequence(f, w)))
}

/// Language-equivalent DFA tracking the last k−1 letters. States are the
/// read prefixes shorter than k−1, the length-(k−1) windows reached
/// through allowed prefixes/infixes, and a dead sink.
pub fn slt_to_dfa(s: &SltSpec, caps: &Caps) -> Result<Dfa> {
    let k = s.alphabet.len();
    let mut ids: HashMap<Word, StateId> = HashMap::new();
    let mut keys: Vec<Word> = Vec::new();
    let mut queue: VecDeque<Word> = VecDeque::new();
    ids.insert(Vec::new(), 0);
    keys.push(Vec::new());
    queue.push_back(Vec::new());
    let mut rows: Vec<Vec<Option<Word>>> = Vec::new(); // None = dead
    while let Some(u) = queue.pop_front() {
        let mut row: Vec<Option<Word>> = Vec::with_capacity(k);
        for c in 0..k {
            let mut v = u.clone();
            v.push(c);
            let succ = if v.len() < s.k - 1 {
                Some(v)
            } else if v.len() == s.k - 1 {
                // the prefix just completed
                if s.prefixes.contains(&v) { Some(v) } else { None }
            } else {
                // v has length k: a window check, then slide
                if s.infixes.contains(&v) { Some(v[1..].to_vec()) } else { None }
            };
            if let Some(ref w) = succ {
                if !ids.contains_key(w) {
                    if keys.len() >= caps.subsets {
                        return Err(Error::size_limit("slt_to_dfa states", caps.subsets as u64));
                    }
                    ids.insert(w.clone(), keys.len());
                    keys.push(w.clone());
                    queue.push_back(w.clone());
                }
            }
            row.push(succ);
        }
        rows.push(row);
    }
    let dead = keys.len();
    let mut states: Vec<String> = keys.iter().map(|w| s.alphabet.render_compact(w)).collect();
    states.push("dead".to_string());
    let mut accepting: Vec<bool> = keys
        .iter()
        .map(|w| w.len() == s.k - 1 && s.suffixes.contains(w))
        .collect();
    accepting.push(false);
    let mut transitions: Vec<Vec<StateId>> = rows
        .into_iter()
        .map(|row| row.into_iter().map(|succ| succ.map_or(dead, |w| ids[&w])).collect())
        .collect();
    transitions.push(vec![dead; k]);
    Ok(Dfa { alphabet: s.alphabet.clone(), states, initial: 0, accepting, transitions })
}

/// Language-equivalent DFA via the product of per-forbidden-word
/// subsequence-progress automata. Exponential in general; capped.
pub fn spt_to_dfa(s: &SptSpec, caps: &Caps) -> Result<Dfa> {
    let k = s.alphabet.len();
    let forbidden: Vec<&Word> = s.forbidden.iter().collect();
    let initial: Vec<usize> = vec![0; forbidden.len()];
    if forbidden.iter().any(|f| f.is_empty()) {
        // ε is forbidden: the language is empty
        return Ok(Dfa {
            alphabet: s.alphabet.clone(),
            states: vec!["dead".to_string()],
            initial: 0,
            accepting: vec![false],
            transitions: vec![vec![0; k]],
        });
    }
    let mut ids: HashMap<Vec<usize>, StateId> = HashMap::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    ids.insert(initial.clone(), 0);
    keys.push(initial.clone());
    queue.push_back(initial);
    let mut rows: Vec<Vec<Option<Vec<usize>>>> = Vec::new();
    while let Some(p) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let mut next = p.clone();
            let mut dead = false;
            for (i, f) in forbidden.iter().enumerate() {
                if next[i] < f.len() && f[next[i]] == c {
                    next[i] += 1;
                    if next[i] == f.len() {
                        dead = true;
                    }
                }
            }
            if dead {
                row.push(None);
            } else {
                if !ids.contains_key(&next) {
                    if keys.len() >= caps.subsets {
                        return Err(Error::size_limit("spt_to_dfa states", caps.subsets as u64));
                    }
                    ids.insert(next.clone(), keys.len());
                    keys.push(next.clone());
                    queue.push_back(next.clone());
                }
                row.push(Some(next));
            }
        }
        rows.push(row);
    }
    let dead = keys.len();
    let mut states: Vec<String> = keys
        .iter()
        .map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    states.push("dead".to_string());
    let mut accepting = vec![true; keys.len()];
    accepting.push(false);
    let mut transitions: Vec<Vec<StateId>> = rows
        .into_iter()
        .map(|row| row.into_iter().map(|succ| succ.map_or(dead, |p| ids[&p])).collect())
        .collect();
    transitions.push(vec![dead; k]);
    Ok(Dfa { alphabet: s.alphabet.clone(), states, initial: 0, accepting, transitions })
}

/// Iterative Tarjan; components are returned in topological order of the
/// condensation.
fn scc_topological(n: usize, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut comp_of = vec![usize::MAX; n];
    let mut counter = 0usize;
    // explicit DFS stack: (node, next-edge-index)
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut dfs: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut ei)) = dfs.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei];
                *ei += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    dfs.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp_of[w] = comps.len();
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
                dfs.pop();
                if let Some(&(u, _)) = dfs.last() {
                    low[u] = low[u].min(low[v]);
                }
            }
        }
    }
    // Tarjan emits components in reverse topological order.
    comps.reverse();
    for c in &mut comp_of {
        *c = comps.len() - 1 - *c;
    }
    (comp_of, comps)
}

/// Shortest path inside one component, neighbors in symbol order so ties
/// break lexicographically. Returns the node sequence from `from` to `to`
/// (inclusive); `from == to` gives a single-node path.
fn path_within(adj: &[Vec<usize>], comp_of: &[usize], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return vec![from];
    }
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    parent.insert(from, from);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if comp_of[w] == comp_of[from] && !parent.contains_key(&w) {
                parent.insert(w, v);
                if w == to {
                    let mut path = vec![to];
                    let mut cur = to;
                    while cur != from {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(w);
            }
        }
    }
    unreachable!("strongly connected component must connect its members")
}

/// Covering walk inside a strongly connected component from `entry` to
/// `exit`, visiting every node (revisits allowed).
fn covering_walk(adj: &[Vec<usize>], comp_of: &[usize], comp: &[usize], entry: usize, exit: usize) -> Vec<usize> {
    let mut walk = vec![entry];
    let mut unvisited: BTreeSet<usize> = comp.iter().copied().collect();
    unvisited.remove(&entry);
    let mut cur = entry;
    while let Some(&next) = unvisited.iter().next() {
        let path = path_within(adj, comp_of, cur, next);
        for &v in &path[1..] {
            walk.push(v);
            unvisited.remove(&v);
        }
        cur = next;
    }
    let path = path_within(adj, comp_of, cur, exit);
    walk.extend(path[1..].iter().copied());
    walk
}

/// Linear pangram decider for 2-SLT acceptors.
///
/// Sees the acceptor as a graph (nodes = alphabet, edges = allowed
/// 2-windows) and asks for a walk from a prefix node to a suffix node
/// visiting every node. Such a walk exists iff the strongly-connected
/// condensation has an edge between every consecutive pair of components
/// in its (then unique) topological order, the first component contains a
/// prefix node and the last a suffix node.
pub fn slt2_contains_pangram(s: &SltSpec) -> Result<Verdict> {
    if s.k != 2 {
        return Err(Error::input("slt2_contains_pangram requires k = 2"));
    }
    let n = s.alphabet.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for w in &s.infixes {
        adj[w[0]].push(w[1]);
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    let (comp_of, comps) = scc_topological(n, &adj);
    // consecutive components must be linked by an edge
    for i in 0..comps.len().saturating_sub(1) {
        let linked = comps[i]
            .iter()
            .any(|&v| adj[v].iter().any(|&w| comp_of[w] == i + 1));
        if !linked {
            return Ok(Verdict::no(None));
        }
    }
    let start_nodes: BTreeSet<usize> = s.prefixes.iter().map(|w| w[0]).collect();
    let end_nodes: BTreeSet<usize> = s.suffixes.iter().map(|w| w[0]).collect();
    let entry0 = match comps[0].iter().find(|v| start_nodes.contains(v)) {
        Some(&v) => v,
        None => return Ok(Verdict::no(None)),
    };
    let last = comps.len() - 1;
    if !comps[last].iter().any(|v| end_nodes.contains(v)) {
        return Ok(Verdict::no(None));
    }
    // assemble the witness walk
    let mut walk: Vec<usize> = Vec::new();
    let mut entry = entry0;
    for i in 0..comps.len() {
        let exit = if i == last {
            *comps[i].iter().find(|v| end_nodes.contains(v)).unwrap()
        } else {
            *comps[i]
                .iter()
                .find(|&&v| adj[v].iter().any(|&w| comp_of[w] == i + 1))
                .unwrap()
        };
        let segment = covering_walk(&adj, &comp_of, &comps[i], entry, exit);
        walk.extend(segment);
        if i < last {
            entry = *adj[exit]
                .iter()
                .find(|&&w| comp_of[w] == i + 1)
                .unwrap();
        }
    }
    Ok(Verdict::yes(Some(walk)))
}

/// Linear pangram decider for SPT acceptors with forbidden words of
/// length ≤ 2. Pangram and perfect pangram coincide here (the language is
/// downward closed), so the witness is always a permutation.
///
/// A forbidden pair (x, y) with x ≠ y forces x after y; self-pairs (x, x)
/// are ignored since a permutation never repeats a letter. A cycle in the
/// constraint graph rules every permutation out; otherwise the reverse of
/// the smallest-first topological order is a witness.
pub fn spt2_contains_pangram(s: &SptSpec) -> Result<Verdict> {
    if s.forbidden.iter().any(|f| f.len() > 2) {
        return Err(Error::input(
            "spt2_contains_pangram requires forbidden words of length ≤ 2; use the generic decider",
        ));
    }
    if s.forbidden.iter().any(|f| f.len() <= 1) {
        // ε or a single letter is forbidden: no pangram survives
        return Ok(Verdict::no(None));
    }
    let n = s.alphabet.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for f in &s.forbidden {
        if f[0] != f[1] {
            adj[f[0]].push(f[1]);
            indeg[f[1]] += 1;
        }
    }
    // Kahn with smallest-symbol-first tie-breaking
    let mut heap: BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(std::cmp::Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(std::cmp::Reverse(w));
            }
        }
    }
    if order.len() < n {
        return Ok(Verdict::no(None)); // cycle
    }
    order.reverse();
    Ok(Verdict::yes(Some(order)))
}
