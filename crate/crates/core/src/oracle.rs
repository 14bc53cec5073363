//! Brute-force reference implementations. Everything here works by plain
//! enumeration against a membership predicate, so it is slow but obviously
//! correct — the deciders and reductions are validated against these at
//! small scale.

use itertools::Itertools;

use crate::automata::Graph;
use crate::lang::{is_pangram, is_perfect_pangram, Alphabet, Symbol, Word};
use crate::reductions::Betweenness;
use crate::{Caps, Error, Result};

/// A membership predicate for some language over a fixed alphabet.
pub type Member<'a> = &'a dyn Fn(&[Symbol]) -> Result<bool>;

/// All words of length ≤ `max_len`, shortest first and lexicographic
/// within a length. Fails if the count would exceed the enumeration cap.
pub fn words_up_to(sigma: &Alphabet, max_len: usize, caps: &Caps) -> Result<Vec<Word>> {
    let n = sigma.len() as u64;
    let mut total: u64 = 1;
    let mut layer_size: u64 = 1;
    for _ in 0..max_len {
        layer_size = layer_size.saturating_mul(n);
        total = total.saturating_add(layer_size);
        if total > caps.enumeration {
            return Err(Error::size_limit(
                format!("enumeration of words up to length {max_len}"),
                caps.enumeration,
            ));
        }
    }
    let mut out: Vec<Word> = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * sigma.len());
        for w in &layer {
            for s in 0..sigma.len() {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// The members among all words of length ≤ `max_len`, in length-then-lex
/// order.
pub fn language_up_to(
    member: Member,
    sigma: &Alphabet,
    max_len: usize,
    caps: &Caps,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for w in words_up_to(sigma, max_len, caps)? {
        if member(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Permutations of the alphabet in lexicographic order, cap enforced.
pub fn alphabet_permutations(sigma: &Alphabet, caps: &Caps) -> Result<Vec<Word>> {
    if sigma.len() > caps.permutations {
        return Err(Error::size_limit(
            format!("alphabet of size {} for permutation enumeration", sigma.len()),
            caps.permutations as u64,
        ));
    }
    Ok((0..sigma.len()).permutations(sigma.len()).collect())
}

/// First (shortest, then lex-least) pangram member of length ≤ `max_len`,
/// if any. A `None` is only evidence up to the bound.
pub fn contains_pangram_up_to(
    member: Member,
    sigma: &Alphabet,
    max_len: usize,
    caps: &Caps,
) -> Result<Option<Word>> {
    for w in words_up_to(sigma, max_len, caps)? {
        if is_pangram(&w, sigma)? && member(&w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Lex-least perfect pangram member, if any. Exact: every perfect pangram
/// is a permutation of the alphabet.
pub fn contains_perfect_pangram_bruteforce(
    member: Member,
    sigma: &Alphabet,
    caps: &Caps,
) -> Result<Option<Word>> {
    for p in alphabet_permutations(sigma, caps)? {
        if member(&p)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// First pangram of length ≤ `max_len` *not* in the language. `None` only
/// rules out short counterexamples.
pub fn covers_pangrams_counterexample_up_to(
    member: Member,
    sigma: &Alphabet,
    max_len: usize,
    caps: &Caps,
) -> Result<Option<Word>> {
    for w in words_up_to(sigma, max_len, caps)? {
        if is_pangram(&w, sigma)? && !member(&w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Lex-least permutation missing from the language. Exact decision for
/// perfect-pangram coverage: `None` means the language covers them all.
pub fn covers_perfect_pangrams_counterexample(
    member: Member,
    sigma: &Alphabet,
    caps: &Caps,
) -> Result<Option<Word>> {
    for p in alphabet_permutations(sigma, caps)? {
        if !member(&p)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// First member of length ≤ `max_len` that is not a pangram.
pub fn all_pangrams_counterexample_up_to(
    member: Member,
    sigma: &Alphabet,
    max_len: usize,
    caps: &Caps,
) -> Result<Option<Word>> {
    for w in words_up_to(sigma, max_len, caps)? {
        if member(&w)? && !is_pangram(&w, sigma)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// First member of length ≤ `max_len` that is not a perfect pangram.
pub fn all_perfect_pangrams_counterexample_up_to(
    member: Member,
    sigma: &Alphabet,
    max_len: usize,
    caps: &Caps,
) -> Result<Option<Word>> {
    for w in words_up_to(sigma, max_len, caps)? {
        if member(&w)? && !is_perfect_pangram(&w, sigma)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Exhaustive Hamiltonian path search: tries all vertex permutations in
/// lexicographic order and returns the first path, if any.
pub fn hamiltonian_bruteforce(g: &Graph, caps: &Caps) -> Result<Option<Vec<usize>>> {
    let n = g.nodes.len();
    if n > caps.permutations {
        return Err(Error::size_limit(
            format!("graph with {n} nodes for Hamiltonian brute force"),
            caps.permutations as u64,
        ));
    }
    for p in (0..n).permutations(n) {
        if p.windows(2).all(|e| g.edges.contains(&(e[0], e[1]))) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Exhaustive betweenness search: the lexicographically least satisfying
/// order, if any.
pub fn betweenness_bruteforce(b: &Betweenness, caps: &Caps) -> Result<Option<Vec<usize>>> {
    let n = b.items.len();
    if n > caps.permutations {
        return Err(Error::size_limit(
            format!("{n} items for betweenness brute force"),
            caps.permutations as u64,
        ));
    }
    for p in (0..n).permutations(n) {
        if b.satisfied_by(&p) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::pangram_dfa;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn word_enumeration_order() {
        let ab = Alphabet::of_chars("ab");
        let words = words_up_to(&ab, 2, &caps()).unwrap();
        let rendered: Vec<String> = words.iter().map(|w| ab.render_compact(w)).collect();
        assert_eq!(rendered, vec!["ε", "a", "b", "aa", "ab", "ba", "bb"]);

        let mut tight = caps();
        tight.enumeration = 5;
        assert!(words_up_to(&ab, 2, &tight).is_err());
    }

    #[test]
    fn bruteforce_agrees_with_pangram_dfa() {
        let ab = Alphabet::of_chars("ab");
        let d = pangram_dfa(&ab, &caps()).unwrap();
        let member = |w: &[Symbol]| d.accepts(w);
        let w = contains_pangram_up_to(&member, &ab, 4, &caps()).unwrap().unwrap();
        assert_eq!(ab.render_compact(&w), "ab");
        let w = contains_perfect_pangram_bruteforce(&member, &ab, &caps()).unwrap().unwrap();
        assert_eq!(ab.render_compact(&w), "ab");
        assert!(covers_pangrams_counterexample_up_to(&member, &ab, 5, &caps()).unwrap().is_none());
        assert!(covers_perfect_pangrams_counterexample(&member, &ab, &caps()).unwrap().is_none());
        assert!(all_pangrams_counterexample_up_to(&member, &ab, 5, &caps()).unwrap().is_none());
        let w = all_perfect_pangrams_counterexample_up_to(&member, &ab, 5, &caps()).unwrap().unwrap();
        assert_eq!(ab.render_compact(&w), "aab");
    }

    #[test]
    fn hamiltonian_bruteforce_examples() {
        let g = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        assert_eq!(hamiltonian_bruteforce(&g, &caps()).unwrap(), Some(vec![0, 1, 2]));
        let g = Graph::new(vec!["a".into(), "b".into(), "c".into()], vec![(0, 1)]).unwrap();
        assert_eq!(hamiltonian_bruteforce(&g, &caps()).unwrap(), None);
        // single node: the empty-edge path exists
        let g = Graph::new(vec!["a".into()], vec![]).unwrap();
        assert_eq!(hamiltonian_bruteforce(&g, &caps()).unwrap(), Some(vec![0]));
    }

    #[test]
    fn betweenness_bruteforce_examples() {
        let b = Betweenness::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, 2)],
        )
        .unwrap();
        assert_eq!(betweenness_bruteforce(&b, &caps()).unwrap(), Some(vec![0, 1, 2]));
        let unsat = Betweenness::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, 2), (1, 2, 0), (2, 0, 1)],
        )
        .unwrap();
        assert_eq!(betweenness_bruteforce(&unsat, &caps()).unwrap(), None);
    }
}
