/// Size caps and search budgets.
///
/// Every potentially exponential construction checks one of these caps and
/// fails fast with [`crate::Error::SizeLimit`] or [`crate::Error::Budget`]
/// instead of exhausting memory. All caps can be overridden (e.g. from the
/// CLI).
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum alphabet size for bitmask-based builders and searches.
    pub alphabet: usize,
    /// Maximum number of states materialized by subset-style constructions
    /// (determinization, forbidden-subsequence products).
    pub subsets: usize,
    /// Maximum alphabet size for |Σ|! permutation enumeration.
    pub permutations: usize,
    /// Maximum number of words examined by brute-force enumeration.
    pub enumeration: u64,
    /// Step budget for configuration-space searches.
    pub steps: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            alphabet: 20,
            subsets: 1 << 20,
            permutations: 10,
            enumeration: 10_000_000,
            steps: 50_000_000,
        }
    }
}
