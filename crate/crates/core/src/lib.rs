//! Toolkit for pangram decision problems over finite-language acceptors.
//!
//! A *pangram* over an alphabet is a word containing every symbol at least
//! once; a *perfect pangram* contains every symbol exactly once. This crate
//! provides DFA/NFA/CFG and strictly-local / strictly-piecewise acceptors,
//! deciders for the six pangram problems (contains / covers / all, in the
//! plain and perfect variants), the classic hardness-reduction constructions
//! as executable instance transformers, and brute-force oracles for
//! desk-scale validation.

pub mod automata;
mod caps;
pub mod corpus;
pub mod deciders;
mod error;
pub mod grammars;
pub mod json;
pub mod lang;
pub mod oracle;
pub mod reductions;
pub mod subregular;

pub use caps::Caps;
pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
