//! Core engine of `termite`: a tiny functional language (lambdas,
//! constructors, labeled tuples, pattern matching, mutually recursive
//! definitions) together with an evaluator and a structural termination
//! checker.
//!
//! The checker extracts every function call with a matrix describing how
//! call arguments relate to the calling function's parameters, closes the
//! call graph under call combination, and searches the diagonals of the
//! recursive calls for a lexicographic descent.
//!
//! The crate is `no_std` (with `alloc`); IO and the command line live in
//! the companion `termite` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod checker;
pub mod eval;
pub mod extract;
pub mod relations;
pub mod syntax;
