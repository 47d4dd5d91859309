//! Longest-path invariants of binary subtraction graphs.
//!
//! Starting from any non-negative integer n, draw an edge to n - 2^s for
//! every zero bit s below the top set bit. The length f(n) of the longest
//! path from n is computed here by three mutually verifying methods:
//!
//! - an exact memoized longest-path oracle over the graph ([`graph`]),
//! - the canonical-path walk, which follows one distinguished edge per
//!   step and whose length is f(n) ([`canonical`]),
//! - closed-form evaluation through Vakil pairs and per-dimension delta
//!   tables, which answers without walking and scales to inputs with
//!   millions of binary digits ([`vakil`]).
//!
//! The running maximum g(n) of f, the Steenrod length g(n) + 1 of real
//! projective spaces, frequency tables, graph exports, and a
//! cross-verification harness round out the library.

pub mod canonical;
pub mod error;
pub mod graph;
pub mod numrep;
pub mod vakil;
pub mod verify;

pub use error::{Error, Result};
pub use numrep::{parse_input, Bracket, ClassStats, Input, Nat};
