//! Exact tools for the tropical rank of a finitely presented group along a
//! character `φ: G → ℤ`.
//!
//! * [`presentations`]: free-group words, presentations and their text format.
//! * [`abelianize`]: Smith normal form, `H_1(G)`, the character lattice.
//! * [`magnus`]: Magnus rewriting into fake HNN form, Tietze simplification,
//!   the group-rank upper bound and ascending-HNN certificates.
//! * [`novikov`]: Fox calculus, Laurent matrices and the Novikov Betti number
//!   `b_1`, which bounds the rank from below.
//! * [`sigma`]: Cayley balls and connectivity evidence for the BNS invariant.

pub mod abelianize;
pub mod corpus;
pub mod magnus;
pub mod novikov;
pub mod presentations;
pub mod sigma;

mod json;

pub use abelianize::{AbelianGroup, Character, CharacterError, IntMatrix};
pub use magnus::{FakeHnn, HnnData, RankBounds, Verdict};
pub use novikov::{LaurentMatrix, LaurentPoly};
pub use presentations::{reduce_word, ParseError, Presentation, Word};
