//! Exact computation in finitely presented right-LCM monoids.
//!
//! The crate works with homogeneous presentations: every relation equates
//! two words of the same length, so equivalence classes of words are
//! finite and the word problem is solved by exhaustive rewriting. On top
//! of that decision procedure it builds
//!
//! * balls of bounded word length with full divisibility data
//!   ([`ball::Ball`]),
//! * least common multiple computations for principal right ideals,
//!   returning certified results rather than bare elements
//!   ([`lcm`]),
//! * checks that a parabolic submonoid sits inside the ambient monoid
//!   compatibly with the ideal structure ([`inclusions`]),
//! * exact rational linear algebra for representation checks
//!   ([`matrix`], [`replab`]): Nica covariance, the Wick relation on a
//!   truncated left regular representation, and a positivity functional
//!   deciding dilation of a contractive family,
//! * the amenability classification of Artin monoids by their Coxeter
//!   matrix ([`artin`]).
//!
//! Everything is computed in exact arithmetic. Checks on truncations
//! return three-valued [`verdict::Verdict`]s so that bounded evidence is
//! never reported as proof.
//!
//! The crate is `no_std` with `alloc`; IO, file formats and the command
//! line front end live in the companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod artin;
pub mod ball;
pub mod bitset;
pub mod inclusions;
pub mod lcm;
pub mod matrix;
pub mod presentation;
pub mod replab;
pub mod verdict;
pub mod word;

pub use ball::{Ball, Element, ElementId};
pub use presentation::{
    ClassCapExceeded, CoxeterEntry, CoxeterMatrix, HomogeneousPresentation, SimplicialGraph,
    DEFAULT_CLASS_CAP,
};
pub use verdict::Verdict;
pub use word::{Letter, Word};
