//! Systematic error-correcting codes for permutations and multi-permutations
//! under the Kendall tau metric, as used in rank-modulation storage.
//!
//! The pipeline: orderings of a ranked alphabet ([`multiset`]) carry the
//! adjacent-transposition metric ([`kendall`]); an inversion-vector
//! embedding ([`embedding`]) transports checksum codes over integer boxes
//! ([`congruence`]) into codes on orderings ([`codes`]); the systematic
//! construction ([`systematic`]) glues a partition of the information space
//! to a redundancy code, with enumerative data mapping ([`rank`]). A seeded
//! channel ([`channel`]) and exhaustive certification suites ([`verify`])
//! close the loop.

pub mod channel;
pub mod codes;
pub mod congruence;
pub mod embedding;
pub mod error;
pub mod kendall;
pub mod multiset;
pub mod rank;
pub mod systematic;
pub mod verify;

pub use error::{Error, Result};
pub use multiset::{MultiPermutation, MultiSet, Permutation};
