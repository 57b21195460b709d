//! Palindromic width, commutator width and quasi-homomorphism machinery.
//!
//! The crate is organised bottom-up:
//!
//! * [`free_words`]: monoid words, reduced free-group words, `tr` and `ql`.
//! * [`finite_groups`]: multiplication-table groups with labelled symmetric
//!   generating sets, plus the JSON group-spec format in [`group_spec`].
//! * [`pal_width`]: exact palindromic length and width for finite groups under
//!   the word and group palindrome notions.
//! * [`wreath`]: arithmetic in `F_n ≀ K`, the quasi-homomorphism `Δ` and
//!   commutator-length certificates.
//! * [`decompose`]: explicit palindromic decompositions in `F_2 ≀ S_3`.
//! * [`nilprod`]: 2-nilpotent products of finite abelian groups and the
//!   palindromic width bounds for them.

pub mod decompose;
pub mod error;
pub mod finite_groups;
pub mod free_words;
pub mod group_spec;
pub mod nilprod;
pub mod pal_width;
pub mod wreath;

pub use error::{Error, Result};
pub use finite_groups::{FiniteGroup, GroupOptions};
pub use free_words::{Alphabet, FreeAlphabet, FreeWord, MonoidWord, Syllable};
pub use pal_width::{Notion, WidthReport};
pub use wreath::{CommutatorCertificate, WreathElement, WreathGroup};
