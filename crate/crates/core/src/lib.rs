//! A structure engine for partial actions of finite groups on finite sets.
//!
//! The crate validates partial-action axioms, detects the decomposition
//! property, stratifies arbitrary finite instances, computes explicit
//! globalizations, and resolves crossed products into matrix blocks over
//! subgroup group algebras — then re-verifies every claimed isomorphism and
//! formula by realizing the algebras involved with exact rational
//! arithmetic.
//!
//! Entry points:
//!
//! * [`group`] — finite groups as Cayley tables;
//! * [`action`] + [`instance`] — the partial-action model and its file format;
//! * [`tuples`] — tuple spaces, stabilizers, coset representatives;
//! * [`decomp`] — decomposition certificates, stratification, globalization;
//! * [`structure`] — block decompositions, partial group algebras, K₀ data;
//! * [`verify`] — exact realizations and term-by-term verification;
//! * [`battery`] — deterministic random instance generators for testing.
//!
//! The companion book under `book/` walks through the concepts; its code
//! snippets compile as doctests of this crate.

pub mod action;
pub mod battery;
pub mod decomp;
pub mod group;
pub mod instance;
pub mod linalg;
pub mod structure;
pub mod tuples;
pub mod verify;

pub use action::{PartialAction, PointType, Violation};
pub use group::{FiniteGroup, Subgroup};
pub use instance::parse_instance;
pub use tuples::{enumerate_tuples, orbit_data, tuple_action, OrbitData, Tuple};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/partial-actions.md")]
    mod partial_actions {}
    #[doc = include_str!("../../../book/src/tuple-spaces.md")]
    mod tuple_spaces {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/globalization.md")]
    mod globalization {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
