//! A bounded workbench for robust hyperproperty preservation.
//!
//! The crate pairs a simply typed source calculus with iso-recursive types
//! ([`srclang`]) and an untyped target calculus ([`tgtlang`]), both emitting
//! provenance-tagged I/O traces ([`trace`]). [`compile`] erases types and
//! inserts boundary wrappers; [`backtrans`] maps target contexts back to
//! source contexts through a universal recursive type. [`criteria`] checks
//! robust preservation of hyperproperty classes by exhaustive enumeration
//! within [`Bounds`].

mod bounds;
mod error;
pub mod sexp;
pub mod trace;

pub use bounds::Bounds;
pub use error::Error;
pub mod machine;
pub mod srclang;
pub mod tgtlang;
pub mod compile;
pub mod backtrans;
pub mod criteria;
pub mod corpus;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/traces.md")]
    mod traces {}
    #[doc = include_str!("../../../book/src/languages.md")]
    mod languages {}
    #[doc = include_str!("../../../book/src/compiler.md")]
    mod compiler {}
    #[doc = include_str!("../../../book/src/backtranslation.md")]
    mod backtranslation {}
    #[doc = include_str!("../../../book/src/criteria.md")]
    mod criteria {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
