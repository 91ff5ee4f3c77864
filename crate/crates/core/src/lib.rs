//! Surgery-diagram toolkit: combinatorial link diagrams with surgery
//! framings, exact integer linear algebra over the linking matrix, slide
//! planning with linking-number ledgers, and the invariants (Seifert form,
//! signature, Alexander polynomial, genus bounds) computable from them.

pub mod diagram;
pub mod error;
pub mod homlin;
pub mod invariants;
pub mod jsonint;
pub mod slides;
pub mod surgery;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
