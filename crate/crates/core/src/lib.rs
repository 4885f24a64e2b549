//! Strong generic Hodge cycles of perturbed Fermat varieties.
//!
//! The crate computes dimensions and generators of the strong generic Hodge
//! cycle coefficient space for hypersurfaces x_1^{m_1} + ... + x_n^{m_n} + P(y) = 0,
//! evaluates periods over joint cycles as exact hypergeometric expressions,
//! rewrites contiguous hypergeometric combinations to closed algebraic form,
//! and certifies algebraicity numerically by LLL-based minimal polynomial
//! detection at arbitrary precision.

pub mod error;
pub mod exact;
pub mod fermat;
pub mod forms;
pub mod hodge;
pub mod hyper;

pub use error::{Error, Result};

/// CLI entry point; returns the process exit code.
pub fn cli_main() -> i32 {
    // replaced by the real dispatcher once the cli module lands
    eprintln!("shodge: command interface not yet wired");
    1
}
