//! Doc-tests for the guide in `book/src`.
//!
//! mdbook cannot link snippets against workspace crates, so each chapter is
//! included here as module documentation and `cargo test --doc` runs it.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/proofs.md")]
pub mod proofs {}
#[doc = include_str!("../../../book/src/strengthening.md")]
pub mod strengthening {}
#[doc = include_str!("../../../book/src/safety.md")]
pub mod safety {}
#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}
#[doc = include_str!("../../../book/src/clique.md")]
pub mod clique {}
