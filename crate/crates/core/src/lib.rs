//! A checker for pseudo-Boolean proofs that may use redundance and dominance
//! strengthening, plus generators that emit such proofs.
//!
//! [`verifier::verify`] streams a proof against an OPB instance. The
//! [`generators`] module produces pigeonhole instances, lex-leader symmetry
//! breaking proofs and certified maximum-clique runs.
//!
//! ```
//! use pbdom::verifier::{verify_str, Options};
//!
//! let opb = "* #variable= 1 #constraint= 1\n1 x >= 1 ;\n";
//! let proof = "pseudo-Boolean proof version 2.0\nf 1\nconclusion NONE\nend pseudo-Boolean proof\n";
//! assert!(verify_str(opb, proof, &Options::default()).is_ok());
//! ```

pub mod derivation;
pub mod formats;
pub mod generators;
pub mod pb;
pub mod propagation;
pub mod safety;
pub mod state;
pub mod strengthening;
pub mod verifier;
