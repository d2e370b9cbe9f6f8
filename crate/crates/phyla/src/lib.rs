//! Exact homological algebra for finite diagrams ("phyla") of finite-dimensional
//! algebras over a prime field F_p.
//!
//! Everything is computed with dense exact linear algebra: no floating point,
//! no randomized verdicts without a certifying rank argument. The crate is
//! layered bottom-up:
//!
//! * [`matrix`] — dense matrices over F_p (rref, kernels, solving, Kronecker),
//! * [`algebra`] — bound quiver algebras, modules, bimodules, hom and tensor,
//! * [`certificate`] — two-sided dualisability certificates for arrow bimodules,
//! * [`phylum`] — the diagram itself and the path functors along it,
//! * [`rep`] — the category of representations of a phylum,
//! * [`nakayama`] — relative Nakayama functors, translates, units and counits,
//! * [`flat`] — flattening a phylum's representations to modules over one algebra,
//! * [`ar`] — almost split sequences and catalogues over the flattened algebra,
//! * [`preproj`] — representations with back maps and their translation pairs.
//!
//! All randomness is deterministic: every sampling entry point takes a seed and
//! runs a ChaCha stream, so identical inputs produce identical outputs.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod ar;
pub mod certificate;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod flat;
pub mod matrix;
pub mod nakayama;
pub mod phylum;
pub mod preproj;
pub mod rep;
pub mod sample;

pub use error::Error;
pub use field::FieldSpec;
pub use matrix::Matrix;
