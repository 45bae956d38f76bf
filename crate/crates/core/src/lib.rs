//! Optimum distance flag codes over finite fields: field and matrix
//! arithmetic, subspaces and flags, spread-based constructions, a multishot
//! erasure channel and its decoder, and a text serialization format.

pub mod channel;
pub mod clique;
pub mod codes;
pub mod decoder;
pub mod error;
pub mod flags;
pub mod format;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod spreads;

pub use error::{Error, Result};
pub use flags::{Flag, FlagCode, FlagType, Provenance, StutteringFlag};
pub use geometry::Subspace;
pub use gf::PrimePowerField;
pub use linalg::MatrixFq;
pub use spreads::Spread;
