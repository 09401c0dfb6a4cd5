//! Combinatorial engine for counting digons in arrangements of pairwise
//! crossing closed curves.

pub mod arrangement;
pub mod constructions;
pub mod digon;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod pca;
pub mod render;
pub mod transversal;

pub use arrangement::{Arrangement, CurveId, Dart};
pub use error::{Error, Result};
