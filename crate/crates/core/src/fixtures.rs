//! Frozen arrangements shipped with the library. The files live in the
//! workspace `fixtures` directory and are regenerated by the `gen_fixtures`
//! example.

use crate::arrangement::{remove_curve, Arrangement};
use crate::error::{Error, Result};
use crate::pca::from_pca;

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../../../fixtures/", $name, ".pca")))
    };
}

const FILES: &[(&str, &str)] = &[
    fixture!("two_circle"),
    fixture!("venn3"),
    fixture!("grunbaum6"),
    fixture!("figure4"),
    fixture!("chain4"),
    fixture!("prune4"),
    fixture!("chiral4"),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|f| f.0)
}

/// Raw PCA text of a fixture.
pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|f| f.0 == name).map(|f| f.1)
}

pub fn load(name: &str) -> Result<Arrangement> {
    let text = source(name).ok_or_else(|| Error::UnsupportedParameter(format!("unknown fixture {name:?}")))?;
    from_pca(text)
}

/// Every fixture, transversals removed.
pub fn all() -> Result<Vec<(&'static str, Arrangement)>> {
    FILES.iter().map(|&(n, _)| Ok((n, load_base(n)?))).collect()
}

/// A fixture without its transversal, if it carries one.
pub fn load_base(name: &str) -> Result<Arrangement> {
    let a = load(name)?;
    match a.transversal() {
        Some(c) => remove_curve(&a.with_transversal(None), c),
        None => Ok(a),
    }
}
