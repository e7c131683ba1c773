//! Inputs shared by the benchmarks.

use std::sync::Arc;

use pencil_core::{Alphabet, Field, PresentedAlgebra, SCAlgebra};

pub fn xy() -> Arc<Alphabet> {
    Alphabet::uniform(&["x", "y"])
}

/// `k<x,y>/(rels)` over `Q` at degree bound `bound`.
pub fn presented(rels: &[&str], bound: u32) -> PresentedAlgebra {
    PresentedAlgebra::from_strs(&xy(), Field::Rationals, rels, bound).expect("valid presentation")
}

/// The 4-dimensional quotients used for the classifier benchmark.
pub fn frobenius_samples() -> Vec<(&'static str, SCAlgebra)> {
    [
        ("k^4", &["x^2 - 1", "y^2 - 1", "x*y - y*x"][..]),
        ("jordan", &["x*y - y*x + y^2", "x^2", "y^2"][..]),
        ("lambda", &["x*y - 2*y*x", "x^2", "y^2"][..]),
        ("matrix", &["x*y + y*x", "x^2 - 1", "y^2 - 1"][..]),
    ]
    .into_iter()
    .map(|(name, rels)| (name, SCAlgebra::from_quotient(&presented(rels, 8)).expect("finite quotient")))
    .collect()
}
