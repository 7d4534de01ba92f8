//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use qcells_core::{CartanDatum, PBWContext, RewriteSystem, Sign, DEFAULT_DEGREE_CAP};

pub fn datum(name: &str) -> CartanDatum {
    name.parse().expect("benchmark types are valid")
}

/// A fresh context, so no graded piece is cached yet.
pub fn context(name: &str, word: &[usize], sign: Sign) -> PBWContext {
    let sys = Arc::new(RewriteSystem::new(datum(name), DEFAULT_DEGREE_CAP));
    PBWContext::new(sys, word, sign).expect("benchmark words are reduced")
}
