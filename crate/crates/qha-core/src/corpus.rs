//! The worked-example corpus, shipped as data files and embedded here so
//! the regression driver and the test suites load identical inputs.

use crate::algebra::PresentedAlgebra;
use crate::error::Result;
use crate::formats::{parse_algebra, parse_sigma};
use crate::localisation::ProjMap;
use std::sync::Arc;

pub const LINE_BA: &str = include_str!("../corpus/line_ba.alg");
pub const TRIANGLE_BA: &str = include_str!("../corpus/triangle_ba.alg");
pub const TWO_VERTEX_BAB: &str = include_str!("../corpus/two_vertex_bab.alg");
pub const LINE_FREE: &str = include_str!("../corpus/line_free.alg");
pub const CYCLE4: &str = include_str!("../corpus/cycle4.alg");
pub const KRONECKER: &str = include_str!("../corpus/kronecker.alg");
pub const TRIANGLE_GAMMA_STAR: &str = include_str!("../corpus/triangle_gamma_star.map");
pub const TWO_VERTEX_ALPHA_STAR: &str = include_str!("../corpus/two_vertex_alpha_star.map");
pub const KRONECKER_A_STAR: &str = include_str!("../corpus/kronecker_a_star.map");

/// `(name, algebra text)` for every corpus algebra.
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("line_ba", LINE_BA),
    ("triangle_ba", TRIANGLE_BA),
    ("two_vertex_bab", TWO_VERTEX_BAB),
    ("line_free", LINE_FREE),
    ("cycle4", CYCLE4),
    ("kronecker", KRONECKER),
];

pub fn build(name: &str) -> Result<Arc<PresentedAlgebra>> {
    let text = ALGEBRAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| crate::error::Error::Invalid(format!("unknown corpus algebra `{name}`")))?;
    crate::algebra::build_algebra(parse_algebra(text)?)
}

pub fn line_ba() -> Arc<PresentedAlgebra> {
    build("line_ba").unwrap()
}
pub fn triangle_ba() -> Arc<PresentedAlgebra> {
    build("triangle_ba").unwrap()
}
pub fn two_vertex_bab() -> Arc<PresentedAlgebra> {
    build("two_vertex_bab").unwrap()
}
pub fn line_free() -> Arc<PresentedAlgebra> {
    build("line_free").unwrap()
}
pub fn cycle4() -> Arc<PresentedAlgebra> {
    build("cycle4").unwrap()
}
pub fn kronecker() -> Arc<PresentedAlgebra> {
    build("kronecker").unwrap()
}

pub fn triangle_gamma_star(algebra: &Arc<PresentedAlgebra>) -> Vec<ProjMap> {
    parse_sigma(algebra, TRIANGLE_GAMMA_STAR).unwrap()
}
pub fn two_vertex_alpha_star(algebra: &Arc<PresentedAlgebra>) -> Vec<ProjMap> {
    parse_sigma(algebra, TWO_VERTEX_ALPHA_STAR).unwrap()
}
pub fn kronecker_a_star(algebra: &Arc<PresentedAlgebra>) -> Vec<ProjMap> {
    parse_sigma(algebra, KRONECKER_A_STAR).unwrap()
}
