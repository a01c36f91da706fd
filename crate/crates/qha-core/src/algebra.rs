//! Presented algebras `A = KQ/I` and abstract finite-dimensional algebras.
//!
//! `build_algebra` completes the relations to a confluent rewriting system,
//! enumerates the irreducible path words as a basis, certifies that the
//! arrow ideal is nilpotent in the quotient (so the ideal really is
//! admissible and the arrow ideal is the radical), and tabulates structure
//! constants. The resulting values are immutable; all operations are pure.

use crate::error::{Error, Result};
use crate::matrix::{span_basis, Mat};
use crate::quiver::{LinComb, PathWord, Quiver};
use crate::rewrite::RewriteSystem;
use crate::scalar::{FieldSpec, Scalar};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<LinComb>,
    pub degree_cap: usize,
}

pub const DEFAULT_DEGREE_CAP: usize = 64;

impl AlgebraPresentation {
    pub fn new(field: FieldSpec, quiver: Quiver, relations: Vec<LinComb>) -> Self {
        AlgebraPresentation {
            field,
            quiver,
            relations,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    /// Presentation of the opposite algebra: reversed quiver, reversed
    /// relation words.
    pub fn opposite(&self) -> AlgebraPresentation {
        AlgebraPresentation {
            field: self.field,
            quiver: self.quiver.reversed(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    LinComb::from_terms(
                        self.field,
                        r.terms()
                            .iter()
                            .map(|(w, c)| (w.reversed(), c.clone()))
                            .collect(),
                    )
                })
                .collect(),
            degree_cap: self.degree_cap,
        }
    }
}

/// A distinguished idempotent with its coordinates; `vertex` records the
/// trivial path it came from when there is one.
#[derive(Debug, Clone)]
pub struct Idempotent {
    pub coords: Vec<Scalar>,
    pub vertex: Option<usize>,
}

/// Basis, structure constants, unit and a distinguished complete set of
/// orthogonal idempotents. Houses presented algebras as well as quotients,
/// corners and endomorphism rings.
#[derive(Debug, Clone)]
pub struct FDAlgebra {
    pub field: FieldSpec,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `mult[i][j]` = coordinates of `b_i * b_j` (sparse).
    pub mult: Vec<Vec<SparseVec>>,
    pub unit: Vec<Scalar>,
    pub idempotents: Vec<Idempotent>,
    /// Basis of the Jacobson radical when the construction knows it.
    pub radical: Option<Vec<Vec<Scalar>>>,
}

impl FDAlgebra {
    pub fn zero_ring(field: FieldSpec) -> FDAlgebra {
        FDAlgebra {
            field,
            dim: 0,
            labels: Vec::new(),
            mult: Vec::new(),
            unit: Vec::new(),
            idempotents: Vec::new(),
            radical: Some(Vec::new()),
        }
    }

    pub fn is_zero_ring(&self) -> bool {
        self.dim == 0
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn mul_elems(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = self.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, m) in &self.mult[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, m));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x` on the algebra.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul_elems(x, &self.basis_vec(j)))
            .collect();
        Mat::from_fn(self.field, self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Matrix of right multiplication by `x`.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul_elems(&self.basis_vec(j), x))
            .collect();
        Mat::from_fn(self.field, self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Structural sanity: associativity on all basis triples, unit axioms,
    /// and the idempotent axioms for the distinguished set.
    pub fn verify(&self) -> Result<()> {
        let f = self.field;
        if self.dim == 0 {
            return Ok(());
        }
        for i in 0..self.dim {
            let bi = self.basis_vec(i);
            if self.mul_elems(&self.unit, &bi) != bi || self.mul_elems(&bi, &self.unit) != bi {
                return Err(Error::Invalid(format!(
                    "unit fails on basis element {}",
                    self.labels[i]
                )));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_elems(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..self.dim {
                    let left = self.mul_elems(&ij, &self.basis_vec(k));
                    let jk = self.mul_elems(&self.basis_vec(j), &self.basis_vec(k));
                    let right = self.mul_elems(&self.basis_vec(i), &jk);
                    if left != right {
                        return Err(Error::Invalid(format!(
                            "associativity fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let mut sum = self.zero_vec();
        for (a, ia) in self.idempotents.iter().enumerate() {
            if self.mul_elems(&ia.coords, &ia.coords) != ia.coords {
                return Err(Error::Invalid(format!("idempotent {a} is not idempotent")));
            }
            for (b, ib) in self.idempotents.iter().enumerate() {
                if a != b && self.mul_elems(&ia.coords, &ib.coords).iter().any(|v| !f.is_zero(v)) {
                    return Err(Error::Invalid(format!(
                        "idempotents {a} and {b} are not orthogonal"
                    )));
                }
            }
            for (k, v) in ia.coords.iter().enumerate() {
                sum[k] = f.add(&sum[k], v);
            }
        }
        if sum != self.unit {
            return Err(Error::Invalid("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// The opposite algebra: same basis, transposed structure constants.
    pub fn opposite(&self) -> FDAlgebra {
        let mult = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.mult[j][i].clone()).collect())
            .collect();
        FDAlgebra {
            field: self.field,
            dim: self.dim,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
        }
    }

    /// Basis of the centre, by solving `xb = bx` for all basis `b`.
    pub fn center_basis(&self) -> Vec<Vec<Scalar>> {
        if self.dim == 0 {
            return Vec::new();
        }
        let mut stacked: Option<Mat> = None;
        for b in 0..self.dim {
            let bv = self.basis_vec(b);
            let diff = self.left_mult_matrix(&bv).sub(&self.right_mult_matrix(&bv));
            stacked = Some(match stacked {
                None => diff,
                Some(s) => s.vstack(&diff),
            });
        }
        let (_, ker) = stacked
            .unwrap()
            .solve_and_kernel(&Mat::zeros(self.field, self.dim * self.dim, 0));
        ker.into_iter().map(|m| m.column(0)).collect()
    }

    /// Radical basis: the stored one when the construction knew it,
    /// otherwise the trace-form criterion (valid in characteristic zero or
    /// above the dimension).
    pub fn radical_or_compute(&self) -> Result<Vec<Vec<Scalar>>> {
        if let Some(r) = &self.radical {
            return Ok(r.clone());
        }
        if !self.field.trace_form_valid(self.dim) {
            return Err(Error::Invalid(
                "radical not computable: characteristic too small for the trace-form criterion"
                    .into(),
            ));
        }
        let f = self.field;
        // G[i][j] = trace of left multiplication by b_i * b_j
        let g = Mat::from_fn(f, self.dim, self.dim, |i, j| {
            let prod = self.mul_elems(&self.basis_vec(i), &self.basis_vec(j));
            let lm = self.left_mult_matrix(&prod);
            let mut tr = f.zero();
            for k in 0..self.dim {
                tr = f.add(&tr, lm.at(k, k));
            }
            tr
        });
        let (_, ker) = g
            .transpose()
            .solve_and_kernel(&Mat::zeros(f, self.dim, 0));
        Ok(ker.into_iter().map(|m| m.column(0)).collect())
    }

    /// Is the algebra local, i.e. is the radical of codimension one?
    pub fn is_local(&self) -> Result<bool> {
        Ok(self.dim > 0 && self.radical_or_compute()?.len() == self.dim - 1)
    }

    pub fn render_element(&self, x: &[Scalar]) -> String {
        let f = self.field;
        let mut parts = Vec::new();
        for (i, v) in x.iter().enumerate() {
            if !f.is_zero(v) {
                if f.is_one(v) {
                    parts.push(self.labels[i].clone());
                } else {
                    parts.push(format!("{}*{}", f.render(v), self.labels[i]));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A built algebra `KQ/I`: presentation, confluent rewriting system, path
/// basis and the structure-constant view.
#[derive(Debug)]
pub struct PresentedAlgebra {
    presentation: AlgebraPresentation,
    rewrite: RewriteSystem,
    basis: Vec<PathWord>,
    index: HashMap<PathWord, usize>,
    algebra: FDAlgebra,
    opposite_cache: OnceLock<Arc<PresentedAlgebra>>,
}

impl PresentedAlgebra {
    pub fn field(&self) -> FieldSpec {
        self.presentation.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }
    pub fn rewrite(&self) -> &RewriteSystem {
        &self.rewrite
    }
    pub fn vertex_count(&self) -> usize {
        self.presentation.quiver.vertex_count
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim
    }
    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }
    pub fn algebra(&self) -> &FDAlgebra {
        &self.algebra
    }

    pub fn word_index(&self, w: &PathWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of the trivial path at `v`; the deg-lex sort puts them first.
    pub fn vertex_idempotent_index(&self, v: usize) -> usize {
        debug_assert!(self.basis[v] == PathWord::trivial(v));
        v
    }

    fn validate_lincomb(&self, x: &LinComb) -> Result<()> {
        for (w, _) in x.terms() {
            for &a in w.arrows() {
                if a >= self.quiver().arrows.len() {
                    return Err(Error::UnknownArrow(format!("arrow index {a}")));
                }
            }
            if w.source() >= self.vertex_count() || w.target() >= self.vertex_count() {
                return Err(Error::Invalid("vertex out of range".into()));
            }
            // re-derive the path against this quiver: a word built over a
            // different quiver may carry stale endpoints
            if !w.is_trivial() {
                let rebuilt = PathWord::from_arrows(self.quiver(), w.arrows().to_vec())?;
                if rebuilt != *w {
                    return Err(Error::Invalid(
                        "path word does not compose in this quiver".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The unique representative of `x` modulo the ideal, in the span of
    /// irreducible words.
    pub fn normal_form(&self, x: &LinComb) -> Result<LinComb> {
        self.validate_lincomb(x)?;
        Ok(self.rewrite.normal_form(x))
    }

    /// Coordinates in the path basis (normalising first).
    pub fn coords(&self, x: &LinComb) -> Result<Vec<Scalar>> {
        let nf = self.normal_form(x)?;
        let mut v = vec![self.field().zero(); self.dim()];
        for (w, c) in nf.terms() {
            let idx = self
                .index
                .get(w)
                .copied()
                .expect("normal form lies in the basis span");
            v[idx] = c.clone();
        }
        Ok(v)
    }

    pub fn lincomb_from_coords(&self, v: &[Scalar]) -> LinComb {
        LinComb::from_terms(
            self.field(),
            v.iter()
                .enumerate()
                .filter(|(_, c)| !self.field().is_zero(c))
                .map(|(i, c)| (self.basis[i].clone(), c.clone()))
                .collect(),
        )
    }

    /// The opposite algebra as a presented algebra (reversed quiver and
    /// relations), built on first use and cached.
    pub fn opposite(self: &Arc<Self>) -> Arc<PresentedAlgebra> {
        self.opposite_cache
            .get_or_init(|| {
                let op = build_algebra(self.presentation.opposite())
                    .expect("opposite of an admissible presentation is admissible");
                debug_assert_eq!(op.dim(), self.dim());
                op
            })
            .clone()
    }

    /// Structural check that `other` presents the opposite algebra.
    pub fn is_opposite_of(&self, other: &PresentedAlgebra) -> bool {
        self.presentation == other.presentation.opposite()
    }

    pub fn same_presentation(&self, other: &PresentedAlgebra) -> bool {
        self.presentation == other.presentation
    }

    /// Basis indices of words with the given source vertex, in basis order.
    pub fn words_with_source(&self, v: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source() == v)
            .collect()
    }

    /// Basis indices of words with the given target vertex.
    pub fn words_with_target(&self, v: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].target() == v)
            .collect()
    }
}

/// Build `KQ/I`: complete the rewriting system, enumerate the basis,
/// certify admissibility, tabulate structure constants.
pub fn build_algebra(p: AlgebraPresentation) -> Result<Arc<PresentedAlgebra>> {
    let f = p.field;
    for rel in &p.relations {
        if rel.is_zero() {
            return Err(Error::Invalid("zero relation".into()));
        }
        if rel.uniform_endpoints().is_none() {
            return Err(Error::Invalid(format!(
                "relation `{}` mixes sources or targets",
                rel.display(f, &p.quiver)
            )));
        }
        if let Some((w, _)) = rel.terms().iter().find(|(w, _)| w.len() < 2) {
            return Err(Error::NotAdmissible(format!(
                "relation has component `{}` of length < 2",
                w.display(&p.quiver)
            )));
        }
    }
    let rewrite = RewriteSystem::complete(f, p.quiver.clone(), &p.relations, p.degree_cap)?;
    let basis = rewrite.enumerate_basis(p.degree_cap)?;
    let index: HashMap<PathWord, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let dim = basis.len();
    let n = p.quiver.vertex_count;

    let coords_of = |x: &LinComb| -> Vec<Scalar> {
        let mut v = vec![f.zero(); dim];
        for (w, c) in x.terms() {
            v[*index.get(w).expect("irreducible word")] = c.clone();
        }
        v
    };

    // Certify nilpotency of the arrow ideal: with d the first empty degree,
    // the span of normal forms of degree-d products of arrows must vanish.
    // This is what makes the trivial paths a complete set of primitive
    // orthogonal idempotents and the arrow ideal the radical.
    let first_empty_degree = basis.iter().map(|w| w.len()).max().unwrap_or(0) + 1;
    {
        let mut layer: Vec<Vec<Scalar>> = (0..p.quiver.arrows.len())
            .map(|a| {
                let w = PathWord::from_arrows(&p.quiver, vec![a]).expect("arrow is a path");
                coords_of(&rewrite.normal_form_word(&w))
            })
            .collect();
        for _deg in 2..=first_empty_degree {
            let mut products = Vec::new();
            for x in &layer {
                for a in 0..p.quiver.arrows.len() {
                    let aw = PathWord::from_arrows(&p.quiver, vec![a]).unwrap();
                    let elem = LinComb::from_terms(
                        f,
                        x.iter()
                            .enumerate()
                            .filter(|(_, c)| !f.is_zero(c))
                            .map(|(i, c)| (basis[i].clone(), c.clone()))
                            .collect(),
                    );
                    let prod = LinComb::single(aw, f.one()).mul(f, &elem);
                    products.push(coords_of(&rewrite.normal_form(&prod)));
                }
            }
            let b = span_basis(f, dim, &products);
            layer = (0..b.cols()).map(|c| b.column(c)).collect();
            if layer.is_empty() {
                break;
            }
        }
        if !layer.is_empty() {
            return Err(Error::NotAdmissible(format!(
                "the arrow ideal is not nilpotent: words of degree {first_empty_degree} do not \
                 vanish in the quotient"
            )));
        }
    }

    // Every input relation must normalise to zero (consistency of the
    // completed system with the ideal).
    for rel in &p.relations {
        if !rewrite.normal_form(rel).is_zero() {
            return Err(Error::Invalid(
                "internal: input relation does not normalise to zero".into(),
            ));
        }
    }

    // structure constants by multiply-then-normalise
    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if basis[i].source() != basis[j].target() {
                continue;
            }
            let prod = LinComb::single(basis[i].clone(), f.one())
                .mul(f, &LinComb::single(basis[j].clone(), f.one()));
            let nf = rewrite.normal_form(&prod);
            mult[i][j] = nf
                .terms()
                .iter()
                .map(|(w, c)| (*index.get(w).expect("irreducible"), c.clone()))
                .collect();
        }
    }

    let mut unit = vec![f.zero(); dim];
    let mut idempotents = Vec::new();
    for v in 0..n {
        let idx = *index.get(&PathWord::trivial(v)).expect("trivial path");
        unit[idx] = f.one();
        let mut coords = vec![f.zero(); dim];
        coords[idx] = f.one();
        idempotents.push(Idempotent {
            coords,
            vertex: Some(v),
        });
    }
    let radical: Vec<Vec<Scalar>> = (0..dim)
        .filter(|&i| basis[i].len() >= 1)
        .map(|i| {
            let mut v = vec![f.zero(); dim];
            v[i] = f.one();
            v
        })
        .collect();

    let algebra = FDAlgebra {
        field: f,
        dim,
        labels: basis.iter().map(|w| w.display(&p.quiver)).collect(),
        mult,
        unit,
        idempotents,
        radical: Some(radical),
    };
    algebra.verify()?;

    Ok(Arc::new(PresentedAlgebra {
        presentation: p,
        rewrite,
        basis,
        index,
        algebra,
        opposite_cache: OnceLock::new(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;

    fn f() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub(crate) fn line_with_ba() -> AlgebraPresentation {
        let q = Quiver::new(
            3,
            vec![
                Arrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                },
                Arrow {
                    name: "b".into(),
                    source: 1,
                    target: 2,
                },
            ],
        )
        .unwrap();
        let ba = PathWord::from_arrows(&q, vec![0, 1]).unwrap();
        AlgebraPresentation::new(f(), q, vec![LinComb::single(ba, f().one())])
    }

    pub(crate) fn two_vertex_bab() -> AlgebraPresentation {
        let q = Quiver::new(
            2,
            vec![
                Arrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                },
                Arrow {
                    name: "b".into(),
                    source: 1,
                    target: 0,
                },
            ],
        )
        .unwrap();
        let bab = PathWord::from_arrows(&q, vec![1, 0, 1]).unwrap();
        AlgebraPresentation::new(f(), q, vec![LinComb::single(bab, f().one())])
    }

    pub(crate) fn triangle_ba() -> AlgebraPresentation {
        // g: 1->2, a: 1->3, b: 3->2, relation b*a
        let q = Quiver::new(
            3,
            vec![
                Arrow {
                    name: "g".into(),
                    source: 0,
                    target: 1,
                },
                Arrow {
                    name: "a".into(),
                    source: 0,
                    target: 2,
                },
                Arrow {
                    name: "b".into(),
                    source: 2,
                    target: 1,
                },
            ],
        )
        .unwrap();
        let ba = PathWord::from_arrows(&q, vec![1, 2]).unwrap();
        AlgebraPresentation::new(f(), q, vec![LinComb::single(ba, f().one())])
    }

    #[test]
    fn line_algebra_has_dimension_five() {
        let a = build_algebra(line_with_ba()).unwrap();
        assert_eq!(a.dim(), 5);
        let labels: Vec<&str> = a.algebra().labels.iter().map(|s| s.as_str()).collect();
        assert_eq!(labels, vec!["e1", "e2", "e3", "a", "b"]);
    }

    #[test]
    fn triangle_algebra_has_dimension_six() {
        let a = build_algebra(triangle_ba()).unwrap();
        assert_eq!(a.dim(), 6);
    }

    #[test]
    fn two_vertex_algebra_has_dimension_seven() {
        let a = build_algebra(two_vertex_bab()).unwrap();
        assert_eq!(a.dim(), 7);
        let labels: Vec<&str> = a.algebra().labels.iter().map(|s| s.as_str()).collect();
        assert_eq!(labels, vec!["e1", "e2", "a", "b", "b*a", "a*b", "a*b*a"]);
    }

    #[test]
    fn opposite_is_involutive_on_structure_constants() {
        let a = build_algebra(two_vertex_bab()).unwrap();
        let op = a.algebra().opposite();
        op.verify().unwrap();
        let back = op.opposite();
        assert_eq!(back.mult, a.algebra().mult);
        assert_eq!(op.dim, 7);
    }

    #[test]
    fn presented_opposite_has_equal_dimension() {
        let a = build_algebra(line_with_ba()).unwrap();
        let op = a.opposite();
        assert_eq!(op.dim(), 5);
        assert!(a.is_opposite_of(&op));
        assert!(op.is_opposite_of(&a));
    }

    #[test]
    fn commutative_product_algebra_is_its_own_opposite() {
        // K x K: two vertices, no arrows
        let q = Quiver::new(2, vec![]).unwrap();
        let a = build_algebra(AlgebraPresentation::new(f(), q, vec![])).unwrap();
        assert_eq!(a.dim(), 2);
        let op = a.algebra().opposite();
        assert_eq!(op.mult, a.algebra().mult);
    }

    #[test]
    fn relations_normalise_to_zero_in_built_algebra() {
        for pres in [line_with_ba(), two_vertex_bab(), triangle_ba()] {
            let a = build_algebra(pres.clone()).unwrap();
            for rel in &pres.relations {
                assert!(a.normal_form(rel).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_unknown_arrows_are_rejected() {
        let a = build_algebra(line_with_ba()).unwrap();
        let q = a.quiver().clone();
        let ba = PathWord::from_arrows(&q, vec![0, 1]).unwrap();
        let x = LinComb::single(ba, f().one());
        let nf = a.normal_form(&x).unwrap();
        assert!(nf.is_zero());
        assert_eq!(a.normal_form(&nf).unwrap(), nf);
        // a lincomb referencing an arrow index that does not exist
        let other = two_vertex_bab();
        let rogue = PathWord::from_arrows(&other.quiver, vec![1, 0, 1]).unwrap();
        let err = a.normal_form(&LinComb::single(rogue, f().one()));
        assert!(matches!(err, Err(Error::Invalid(_)) | Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn nilpotency_certification_rejects_f_d_but_non_admissible_quotients() {
        // one loop x with relation x^3 - x^5: the quotient is
        // finite-dimensional but x^N never vanishes, so the ideal is not
        // admissible and the build must refuse it.
        let q = Quiver::new(
            1,
            vec![Arrow {
                name: "x".into(),
                source: 0,
                target: 0,
            }],
        )
        .unwrap();
        let x3 = PathWord::from_arrows(&q, vec![0, 0, 0]).unwrap();
        let x5 = PathWord::from_arrows(&q, vec![0, 0, 0, 0, 0]).unwrap();
        let rel = LinComb::from_terms(
            f(),
            vec![(x5, f().one()), (x3, f().from_i64(-1))],
        );
        let err = build_algebra(AlgebraPresentation::new(f(), q, vec![rel]));
        assert!(matches!(err, Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn dimension_matches_sum_of_corner_dimensions() {
        let a = build_algebra(two_vertex_bab()).unwrap();
        let mut total = 0;
        for i in 0..a.vertex_count() {
            for j in 0..a.vertex_count() {
                total += a
                    .basis()
                    .iter()
                    .filter(|w| w.source() == i && w.target() == j)
                    .count();
            }
        }
        assert_eq!(total, a.dim());
    }
}
