//! Quivers, path words and linear combinations of paths.
//!
//! Composition convention: in a product written `b*a` the rightmost factor
//! acts first, so `b*a` is the path that follows `a` and then `b`. A
//! `PathWord` stores its arrows in application order (`arrows[0]` acts
//! first); the display form reverses them back to the written order.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    /// 0-based vertex indices.
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Invalid("quiver needs at least one vertex".into()));
        }
        let mut seen = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::Invalid(format!(
                    "arrow `{}` has endpoint outside 1..={vertex_count}",
                    a.name
                )));
            }
            if seen.insert(a.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate arrow name `{}`", a.name)));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// The quiver with every arrow reversed (same names, same order).
    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A path in a quiver: a trivial path at a vertex, or a composable sequence
/// of arrows stored in application order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> Self {
        PathWord {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Build from arrow indices in application order, validating
    /// composability against the quiver.
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::Invalid(
                "empty arrow list; use PathWord::trivial".into(),
            ));
        }
        for &a in &arrows {
            if a >= quiver.arrows.len() {
                return Err(Error::UnknownArrow(format!("arrow index {a}")));
            }
        }
        for w in arrows.windows(2) {
            let (first, second) = (&quiver.arrows[w[0]], &quiver.arrows[w[1]]);
            if first.target != second.source {
                return Err(Error::Invalid(format!(
                    "arrows `{}` and `{}` do not compose",
                    first.name, second.name
                )));
            }
        }
        Ok(PathWord {
            source: quiver.arrows[arrows[0]].source,
            target: quiver.arrows[*arrows.last().unwrap()].target,
            arrows,
        })
    }

    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// The same path traversed in the reversed quiver.
    pub fn reversed(&self) -> PathWord {
        PathWord {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }

    /// Concatenate with `first` acting first: the result is `self ∘ first`.
    pub fn compose_after(&self, first: &PathWord) -> Option<PathWord> {
        if first.target != self.source {
            return None;
        }
        let mut arrows = first.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Some(PathWord {
            source: first.source,
            target: self.target,
            arrows,
        })
    }

    /// Degree-lexicographic order: by length, then by arrow indices in
    /// application order; trivial paths are ordered by vertex.
    pub fn deglex_cmp(&self, other: &PathWord) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }

    /// Render using the written (rightmost-acts-first) order.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.is_trivial() {
            format!("e{}", self.source + 1)
        } else {
            self.arrows
                .iter()
                .rev()
                .map(|&a| quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A finite linear combination of path words with nonzero coefficients,
/// kept sorted in descending deg-lex order (so the leading term is first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb {
    terms: Vec<(PathWord, Scalar)>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb { terms: Vec::new() }
    }

    pub fn from_terms(field: FieldSpec, terms: Vec<(PathWord, Scalar)>) -> Self {
        let mut merged: Vec<(PathWord, Scalar)> = Vec::new();
        for (w, c) in terms {
            if field.is_zero(&c) {
                continue;
            }
            if let Some(entry) = merged.iter_mut().find(|(mw, _)| *mw == w) {
                entry.1 = field.add(&entry.1, &c);
            } else {
                merged.push((w, c));
            }
        }
        merged.retain(|(_, c)| !field.is_zero(c));
        merged.sort_by(|a, b| b.0.deglex_cmp(&a.0));
        LinComb { terms: merged }
    }

    pub fn single(w: PathWord, c: Scalar) -> Self {
        LinComb { terms: vec![(w, c)] }
    }

    pub fn terms(&self) -> &[(PathWord, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(PathWord, Scalar)> {
        self.terms.first()
    }

    pub fn add(&self, field: FieldSpec, other: &LinComb) -> LinComb {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LinComb::from_terms(field, terms)
    }

    pub fn scale(&self, field: FieldSpec, s: &Scalar) -> LinComb {
        LinComb::from_terms(
            field,
            self.terms
                .iter()
                .map(|(w, c)| (w.clone(), field.mul(c, s)))
                .collect(),
        )
    }

    pub fn neg(&self, field: FieldSpec) -> LinComb {
        self.scale(field, &field.from_i64(-1))
    }

    pub fn sub(&self, field: FieldSpec, other: &LinComb) -> LinComb {
        self.add(field, &other.neg(field))
    }

    /// Product `self * other` where `other` acts first. Non-composable
    /// term pairs contribute zero.
    pub fn mul(&self, field: FieldSpec, other: &LinComb) -> LinComb {
        let mut terms = Vec::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = u.compose_after(v) {
                    terms.push((w, field.mul(a, b)));
                }
            }
        }
        LinComb::from_terms(field, terms)
    }

    /// All terms share one source and one target (the relation invariant).
    pub fn uniform_endpoints(&self) -> Option<(usize, usize)> {
        let (first, _) = self.terms.first()?;
        let (s, t) = (first.source(), first.target());
        if self
            .terms
            .iter()
            .all(|(w, _)| w.source() == s && w.target() == t)
        {
            Some((s, t))
        } else {
            None
        }
    }

    pub fn display(&self, field: FieldSpec, quiver: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let coeff = field.render(c);
            let part = if field.is_one(c) {
                w.display(quiver)
            } else if coeff == "-1" {
                format!("-{}", w.display(quiver))
            } else {
                format!("{}*{}", coeff, w.display(quiver))
            };
            if i == 0 {
                out.push_str(&part);
            } else if part.starts_with('-') {
                out.push_str(" - ");
                out.push_str(&part[1..]);
            } else {
                out.push_str(" + ");
                out.push_str(&part);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_quiver() -> Quiver {
        // 1 --a--> 2 --b--> 3
        Quiver::new(
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
        .unwrap()
    }

    #[test]
    fn composition_is_rightmost_first() {
        let q = line_quiver();
        // b*a is the length-2 path 1 -> 3: a acts first
        let ba = PathWord::from_arrows(&q, vec![0, 1]).unwrap();
        assert_eq!(ba.source(), 0);
        assert_eq!(ba.target(), 2);
        assert_eq!(ba.display(&q), "b*a");
        // a*b does not compose
        assert!(PathWord::from_arrows(&q, vec![1, 0]).is_err());
    }

    #[test]
    fn deglex_orders_by_length_then_arrows() {
        let q = line_quiver();
        let e1 = PathWord::trivial(0);
        let a = PathWord::from_arrows(&q, vec![0]).unwrap();
        let ba = PathWord::from_arrows(&q, vec![0, 1]).unwrap();
        assert_eq!(e1.deglex_cmp(&a), Ordering::Less);
        assert_eq!(a.deglex_cmp(&ba), Ordering::Less);
        assert_eq!(ba.deglex_cmp(&ba), Ordering::Equal);
    }

    #[test]
    fn lincomb_merges_and_sorts() {
        let f = FieldSpec::Rationals;
        let q = line_quiver();
        let a = PathWord::from_arrows(&q, vec![0]).unwrap();
        let x = LinComb::from_terms(
            f,
            vec![
                (a.clone(), f.from_i64(2)),
                (a.clone(), f.from_i64(-2)),
                (PathWord::trivial(0), f.one()),
            ],
        );
        assert_eq!(x.terms().len(), 1);
        assert!(x.uniform_endpoints().is_some());
    }
}
