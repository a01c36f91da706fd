//! A rewriting engine for two-sided ideals of path algebras.
//!
//! Relations are completed to a confluent rewriting system by resolving
//! overlap ambiguities in ascending degree (noncommutative Buchberger /
//! Knuth-Bendix on path words). Rules rewrite the deg-lex leading word of a
//! relation to minus its tail, so every rewriting step strictly decreases
//! the word multiset and normal forms are canonical once the pair queue is
//! drained.

use crate::error::{Error, Result};
use crate::quiver::{LinComb, PathWord, Quiver};
use crate::scalar::FieldSpec;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: PathWord,
    pub rhs: LinComb,
    active: bool,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    field: FieldSpec,
    quiver: Quiver,
    rules: Vec<Rule>,
}

/// Overlap ambiguity between rules `a` and `b`: the last `t` letters of
/// `lhs(a)` equal the first `t` letters of `lhs(b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: usize,
    a: usize,
    b: usize,
    t: usize,
}

impl RewriteSystem {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn active_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.active)
    }

    fn seq_to_word(&self, seq: &[usize], fallback_vertex: usize) -> PathWord {
        if seq.is_empty() {
            PathWord::trivial(fallback_vertex)
        } else {
            PathWord::from_arrows(&self.quiver, seq.to_vec()).expect("subpath is composable")
        }
    }

    /// First (rule, position) whose lhs occurs in `w`, scanning positions
    /// left to right in application order, rules in insertion order.
    fn find_occurrence(&self, w: &PathWord) -> Option<(usize, usize)> {
        let seq = w.arrows();
        for pos in 0..seq.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                if !rule.active {
                    continue;
                }
                let l = rule.lhs.arrows();
                if l.len() <= seq.len() - pos && &seq[pos..pos + l.len()] == l {
                    return Some((ri, pos));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &PathWord) -> bool {
        self.find_occurrence(w).is_none()
    }

    /// Replace the occurrence of `rules[ri].lhs` at `pos` inside `w`.
    fn rewrite_at(&self, w: &PathWord, ri: usize, pos: usize) -> LinComb {
        let f = self.field;
        let rule = &self.rules[ri];
        let seq = w.arrows();
        let llen = rule.lhs.arrows().len();
        let pre = self.seq_to_word(&seq[..pos], rule.lhs.source());
        let suf = self.seq_to_word(&seq[pos + llen..], rule.lhs.target());
        LinComb::single(suf, f.one())
            .mul(f, &rule.rhs)
            .mul(f, &LinComb::single(pre, f.one()))
    }

    /// Canonical representative modulo the ideal (once the system is
    /// confluent). Idempotent for any rule set: repeated application
    /// strictly decreases the word multiset.
    pub fn normal_form(&self, x: &LinComb) -> LinComb {
        let f = self.field;
        let mut current = x.clone();
        loop {
            let mut hit = None;
            for (w, c) in current.terms() {
                if let Some((ri, pos)) = self.find_occurrence(w) {
                    hit = Some((w.clone(), c.clone(), ri, pos));
                    break;
                }
            }
            let Some((w, c, ri, pos)) = hit else {
                return current;
            };
            let replaced = self.rewrite_at(&w, ri, pos).scale(f, &c);
            let without = current.sub(f, &LinComb::single(w, c));
            current = without.add(f, &replaced);
        }
    }

    pub fn normal_form_word(&self, w: &PathWord) -> LinComb {
        self.normal_form(&LinComb::single(w.clone(), self.field.one()))
    }

    fn lincomb_of_rule(&self, ri: usize) -> LinComb {
        let f = self.field;
        let rule = &self.rules[ri];
        LinComb::single(rule.lhs.clone(), f.one()).sub(f, &rule.rhs)
    }

    fn enqueue_pairs(&self, heap: &mut BinaryHeap<Reverse<Pair>>, new_idx: usize) {
        let new_lhs = self.rules[new_idx].lhs.arrows().to_vec();
        for (ri, rule) in self.rules.iter().enumerate() {
            if !rule.active {
                continue;
            }
            let other = rule.lhs.arrows();
            // new followed by other
            for t in 1..new_lhs.len().min(other.len()).max(1) {
                if t < new_lhs.len() && t <= other.len() && new_lhs[new_lhs.len() - t..] == other[..t]
                {
                    let degree = new_lhs.len() + other.len() - t;
                    heap.push(Reverse(Pair {
                        degree,
                        a: new_idx,
                        b: ri,
                        t,
                    }));
                }
            }
            if ri != new_idx {
                // other followed by new
                for t in 1..other.len().min(new_lhs.len()).max(1) {
                    if t < other.len() && t <= new_lhs.len() && other[other.len() - t..] == new_lhs[..t]
                    {
                        let degree = other.len() + new_lhs.len() - t;
                        heap.push(Reverse(Pair {
                            degree,
                            a: ri,
                            b: new_idx,
                            t,
                        }));
                    }
                }
            }
        }
    }

    /// Insert a relation: normalise, make monic, retire rules whose lhs
    /// became reducible, keep all right-hand sides reduced.
    fn insert_relation(
        &mut self,
        rel: &LinComb,
        pending: &mut VecDeque<LinComb>,
        heap: &mut BinaryHeap<Reverse<Pair>>,
    ) -> Result<()> {
        let f = self.field;
        let nf = self.normal_form(rel);
        if nf.is_zero() {
            return Ok(());
        }
        if let Some((w, _)) = nf.terms().iter().find(|(w, _)| w.len() < 2) {
            return Err(Error::NotAdmissible(format!(
                "relation involves the short word `{}` (ideal not inside the arrow ideal squared)",
                w.display(&self.quiver)
            )));
        }
        let (lead, lc) = nf.leading().cloned().expect("nonzero");
        let inv = f.inv(&lc).expect("leading coefficient nonzero");
        let monic = nf.scale(f, &inv);
        let rhs = LinComb::single(lead.clone(), f.one())
            .sub(f, &monic);
        let new_idx = self.rules.len();
        // retire any rule whose lhs contains the new lhs as a subword
        let new_seq = lead.arrows().to_vec();
        let mut retired = Vec::new();
        for (ri, rule) in self.rules.iter().enumerate() {
            if !rule.active {
                continue;
            }
            let seq = rule.lhs.arrows();
            let contains = seq.len() >= new_seq.len()
                && (0..=seq.len() - new_seq.len()).any(|p| seq[p..p + new_seq.len()] == new_seq[..]);
            if contains {
                retired.push(ri);
            }
        }
        for ri in &retired {
            pending.push_back(self.lincomb_of_rule(*ri));
        }
        for ri in retired {
            self.rules[ri].active = false;
        }
        self.rules.push(Rule {
            lhs: lead,
            rhs,
            active: true,
        });
        // keep right-hand sides reduced with respect to the enlarged system
        for ri in 0..new_idx {
            if !self.rules[ri].active {
                continue;
            }
            let rhs = self.rules[ri].rhs.clone();
            let reduced = self.normal_form(&rhs);
            if reduced != rhs {
                self.rules[ri].rhs = reduced;
            }
        }
        self.enqueue_pairs(heap, new_idx);
        Ok(())
    }

    fn resolve_pair(&self, pair: Pair) -> Option<LinComb> {
        let f = self.field;
        let (ra, rb) = (&self.rules[pair.a], &self.rules[pair.b]);
        let ua = ra.lhs.arrows();
        let ub = rb.lhs.arrows();
        // ambiguity word w = ua ++ ub[t..]
        let mut seq = ua.to_vec();
        seq.extend_from_slice(&ub[pair.t..]);
        // reduce via rule a at position 0
        let suf_a = self.seq_to_word(&seq[ua.len()..], ra.lhs.target());
        let via_a = LinComb::single(suf_a, f.one()).mul(f, &ra.rhs);
        // reduce via rule b at position |ua| - t
        let pre_b = self.seq_to_word(&seq[..ua.len() - pair.t], rb.lhs.source());
        let via_b = rb.rhs.mul(f, &LinComb::single(pre_b, f.one()));
        let diff = self.normal_form(&via_a).sub(f, &self.normal_form(&via_b));
        if diff.is_zero() {
            None
        } else {
            Some(diff)
        }
    }

    /// Complete `relations` to a confluent system. Overlap ambiguities are
    /// processed in ascending degree; a finite-dimensional (admissible)
    /// quotient always drains the queue, and the degree guard turns a
    /// runaway completion into `NotAdmissibleUpToCap`.
    pub fn complete(
        field: FieldSpec,
        quiver: Quiver,
        relations: &[LinComb],
        degree_cap: usize,
    ) -> Result<RewriteSystem> {
        let mut sys = RewriteSystem {
            field,
            quiver,
            rules: Vec::new(),
        };
        let mut pending: VecDeque<LinComb> = relations.iter().cloned().collect();
        let mut heap: BinaryHeap<Reverse<Pair>> = BinaryHeap::new();
        loop {
            if let Some(rel) = pending.pop_front() {
                sys.insert_relation(&rel, &mut pending, &mut heap)?;
                continue;
            }
            let Some(Reverse(pair)) = heap.pop() else {
                break;
            };
            if !sys.rules[pair.a].active || !sys.rules[pair.b].active {
                continue;
            }
            if pair.degree > 2 * degree_cap + 2 {
                return Err(Error::NotAdmissibleUpToCap { cap: degree_cap });
            }
            if let Some(diff) = sys.resolve_pair(pair) {
                pending.push_back(diff);
            }
        }
        Ok(sys)
    }

    /// Irreducible words by ascending degree, stopping at the first empty
    /// degree. Any longer word would contain a reducible subword, so the
    /// enumeration is complete.
    pub fn enumerate_basis(&self, degree_cap: usize) -> Result<Vec<PathWord>> {
        let mut basis: Vec<PathWord> = (0..self.quiver.vertex_count)
            .map(PathWord::trivial)
            .collect();
        let mut layer = basis.clone();
        for _deg in 1..=degree_cap {
            let mut next = Vec::new();
            for w in &layer {
                for a in self.quiver.arrows_from(w.target()) {
                    let mut seq = w.arrows().to_vec();
                    seq.push(a);
                    // only suffixes ending at the new letter can newly match
                    let reducible = self.rules.iter().any(|r| {
                        r.active && {
                            let l = r.lhs.arrows();
                            l.len() <= seq.len() && seq[seq.len() - l.len()..] == *l
                        }
                    });
                    if !reducible {
                        next.push(
                            PathWord::from_arrows(&self.quiver, seq).expect("extension composes"),
                        );
                    }
                }
            }
            if next.is_empty() {
                basis.sort_by(|x, y| x.deglex_cmp(y));
                return Ok(basis);
            }
            basis.extend(next.iter().cloned());
            layer = next;
        }
        Err(Error::NotAdmissibleUpToCap { cap: degree_cap })
    }
}
