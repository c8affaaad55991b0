//! Partial acceptance preorders as intersections of complete ones: closure
//! with strictness commitments, decomposition and recomposition.

mod family;
mod random;

pub use family::{decompose, decompose_with_limit, decompose_with_threads, recompose, DecomposeMode, Family};
pub use random::{random_acceptance_preorder, RandomPreorder};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::relations::ConfidenceRelation;
use crate::space::{disjoint_triples, is_subset, Event, Mask, StateSpace};

/// A weak relation with strictness commitments.
///
/// `forbidden[B][A]` records a commitment `A > B`: the edge `B ≥ A` must
/// never enter `weak`. When `frozen` is set, it is the only equivalence
/// allowed, so any weak edge outside it is committed strict.
#[derive(Clone, PartialEq, Eq)]
pub struct ConstrainedRelation {
    space: StateSpace,
    weak: BitMatrix,
    forbidden: BitMatrix,
    frozen: Option<BitMatrix>,
}

impl std::fmt::Debug for ConstrainedRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConstrainedRelation")
            .field("weak", &self.weak)
            .field("forbidden", &self.forbidden)
            .finish()
    }
}

/// Closure reached `B ≥ A` while `A > B` was committed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contradiction {
    pub ge: (Mask, Mask),
}

impl ConstrainedRelation {
    /// No comparisons and no commitments.
    pub fn empty(space: StateSpace) -> Self {
        let dim = space.event_count();
        Self {
            space,
            weak: BitMatrix::new(dim),
            forbidden: BitMatrix::new(dim),
            frozen: None,
        }
    }

    /// `rel` with its strict pairs committed.
    pub fn from_relation(rel: &ConfidenceRelation) -> Self {
        Self {
            space: rel.space().clone(),
            weak: rel.weak_matrix().clone(),
            forbidden: rel.strict_matrix().transpose(),
            frozen: None,
        }
    }

    /// Forbids any equivalence beyond those of `rel`.
    pub fn freeze_equivalence_of(mut self, rel: &ConfidenceRelation) -> Self {
        let mut eq = rel.weak_matrix().clone();
        eq.and_assign(&rel.weak_matrix().transpose());
        self.frozen = Some(eq);
        self
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn weak_matrix(&self) -> &BitMatrix {
        &self.weak
    }

    pub fn forbidden_matrix(&self) -> &BitMatrix {
        &self.forbidden
    }

    pub fn ge(&self, a: Mask, b: Mask) -> bool {
        self.weak.get(a as usize, b as usize)
    }

    /// Committed or asymmetric: `A ≥ B` and `B ≥ A` impossible or absent.
    pub fn gt(&self, a: Mask, b: Mask) -> bool {
        self.weak.get(a as usize, b as usize)
            && (self.forbidden.get(b as usize, a as usize) || !self.weak.get(b as usize, a as usize))
    }

    pub fn add_weak(&mut self, a: Event, b: Event) -> Result<()> {
        let (a, b) = (self.space.check(a)?, self.space.check(b)?);
        self.weak.set(a as usize, b as usize);
        Ok(())
    }

    pub fn add_equivalence(&mut self, a: Event, b: Event) -> Result<()> {
        self.add_weak(a, b)?;
        self.add_weak(b, a)
    }

    /// Commits `A > B`.
    pub fn add_strict(&mut self, a: Event, b: Event) -> Result<()> {
        let (a, b) = (self.space.check(a)?, self.space.check(b)?);
        self.commit(a, b);
        Ok(())
    }

    fn commit(&mut self, a: Mask, b: Mask) -> bool {
        let w = self.weak.insert(a as usize, b as usize);
        let f = self.forbidden.insert(b as usize, a as usize);
        w || f
    }

    fn contradiction(&self) -> Option<Contradiction> {
        self.weak.first_common(&self.forbidden).map(|(b, a)| Contradiction {
            ge: (b as Mask, a as Mask),
        })
    }

    /// Whether every pair of events is comparable.
    pub fn is_complete(&self) -> bool {
        self.first_incomparable().is_none()
    }

    /// First incomparable `(A, B)`, `A < B`, in canonical order.
    pub fn first_incomparable(&self) -> Option<(Mask, Mask)> {
        let full = self.space.full_mask();
        (0..=full)
            .flat_map(|a| (a + 1..=full).map(move |b| (a, b)))
            .find(|&(a, b)| !self.ge(a, b) && !self.ge(b, a))
    }

    /// The weak relation, with committed pairs necessarily strict.
    pub fn to_relation(&self) -> ConfidenceRelation {
        ConfidenceRelation::from_matrix(self.space.clone(), self.weak.clone())
            .expect("matrix dimension matches its space")
    }
}

/// Strictness is read as "committed, or weak without the reverse edge".
///
/// Fixpoint of: inclusion seeds `B ⊆ A ⇒ A ≥ B`; transitivity of `≥`;
/// `A > B ≥ C` and `A ≥ B > C` commit `A > C`; Ac on disjoint triples
/// commits `A > B ∪ C`; edges outside a frozen equivalence are committed.
///
/// Fails when some committed `A > B` meets `B ≥ A`.
pub fn ac_close(cr: &ConstrainedRelation) -> std::result::Result<ConstrainedRelation, Contradiction> {
    let mut cr = cr.clone();
    let dim = cr.space.event_count();
    let n = cr.space.len();
    for a in 0..dim {
        for b in 0..dim {
            if is_subset(b as Mask, a as Mask) {
                cr.weak.set(a, b);
            }
        }
    }
    loop {
        if let Some(c) = cr.contradiction() {
            return Err(c);
        }
        transitive_closure(&mut cr.weak);
        let mut changed = false;

        // Strictness travels along weak edges on either side.
        let strict = BitMatrix::from_fn(dim, |a, b| cr.gt(a as Mask, b as Mask));
        for a in 0..dim {
            for b in strict.row_ones(a).collect::<Vec<_>>() {
                for c in cr.weak.row_ones(b).collect::<Vec<_>>() {
                    changed |= cr.commit(a as Mask, c as Mask);
                }
            }
        }
        let strict_t = strict.transpose();
        for b in 0..dim {
            for a in strict_t.row_ones(b).collect::<Vec<_>>() {
                // `a > b`; every `x ≥ a` gives `x > b`.
                for x in 0..dim {
                    if cr.weak.get(x, a) {
                        changed |= cr.commit(x as Mask, b as Mask);
                    }
                }
            }
        }

        for (a, b, c) in disjoint_triples(n) {
            if cr.gt(a | b, c) && cr.gt(a | c, b) {
                changed |= cr.commit(a, b | c);
            }
        }

        if let Some(eq) = &cr.frozen {
            let extra: Vec<(usize, usize)> = (0..dim)
                .flat_map(|a| cr.weak.row_ones(a).map(move |b| (a, b)))
                .filter(|&(a, b)| !eq.get(a, b))
                .collect();
            for (a, b) in extra {
                changed |= cr.commit(a as Mask, b as Mask);
            }
        }

        if let Some(c) = cr.contradiction() {
            return Err(c);
        }
        if !changed {
            return Ok(cr);
        }
    }
}

fn transitive_closure(m: &mut BitMatrix) {
    let dim = m.dim();
    for k in 0..dim {
        for i in 0..dim {
            if i != k && m.get(i, k) {
                m.or_row_into(k, i);
            }
        }
    }
}

impl From<Contradiction> for Error {
    fn from(c: Contradiction) -> Self {
        Error::Format(format!(
            "contradictory commitments on events {:#b} and {:#b}",
            c.ge.0, c.ge.1
        ))
    }
}
