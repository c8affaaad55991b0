//! Explicit confidence relations over the power set of a state space.

mod accept;
mod axioms;

pub use accept::{accepted_set, check_closure, Kernel, KernelFlag};
pub use axioms::{
    acceptance_verdicts, check_axiom, check_axioms, instance_violated, is_acceptance_preorder,
    strict_verdicts, Axiom, Verdict,
};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::space::{is_subset, Event, Mask, StateSpace};

/// A relation `A ≥ B` over all events, stored as a `2^n × 2^n` bit matrix
/// with its strict part cached.
#[derive(Clone, PartialEq, Eq)]
pub struct ConfidenceRelation {
    space: StateSpace,
    weak: BitMatrix,
    strict: BitMatrix,
}

impl std::fmt::Debug for ConfidenceRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConfidenceRelation")
            .field("states", &self.space.names())
            .field("weak", &self.weak)
            .finish()
    }
}

pub(crate) fn strict_part(weak: &BitMatrix) -> BitMatrix {
    let mut strict = weak.clone();
    strict.and_not_assign(&weak.transpose());
    strict
}

impl ConfidenceRelation {
    /// Wraps a weak matrix. No axiom is assumed or enforced.
    pub fn from_matrix(space: StateSpace, weak: BitMatrix) -> Result<Self> {
        if weak.dim() != space.event_count() {
            return Err(Error::Format(format!(
                "matrix of dimension {} for {} events",
                weak.dim(),
                space.event_count()
            )));
        }
        let strict = strict_part(&weak);
        Ok(Self {
            space,
            weak,
            strict,
        })
    }

    pub fn from_fn(space: StateSpace, mut ge: impl FnMut(Mask, Mask) -> bool) -> Self {
        let dim = space.event_count();
        let weak = BitMatrix::from_fn(dim, |a, b| ge(a as Mask, b as Mask));
        let strict = strict_part(&weak);
        Self {
            space,
            weak,
            strict,
        }
    }

    /// Builds a relation from an explicit list of weak pairs `A ≥ B`.
    pub fn from_pairs(space: StateSpace, pairs: &[(Event, Event)]) -> Result<Self> {
        let mut weak = BitMatrix::new(space.event_count());
        for &(a, b) in pairs {
            weak.set(space.check(a)? as usize, space.check(b)? as usize);
        }
        Self::from_matrix(space, weak)
    }

    /// `A ≥ B ⇔ B ⊆ A`.
    pub fn inclusion(space: StateSpace) -> Self {
        Self::from_fn(space, |a, b| is_subset(b, a))
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.len()
    }

    pub fn weak_matrix(&self) -> &BitMatrix {
        &self.weak
    }

    pub fn strict_matrix(&self) -> &BitMatrix {
        &self.strict
    }

    pub fn into_weak_matrix(self) -> BitMatrix {
        self.weak
    }

    #[inline]
    pub fn ge(&self, a: Mask, b: Mask) -> bool {
        self.weak.get(a as usize, b as usize)
    }

    #[inline]
    pub fn gt(&self, a: Mask, b: Mask) -> bool {
        self.strict.get(a as usize, b as usize)
    }

    #[inline]
    pub fn equiv(&self, a: Mask, b: Mask) -> bool {
        self.ge(a, b) && self.ge(b, a)
    }

    #[inline]
    pub fn incomparable(&self, a: Mask, b: Mask) -> bool {
        !self.ge(a, b) && !self.ge(b, a)
    }

    /// `A > Ā`.
    #[inline]
    pub fn accepts(&self, a: Mask) -> bool {
        self.gt(a, !a & self.space.full_mask())
    }

    /// `A ∩ C > Ā ∩ C`.
    #[inline]
    pub fn accepts_given(&self, a: Mask, c: Mask) -> bool {
        self.gt(a & c, !a & c)
    }

    pub fn is_complete(&self) -> bool {
        self.first_incomparable().is_none()
    }

    /// First incomparable pair `(A, B)` with `A < B` in canonical order.
    pub fn first_incomparable(&self) -> Option<(Mask, Mask)> {
        let full = self.space.full_mask();
        (0..=full)
            .flat_map(|a| (a + 1..=full).map(move |b| (a, b)))
            .find(|&(a, b)| self.incomparable(a, b))
    }

    /// All weak pairs in canonical order.
    pub fn weak_pairs(&self) -> Vec<(Mask, Mask)> {
        (0..self.space.event_count())
            .flat_map(|a| self.weak.row_ones(a).map(move |b| (a as Mask, b as Mask)))
            .collect()
    }

    /// All strict pairs in canonical order.
    pub fn strict_pairs(&self) -> Vec<(Mask, Mask)> {
        (0..self.space.event_count())
            .flat_map(|a| self.strict.row_ones(a).map(move |b| (a as Mask, b as Mask)))
            .collect()
    }

    /// The dual relation: `A ≥ᵀ B ⇔ B̄ ≥ Ā`.
    pub fn dual(&self) -> Self {
        let full = self.space.full_mask();
        Self::from_fn(self.space.clone(), |a, b| self.ge(!b & full, !a & full))
    }

    /// Conditioning on `C`: `A ≥_C B ⇔ A ∩ C ≥ B ∩ C`.
    pub fn condition(&self, c: Event) -> Result<Self> {
        let c = self.space.check(c)?;
        Ok(Self::from_fn(self.space.clone(), |a, b| self.ge(a & c, b & c)))
    }

    /// Pointwise conjunction of weak matrices.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut weak = self.weak.clone();
        weak.and_assign(&other.weak);
        Self::from_matrix(self.space.clone(), weak)
    }
}

/// Lifts a strict order to the preorder `A ≥ B ⇔ A > B or B ⊆ A`.
///
/// The input must be irreflexive, transitive, orderly and satisfy Ac; the
/// first failing property is reported with its witness.
pub fn lift_strict(space: &StateSpace, strict: &BitMatrix) -> Result<ConfidenceRelation> {
    if strict.dim() != space.event_count() {
        return Err(Error::Format(format!(
            "strict matrix of dimension {} for {} events",
            strict.dim(),
            space.event_count()
        )));
    }
    for v in strict_verdicts(space, strict) {
        if !v.holds {
            return Err(Error::StrictAxiomViolation(Box::new(v)));
        }
    }
    Ok(ConfidenceRelation::from_fn(space.clone(), |a, b| {
        strict.get(a as usize, b as usize) || is_subset(b, a)
    }))
}

pub fn lift_strict_pairs(space: &StateSpace, pairs: &[(Event, Event)]) -> Result<ConfidenceRelation> {
    let mut m = BitMatrix::new(space.event_count());
    for &(a, b) in pairs {
        m.set(space.check(a)? as usize, space.check(b)? as usize);
    }
    lift_strict(space, &m)
}
