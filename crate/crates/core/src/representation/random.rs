//! Seeded random acceptance preorders.

use rand::Rng;

use crate::error::Result;
use crate::relations::{is_acceptance_preorder, ConfidenceRelation};
use crate::space::{Mask, StateSpace};

use super::{ac_close, ConstrainedRelation};

/// Shape of a random acceptance preorder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomPreorder {
    /// Number of random comparisons attempted.
    pub seeds: usize,
    /// Share of attempted comparisons that are equivalences.
    pub equivalence_share: f64,
    /// Start from `{s} > ∅` for every state, so every non-empty event is
    /// strictly above `∅`.
    pub plausible_states: bool,
}

impl Default for RandomPreorder {
    fn default() -> Self {
        Self {
            seeds: 4,
            equivalence_share: 0.25,
            plausible_states: false,
        }
    }
}

/// Applies random strict and equivalence seeds one at a time, keeping each
/// only if the closure stays free of contradictions. Strict pairs derived so
/// far are committed before the next seed, so later seeds cannot merge them.
pub fn random_acceptance_preorder<R: Rng + ?Sized>(
    space: &StateSpace,
    shape: RandomPreorder,
    rng: &mut R,
) -> Result<ConfidenceRelation> {
    let full = space.full_mask();
    let mut cr = ConstrainedRelation::empty(space.clone());
    if shape.plausible_states {
        for s in 0..space.len() {
            cr.commit(1 << s, 0);
        }
    }
    cr = ac_close(&cr)?;
    commit_strict_part(&mut cr);

    for _ in 0..shape.seeds {
        let a: Mask = rng.gen_range(0..=full);
        let b: Mask = rng.gen_range(0..=full);
        if a == b {
            continue;
        }
        let mut next = cr.clone();
        if rng.gen_bool(shape.equivalence_share.clamp(0.0, 1.0)) {
            next.weak.set(a as usize, b as usize);
            next.weak.set(b as usize, a as usize);
        } else {
            next.commit(a, b);
        }
        if let Ok(mut closed) = ac_close(&next) {
            commit_strict_part(&mut closed);
            cr = closed;
        }
    }

    let rel = cr.to_relation();
    assert!(is_acceptance_preorder(&rel), "generated relation is not an acceptance preorder");
    Ok(rel)
}

fn commit_strict_part(cr: &mut ConstrainedRelation) {
    let dim = cr.space.event_count();
    for a in 0..dim as Mask {
        for b in 0..dim as Mask {
            if cr.gt(a, b) {
                cr.commit(a, b);
            }
        }
    }
}
