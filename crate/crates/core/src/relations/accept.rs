//! Accepted beliefs under conditioning and their kernels.

use crate::error::Result;
use crate::space::{is_subset, Event, Mask};

use super::{Axiom, ConfidenceRelation, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelFlag {
    /// Nothing is accepted; the kernel defaults to `S`.
    NoBelief,
    /// `C > ∅` fails, so the kernel guarantees do not apply.
    ContextNotPlausible,
    /// The accepted events are not exactly the supersets of the kernel.
    NotDeductivelyClosed,
}

impl KernelFlag {
    pub fn name(self) -> &'static str {
        match self {
            KernelFlag::NoBelief => "no_belief",
            KernelFlag::ContextNotPlausible => "context_not_plausible",
            KernelFlag::NotDeductivelyClosed => "not_deductively_closed",
        }
    }
}

/// Accepted beliefs in a context.
///
/// Invariant: `kernel` is the intersection of `accepted` (or `S` when nothing
/// is accepted), so every accepted event contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub context: Event,
    pub kernel: Event,
    pub accepted: Vec<Event>,
    pub flags: Vec<KernelFlag>,
}

impl Kernel {
    pub fn has_flag(&self, flag: KernelFlag) -> bool {
        self.flags.contains(&flag)
    }
}

/// `{A : A ∩ C > Ā ∩ C}` and its intersection.
pub fn accepted_set(rel: &ConfidenceRelation, context: Event) -> Result<Kernel> {
    let space = rel.space();
    let c = space.check(context)?;
    let full = space.full_mask();
    let accepted: Vec<Mask> = (0..=full).filter(|&a| rel.accepts_given(a, c)).collect();
    let kernel = accepted.iter().fold(full, |k, &a| k & a);

    let mut flags = Vec::new();
    if accepted.is_empty() {
        flags.push(KernelFlag::NoBelief);
    }
    if !rel.gt(c, 0) {
        flags.push(KernelFlag::ContextNotPlausible);
    }
    if !accepted.is_empty() {
        let exact = (0..=full).all(|a| rel.accepts_given(a, c) == is_subset(kernel, a));
        if !exact {
            flags.push(KernelFlag::NotDeductivelyClosed);
        }
    }
    Ok(Kernel {
        context,
        kernel: space.event(kernel),
        accepted: accepted.into_iter().map(|a| space.event(a)).collect(),
        flags,
    })
}

/// Whether the accepted set in context `C` is closed under supersets and
/// pairwise intersection. The witness is `(C, A, B)` for the first
/// offending pair: either `A` accepted with `A ⊆ B` and `B` not, or both
/// accepted and `A ∩ B` not.
pub fn check_closure(rel: &ConfidenceRelation, context: Event) -> Result<Verdict> {
    let space = rel.space();
    let c = space.check(context)?;
    let full = space.full_mask();
    let acc: Vec<bool> = (0..=full).map(|a| rel.accepts_given(a, c)).collect();
    for a in 0..=full {
        if !acc[a as usize] {
            continue;
        }
        for b in 0..=full {
            let up = is_subset(a, b) && !acc[b as usize];
            let meet = acc[b as usize] && !acc[(a & b) as usize];
            if up || meet {
                return Ok(Verdict::fail(
                    Axiom::Closure,
                    vec![context, space.event(a), space.event(b)],
                ));
            }
        }
    }
    Ok(Verdict::pass(Axiom::Closure))
}
