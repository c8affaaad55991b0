//! Decomposition of an acceptance preorder into complete acceptance
//! preorders sharing its equivalence, and recomposition by intersection.

use std::fmt;
use std::str::FromStr;

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::relations::{acceptance_verdicts, is_acceptance_preorder, ConfidenceRelation};
use crate::space::{Mask, StateSpace, MAX_DECOMPOSITION_STATES};

use super::{ac_close, ConstrainedRelation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DecomposeMode {
    #[default]
    All,
    /// Members whose strict part is not strictly contained in another's.
    Maximal,
}

impl DecomposeMode {
    pub fn name(self) -> &'static str {
        match self {
            DecomposeMode::All => "all",
            DecomposeMode::Maximal => "maximal",
        }
    }
}

impl fmt::Display for DecomposeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecomposeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" => Ok(DecomposeMode::All),
            "maximal" => Ok(DecomposeMode::Maximal),
            _ => Err(Error::Format(format!("unknown decomposition mode `{s}`"))),
        }
    }
}

/// Complete relations over one space, sorted by their weak pair lists with
/// duplicates removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    space: StateSpace,
    members: Vec<ConfidenceRelation>,
}

impl Family {
    /// Canonicalizes the member order. Members must share `space`.
    pub fn new(space: StateSpace, members: Vec<ConfidenceRelation>) -> Result<Self> {
        if members.iter().any(|m| m.space() != &space) {
            return Err(Error::SpaceMismatch);
        }
        let mut keyed: Vec<(Vec<(Mask, Mask)>, ConfidenceRelation)> =
            members.into_iter().map(|m| (m.weak_pairs(), m)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        Ok(Self {
            space,
            members: keyed.into_iter().map(|(_, m)| m).collect(),
        })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn members(&self) -> &[ConfidenceRelation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn branch(cr: ConstrainedRelation, parallel: bool) -> Vec<BitMatrix> {
    let Some((a, b)) = cr.first_incomparable() else {
        return vec![cr.weak.clone()];
    };
    let orient = |x: Mask, y: Mask| {
        let mut next = cr.clone();
        next.commit(x, y);
        ac_close(&next).ok()
    };
    let explore = |next: Option<ConstrainedRelation>| match next {
        Some(next) => branch(next, parallel),
        None => Vec::new(),
    };
    let (mut left, right) = if parallel {
        rayon::join(|| explore(orient(a, b)), || explore(orient(b, a)))
    } else {
        (explore(orient(a, b)), explore(orient(b, a)))
    };
    left.extend(right);
    left
}

/// Complete acceptance preorders refining `rel` without new equivalences,
/// found by orienting the first incomparable pair both ways and closing.
///
/// Runs branches on the global thread pool.
pub fn decompose(rel: &ConfidenceRelation, mode: DecomposeMode) -> Result<Family> {
    decompose_with_threads(rel, mode, None)
}

/// As [`decompose`], on a dedicated pool of `threads` workers; `Some(1)`
/// explores branches sequentially. The result does not depend on the
/// schedule.
pub fn decompose_with_threads(
    rel: &ConfidenceRelation,
    mode: DecomposeMode,
    threads: Option<usize>,
) -> Result<Family> {
    decompose_with_limit(rel, mode, threads, MAX_DECOMPOSITION_STATES)
}

/// As [`decompose_with_threads`], refusing spaces of more than `limit`
/// states.
pub fn decompose_with_limit(
    rel: &ConfidenceRelation,
    mode: DecomposeMode,
    threads: Option<usize>,
    limit: usize,
) -> Result<Family> {
    let space = rel.space().clone();
    if space.len() > limit {
        return Err(Error::TooLarge { n: space.len(), limit });
    }
    if let Some(v) = acceptance_verdicts(rel).into_iter().find(|v| !v.holds) {
        return Err(Error::NotAcceptance(Box::new(v)));
    }
    let start = ConstrainedRelation::from_relation(rel).freeze_equivalence_of(rel);
    let start = ac_close(&start).map_err(Error::from)?;

    let leaves = match threads {
        Some(1) => branch(start, false),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Format(format!("thread pool: {e}")))?
            .install(|| branch(start, true)),
        None => branch(start, true),
    };

    let members: Vec<ConfidenceRelation> = leaves
        .into_iter()
        .map(|weak| ConfidenceRelation::from_matrix(space.clone(), weak))
        .collect::<Result<_>>()?;
    for m in &members {
        assert!(m.is_complete(), "decomposition leaf is incomplete");
        assert!(is_acceptance_preorder(m), "decomposition leaf is not an acceptance preorder");
        for a in 0..=space.full_mask() {
            for b in 0..=space.full_mask() {
                assert!(!rel.ge(a, b) || m.ge(a, b), "member drops a comparison");
                assert!(!rel.gt(a, b) || m.gt(a, b), "member drops a strict comparison");
                assert_eq!(m.equiv(a, b), rel.equiv(a, b), "member changes an equivalence");
            }
        }
    }

    let members = match mode {
        DecomposeMode::All => members,
        DecomposeMode::Maximal => maximal(members),
    };
    Family::new(space, members)
}

fn maximal(members: Vec<ConfidenceRelation>) -> Vec<ConfidenceRelation> {
    let strict_below = |x: &ConfidenceRelation, y: &ConfidenceRelation| {
        x.strict_matrix().is_subset_of(y.strict_matrix()) && x.strict_matrix() != y.strict_matrix()
    };
    members
        .iter()
        .filter(|m| !members.iter().any(|other| strict_below(m, other)))
        .cloned()
        .collect()
}

/// Intersection of the members, which must pairwise share equivalences.
/// The result is re-checked to be an acceptance preorder.
pub fn recompose(family: &Family) -> Result<ConfidenceRelation> {
    let members = family.members();
    let Some(first) = members.first() else {
        return Err(Error::EmptyFamily);
    };
    let space = family.space();
    let full = space.full_mask();
    for (i, x) in members.iter().enumerate() {
        for (j, y) in members.iter().enumerate().skip(i + 1) {
            for a in 0..=full {
                for b in a + 1..=full {
                    if x.equiv(a, b) != y.equiv(a, b) {
                        return Err(Error::SharedEquivalenceViolated {
                            first: i,
                            second: j,
                            left: space.format(a),
                            right: space.format(b),
                        });
                    }
                }
            }
        }
    }
    let mut weak = first.weak_matrix().clone();
    for m in &members[1..] {
        weak.and_assign(m.weak_matrix());
    }
    let rel = ConfidenceRelation::from_matrix(space.clone(), weak)?;
    if let Some(v) = acceptance_verdicts(&rel).into_iter().find(|v| !v.holds) {
        return Err(Error::NotAcceptance(Box::new(v)));
    }
    Ok(rel)
}
