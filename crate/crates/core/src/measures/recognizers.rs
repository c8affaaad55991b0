//! Structural recognizers for acceptance and context tolerance, and the
//! brute-force checks they are validated against.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::relations::{Axiom, Verdict};
use crate::space::{disjoint_triples, is_subset, submasks, Mask};

use super::{MassAssignment, Measure, ProbabilityDistribution, Rational, SetFunction};

/// Holds iff for all disjoint `A, B, C`:
/// `f(A∪B) > f(C) ∧ f(A∪C) > f(B) ⇒ f(A) > f(B∪C)`.
pub fn brute_force_ct(measure: &Measure, kind: SetFunction) -> Result<Verdict> {
    let f = measure.table(kind)?;
    let space = measure.space();
    let found = disjoint_triples(space.len()).find(|&(a, b, c)| {
        let at = |m: Mask| &f[m as usize];
        at(a | b) > at(c) && at(a | c) > at(b) && at(a) <= at(b | c)
    });
    Ok(Verdict::from_scan(
        Axiom::ContextTolerance,
        space,
        found.map(|(a, b, c)| vec![a, b, c]),
    ))
}

/// The non-context-tolerant acceptance conditions: `f(S) = 1`, `f(∅) = 0`,
/// monotony under inclusion and the AND rule `f(A) > f(Ā) ∧ f(B) > f(B̄) ⇒
/// f(A∩B) > f(complement of A∩B)`.
pub fn brute_force_acceptance(measure: &Measure, kind: SetFunction) -> Result<Verdict> {
    let f = measure.table(kind)?;
    let space = measure.space();
    let full = space.full_mask();
    let fail = |w: Vec<Mask>| Ok(Verdict::from_scan(Axiom::AcceptanceFunction, space, Some(w)));
    if !f[full as usize].is_one() || !f[0].is_zero() {
        return fail(vec![full, 0]);
    }
    let accepted = |a: Mask| f[a as usize] > f[(!a & full) as usize];
    for a in 0..=full {
        for b in 0..=full {
            let monotone_breach = is_subset(a, b) && f[b as usize] < f[a as usize];
            let and_breach = accepted(a) && accepted(b) && !accepted(a & b);
            if monotone_breach || and_breach {
                return fail(vec![a, b]);
            }
        }
    }
    Ok(Verdict::pass(Axiom::AcceptanceFunction))
}

/// States sorted by decreasing value, ties broken by state index.
fn decreasing_order(values: &[Rational]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
    order
}

/// Big-stepped test: with states sorted by decreasing probability and `r`
/// positive states, every `p_i` for `i < r − 1` must exceed the total mass
/// of the states after it.
///
/// A failure at position `i` is witnessed by the event of all states from
/// `s_i` on: it is non-null, yet none of its states outweighs the rest of it.
pub fn is_big_stepped(pd: &ProbabilityDistribution) -> Verdict {
    let p = pd.values();
    let order = decreasing_order(p);
    let r = p.iter().filter(|v| !v.is_zero()).count();
    let mut tail: Rational = Rational::zero();
    let mut tails = vec![Rational::zero(); order.len()];
    for i in (0..order.len()).rev() {
        tails[i] = tail.clone();
        tail += &p[order[i]];
    }
    for i in 0..r.saturating_sub(2) {
        if p[order[i]] <= tails[i] {
            let from: Mask = order[i..].iter().fold(0, |acc, &s| acc | 1 << s);
            return Verdict::fail(Axiom::BigStepped, vec![pd.space().event(from)]);
        }
    }
    Verdict::pass(Axiom::BigStepped)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeliefCase {
    /// `K = {s}` with `m(K)` above the belief of its complement.
    SingletonKernel,
    /// Every focal set contains the focal set `K`, `|K| ≥ 2`.
    NestedOverKernel,
    /// Two equal singleton focal sets, every other focal set contains both.
    TwinSingletons,
    None,
}

impl BeliefCase {
    pub fn name(self) -> &'static str {
        match self {
            BeliefCase::SingletonKernel => "singleton_kernel",
            BeliefCase::NestedOverKernel => "nested_over_kernel",
            BeliefCase::TwinSingletons => "twin_singletons",
            BeliefCase::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefClassification {
    pub case: BeliefCase,
    /// For a matched case, the kernel of that case; otherwise the
    /// intersection of the events accepted by `Bel`.
    pub kernel: Mask,
    /// The two state indices of the twin case.
    pub twins: Option<(usize, usize)>,
}

impl BeliefClassification {
    /// Re-checks the reported structure directly against `m`.
    pub fn recheck(&self, m: &MassAssignment) -> bool {
        let full = m.space().full_mask();
        let focal = m.focal();
        match self.case {
            BeliefCase::SingletonKernel => {
                self.kernel.count_ones() == 1 && m.mass(self.kernel) > m.belief(!self.kernel & full)
            }
            BeliefCase::NestedOverKernel => {
                self.kernel.count_ones() >= 2
                    && !m.mass(self.kernel).is_zero()
                    && focal.iter().all(|(e, _)| is_subset(self.kernel, *e))
            }
            BeliefCase::TwinSingletons => match self.twins {
                Some((x, y)) => {
                    let (a, b) = (1 << x, 1 << y);
                    x != y
                        && self.kernel == a | b
                        && !m.mass(a).is_zero()
                        && m.mass(a) == m.mass(b)
                        && focal
                            .iter()
                            .all(|(e, _)| *e == a || *e == b || is_subset(a | b, *e))
                }
                None => false,
            },
            BeliefCase::None => true,
        }
    }
}

/// Matches the three structures under which `Bel` and `Pl` are acceptance
/// functions, tried in order.
pub fn classify_acceptance_belief(m: &MassAssignment) -> BeliefClassification {
    let space = m.space();
    let full = space.full_mask();
    let focal = m.focal();

    for s in 0..space.len() {
        let k = 1 << s;
        if m.mass(k) > m.belief(full & !k) {
            return BeliefClassification {
                case: BeliefCase::SingletonKernel,
                kernel: k,
                twins: None,
            };
        }
    }

    let meet = focal.iter().fold(full, |acc, (e, _)| acc & e);
    if meet.count_ones() >= 2 && !m.mass(meet).is_zero() {
        return BeliefClassification {
            case: BeliefCase::NestedOverKernel,
            kernel: meet,
            twins: None,
        };
    }

    let singletons: Vec<Mask> = focal
        .iter()
        .map(|(e, _)| *e)
        .filter(|e| e.count_ones() == 1)
        .collect();
    if let [a, b] = singletons[..] {
        let pair = a | b;
        if m.mass(a) == m.mass(b) && focal.iter().all(|(e, _)| *e == a || *e == b || is_subset(pair, *e))
        {
            return BeliefClassification {
                case: BeliefCase::TwinSingletons,
                kernel: pair,
                twins: Some((a.trailing_zeros() as usize, b.trailing_zeros() as usize)),
            };
        }
    }

    let accepted_meet = submasks(full)
        .filter(|&a| m.belief(a) > m.belief(full & !a))
        .fold(full, |acc, a| acc & a);
    BeliefClassification {
        case: BeliefCase::None,
        kernel: accepted_meet,
        twins: None,
    }
}

fn minimal_focal_sets(m: &MassAssignment) -> Vec<Mask> {
    let focal: Vec<Mask> = m.focal().iter().map(|(e, _)| *e).collect();
    focal
        .iter()
        .copied()
        .filter(|&e| !focal.iter().any(|&g| g != e && is_subset(g, e)))
        .collect()
}

/// Structural test for context tolerance of `Bel` under geometric
/// conditioning.
///
/// Requirements: at most one minimal focal set has more than one state; the
/// singleton focal sets, sorted by decreasing mass as `s_1, s_2, …`, satisfy
/// `m({s_j}) > Bel(S ∖ {s_1..s_j})` for every `j`. The single allowed
/// exception is a tie between the last two singletons when there is no
/// non-singleton minimal focal set and every other focal set inside
/// `S ∖ {s_1..s_{j−1}}` contains both of them.
///
/// On failure the witness is the first violated context-tolerance instance
/// of the `Bel` order when one exists, else the context where the structure
/// breaks.
pub fn is_context_tolerant_belief(m: &MassAssignment) -> Verdict {
    let space = m.space();
    let full = space.full_mask();
    let fail_at = |context: Mask| -> Verdict {
        match brute_force_ct(&Measure::Mass(m.clone()), SetFunction::Bel) {
            Ok(v) if !v.holds => v,
            _ => Verdict::fail(Axiom::ContextTolerance, vec![space.event(context)]),
        }
    };

    let minimal = minimal_focal_sets(m);
    let wide: Vec<Mask> = minimal.iter().copied().filter(|e| e.count_ones() > 1).collect();
    if wide.len() > 1 {
        return fail_at(wide[0] | wide[1]);
    }

    let mut singles: Vec<(usize, Rational)> = m
        .focal()
        .iter()
        .filter(|(e, _)| e.count_ones() == 1)
        .map(|(e, v)| (e.trailing_zeros() as usize, v.clone()))
        .collect();
    singles.sort_by(|(i, a), (j, b)| b.cmp(a).then(i.cmp(j)));

    let mut removed: Mask = 0;
    let mut j = 0;
    while j < singles.len() {
        let (s, ref mass) = singles[j];
        let context = full & !removed;
        let bit = 1 << s;
        let rest = context & !bit;
        if *mass <= m.belief(rest) {
            let twin_ok = j + 2 == singles.len() && wide.is_empty() && {
                let (t, ref other) = singles[j + 1];
                let pair = bit | 1 << t;
                other == mass
                    && m
                        .focal_within(context)
                        .all(|(e, _)| *e == bit || *e == 1 << t || is_subset(pair, *e))
            };
            if !twin_ok {
                return fail_at(context);
            }
            return Verdict::pass(Axiom::ContextTolerance);
        }
        removed |= bit;
        j += 1;
    }
    Verdict::pass(Axiom::ContextTolerance)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Via {
    Example1,
    Example2,
    BruteForce,
}

impl Via {
    pub fn name(self) -> &'static str {
        match self {
            Via::Example1 => "example1",
            Via::Example2 => "example2",
            Via::BruteForce => "brute_force",
        }
    }
}

/// Evidence about context tolerance of `Pl` under Dempster conditioning.
///
/// The two structures are sufficient conditions only; `verdict` is the
/// exhaustive check and is authoritative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlausibilityRecognition {
    pub verdict: Verdict,
    pub via: Via,
    pub example1: bool,
    pub example2: bool,
}

fn is_chain(sets: &[Mask]) -> bool {
    sets.iter()
        .all(|&a| sets.iter().all(|&b| is_subset(a, b) || is_subset(b, a)))
}

/// Singleton focal sets with strictly decreasing masses and nested
/// non-singleton focal sets, where each singleton outweighs the later
/// singletons plus every non-singleton focal set avoiding it and all
/// earlier singletons.
fn matches_example1(m: &MassAssignment) -> bool {
    let mut singles: Vec<(Mask, Rational)> = m
        .focal()
        .iter()
        .filter(|(e, _)| e.count_ones() == 1)
        .cloned()
        .collect();
    singles.sort_by(|(i, a), (j, b)| b.cmp(a).then(i.cmp(j)));
    let nested: Vec<(Mask, Rational)> = m
        .focal()
        .iter()
        .filter(|(e, _)| e.count_ones() > 1)
        .cloned()
        .collect();
    let sets: Vec<Mask> = nested.iter().map(|(e, _)| *e).collect();
    if !is_chain(&sets) {
        return false;
    }
    if singles.windows(2).any(|w| w[0].1 <= w[1].1) {
        return false;
    }
    let mut prefix: Mask = 0;
    for (i, (s, mass)) in singles.iter().enumerate() {
        prefix |= s;
        let later: Rational = singles[i + 1..].iter().map(|(_, v)| v).sum();
        let avoiding: Rational = nested
            .iter()
            .filter(|(e, _)| e & prefix == 0)
            .map(|(_, v)| v)
            .sum();
        if *mass <= later + avoiding {
            return false;
        }
    }
    true
}

/// A focal kernel `K` such that every other focal set is either nested
/// inside `K` (as a chain) or `K ∪ {s}` for a state `s ∉ K`, with the masses
/// of the latter strictly big-stepped.
fn matches_example2(m: &MassAssignment) -> bool {
    let focal = m.focal();
    focal.iter().any(|(k, _)| {
        let k = *k;
        let mut inside = Vec::new();
        let mut around = Vec::new();
        for (e, v) in focal {
            if *e == k {
                continue;
            }
            if is_subset(*e, k) {
                inside.push(*e);
            } else if is_subset(k, *e) && (e & !k).count_ones() == 1 {
                around.push(v.clone());
            } else {
                return false;
            }
        }
        if !is_chain(&inside) {
            return false;
        }
        around.sort_by(|a, b| b.cmp(a));
        (0..around.len()).all(|i| {
            let tail: Rational = around[i + 1..].iter().sum();
            around[i] > tail
        })
    })
}

pub fn recognize_ct_plausibility(m: &MassAssignment) -> PlausibilityRecognition {
    let example1 = matches_example1(m);
    let example2 = matches_example2(m);
    let verdict = brute_force_ct(&Measure::Mass(m.clone()), SetFunction::Pl)
        .expect("Pl is defined on a mass assignment");
    let via = if example1 {
        Via::Example1
    } else if example2 {
        Via::Example2
    } else {
        Via::BruteForce
    };
    PlausibilityRecognition {
        verdict,
        via,
        example1,
        example2,
    }
}
