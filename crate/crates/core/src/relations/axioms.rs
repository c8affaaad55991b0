//! Axiom checks with canonical witnesses.
//!
//! Every check scans the axiom's quantifier domain in canonical order (the
//! numeric order of event bit-vectors, lexicographic over tuples) and reports
//! the first violated instance. [`instance_violated`] evaluates a single
//! instance directly and is what witnesses are replayed against.

use std::fmt;
use std::str::FromStr;

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::space::{disjoint_pairs, disjoint_triples, full_mask, is_subset, submasks, Event, Mask, StateSpace};

use super::ConfidenceRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Transitivity of `≥`.
    T,
    /// Monotony with respect to inclusion.
    MI,
    /// Orderly: `A ⊆ A'`, `B' ⊆ B`, `A > B` imply `A' > B'`.
    O,
    /// Irreflexivity of `>`.
    IR,
    /// Acceptance axiom over disjoint triples.
    Ac,
    /// Halpern's qualitative axiom, over arbitrary triples.
    Qual,
    /// Consistency preservation: never `∅ > A`.
    CP,
    CS,
    And,
    CCS,
    CAnd,
    Add,
    TypeOr,
    TypeAnd,
    WeakOr,
    WeakAnd,
    SelfDual,
    PossLike,
    CertLike,
    /// `C ≡ A > B ⇒ A ≡ A∪B ≡ C ≡ C∪B > B` for disjoint events.
    Negligibility,
    /// `B > ∅ ⇒ A ∪ B > A` for disjoint events.
    StrictGrowth,
    /// `C ≡ A > B ⇒ B ≡ ∅` for disjoint events.
    NullNegligible,
    /// Accepted beliefs are exactly the supersets of a non-empty kernel
    /// (checked when `S > ∅`).
    Kernel,
    /// The same in every context `B > ∅`.
    ConditionalKernel,
    /// Accepted sets are closed under supersets and intersections in every context.
    Closure,
    /// Every non-null event has a state strictly above the rest of it.
    BigStepped,
    /// The context-tolerance implication over disjoint triples.
    ContextTolerance,
    /// `S > ∅`, inclusion monotony and the AND rule.
    AcceptanceFunction,
    Or,
    Rw,
    Cm,
    Cut,
}

impl Axiom {
    pub const ALL: [Axiom; 32] = [
        Axiom::T,
        Axiom::MI,
        Axiom::O,
        Axiom::IR,
        Axiom::Ac,
        Axiom::Qual,
        Axiom::CP,
        Axiom::CS,
        Axiom::And,
        Axiom::CCS,
        Axiom::CAnd,
        Axiom::Add,
        Axiom::TypeOr,
        Axiom::TypeAnd,
        Axiom::WeakOr,
        Axiom::WeakAnd,
        Axiom::SelfDual,
        Axiom::PossLike,
        Axiom::CertLike,
        Axiom::Negligibility,
        Axiom::StrictGrowth,
        Axiom::NullNegligible,
        Axiom::Kernel,
        Axiom::ConditionalKernel,
        Axiom::Closure,
        Axiom::BigStepped,
        Axiom::ContextTolerance,
        Axiom::AcceptanceFunction,
        Axiom::Or,
        Axiom::Rw,
        Axiom::Cm,
        Axiom::Cut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::T => "T",
            Axiom::MI => "MI",
            Axiom::O => "O",
            Axiom::IR => "IR",
            Axiom::Ac => "Ac",
            Axiom::Qual => "Qual",
            Axiom::CP => "CP",
            Axiom::CS => "CS",
            Axiom::And => "AND",
            Axiom::CCS => "CCS",
            Axiom::CAnd => "CAND",
            Axiom::Add => "ADD",
            Axiom::TypeOr => "TYPE_OR",
            Axiom::TypeAnd => "TYPE_AND",
            Axiom::WeakOr => "WEAK_OR",
            Axiom::WeakAnd => "WEAK_AND",
            Axiom::SelfDual => "SELF_DUAL",
            Axiom::PossLike => "POSS_LIKE",
            Axiom::CertLike => "CERT_LIKE",
            Axiom::Negligibility => "NEGLIGIBILITY",
            Axiom::StrictGrowth => "STRICT_GROWTH",
            Axiom::NullNegligible => "NULL_NEGLIGIBLE",
            Axiom::Kernel => "KERNEL",
            Axiom::ConditionalKernel => "CONDITIONAL_KERNEL",
            Axiom::Closure => "CLOSURE",
            Axiom::BigStepped => "BIG_STEPPED",
            Axiom::ContextTolerance => "CONTEXT_TOLERANCE",
            Axiom::AcceptanceFunction => "ACCEPTANCE_FUNCTION",
            Axiom::Or => "OR",
            Axiom::Rw => "RW",
            Axiom::Cm => "CM",
            Axiom::Cut => "CUT",
        }
    }

    /// Axioms whose quantifier ranges over all `8^n` event triples.
    pub fn sweeps_all_triples(self) -> bool {
        matches!(
            self,
            Axiom::Qual
                | Axiom::CCS
                | Axiom::CAnd
                | Axiom::Closure
                | Axiom::Or
                | Axiom::Rw
                | Axiom::Cm
                | Axiom::Cut
        )
    }

    /// Number of events in a witness.
    pub fn arity(self) -> usize {
        match self {
            Axiom::IR
            | Axiom::CP
            | Axiom::PossLike
            | Axiom::CertLike
            | Axiom::Kernel
            | Axiom::BigStepped => 1,
            Axiom::MI
            | Axiom::CS
            | Axiom::And
            | Axiom::SelfDual
            | Axiom::StrictGrowth
            | Axiom::ConditionalKernel
            | Axiom::AcceptanceFunction => 2,
            Axiom::O => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.name().to_ascii_uppercase() == key)
            .ok_or_else(|| Error::Format(format!("unknown axiom `{s}`")))
    }
}

/// Outcome of a check. A failing verdict always carries the violated
/// instance, in the variable order of the axiom's statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Vec<Event>>,
}

impl Verdict {
    pub fn pass(axiom: Axiom) -> Self {
        Self {
            axiom,
            holds: true,
            witness: None,
        }
    }

    pub fn fail(axiom: Axiom, witness: Vec<Event>) -> Self {
        Self {
            axiom,
            holds: false,
            witness: Some(witness),
        }
    }

    pub(crate) fn from_scan(axiom: Axiom, space: &StateSpace, found: Option<Vec<Mask>>) -> Self {
        match found {
            None => Self::pass(axiom),
            Some(w) => Self::fail(axiom, w.into_iter().map(|m| space.event(m)).collect()),
        }
    }

    pub fn witness_masks(&self) -> Option<Vec<Mask>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|e| e.bits()).collect())
    }

    pub fn describe_witness(&self) -> String {
        match &self.witness {
            None => "no witness".to_string(),
            Some(w) => w.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "),
        }
    }

    pub fn describe_with(&self, space: &StateSpace) -> String {
        match &self.witness {
            None => "no witness".to_string(),
            Some(w) => w
                .iter()
                .map(|e| space.format(e.bits()))
                .collect::<Vec<_>>()
                .join(", "),
        }
    }

    /// Re-evaluates the witnessed instance against `rel`; true when it is
    /// indeed a violation.
    pub fn replays_on(&self, rel: &ConfidenceRelation) -> bool {
        match self.witness_masks() {
            Some(w) => instance_violated(rel, self.axiom, &w),
            None => false,
        }
    }
}

/// Read access to an order on events.
pub(crate) trait Order {
    fn full(&self) -> Mask;
    fn ge(&self, a: Mask, b: Mask) -> bool;
    fn gt(&self, a: Mask, b: Mask) -> bool;

    fn eq(&self, a: Mask, b: Mask) -> bool {
        self.ge(a, b) && self.ge(b, a)
    }

    fn acc(&self, a: Mask, c: Mask) -> bool {
        self.gt(a & c, !a & c)
    }
}

impl Order for ConfidenceRelation {
    fn full(&self) -> Mask {
        self.space().full_mask()
    }

    fn ge(&self, a: Mask, b: Mask) -> bool {
        ConfidenceRelation::ge(self, a, b)
    }

    fn gt(&self, a: Mask, b: Mask) -> bool {
        ConfidenceRelation::gt(self, a, b)
    }
}

/// A bare strict order, read through the lift `A ≥ B ⇔ A > B or B ⊆ A`.
pub(crate) struct StrictView<'a> {
    pub strict: &'a BitMatrix,
    pub full: Mask,
}

impl Order for StrictView<'_> {
    fn full(&self) -> Mask {
        self.full
    }

    fn ge(&self, a: Mask, b: Mask) -> bool {
        self.gt(a, b) || is_subset(b, a)
    }

    fn gt(&self, a: Mask, b: Mask) -> bool {
        self.strict.get(a as usize, b as usize)
    }
}

fn kernel_in<R: Order>(r: &R, c: Mask) -> Mask {
    let full = r.full();
    submasks(full)
        .filter(|&a| r.acc(a, c))
        .fold(full, |k, a| k & a)
}

fn violated<R: Order>(r: &R, axiom: Axiom, w: &[Mask]) -> bool {
    if w.len() != axiom.arity() {
        return false;
    }
    let full = r.full();
    if w.iter().any(|&m| m & !full != 0) {
        return false;
    }
    let not = |m: Mask| !m & full;
    let disjoint3 = |a: Mask, b: Mask, c: Mask| a & b == 0 && a & c == 0 && b & c == 0;
    match axiom {
        Axiom::T => r.ge(w[0], w[1]) && r.ge(w[1], w[2]) && !r.ge(w[0], w[2]),
        Axiom::MI => is_subset(w[0], w[1]) && !r.ge(w[1], w[0]),
        Axiom::O => {
            let (a, b, a2, b2) = (w[0], w[1], w[2], w[3]);
            is_subset(a, a2) && is_subset(b2, b) && r.gt(a, b) && !r.gt(a2, b2)
        }
        Axiom::IR => r.gt(w[0], w[0]),
        Axiom::Ac | Axiom::ContextTolerance => {
            let (a, b, c) = (w[0], w[1], w[2]);
            disjoint3(a, b, c) && r.gt(a | b, c) && r.gt(a | c, b) && !r.gt(a, b | c)
        }
        Axiom::Qual => {
            let (a, b, c) = (w[0], w[1], w[2]);
            r.gt(a | b, c) && r.gt(a | c, b) && !r.gt(a, b | c)
        }
        Axiom::CP => r.gt(0, w[0]),
        Axiom::CS => is_subset(w[0], w[1]) && r.acc(w[0], full) && !r.acc(w[1], full),
        Axiom::And => r.acc(w[0], full) && r.acc(w[1], full) && !r.acc(w[0] & w[1], full),
        Axiom::CCS => {
            let (a, b, c) = (w[0], w[1], w[2]);
            is_subset(a, b) && r.acc(a, c) && !r.acc(b, c)
        }
        Axiom::CAnd => {
            let (a, b, c) = (w[0], w[1], w[2]);
            r.acc(a, c) && r.acc(b, c) && !r.acc(a & b, c)
        }
        Axiom::Add | Axiom::TypeOr | Axiom::TypeAnd => {
            let (a, b, c) = (w[0], w[1], w[2]);
            if a & (b | c) != 0 {
                return false;
            }
            let inner = r.ge(b, c);
            let outer = r.ge(a | b, a | c);
            match axiom {
                Axiom::TypeOr => inner && !outer,
                Axiom::TypeAnd => outer && !inner,
                _ => inner != outer,
            }
        }
        Axiom::WeakAnd => {
            let (a, b, c) = (w[0], w[1], w[2]);
            disjoint3(a, b, c) && r.gt(a | b, b) && !r.gt(a | b | c, b | c)
        }
        Axiom::WeakOr => {
            let (a, b, c) = (w[0], w[1], w[2]);
            disjoint3(a, b, c) && r.gt(a | b | c, b | c) && !r.gt(a | b, b)
        }
        Axiom::SelfDual => r.ge(w[0], w[1]) != r.ge(not(w[1]), not(w[0])),
        Axiom::PossLike => r.eq(w[0], 0) && r.eq(not(w[0]), 0),
        Axiom::CertLike => r.eq(w[0], full) && r.eq(not(w[0]), full),
        Axiom::Negligibility => {
            let (a, b, c) = (w[0], w[1], w[2]);
            disjoint3(a, b, c)
                && r.eq(c, a)
                && r.gt(a, b)
                && !(r.eq(a, a | b) && r.eq(a | b, c) && r.eq(c, c | b) && r.gt(c | b, b))
        }
        Axiom::StrictGrowth => {
            let (a, b) = (w[0], w[1]);
            a & b == 0 && r.gt(b, 0) && !r.gt(a | b, a)
        }
        Axiom::NullNegligible => {
            let (a, b, c) = (w[0], w[1], w[2]);
            disjoint3(a, b, c) && r.eq(c, a) && r.gt(a, b) && !r.eq(b, 0)
        }
        Axiom::Kernel => {
            r.gt(full, 0) && r.acc(w[0], full) != is_subset(kernel_in(r, full), w[0])
        }
        Axiom::ConditionalKernel => {
            let (b, a) = (w[0], w[1]);
            r.gt(b, 0) && r.acc(a, b) != is_subset(kernel_in(r, b), a)
        }
        Axiom::Closure => {
            let (c, a, b) = (w[0], w[1], w[2]);
            r.acc(a, c) && ((is_subset(a, b) && !r.acc(b, c)) || (r.acc(b, c) && !r.acc(a & b, c)))
        }
        Axiom::BigStepped => {
            let a = w[0];
            r.gt(a, 0)
                && !crate::space::members(a).any(|s| {
                    let s = 1 << s;
                    r.gt(s, a & !s)
                })
        }
        Axiom::AcceptanceFunction => {
            let (a, b) = (w[0], w[1]);
            (a == full && b == 0 && !r.gt(full, 0))
                || (is_subset(a, b) && !r.ge(b, a))
                || (r.acc(a, full) && r.acc(b, full) && !r.acc(a & b, full))
        }
        Axiom::Or => {
            let (a, b, c) = (w[0], w[1], w[2]);
            r.acc(c, a) && r.acc(c, b) && !r.acc(c, a | b)
        }
        Axiom::Rw => {
            let (a, b, c) = (w[0], w[1], w[2]);
            is_subset(b, c) && r.acc(b, a) && !r.acc(c, a)
        }
        Axiom::Cm => {
            let (a, b, c) = (w[0], w[1], w[2]);
            r.acc(b, a) && r.acc(c, a) && !r.acc(c, a & b)
        }
        Axiom::Cut => {
            let (a, b, c) = (w[0], w[1], w[2]);
            r.acc(b, a) && r.acc(c, a & b) && !r.acc(c, a)
        }
    }
}

/// Direct evaluation of one axiom instance: true iff `witness` lies in the
/// axiom's quantifier domain, its premises hold and its conclusion fails.
pub fn instance_violated(rel: &ConfidenceRelation, axiom: Axiom, witness: &[Mask]) -> bool {
    violated(rel, axiom, witness)
}

fn all_pairs(n: usize) -> impl Iterator<Item = [Mask; 2]> {
    let full = full_mask(n);
    (0..=full).flat_map(move |a| (0..=full).map(move |b| [a, b]))
}

fn all_triples(n: usize) -> impl Iterator<Item = [Mask; 3]> {
    let full = full_mask(n);
    all_pairs(n).flat_map(move |[a, b]| (0..=full).map(move |c| [a, b, c]))
}

/// Triples with `A ∩ (B ∪ C) = ∅`, lexicographic.
fn add_triples(n: usize) -> impl Iterator<Item = [Mask; 3]> {
    let full = full_mask(n);
    (0..=full).flat_map(move |a| {
        let rest = full & !a;
        submasks(rest).flat_map(move |b| submasks(rest).map(move |c| [a, b, c]))
    })
}

fn first<R: Order, const K: usize>(
    r: &R,
    axiom: Axiom,
    domain: impl Iterator<Item = [Mask; K]>,
) -> Option<Vec<Mask>> {
    domain
        .into_iter()
        .find(|w| violated(r, axiom, w))
        .map(|w| w.to_vec())
}

/// Transitivity of an arbitrary matrix, first `(A, B, C)` with `A→B→C` but not `A→C`.
fn transitivity_witness(m: &BitMatrix) -> Option<Vec<Mask>> {
    for a in 0..m.dim() {
        let row_a = m.row(a);
        for b in m.row_ones(a) {
            let row_b = m.row(b);
            for (w, (&x, &y)) in row_b.iter().zip(row_a).enumerate() {
                let missing = x & !y;
                if missing != 0 {
                    let c = w * 64 + missing.trailing_zeros() as usize;
                    return Some(vec![a as Mask, b as Mask, c as Mask]);
                }
            }
        }
    }
    None
}

fn orderly_witness<R: Order>(r: &R, n: usize) -> Option<Vec<Mask>> {
    let full = full_mask(n);
    for [a, b] in all_pairs(n) {
        if !r.gt(a, b) {
            continue;
        }
        for s in 0..n {
            let bit = 1 << s;
            if a & bit == 0 && !r.gt(a | bit, b) {
                return Some(vec![a, b, a | bit, b]);
            }
        }
        for s in 0..n {
            let bit = 1 << s;
            if b & bit != 0 && !r.gt(a, b & !bit) {
                return Some(vec![a, b, a, b & !bit]);
            }
        }
        debug_assert!(a <= full);
    }
    None
}

fn scan<R: Order>(r: &R, n: usize, axiom: Axiom, weak: Option<&BitMatrix>) -> Option<Vec<Mask>> {
    let full = full_mask(n);
    let singles = move || (0..=full).map(|a| [a]);
    match axiom {
        Axiom::T => match weak {
            Some(m) => transitivity_witness(m),
            None => first(r, axiom, all_triples(n)),
        },
        Axiom::O => orderly_witness(r, n),
        Axiom::IR
        | Axiom::CP
        | Axiom::PossLike
        | Axiom::CertLike
        | Axiom::Kernel
        | Axiom::BigStepped => first(r, axiom, singles()),
        Axiom::MI | Axiom::CS | Axiom::And | Axiom::SelfDual | Axiom::ConditionalKernel => {
            first(r, axiom, all_pairs(n))
        }
        Axiom::AcceptanceFunction => {
            if !r.gt(full, 0) {
                Some(vec![full, 0])
            } else {
                first(r, axiom, all_pairs(n))
            }
        }
        Axiom::StrictGrowth => first(r, axiom, disjoint_pairs(n).map(|(a, b)| [a, b])),
        Axiom::Ac
        | Axiom::ContextTolerance
        | Axiom::WeakAnd
        | Axiom::WeakOr
        | Axiom::Negligibility
        | Axiom::NullNegligible => first(r, axiom, disjoint_triples(n).map(|(a, b, c)| [a, b, c])),
        Axiom::Add | Axiom::TypeOr | Axiom::TypeAnd => first(r, axiom, add_triples(n)),
        Axiom::Qual
        | Axiom::CCS
        | Axiom::CAnd
        | Axiom::Closure
        | Axiom::Or
        | Axiom::Rw
        | Axiom::Cm
        | Axiom::Cut => first(r, axiom, all_triples(n)),
    }
}

pub fn check_axiom(rel: &ConfidenceRelation, axiom: Axiom) -> Verdict {
    let found = scan(rel, rel.n(), axiom, Some(rel.weak_matrix()));
    Verdict::from_scan(axiom, rel.space(), found)
}

/// Checks several axioms; verdicts come back in the order given.
pub fn check_axioms(rel: &ConfidenceRelation, axioms: &[Axiom]) -> Vec<Verdict> {
    axioms.iter().map(|&a| check_axiom(rel, a)).collect()
}

/// The three defining verdicts T, MI, Ac.
pub fn acceptance_verdicts(rel: &ConfidenceRelation) -> [Verdict; 3] {
    [
        check_axiom(rel, Axiom::T),
        check_axiom(rel, Axiom::MI),
        check_axiom(rel, Axiom::Ac),
    ]
}

pub fn is_acceptance_preorder(rel: &ConfidenceRelation) -> bool {
    acceptance_verdicts(rel).iter().all(|v| v.holds)
}

/// IR, T, O and Ac for a bare strict order (transitivity of `>` itself).
pub fn strict_verdicts(space: &StateSpace, strict: &BitMatrix) -> [Verdict; 4] {
    let n = space.len();
    let view = StrictView {
        strict,
        full: space.full_mask(),
    };
    let t = transitivity_witness(strict);
    [
        Verdict::from_scan(Axiom::IR, space, scan(&view, n, Axiom::IR, None)),
        Verdict::from_scan(Axiom::T, space, t),
        Verdict::from_scan(Axiom::O, space, scan(&view, n, Axiom::O, None)),
        Verdict::from_scan(Axiom::Ac, space, scan(&view, n, Axiom::Ac, None)),
    ]
}
