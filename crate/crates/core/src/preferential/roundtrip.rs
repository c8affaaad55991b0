//! Checks relating closed bases and acceptance orders in both directions.

use crate::relations::{check_axiom, Axiom, ConfidenceRelation, Verdict};
use crate::space::{disjoint_pairs, disjoint_triples, members, Mask};

use super::{ConditionalBase, Pair};

fn fail(kb: &ConditionalBase, axiom: Axiom, witness: &[Mask]) -> Verdict {
    Verdict::fail(axiom, witness.iter().map(|&m| kb.space().event(m)).collect())
}

/// Reads the pairs of `kb` as a strict relation on disjoint events and checks
/// irreflexivity, transitivity, orderliness, Ac and consistency preservation,
/// all restricted to disjoint events.
///
/// Witnesses: IR `(E)`, T `(A, B, C)`, O `(A, B, A', B')`, Ac `(A, B, C)`,
/// CP `(F)`.
pub fn base_relation_verdicts(kb: &ConditionalBase) -> Vec<Verdict> {
    let n = kb.space().len();
    let full = kb.space().full_mask();
    let gt = |a: Mask, b: Mask| kb.contains((a, b));

    let ir = match kb.pairs().find(|&(e, f)| e == f) {
        Some((e, _)) => fail(kb, Axiom::IR, &[e]),
        None => Verdict::pass(Axiom::IR),
    };

    let t = disjoint_triples(n)
        .find(|&(a, b, c)| gt(a, b) && gt(b, c) && !gt(a, c))
        .map_or(Verdict::pass(Axiom::T), |(a, b, c)| fail(kb, Axiom::T, &[a, b, c]));

    // Moving one state at a time reaches every disjoint (A', B') with
    // A ⊆ A', B' ⊆ B: drop states of B first, then add states to A.
    let o = kb
        .pairs()
        .find_map(|(a, b)| {
            let drop = members(b).map(|s| (a, b & !(1 << s)));
            let grow = members(full & !(a | b)).map(|s| (a | 1 << s, b));
            drop.chain(grow)
                .find(|&(a2, b2)| !gt(a2, b2))
                .map(|(a2, b2)| [a, b, a2, b2])
        })
        .map_or(Verdict::pass(Axiom::O), |w| fail(kb, Axiom::O, &w));

    let ac = disjoint_triples(n)
        .find(|&(a, b, c)| gt(a | b, c) && gt(a | c, b) && !gt(a, b | c))
        .map_or(Verdict::pass(Axiom::Ac), |(a, b, c)| fail(kb, Axiom::Ac, &[a, b, c]));

    let cp = kb
        .pairs()
        .find(|&(e, _)| e == 0)
        .map_or(Verdict::pass(Axiom::CP), |(_, f)| fail(kb, Axiom::CP, &[f]));

    vec![ir, t, o, ac, cp]
}

/// Closure of the strict part of `rel` under CAND, OR, RW, CM, CUT and CP,
/// each checked in its event form.
pub fn rule_verdicts(rel: &ConfidenceRelation) -> Vec<Verdict> {
    [Axiom::CAnd, Axiom::Or, Axiom::Rw, Axiom::Cm, Axiom::Cut, Axiom::CP]
        .into_iter()
        .map(|axiom| check_axiom(rel, axiom))
        .collect()
}

/// Strict disjoint pairs `(E, F)` of a relation.
pub fn strict_disjoint_pairs(rel: &ConfidenceRelation) -> Vec<Pair> {
    disjoint_pairs(rel.n()).filter(|&(e, f)| rel.gt(e, f)).collect()
}
