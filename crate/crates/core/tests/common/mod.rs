//! Oracles and fixtures shared by the integration tests. Everything here is
//! written directly from definitions, without the library's checkers.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use confrel::measures::{rational, Rational};
use confrel::{BitMatrix, ConfidenceRelation, StateSpace};

pub type Mask = u32;

/// `[∅, {s1}, {s2}, S]` on two states: bit `4a + b` of a weak matrix is
/// `A ≥ B`.
pub fn bit(w: u16, a: usize, b: usize) -> bool {
    w >> (4 * a + b) & 1 == 1
}

/// T, MI and Ac on a two-state weak matrix, straight from the statements.
pub fn naive_is_acceptance(w: u16) -> bool {
    let ge = |a: usize, b: usize| bit(w, a, b);
    let gt = |a: usize, b: usize| ge(a, b) && !ge(b, a);
    for a in 0..4 {
        for b in 0..4 {
            if b & !a == 0 && !ge(a, b) {
                return false;
            }
            for c in 0..4 {
                if ge(a, b) && ge(b, c) && !ge(a, c) {
                    return false;
                }
                let disjoint = a & b == 0 && a & c == 0 && b & c == 0;
                if disjoint && gt(a | b, c) && gt(a | c, b) && !gt(a, b | c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every acceptance preorder on two states, from all `2^16` weak matrices.
pub fn n2_acceptance_preorders() -> Vec<ConfidenceRelation> {
    let space = StateSpace::numbered(2).unwrap();
    (0..=u16::MAX)
        .filter(|&w| naive_is_acceptance(w))
        .map(|w| {
            let m = BitMatrix::from_fn(4, |a, b| bit(w, a, b));
            ConfidenceRelation::from_matrix(space.clone(), m).unwrap()
        })
        .collect()
}

/// The weak matrix of a two-state relation as a `u16`.
pub fn n2_code(rel: &ConfidenceRelation) -> u16 {
    let mut w = 0u16;
    for a in 0..4 {
        for b in 0..4 {
            if rel.ge(a as u32, b as u32) {
                w |= 1 << (4 * a + b);
            }
        }
    }
    w
}

/// Preferential closure computed on assertions `(A, X)`, `X ⊆ A`, read
/// "`A` normally implies `X`". Rules: AND, RW, CM, CUT and OR (which needs
/// a common consequent, i.e. `X ∩ B = Y ∩ A`), applied until nothing
/// changes. Input and output are pairs `(X, A ∖ X)`.
pub fn naive_p_closure(pairs: &[(Mask, Mask)]) -> BTreeSet<(Mask, Mask)> {
    let mut known: HashSet<(Mask, Mask)> = pairs.iter().map(|&(e, f)| (e | f, e)).collect();
    loop {
        let list: Vec<(Mask, Mask)> = known.iter().copied().collect();
        let mut fresh: Vec<(Mask, Mask)> = Vec::new();
        for &(a, x) in &list {
            // RW: every Y with X ⊆ Y ⊆ A.
            let extra = a & !x;
            let mut sub = extra;
            loop {
                fresh.push((a, x | sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & extra;
            }
            for &(b, y) in &list {
                if a == b {
                    fresh.push((a, x & y));
                    fresh.push((x, x & y));
                }
                if b == x {
                    fresh.push((a, y));
                }
                if x & b == y & a {
                    fresh.push((a | b, x | y));
                }
            }
        }
        let before = known.len();
        known.extend(fresh);
        if known.len() == before {
            break;
        }
    }
    known.into_iter().map(|(a, x)| (x, a & !x)).collect()
}

/// Distinct probability vectors on `n` states with values `k_i / d`,
/// `d ≤ max_den`, as reduced rationals.
pub fn probability_grid(n: usize, max_den: i64) -> Vec<Vec<Rational>> {
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for d in 1..=max_den {
        compositions(n, d, &mut Vec::new(), &mut |ks| {
            out.insert(ks.iter().map(|&k| rational(k, d)).collect());
        });
    }
    out.into_iter().collect()
}

fn compositions(n: usize, left: i64, prefix: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if prefix.len() + 1 == n {
        prefix.push(left);
        f(prefix);
        prefix.pop();
        return;
    }
    for k in 0..=left {
        prefix.push(k);
        compositions(n, left - k, prefix, f);
        prefix.pop();
    }
}

/// `{k/d : 0 ≤ k ≤ d ≤ max_den}` in increasing order.
pub fn unit_grid(max_den: i64) -> Vec<Rational> {
    let mut vals: BTreeSet<Rational> = BTreeSet::new();
    for d in 1..=max_den {
        for k in 0..=d {
            vals.insert(rational(k, d));
        }
    }
    vals.into_iter().collect()
}

/// Normalized possibility vectors on `n` states over `unit_grid(max_den)`.
pub fn possibility_grid(n: usize, max_den: i64) -> Vec<Vec<Rational>> {
    let vals = unit_grid(max_den);
    let one = rational(1, 1);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<Rational> = idx.iter().map(|&i| vals[i].clone()).collect();
        if v.contains(&one) {
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            idx[i] += 1;
            if idx[i] < vals.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `K = ∩{A : A ∩ C > Ā ∩ C}` and whether acceptance in context `C` is
/// exactly containment of `K`, computed from `gt` alone.
pub fn kernel_oracle(rel: &ConfidenceRelation, c: Mask) -> (Mask, bool) {
    let full = rel.space().full_mask();
    let acc = |a: Mask| rel.gt(a & c, !a & c & full);
    let k = (0..=full).filter(|&a| acc(a)).fold(full, |k, a| k & a);
    let exact = (0..=full).all(|a| acc(a) == (k & !a == 0));
    (k, exact)
}

/// Additivity scanned directly: `A ∩ (B ∪ C) = ∅ ⇒ (B ≥ C ⇔ A∪B ≥ A∪C)`.
pub fn naive_additive(rel: &ConfidenceRelation) -> bool {
    let full = rel.space().full_mask();
    (0..=full).all(|a| {
        (0..=full).all(|b| {
            (0..=full).all(|c| a & (b | c) != 0 || rel.ge(b, c) == rel.ge(a | b, a | c))
        })
    })
}
