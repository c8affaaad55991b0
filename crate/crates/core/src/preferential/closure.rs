//! Semi-naive fixpoint of the preferential rules on disjoint pairs.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::space::{submasks, Mask};

use super::{ConditionalBase, Inconsistency, Pair, Rule, Step};

/// Rule instances, with the antecedent of `(E, F)` being `E ∪ F`:
/// - CAND: `(E1,F1), (E2,F2)` with one antecedent give `(E1∩E2, F1∪F2)`;
/// - CM: the same premises give `(E1∩E2, E1∩F2)`;
/// - RW: `(E,F)` gives `(E∪X, F∖X)` for `X ⊆ F`;
/// - CUT: `(E1,F1)` and `(E2,F2)` with `E2∪F2 = E1` give `(E2, F2∪F1)`;
/// - OR: `(E1,F1), (E2,F2)` with `E1∩F2 = E2∩F1 = ∅` give `(E1∪E2, F1∪F2)`.
///
/// CUT derives its strongest conclusion; the others follow by RW.
struct Engine {
    n: usize,
    present: Vec<u64>,
    pairs: Vec<Pair>,
    origin: Vec<(Rule, Vec<u32>)>,
    by_antecedent: HashMap<Mask, Vec<u32>>,
    by_positive: HashMap<Mask, Vec<u32>>,
    queue: VecDeque<u32>,
    first_violation: Option<u32>,
}

impl Engine {
    fn new(n: usize) -> Self {
        let slots = 1usize << (2 * n);
        Self {
            n,
            present: vec![0; slots.div_ceil(64)],
            pairs: Vec::new(),
            origin: Vec::new(),
            by_antecedent: HashMap::new(),
            by_positive: HashMap::new(),
            queue: VecDeque::new(),
            first_violation: None,
        }
    }

    fn slot(&self, (e, f): Pair) -> usize {
        e as usize | (f as usize) << self.n
    }

    fn add(&mut self, pair: Pair, rule: Rule, premises: &[u32]) {
        let slot = self.slot(pair);
        let (word, bit) = (slot / 64, 1u64 << (slot % 64));
        if self.present[word] & bit != 0 {
            return;
        }
        self.present[word] |= bit;
        let id = self.pairs.len() as u32;
        self.pairs.push(pair);
        self.origin.push((rule, premises.to_vec()));
        self.by_antecedent.entry(pair.0 | pair.1).or_default().push(id);
        self.by_positive.entry(pair.0).or_default().push(id);
        if pair.0 == 0 && self.first_violation.is_none() {
            self.first_violation = Some(id);
        }
        self.queue.push_back(id);
    }

    fn run(&mut self) {
        while let Some(id) = self.queue.pop_front() {
            let (e, f) = self.pairs[id as usize];
            let antecedent = e | f;

            for x in submasks(f).skip(1) {
                self.add((e | x, f & !x), Rule::Rw, &[id]);
            }

            let same: Vec<u32> = self.by_antecedent[&antecedent].clone();
            for other in same {
                let (e2, f2) = self.pairs[other as usize];
                self.add((e & e2, f | f2), Rule::CAnd, &[id, other]);
                self.add((e & e2, e & f2), Rule::Cm, &[id, other]);
                self.add((e & e2, e2 & f), Rule::Cm, &[other, id]);
            }

            // This pair as the first CUT premise, then as the second.
            if let Some(seconds) = self.by_antecedent.get(&e).cloned() {
                for other in seconds {
                    let (e2, f2) = self.pairs[other as usize];
                    self.add((e2, f2 | f), Rule::Cut, &[id, other]);
                }
            }
            if let Some(firsts) = self.by_positive.get(&antecedent).cloned() {
                for other in firsts {
                    let f1 = self.pairs[other as usize].1;
                    self.add((e, f | f1), Rule::Cut, &[other, id]);
                }
            }

            for other in 0..self.pairs.len() as u32 {
                let (e2, f2) = self.pairs[other as usize];
                if e & f2 == 0 && e2 & f == 0 {
                    self.add((e | e2, f | f2), Rule::Or, &[id, other]);
                }
            }
        }
    }

    /// Steps deriving `id`, each after the steps of its premises.
    fn chain(&self, id: u32) -> Vec<Step> {
        let mut seen = HashSet::new();
        let mut order = Vec::new();
        let mut stack = vec![(id, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                order.push(node);
                continue;
            }
            if !seen.insert(node) {
                continue;
            }
            stack.push((node, true));
            for &p in self.origin[node as usize].1.iter().rev() {
                if !seen.contains(&p) {
                    stack.push((p, false));
                }
            }
        }
        order
            .into_iter()
            .map(|node| {
                let (rule, premises) = &self.origin[node as usize];
                Step {
                    pair: self.pairs[node as usize],
                    rule: *rule,
                    premises: premises.iter().map(|&p| self.pairs[p as usize]).collect(),
                }
            })
            .collect()
    }
}

/// Least superset of `kb` closed under CAND, OR, RW, CM and CUT.
///
/// A derived pair `(∅, F)` breaks consistency preservation; the closure is
/// still completed and the first such pair is recorded with its derivation.
pub fn close_p(kb: &ConditionalBase) -> ConditionalBase {
    let mut engine = Engine::new(kb.space().len());
    for pair in kb.pairs() {
        engine.add(pair, Rule::Premise, &[]);
    }
    engine.run();

    let inconsistency = engine.first_violation.map(|id| Inconsistency {
        pair: engine.pairs[id as usize],
        chain: engine.chain(id),
    });
    let mut closed = kb.clone();
    closed.pairs = engine.pairs.iter().copied().collect();
    closed.closed = true;
    closed.inconsistency = inconsistency;
    closed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preferential::ReflexivePolicy;
    use crate::space::StateSpace;
    use crate::AtomUniverse;

    #[test]
    fn closure_is_idempotent() {
        let u = AtomUniverse::new(&["b", "f", "p"]).unwrap();
        let kb = ConditionalBase::from_rules(u, &[("b", "f"), ("p", "b"), ("p", "!f")], ReflexivePolicy::Reject)
            .unwrap();
        let once = close_p(&kb);
        let twice = close_p(&once);
        assert_eq!(once.pairs().collect::<Vec<_>>(), twice.pairs().collect::<Vec<_>>());
        assert!(once.is_consistent());
    }

    #[test]
    fn contradictory_conclusions_are_flagged_with_a_chain() {
        let u = AtomUniverse::new(&["a", "b"]).unwrap();
        let kb = ConditionalBase::from_rules(u, &[("a", "b"), ("a", "!b")], ReflexivePolicy::Reject).unwrap();
        let closed = close_p(&kb);
        let bad = closed.inconsistency().expect("CP violation");
        assert_eq!(bad.pair.0, 0);
        let last = bad.chain.last().unwrap();
        assert_eq!(last.pair, bad.pair);
        let premises: Vec<_> = bad.chain.iter().filter(|s| s.rule == Rule::Premise).collect();
        assert!(!premises.is_empty());
        // Each step's premises appear earlier in the chain.
        for (i, step) in bad.chain.iter().enumerate() {
            for p in &step.premises {
                assert!(bad.chain[..i].iter().any(|s| s.pair == *p));
            }
        }
        assert!(bad.replays_on(&kb));
        let mut forged = bad.clone();
        forged.chain.last_mut().unwrap().rule = Rule::Or;
        assert!(!forged.replays_on(&kb));
    }

    #[test]
    fn single_pair_closure_on_two_states() {
        // {s1} > {s2}: RW gives ({s1,s2}, ∅), CM gives ({s1}, ∅).
        let space = StateSpace::numbered(2).unwrap();
        let kb = ConditionalBase::from_pairs(space, [(0b01, 0b10)]).unwrap();
        let closed = close_p(&kb);
        let pairs: Vec<Pair> = closed.pairs().collect();
        assert_eq!(pairs, vec![(0b01, 0b00), (0b01, 0b10), (0b11, 0b00)]);
    }
}
