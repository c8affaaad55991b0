//! Conditional knowledge bases read as disjoint event pairs, their closure
//! under the preferential rules, and entailment.
//!
//! An assertion `φ |~ ψ` is stored as the pair `(E, F)` with `E = [φ∧ψ]` and
//! `F = [φ∧¬ψ]`; it holds in a relation iff `E > F`.

mod closure;
mod roundtrip;

pub use closure::close_p;
pub use roundtrip::{base_relation_verdicts, rule_verdicts, strict_disjoint_pairs};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::AtomUniverse;
use crate::space::{Mask, StateSpace};

/// `(E, F)` with `E ∩ F = ∅`.
pub type Pair = (Mask, Mask);

/// Normalizes antecedent `A` and consequent `C` to `(A ∩ C, A ∖ C)`.
pub fn normalize(antecedent: Mask, consequent: Mask) -> Pair {
    (antecedent & consequent, antecedent & !consequent)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Premise,
    CAnd,
    Or,
    Rw,
    Cm,
    Cut,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Premise => "premise",
            Rule::CAnd => "CAND",
            Rule::Or => "OR",
            Rule::Rw => "RW",
            Rule::Cm => "CM",
            Rule::Cut => "CUT",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rule application in a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub pair: Pair,
    pub rule: Rule,
    pub premises: Vec<Pair>,
}

/// A derived pair `(∅, F)` and the steps leading to it, premises first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub pair: Pair,
    pub chain: Vec<Step>,
}

impl Step {
    /// Whether `pair` follows from `premises` by one application of `rule`.
    /// Premise steps are checked against the base separately.
    pub fn is_valid(&self) -> bool {
        let (e, f) = self.pair;
        match (self.rule, self.premises.as_slice()) {
            (Rule::Premise, []) => true,
            (Rule::Rw, &[(e1, f1)]) => is_sub(e1, e) && e | f == e1 | f1 && e & f == 0,
            (Rule::CAnd, &[(e1, f1), (e2, f2)]) => {
                e1 | f1 == e2 | f2 && (e, f) == (e1 & e2, f1 | f2)
            }
            (Rule::Cm, &[(e1, f1), (e2, f2)]) => e1 | f1 == e2 | f2 && (e, f) == (e1 & e2, e1 & f2),
            (Rule::Cut, &[(e1, f1), (e2, f2)]) => e2 | f2 == e1 && (e, f) == (e2, f2 | f1),
            (Rule::Or, &[(e1, f1), (e2, f2)]) => {
                e1 & f2 == 0 && e2 & f1 == 0 && (e, f) == (e1 | e2, f1 | f2)
            }
            _ => false,
        }
    }
}

fn is_sub(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

impl Inconsistency {
    /// Re-derives the chain: premise steps are in `kb`, every other step is
    /// a valid rule application on earlier pairs, and the last pair is
    /// `self.pair` with an empty positive part.
    pub fn replays_on(&self, kb: &ConditionalBase) -> bool {
        let mut known: BTreeSet<Pair> = BTreeSet::new();
        for step in &self.chain {
            let ok = match step.rule {
                Rule::Premise => kb.contains(step.pair),
                _ => step.is_valid() && step.premises.iter().all(|p| known.contains(p)),
            };
            if !ok {
                return false;
            }
            known.insert(step.pair);
        }
        self.pair.0 == 0 && self.chain.last().map(|s| s.pair) == Some(self.pair)
    }
}

/// Whether assertions whose consequent follows from their antecedent
/// (`F = ∅`) may be stated as premises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflexivePolicy {
    #[default]
    Reject,
    Allow,
}

#[derive(Debug, Clone)]
pub struct ConditionalBase {
    space: StateSpace,
    universe: Option<AtomUniverse>,
    pairs: BTreeSet<Pair>,
    closed: bool,
    inconsistency: Option<Inconsistency>,
}

impl PartialEq for ConditionalBase {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.pairs == other.pairs && self.closed == other.closed
    }
}

impl ConditionalBase {
    pub fn new(space: StateSpace) -> Self {
        Self {
            space,
            universe: None,
            pairs: BTreeSet::new(),
            closed: false,
            inconsistency: None,
        }
    }

    pub fn over(universe: AtomUniverse) -> Self {
        let mut kb = Self::new(universe.space().clone());
        kb.universe = Some(universe);
        kb
    }

    /// A base holding the given pairs as premises.
    pub fn from_pairs(space: StateSpace, pairs: impl IntoIterator<Item = Pair>) -> Result<Self> {
        let mut kb = Self::new(space);
        for p in pairs {
            kb.insert_pair(p)?;
        }
        Ok(kb)
    }

    /// Loads `if |~ then` rules written as formulas over `universe`.
    pub fn from_rules<S: AsRef<str>>(
        universe: AtomUniverse,
        rules: &[(S, S)],
        policy: ReflexivePolicy,
    ) -> Result<Self> {
        let mut kb = Self::over(universe);
        for (antecedent, consequent) in rules {
            kb.add_formulas(antecedent.as_ref(), consequent.as_ref(), policy)?;
        }
        Ok(kb)
    }

    /// Adds `φ |~ ψ` given as formula text.
    pub fn add_formulas(&mut self, antecedent: &str, consequent: &str, policy: ReflexivePolicy) -> Result<Pair> {
        let pair = self.query_pair_of(antecedent, consequent)?;
        if pair.1 == 0 && policy == ReflexivePolicy::Reject {
            return Err(Error::ReflexiveAssertion(format!("{antecedent} |~ {consequent}")));
        }
        self.insert_pair(pair)?;
        Ok(pair)
    }

    /// Adds the assertion with antecedent event `A` and consequent event `C`.
    pub fn add_events(&mut self, antecedent: Mask, consequent: Mask, policy: ReflexivePolicy) -> Result<Pair> {
        if antecedent == 0 {
            return Err(Error::EmptyAntecedent(self.space.format(antecedent)));
        }
        let pair = normalize(antecedent, consequent);
        if pair.1 == 0 && policy == ReflexivePolicy::Reject {
            return Err(Error::ReflexiveAssertion(format!(
                "{} |~ {}",
                self.space.format(antecedent),
                self.space.format(consequent)
            )));
        }
        self.insert_pair(pair)?;
        Ok(pair)
    }

    fn insert_pair(&mut self, (e, f): Pair) -> Result<()> {
        let full = self.space.full_mask();
        if (e | f) & !full != 0 || e & f != 0 {
            return Err(Error::Format(format!(
                "pair ({}, {}) is not a disjoint pair of events",
                self.space.format(e),
                self.space.format(f)
            )));
        }
        if e | f == 0 {
            return Err(Error::EmptyAntecedent(self.space.format(0)));
        }
        self.pairs.insert((e, f));
        self.closed = false;
        self.inconsistency = None;
        Ok(())
    }

    /// Adds `(X, ∅)`, read `X > ∅`, for every non-empty event `X`.
    pub fn add_plausible_events(&mut self) {
        for x in 1..=self.space.full_mask() {
            self.pairs.insert((x, 0));
        }
        self.closed = false;
        self.inconsistency = None;
    }

    /// Normalized pair of `φ |~ ψ` over this base's atoms.
    pub fn query_pair_of(&self, antecedent: &str, consequent: &str) -> Result<Pair> {
        let universe = self.universe.as_ref().ok_or_else(|| {
            Error::Format("the knowledge base has no atoms to interpret formulas".into())
        })?;
        let a = universe.models_mask(&universe.parse(antecedent)?);
        if a == 0 {
            return Err(Error::EmptyAntecedent(antecedent.trim().to_string()));
        }
        let c = universe.models_mask(&universe.parse(consequent)?);
        Ok(normalize(a, c))
    }

    /// Normalized pair of a query written `φ |~ ψ`.
    pub fn query_pair(&self, query: &str) -> Result<Pair> {
        let (a, c) = split_query(query)?;
        self.query_pair_of(a, c)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn universe(&self) -> Option<&AtomUniverse> {
        self.universe.as_ref()
    }

    /// Pairs in ascending `(E, F)` order.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.contains(&pair)
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The first consistency-preservation violation met during closure.
    pub fn inconsistency(&self) -> Option<&Inconsistency> {
        self.inconsistency.as_ref()
    }

    pub fn is_consistent(&self) -> bool {
        self.inconsistency.is_none() && !self.pairs.iter().any(|&(e, _)| e == 0)
    }

    /// Whether every pair of `self` is in `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Renders a pair as `A |~ C` with `A = E ∪ F`, `C = E`.
    pub fn describe(&self, (e, f): Pair) -> String {
        format!("{} |~ {}", self.space.format(e | f), self.space.format(e))
    }
}

/// Splits `φ |~ ψ` into its two formula texts.
pub fn split_query(query: &str) -> Result<(&str, &str)> {
    match query.split_once("|~") {
        Some((a, c)) if !a.trim().is_empty() && !c.trim().is_empty() && !c.contains("|~") => {
            Ok((a.trim(), c.trim()))
        }
        _ => Err(Error::MalformedQuery(query.to_string())),
    }
}

/// Whether the closure of `kb` contains the pair.
pub fn entails(kb: &ConditionalBase, pair: Pair) -> Result<bool> {
    if pair.0 | pair.1 == 0 {
        return Err(Error::EmptyAntecedent(kb.space().format(0)));
    }
    if kb.is_closed() {
        return Ok(kb.contains(pair));
    }
    Ok(close_p(kb).contains(pair))
}

/// Whether the closure of `kb` contains `φ |~ ψ`, written as a query string.
pub fn entails_query(kb: &ConditionalBase, query: &str) -> Result<bool> {
    entails(kb, kb.query_pair(query)?)
}
