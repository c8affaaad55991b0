//! Exact-rational uncertainty measures and the relations they induce.

mod conditioning;
mod recognizers;

pub use conditioning::{condition_measure, Conditioned, ConditioningRule};
pub use recognizers::{
    brute_force_acceptance, brute_force_ct, classify_acceptance_belief, is_big_stepped,
    is_context_tolerant_belief, recognize_ct_plausibility, BeliefCase, BeliefClassification,
    PlausibilityRecognition, Via,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::relations::ConfidenceRelation;
use crate::space::{is_subset, members, Event, Mask, StateSpace};

pub type Rational = BigRational;

/// Parses `"3/10"`, `"0.3"` or `"1"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if (whole.is_empty() && frac.is_empty())
        || !whole.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(num, den);
    Ok(if negative { -r } else { r })
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn check_unit(r: &Rational, what: &str) -> Result<()> {
    if *r < Rational::zero() || *r > Rational::one() {
        return Err(Error::InvalidMeasure(format!("{what} = {r} is outside [0,1]")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetFunction {
    P,
    Pi,
    N,
    Bel,
    Pl,
}

impl SetFunction {
    pub fn name(self) -> &'static str {
        match self {
            SetFunction::P => "P",
            SetFunction::Pi => "Pi",
            SetFunction::N => "N",
            SetFunction::Bel => "Bel",
            SetFunction::Pl => "Pl",
        }
    }
}

impl fmt::Display for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p" | "probability" => Ok(SetFunction::P),
            "pi" | "π" | "possibility" => Ok(SetFunction::Pi),
            "n" | "necessity" => Ok(SetFunction::N),
            "bel" | "belief" => Ok(SetFunction::Bel),
            "pl" | "plausibility" => Ok(SetFunction::Pl),
            _ => Err(Error::Format(format!("unknown set function `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityDistribution {
    space: StateSpace,
    p: Vec<Rational>,
}

impl ProbabilityDistribution {
    pub fn new(space: StateSpace, p: Vec<Rational>) -> Result<Self> {
        if p.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} values for {} states",
                p.len(),
                space.len()
            )));
        }
        for (i, v) in p.iter().enumerate() {
            check_unit(v, &format!("p({})", space.names()[i]))?;
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("probabilities sum to {total}")));
        }
        Ok(Self { space, p })
    }

    /// Uniform distribution on `n` numbered states.
    pub fn uniform(n: usize) -> Result<Self> {
        let space = StateSpace::with_limit(
            &(1..=n).map(|i| format!("s{i}")).collect::<Vec<_>>(),
            crate::space::MAX_STATES,
        )?;
        Self::new(space, vec![rational(1, n as i64); n])
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.p
    }

    pub fn prob(&self, a: Mask) -> Rational {
        members(a).map(|i| &self.p[i]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilityDistribution {
    space: StateSpace,
    pi: Vec<Rational>,
}

impl PossibilityDistribution {
    pub fn new(space: StateSpace, pi: Vec<Rational>) -> Result<Self> {
        if pi.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} values for {} states",
                pi.len(),
                space.len()
            )));
        }
        for (i, v) in pi.iter().enumerate() {
            check_unit(v, &format!("pi({})", space.names()[i]))?;
        }
        if !pi.iter().any(|v| v.is_one()) {
            return Err(Error::InvalidMeasure(
                "possibility distribution is not normalized (no state has possibility 1)".into(),
            ));
        }
        Ok(Self { space, pi })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.pi
    }

    /// `Π(A) = max_{s∈A} π(s)`, with `Π(∅) = 0`.
    pub fn possibility(&self, a: Mask) -> Rational {
        members(a)
            .map(|i| &self.pi[i])
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `N(A) = 1 − Π(Ā)`.
    pub fn necessity(&self, a: Mask) -> Rational {
        Rational::one() - self.possibility(!a & self.space.full_mask())
    }
}

/// Masses on focal sets, kept sorted by bit-vector with zero masses dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassAssignment {
    space: StateSpace,
    focal: Vec<(Mask, Rational)>,
}

impl MassAssignment {
    /// Duplicate focal sets are merged by adding their masses.
    pub fn new(space: StateSpace, masses: Vec<(Mask, Rational)>) -> Result<Self> {
        let full = space.full_mask();
        let mut focal: Vec<(Mask, Rational)> = Vec::new();
        let mut sorted = masses;
        sorted.sort_by_key(|(m, _)| *m);
        for (m, v) in sorted {
            if m & !full != 0 {
                return Err(Error::InvalidMeasure(format!("focal set {m:#b} outside the space")));
            }
            if v < Rational::zero() {
                return Err(Error::InvalidMeasure(format!(
                    "negative mass {v} on {}",
                    space.format(m)
                )));
            }
            match focal.last_mut() {
                Some((last, acc)) if *last == m => *acc += v,
                _ => focal.push((m, v)),
            }
        }
        focal.retain(|(_, v)| !v.is_zero());
        if focal.iter().any(|(m, _)| *m == 0) {
            return Err(Error::InvalidMeasure("the empty set carries positive mass".into()));
        }
        for (m, v) in &focal {
            check_unit(v, &format!("m({})", space.format(*m)))?;
        }
        let total: Rational = focal.iter().map(|(_, v)| v).sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("masses sum to {total}")));
        }
        Ok(Self { space, focal })
    }

    pub fn from_events(space: StateSpace, masses: Vec<(Event, Rational)>) -> Result<Self> {
        let masses = masses
            .into_iter()
            .map(|(e, v)| Ok((space.check(e)?, v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, masses)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn focal(&self) -> &[(Mask, Rational)] {
        &self.focal
    }

    pub fn mass(&self, a: Mask) -> Rational {
        self.focal
            .iter()
            .find(|(m, _)| *m == a)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// `Bel(A) = Σ_{∅≠E⊆A} m(E)`.
    pub fn belief(&self, a: Mask) -> Rational {
        self.focal
            .iter()
            .filter(|(e, _)| is_subset(*e, a))
            .map(|(_, v)| v)
            .sum()
    }

    /// `Pl(A) = Σ_{E∩A≠∅} m(E)`.
    pub fn plausibility(&self, a: Mask) -> Rational {
        self.focal
            .iter()
            .filter(|(e, _)| e & a != 0)
            .map(|(_, v)| v)
            .sum()
    }

    /// The same masses restricted to focal sets inside `c` (unnormalized).
    pub(crate) fn focal_within(&self, c: Mask) -> impl Iterator<Item = &(Mask, Rational)> {
        self.focal.iter().filter(move |(e, _)| is_subset(*e, c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Probability(ProbabilityDistribution),
    Possibility(PossibilityDistribution),
    Mass(MassAssignment),
}

impl Measure {
    pub fn space(&self) -> &StateSpace {
        match self {
            Measure::Probability(p) => p.space(),
            Measure::Possibility(p) => p.space(),
            Measure::Mass(m) => m.space(),
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Measure::Probability(_) => "probability",
            Measure::Possibility(_) => "possibility",
            Measure::Mass(_) => "mass",
        }
    }

    /// Set functions this measure can be evaluated as.
    pub fn kinds(&self) -> &'static [SetFunction] {
        match self {
            Measure::Probability(_) => &[SetFunction::P],
            Measure::Possibility(_) => &[SetFunction::Pi, SetFunction::N],
            Measure::Mass(_) => &[SetFunction::Bel, SetFunction::Pl],
        }
    }

    fn mismatch(&self, kind: SetFunction) -> Error {
        Error::KindMismatch {
            kind: kind.name(),
            measure: self.type_name(),
        }
    }

    fn eval_mask(&self, kind: SetFunction, a: Mask) -> Result<Rational> {
        match (self, kind) {
            (Measure::Probability(p), SetFunction::P) => Ok(p.prob(a)),
            (Measure::Possibility(p), SetFunction::Pi) => Ok(p.possibility(a)),
            (Measure::Possibility(p), SetFunction::N) => Ok(p.necessity(a)),
            (Measure::Mass(m), SetFunction::Bel) => Ok(m.belief(a)),
            (Measure::Mass(m), SetFunction::Pl) => Ok(m.plausibility(a)),
            _ => Err(self.mismatch(kind)),
        }
    }

    /// Values on all `2^n` events, indexed by bit-vector.
    pub fn table(&self, kind: SetFunction) -> Result<Vec<Rational>> {
        if !self.kinds().contains(&kind) {
            return Err(self.mismatch(kind));
        }
        (0..=self.space().full_mask())
            .map(|a| self.eval_mask(kind, a))
            .collect()
    }
}

impl From<ProbabilityDistribution> for Measure {
    fn from(p: ProbabilityDistribution) -> Self {
        Measure::Probability(p)
    }
}

impl From<PossibilityDistribution> for Measure {
    fn from(p: PossibilityDistribution) -> Self {
        Measure::Possibility(p)
    }
}

impl From<MassAssignment> for Measure {
    fn from(m: MassAssignment) -> Self {
        Measure::Mass(m)
    }
}

pub fn evaluate(measure: &Measure, kind: SetFunction, a: Event) -> Result<Rational> {
    let a = measure.space().check(a)?;
    measure.eval_mask(kind, a)
}

/// Dense ranks of a value table: equal values share a rank and larger
/// values get larger ranks.
pub(crate) fn ranks<T: Ord>(values: &[T]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
    let mut ranks = vec![0u32; values.len()];
    let mut rank = 0;
    for w in 0..idx.len() {
        if w > 0 && values[idx[w]] != values[idx[w - 1]] {
            rank += 1;
        }
        ranks[idx[w]] = rank;
    }
    ranks
}

/// The complete preorder `A ≥ B ⇔ f(A) ≥ f(B)` of a value table.
pub fn relation_from_values<T: Ord>(space: &StateSpace, values: &[T]) -> ConfidenceRelation {
    let r = ranks(values);
    ConfidenceRelation::from_fn(space.clone(), |a, b| r[a as usize] >= r[b as usize])
}

pub fn induce_relation(measure: &Measure, kind: SetFunction) -> Result<ConfidenceRelation> {
    Ok(relation_from_values(measure.space(), &measure.table(kind)?))
}

/// `A >sup B ⇔ Π(A∖B) > Π(B∖A)`, and `A ≥sup B ⇔ A >sup B or B ⊆ A`.
pub fn induce_sup_relation(pd: &PossibilityDistribution) -> ConfidenceRelation {
    let full = pd.space().full_mask();
    let table: Vec<Rational> = (0..=full).map(|a| pd.possibility(a)).collect();
    let r = ranks(&table);
    ConfidenceRelation::from_fn(pd.space().clone(), |a, b| {
        r[(a & !b) as usize] > r[(b & !a) as usize] || is_subset(b, a)
    })
}
