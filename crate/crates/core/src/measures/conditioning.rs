//! Conditioning of measures on an event.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::relations::ConfidenceRelation;
use crate::space::{Event, Mask};

use super::{induce_relation, Measure, Rational, SetFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditioningRule {
    /// `g(A∩C)/g(C)` for `P`, `Π` and `Pl`; `Bel` and `N` through their duals.
    Dempster,
    /// `g(A∩C)/g(C)` for `Bel` and `N`; `Pl` and `Π` through their duals.
    Geometric,
    /// Min-based for possibility: `Π(A|C) = 1` if `Π(A∩C) = Π(C) > 0`,
    /// else `Π(A∩C)`. Other measures are conditioned as relations.
    Qualitative,
}

impl ConditioningRule {
    pub fn name(self) -> &'static str {
        match self {
            ConditioningRule::Dempster => "dempster",
            ConditioningRule::Geometric => "geometric",
            ConditioningRule::Qualitative => "qualitative",
        }
    }
}

impl fmt::Display for ConditioningRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditioningRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dempster" | "bayes" => Ok(ConditioningRule::Dempster),
            "geometric" => Ok(ConditioningRule::Geometric),
            "qualitative" | "min" => Ok(ConditioningRule::Qualitative),
            _ => Err(Error::Format(format!("unknown conditioning rule `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conditioned {
    /// Conditional values on all events, indexed by bit-vector.
    Table(Vec<Rational>),
    /// `A ≥_C B ⇔ A∩C ≥ B∩C` on the induced order.
    Relation(ConfidenceRelation),
}

/// `g(A∩C)/g(C)` on every event.
fn ratio(g: &[Rational], c: Mask) -> Result<Vec<Rational>> {
    let denom = &g[c as usize];
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok((0..g.len()).map(|a| &g[a & c as usize] / denom).collect())
}

/// `1 − h(Ā)` on every event.
fn dual(h: &[Rational], full: Mask) -> Vec<Rational> {
    (0..h.len())
        .map(|a| Rational::one() - &h[!(a as Mask) as usize & full as usize])
        .collect()
}

/// The set function whose conditional is dualised to obtain `kind`.
fn dual_kind(kind: SetFunction) -> SetFunction {
    match kind {
        SetFunction::P => SetFunction::P,
        SetFunction::Pi => SetFunction::N,
        SetFunction::N => SetFunction::Pi,
        SetFunction::Bel => SetFunction::Pl,
        SetFunction::Pl => SetFunction::Bel,
    }
}

pub fn condition_measure(
    measure: &Measure,
    kind: SetFunction,
    context: Event,
    rule: ConditioningRule,
) -> Result<Conditioned> {
    let space = measure.space();
    let c = space.check(context)?;
    let full = space.full_mask();
    // Rejects a kind the measure cannot be evaluated as.
    let g = measure.table(kind)?;

    let direct = match (rule, kind) {
        (ConditioningRule::Qualitative, SetFunction::Pi) => {
            return Ok(Conditioned::Table(qualitative_pi(&g, c)));
        }
        (ConditioningRule::Qualitative, SetFunction::N) => {
            let pi = measure.table(SetFunction::Pi)?;
            return Ok(Conditioned::Table(dual(&qualitative_pi(&pi, c), full)));
        }
        (ConditioningRule::Qualitative, _) => {
            return Ok(Conditioned::Relation(induce_relation(measure, kind)?.condition(context)?));
        }
        (_, SetFunction::P) => true,
        (ConditioningRule::Dempster, k) => matches!(k, SetFunction::Pi | SetFunction::Pl),
        (ConditioningRule::Geometric, k) => matches!(k, SetFunction::N | SetFunction::Bel),
    };
    if direct {
        return Ok(Conditioned::Table(ratio(&g, c)?));
    }
    let h = measure.table(dual_kind(kind))?;
    Ok(Conditioned::Table(dual(&ratio(&h, c)?, full)))
}

fn qualitative_pi(pi: &[Rational], c: Mask) -> Vec<Rational> {
    let pc = &pi[c as usize];
    (0..pi.len())
        .map(|a| {
            let v = &pi[a & c as usize];
            if v == pc && !pc.is_zero() {
                Rational::one()
            } else {
                v.clone()
            }
        })
        .collect()
}
