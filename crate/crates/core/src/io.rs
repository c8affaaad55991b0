//! JSON file formats. Events are arrays of state names; rationals are
//! strings such as `"3/10"` or `"0.3"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::AtomUniverse;
use crate::measures::{
    parse_rational, MassAssignment, Measure, PossibilityDistribution, ProbabilityDistribution,
};
use crate::preferential::{ConditionalBase, ReflexivePolicy};
use crate::relations::{lift_strict_pairs, ConfidenceRelation};
use crate::representation::Family;
use crate::space::{Event, Mask, StateSpace};

fn space_of(states: &[String], max_states: usize) -> Result<StateSpace> {
    StateSpace::with_limit(states, max_states)
}

fn event_of(space: &StateSpace, names: &[String]) -> Result<Event> {
    space.event_of(names)
}

fn names(space: &StateSpace, m: Mask) -> Vec<String> {
    space.names_of(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub states: Vec<String>,
    pub pairs: Vec<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub strict_only: bool,
}

impl RelationFile {
    pub fn from_relation(rel: &ConfidenceRelation) -> Self {
        let space = rel.space();
        Self {
            states: space.names().to_vec(),
            pairs: rel
                .weak_pairs()
                .into_iter()
                .map(|(a, b)| [names(space, a), names(space, b)])
                .collect(),
            strict_only: false,
        }
    }

    /// With `strict_only`, the pairs are a strict order lifted by inclusion.
    pub fn to_relation(&self, max_states: usize) -> Result<ConfidenceRelation> {
        let space = space_of(&self.states, max_states)?;
        let pairs = self
            .pairs
            .iter()
            .map(|[a, b]| Ok((event_of(&space, a)?, event_of(&space, b)?)))
            .collect::<Result<Vec<_>>>()?;
        if self.strict_only {
            lift_strict_pairs(&space, &pairs)
        } else {
            ConfidenceRelation::from_pairs(space, &pairs)
        }
    }
}

pub fn parse_relation(text: &str, max_states: usize) -> Result<ConfidenceRelation> {
    serde_json::from_str::<RelationFile>(text)?.to_relation(max_states)
}

pub fn relation_json(rel: &ConfidenceRelation) -> String {
    to_json(&RelationFile::from_relation(rel))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureType {
    Probability,
    Possibility,
    Mass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub states: Vec<String>,
    #[serde(rename = "type")]
    pub kind: MeasureType,
    /// State name, or for masses the focal set's names joined by `,`.
    pub values: BTreeMap<String, String>,
}

/// `"s1,s3"` in state order.
pub fn focal_key(space: &StateSpace, m: Mask) -> String {
    names(space, m).join(",")
}

impl MeasureFile {
    pub fn from_measure(measure: &Measure) -> Self {
        let space = measure.space();
        let (kind, values): (MeasureType, BTreeMap<String, String>) = match measure {
            Measure::Probability(p) => (
                MeasureType::Probability,
                space.names().iter().cloned().zip(p.values().iter().map(|v| v.to_string())).collect(),
            ),
            Measure::Possibility(p) => (
                MeasureType::Possibility,
                space.names().iter().cloned().zip(p.values().iter().map(|v| v.to_string())).collect(),
            ),
            Measure::Mass(m) => (
                MeasureType::Mass,
                m.focal()
                    .iter()
                    .map(|(e, v)| (focal_key(space, *e), v.to_string()))
                    .collect(),
            ),
        };
        Self {
            states: space.names().to_vec(),
            kind,
            values,
        }
    }

    pub fn to_measure(&self, max_states: usize) -> Result<Measure> {
        let space = space_of(&self.states, max_states)?;
        match self.kind {
            MeasureType::Probability | MeasureType::Possibility => {
                for key in self.values.keys() {
                    if space.index_of(key).is_none() {
                        return Err(Error::UnknownState(key.clone()));
                    }
                }
                let values = space
                    .names()
                    .iter()
                    .map(|s| match self.values.get(s) {
                        Some(v) => parse_rational(v),
                        None => Ok(num_traits::Zero::zero()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(if self.kind == MeasureType::Probability {
                    ProbabilityDistribution::new(space, values)?.into()
                } else {
                    PossibilityDistribution::new(space, values)?.into()
                })
            }
            MeasureType::Mass => {
                let masses = self
                    .values
                    .iter()
                    .map(|(key, v)| {
                        let members: Vec<String> = key
                            .split(',')
                            .map(str::trim)
                            .filter(|s| !s.is_empty())
                            .map(String::from)
                            .collect();
                        Ok((space.mask_of(&members)?, parse_rational(v)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MassAssignment::new(space, masses)?.into())
            }
        }
    }
}

pub fn parse_measure(text: &str, max_states: usize) -> Result<Measure> {
    serde_json::from_str::<MeasureFile>(text)?.to_measure(max_states)
}

pub fn measure_json(measure: &Measure) -> String {
    to_json(&MeasureFile::from_measure(measure))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    #[serde(rename = "if")]
    pub antecedent: String,
    #[serde(rename = "then")]
    pub consequent: String,
}

/// A state named explicitly, with the atoms true in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledState {
    pub name: String,
    pub atoms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbFile {
    pub atoms: Vec<String>,
    /// Without this, the states are all valuations of `atoms`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<LabelledState>>,
    pub rules: Vec<RuleEntry>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_reflexive: bool,
}

impl KbFile {
    pub fn universe(&self, max_states: usize) -> Result<AtomUniverse> {
        match &self.states {
            None => AtomUniverse::with_limit(&self.atoms, max_states),
            Some(states) => {
                let names: Vec<&str> = states.iter().map(|s| s.name.as_str()).collect();
                let space = StateSpace::with_limit(&names, max_states)?;
                let labels: Vec<Vec<String>> = states.iter().map(|s| s.atoms.clone()).collect();
                AtomUniverse::labelled(space, &self.atoms, &labels)
            }
        }
    }

    pub fn to_base(&self, max_states: usize, allow_reflexive: bool) -> Result<ConditionalBase> {
        let policy = if allow_reflexive || self.allow_reflexive {
            ReflexivePolicy::Allow
        } else {
            ReflexivePolicy::Reject
        };
        let rules: Vec<(&str, &str)> = self
            .rules
            .iter()
            .map(|r| (r.antecedent.as_str(), r.consequent.as_str()))
            .collect();
        ConditionalBase::from_rules(self.universe(max_states)?, &rules, policy)
    }
}

pub fn parse_kb(text: &str, max_states: usize, allow_reflexive: bool) -> Result<ConditionalBase> {
    serde_json::from_str::<KbFile>(text)?.to_base(max_states, allow_reflexive)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub states: Vec<String>,
    pub members: Vec<Vec<[Vec<String>; 2]>>,
}

impl FamilyFile {
    pub fn from_family(family: &Family) -> Self {
        let space = family.space();
        Self {
            states: space.names().to_vec(),
            members: family
                .members()
                .iter()
                .map(|m| RelationFile::from_relation(m).pairs)
                .collect(),
        }
    }

    pub fn to_family(&self, max_states: usize) -> Result<Family> {
        let space = space_of(&self.states, max_states)?;
        let members = self
            .members
            .iter()
            .map(|pairs| {
                let pairs = pairs
                    .iter()
                    .map(|[a, b]| Ok((event_of(&space, a)?, event_of(&space, b)?)))
                    .collect::<Result<Vec<_>>>()?;
                ConfidenceRelation::from_pairs(space.clone(), &pairs)
            })
            .collect::<Result<Vec<_>>>()?;
        Family::new(space, members)
    }
}

pub fn parse_family(text: &str, max_states: usize) -> Result<Family> {
    serde_json::from_str::<FamilyFile>(text)?.to_family(max_states)
}

pub fn family_json(family: &Family) -> String {
    to_json(&FamilyFile::from_family(family))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}
