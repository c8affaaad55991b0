//! Seeded fixture generators.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::measures::{rational, MassAssignment, PossibilityDistribution, ProbabilityDistribution, Rational};
use crate::relations::ConfidenceRelation;
use crate::representation::{random_acceptance_preorder, RandomPreorder};
use crate::space::{Mask, StateSpace, MAX_STATES};

/// States `s1..sn`, allowing up to [`MAX_STATES`].
pub fn numbered_space(n: usize) -> Result<StateSpace> {
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    StateSpace::with_limit(&names, MAX_STATES)
}

/// The uniform distribution on `k` states.
pub fn lottery(k: usize) -> Result<ProbabilityDistribution> {
    ProbabilityDistribution::uniform(k)
}

/// `p(s_i) = 2^(n−i) / (2^n − 1)`: each state outweighs all later ones.
pub fn bigstep(n: usize) -> Result<ProbabilityDistribution> {
    let space = numbered_space(n)?;
    let total: BigInt = (BigInt::from(1) << n) - 1;
    let p = (0..n)
        .map(|i| Rational::new(BigInt::from(1) << (n - 1 - i), total.clone()))
        .collect();
    ProbabilityDistribution::new(space, p)
}

/// Positive integer weights summing to `1` after division by their total.
fn normalized(weights: &[i64]) -> Vec<Rational> {
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| rational(w, total)).collect()
}

/// At most `max_focal` distinct focal sets with integer weights in
/// `1..=max_weight`, normalized. Small weights make ties common.
pub fn random_mass<R: Rng + ?Sized>(
    space: &StateSpace,
    max_focal: usize,
    max_weight: i64,
    rng: &mut R,
) -> Result<MassAssignment> {
    let full = space.full_mask();
    let k = rng.gen_range(1..=max_focal.max(1).min(full as usize));
    let mut sets: Vec<Mask> = (1..=full).collect();
    sets.shuffle(rng);
    sets.truncate(k);
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=max_weight.max(1))).collect();
    MassAssignment::new(space.clone(), sets.into_iter().zip(normalized(&weights)).collect())
}

/// A probability with integer weights in `0..=max_weight`, not all zero.
pub fn random_probability<R: Rng + ?Sized>(
    space: &StateSpace,
    max_weight: i64,
    rng: &mut R,
) -> Result<ProbabilityDistribution> {
    let mut weights: Vec<i64> = (0..space.len()).map(|_| rng.gen_range(0..=max_weight.max(1))).collect();
    if weights.iter().all(|&w| w == 0) {
        let i = rng.gen_range(0..weights.len());
        weights[i] = 1;
    }
    ProbabilityDistribution::new(space.clone(), normalized(&weights))
}

/// A normalized possibility distribution with values in `{0, 1/d, …, 1}`.
pub fn random_possibility<R: Rng + ?Sized>(
    space: &StateSpace,
    denominator: i64,
    rng: &mut R,
) -> Result<PossibilityDistribution> {
    let d = denominator.max(1);
    let mut pi: Vec<Rational> = (0..space.len()).map(|_| rational(rng.gen_range(0..=d), d)).collect();
    let top = rng.gen_range(0..pi.len());
    pi[top] = rational(1, 1);
    PossibilityDistribution::new(space.clone(), pi)
}

pub fn random_relation<R: Rng + ?Sized>(
    space: &StateSpace,
    shape: RandomPreorder,
    rng: &mut R,
) -> Result<ConfidenceRelation> {
    random_acceptance_preorder(space, shape, rng)
}
