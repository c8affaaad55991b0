//! Finite state spaces and events.
//!
//! An event is a subset of the state space encoded as a bit-vector: bit `i`
//! is set when state `i` belongs to the event. All enumeration utilities walk
//! bit-vectors in increasing numeric order, which is the canonical order every
//! other module relies on for reproducible witnesses.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Bit-vector encoding of an event. Only the low `n` bits are meaningful.
pub type Mask = u32;

/// Default cap on the number of states for relation storage
/// (a 2^12 x 2^12 bit matrix is 2 MiB).
pub const MAX_RELATION_STATES: usize = 12;
/// Default cap on the number of states for preorder decomposition.
pub const MAX_DECOMPOSITION_STATES: usize = 5;
/// Default cap on the number of states for exhaustive axiom sweeps whose
/// quantifier ranges over arbitrary event triples.
pub const MAX_SWEEP_STATES: usize = 4;
/// Hard limit imposed by the `u32` event encoding.
pub const MAX_STATES: usize = 24;

/// Identity of a state space, derived from its ordered state names so that
/// spaces loaded from different files with the same states interoperate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(u64);

#[derive(Debug, Clone)]
pub struct StateSpace {
    names: Vec<String>,
    id: SpaceId,
}

impl PartialEq for StateSpace {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.names == other.names
    }
}

impl Eq for StateSpace {}

impl StateSpace {
    /// Builds a space with the default relation-storage limit.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::with_limit(names, MAX_RELATION_STATES)
    }

    pub fn with_limit<S: AsRef<str>>(names: &[S], limit: usize) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptySpace);
        }
        let limit = limit.min(MAX_STATES);
        if names.len() > limit {
            return Err(Error::TooLarge {
                n: names.len(),
                limit,
            });
        }
        let mut seen = HashSet::new();
        let mut owned = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if name.trim().is_empty() || name.contains(',') {
                return Err(Error::InvalidStateName(name.to_string()));
            }
            if !seen.insert(name) {
                return Err(Error::DuplicateState(name.to_string()));
            }
            owned.push(name.to_string());
        }
        // FNV-1a over the names; a collision only matters if two distinct
        // spaces are mixed, which PartialEq still catches via the names.
        let mut hasher = Fnv1a::default();
        owned.hash(&mut hasher);
        Ok(Self {
            names: owned,
            id: SpaceId(hasher.finish()),
        })
    }

    /// Space with states `s1..sn`.
    pub fn numbered(n: usize) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
        Self::with_limit(&names, MAX_STATES)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Mask of the full space `S`.
    pub fn full_mask(&self) -> Mask {
        full_mask(self.len())
    }

    /// Number of events, `2^n`.
    pub fn event_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn event(&self, bits: Mask) -> Event {
        debug_assert_eq!(bits & !self.full_mask(), 0);
        Event {
            space: self.id,
            bits: bits & self.full_mask(),
        }
    }

    pub fn empty(&self) -> Event {
        self.event(0)
    }

    pub fn full(&self) -> Event {
        self.event(self.full_mask())
    }

    pub fn singleton(&self, index: usize) -> Event {
        self.event(1 << index)
    }

    /// Event from state names; unknown names are an error.
    pub fn event_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Event> {
        Ok(self.event(self.mask_of(names)?))
    }

    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Mask> {
        names.iter().try_fold(0, |acc, name| {
            let name = name.as_ref();
            self.index_of(name)
                .map(|i| acc | (1 << i))
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        })
    }

    /// State names of an event, in state order.
    pub fn names_of(&self, bits: Mask) -> Vec<String> {
        members(bits)
            .filter(|&i| i < self.len())
            .map(|i| self.names[i].clone())
            .collect()
    }

    /// `{s1,s3}` style rendering.
    pub fn format(&self, bits: Mask) -> String {
        format!("{{{}}}", self.names_of(bits).join(","))
    }

    /// Checks that an event was built over this space.
    pub fn check(&self, event: Event) -> Result<Mask> {
        if event.space == self.id {
            Ok(event.bits)
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        all_events(self.len()).map(move |m| self.event(m))
    }

    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (Event, Event)> + '_ {
        disjoint_pairs(self.len()).map(move |(a, b)| (self.event(a), self.event(b)))
    }

    pub fn disjoint_triples(&self) -> impl Iterator<Item = (Event, Event, Event)> + '_ {
        disjoint_triples(self.len())
            .map(move |(a, b, c)| (self.event(a), self.event(b), self.event(c)))
    }

    pub fn complement(&self, event: Event) -> Result<Event> {
        Ok(self.event(!self.check(event)? & self.full_mask()))
    }
}

/// An event of a particular state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    space: SpaceId,
    bits: Mask,
}

impl Event {
    pub fn bits(self) -> Mask {
        self.bits
    }

    pub fn space(self) -> SpaceId {
        self.space
    }

    fn same_space(self, other: Event) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn union(self, other: Event) -> Result<Event> {
        self.same_space(other)?;
        Ok(Event {
            space: self.space,
            bits: self.bits | other.bits,
        })
    }

    pub fn intersection(self, other: Event) -> Result<Event> {
        self.same_space(other)?;
        Ok(Event {
            space: self.space,
            bits: self.bits & other.bits,
        })
    }

    pub fn difference(self, other: Event) -> Result<Event> {
        self.same_space(other)?;
        Ok(Event {
            space: self.space,
            bits: self.bits & !other.bits,
        })
    }

    pub fn subset_of(self, other: Event) -> Result<bool> {
        self.same_space(other)?;
        Ok(is_subset(self.bits, other.bits))
    }

    pub fn equals(self, other: Event) -> Result<bool> {
        self.same_space(other)?;
        Ok(self.bits == other.bits)
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in members(self.bits).enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "#{i}")?;
        }
        write!(f, "}}")
    }
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Indices of the states in a mask, ascending.
pub fn members(mut bits: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// All subsets of `mask` in increasing numeric order, `0` and `mask` included.
pub fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some(cur.wrapping_sub(mask) & mask)
        };
        Some(cur)
    })
}

/// All `2^n` events.
pub fn all_events(n: usize) -> impl Iterator<Item = Mask> {
    0..=full_mask(n)
}

/// Ordered pairs `(A, B)` with `A ∩ B = ∅`, lexicographic in `(A, B)`; `3^n` items.
pub fn disjoint_pairs(n: usize) -> impl Iterator<Item = (Mask, Mask)> {
    let full = full_mask(n);
    all_events(n).flat_map(move |a| submasks(full & !a).map(move |b| (a, b)))
}

/// Ordered pairwise-disjoint triples, lexicographic in `(A, B, C)`; `4^n` items.
pub fn disjoint_triples(n: usize) -> impl Iterator<Item = (Mask, Mask, Mask)> {
    let full = full_mask(n);
    disjoint_pairs(n)
        .flat_map(move |(a, b)| submasks(full & !(a | b)).map(move |c| (a, b, c)))
}

#[derive(Default)]
struct Fnv1a(u64);

impl Hasher for Fnv1a {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        if self.0 == 0 {
            self.0 = 0xcbf2_9ce4_8422_2325;
        }
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_space() {
        let s = StateSpace::new(&["s1", "s2"]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(StateSpace::new(&["a"]).unwrap().len(), 1);
        assert!(matches!(
            StateSpace::new(&["s", "s"]),
            Err(Error::DuplicateState(_))
        ));
        assert!(matches!(
            StateSpace::new::<&str>(&[]),
            Err(Error::EmptySpace)
        ));
        let many: Vec<String> = (0..13).map(|i| format!("x{i}")).collect();
        assert!(matches!(
            StateSpace::new(&many),
            Err(Error::TooLarge { n: 13, limit: 12 })
        ));
        assert!(StateSpace::with_limit(&many, 13).is_ok());
    }

    #[test]
    fn set_algebra() {
        let s = StateSpace::new(&["s1", "s2"]).unwrap();
        assert_eq!(s.complement(s.empty()).unwrap(), s.full());
        let u = s.singleton(0).union(s.singleton(1)).unwrap();
        assert_eq!(u, s.event_of(&["s1", "s2"]).unwrap());
        assert!(s.singleton(0).subset_of(s.full()).unwrap());
        assert!(!s.full().subset_of(s.singleton(0)).unwrap());
        assert_eq!(
            s.full().difference(s.singleton(0)).unwrap(),
            s.singleton(1)
        );
        assert!(s.singleton(0).intersection(s.singleton(1)).unwrap().is_empty());
    }

    #[test]
    fn events_of_different_spaces_never_mix() {
        let s = StateSpace::new(&["s1", "s2"]).unwrap();
        let t = StateSpace::new(&["t1", "t2"]).unwrap();
        assert!(matches!(
            s.full().union(t.full()),
            Err(Error::SpaceMismatch)
        ));
        assert!(matches!(s.check(t.empty()), Err(Error::SpaceMismatch)));
        // Same names, same space.
        let s2 = StateSpace::new(&["s1", "s2"]).unwrap();
        assert!(s.full().union(s2.empty()).is_ok());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_events(2).count(), 4);
        assert_eq!(disjoint_pairs(2).count(), 9);
        assert_eq!(disjoint_triples(2).count(), 16);
        for n in 0..=5 {
            assert_eq!(disjoint_pairs(n).count(), 3usize.pow(n as u32));
            assert_eq!(disjoint_triples(n).count(), 4usize.pow(n as u32));
        }
    }

    #[test]
    fn enumeration_matches_filtered_products() {
        for n in 1..=3 {
            let pairs: Vec<_> = disjoint_pairs(n).collect();
            let filtered: Vec<_> = all_events(n)
                .flat_map(|a| all_events(n).map(move |b| (a, b)))
                .filter(|(a, b)| a & b == 0)
                .collect();
            assert_eq!(pairs, filtered);

            let triples: Vec<_> = disjoint_triples(n).collect();
            let filtered: Vec<_> = all_events(n)
                .flat_map(|a| all_events(n).map(move |b| (a, b)))
                .flat_map(|(a, b)| all_events(n).map(move |c| (a, b, c)))
                .filter(|(a, b, c)| a & b == 0 && a & c == 0 && b & c == 0)
                .collect();
            assert_eq!(triples, filtered);
        }
    }

    #[test]
    fn complement_laws() {
        let s = StateSpace::numbered(4).unwrap();
        for a in s.events() {
            let c = s.complement(a).unwrap();
            assert_eq!(a.union(c).unwrap(), s.full());
            assert!(a.intersection(c).unwrap().is_empty());
            assert_eq!(s.complement(c).unwrap(), a);
        }
    }

    #[test]
    fn submasks_ascending() {
        let subs: Vec<_> = submasks(0b1010).collect();
        assert_eq!(subs, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn names_roundtrip() {
        let s = StateSpace::new(&["a", "b", "c"]).unwrap();
        let e = s.event_of(&["c", "a"]).unwrap();
        assert_eq!(e.bits(), 0b101);
        assert_eq!(s.names_of(e.bits()), vec!["a", "c"]);
        assert_eq!(s.format(e.bits()), "{a,c}");
        assert!(matches!(
            s.event_of(&["zz"]),
            Err(Error::UnknownState(_))
        ));
    }
}
