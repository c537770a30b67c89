//! Feature sets over `{1..m}`.
//!
//! Features are identified by their 1-based index throughout the crate, so a
//! set over four features holds ids from `1..=4`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of `{1..m}`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureSet {
    universe: usize,
    words: Vec<u64>,
}

impl FeatureSet {
    pub fn empty(universe: usize) -> Self {
        FeatureSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 1..=universe {
            set.insert(i);
        }
        set
    }

    /// Builds a set from feature ids. Panics on ids outside `1..=universe`.
    pub fn from_features<I: IntoIterator<Item = usize>>(universe: usize, features: I) -> Self {
        let mut set = Self::empty(universe);
        for i in features {
            set.insert(i);
        }
        set
    }

    /// Interprets bit `i - 1` of `mask` as membership of feature `i`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask conversion needs at most 64 features");
        let mut set = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
            set.words[0] = mask & keep;
        }
        set
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.universe <= 64, "mask conversion needs at most 64 features");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    fn check(&self, feature: usize) {
        assert!(
            feature >= 1 && feature <= self.universe,
            "feature {feature} outside 1..={}",
            self.universe
        );
    }

    pub fn contains(&self, feature: usize) -> bool {
        if feature == 0 || feature > self.universe {
            return false;
        }
        let bit = feature - 1;
        self.words[bit / 64] & (1 << (bit % 64)) != 0
    }

    pub fn insert(&mut self, feature: usize) -> bool {
        self.check(feature);
        let bit = feature - 1;
        let was = self.contains(feature);
        self.words[bit / 64] |= 1 << (bit % 64);
        !was
    }

    pub fn remove(&mut self, feature: usize) -> bool {
        self.check(feature);
        let bit = feature - 1;
        let was = self.contains(feature);
        self.words[bit / 64] &= !(1 << (bit % 64));
        was
    }

    pub fn with(&self, feature: usize) -> Self {
        let mut s = self.clone();
        s.insert(feature);
        s
    }

    pub fn without(&self, feature: usize) -> Self {
        let mut s = self.clone();
        s.remove(feature);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &FeatureSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &FeatureSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &FeatureSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `{1..m} \ self`.
    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.universe);
        for (a, b) in out.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        out
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let tz = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + tz + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

// Serialized as the sorted list of member ids; the universe is carried by context.
impl Serialize for FeatureSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FeatureSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        if ids.contains(&0) {
            return Err(serde::de::Error::custom("feature ids start at 1"));
        }
        let universe = ids.iter().copied().max().unwrap_or(0);
        Ok(FeatureSet::from_features(universe, ids))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_membership() {
        let mut s = FeatureSet::from_features(130, [1, 64, 65, 130]);
        assert_eq!(s.len(), 4);
        assert!(s.contains(64) && s.contains(65) && s.contains(130));
        assert!(!s.contains(0) && !s.contains(131));
        assert!(s.remove(64));
        assert_eq!(s.to_vec(), vec![1, 65, 130]);
        assert_eq!(s.complement().len(), 127);
    }

    #[test]
    fn display_and_mask() {
        let s = FeatureSet::from_mask(4, 0b0101);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.to_mask(), 0b0101);
        assert_eq!(FeatureSet::full(4).without(2).to_string(), "{1,3,4}");
    }

    #[test]
    fn subset_relations() {
        let a = FeatureSet::from_features(5, [1, 3]);
        let b = FeatureSet::from_features(5, [1, 3, 4]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.is_disjoint(&FeatureSet::from_features(5, [2, 5])));
    }
}
