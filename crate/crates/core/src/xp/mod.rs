//! Classifier-agnostic explanation predicates.
//!
//! Everything here talks to a classifier only through
//! [`ClassifierOracle::is_weak_axp`], which must be monotone in its argument
//! and true on the full feature set.

mod circuit;

use std::cell::{Cell, RefCell};
use std::num::NonZeroUsize;

use lru::LruCache;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureSet;

pub use circuit::CircuitProblem;

/// Weak-AXp test for a fixed instance.
pub trait ClassifierOracle {
    fn num_features(&self) -> usize;

    /// Whether fixing the features of `set` to their instance values forces
    /// the predicted class for every completion.
    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool>;
}

impl<O: ClassifierOracle + ?Sized> ClassifierOracle for &O {
    fn num_features(&self) -> usize {
        (**self).num_features()
    }

    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool> {
        (**self).is_weak_axp(set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExplanationStatus {
    WeakAxp,
    Axp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Explanation {
    pub features: FeatureSet,
    pub status: ExplanationStatus,
}

pub(crate) fn check_feature(feature: usize, num_features: usize) -> Result<()> {
    if feature == 0 || feature > num_features {
        return Err(Error::FeatureOutOfRange {
            feature,
            num_features,
        });
    }
    Ok(())
}

fn check_set<O: ClassifierOracle + ?Sized>(o: &O, set: &FeatureSet) -> Result<()> {
    if let Some(bad) = set.iter().find(|&i| i > o.num_features()) {
        return Err(Error::FeatureOutOfRange {
            feature: bad,
            num_features: o.num_features(),
        });
    }
    Ok(())
}

pub fn is_weak_axp<O: ClassifierOracle + ?Sized>(o: &O, set: &FeatureSet) -> Result<bool> {
    check_set(o, set)?;
    o.is_weak_axp(set)
}

/// `WAXp(X) ∧ ∀j∈X ¬WAXp(X \ {j})`, using at most `|X| + 1` oracle calls.
pub fn is_axp<O: ClassifierOracle + ?Sized>(o: &O, set: &FeatureSet) -> Result<bool> {
    if !is_weak_axp(o, set)? {
        return Ok(false);
    }
    for j in set.iter() {
        if o.is_weak_axp(&set.without(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t` is necessary iff the complement of `{t}` is not a weak AXp.
pub fn is_necessary<O: ClassifierOracle + ?Sized>(o: &O, feature: usize) -> Result<bool> {
    check_feature(feature, o.num_features())?;
    Ok(!o.is_weak_axp(&FeatureSet::full(o.num_features()).without(feature))?)
}

/// Order in which the deletion procedure tries to drop features. Different
/// orders may produce different, equally valid, AXp's.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum DeletionOrder {
    #[default]
    Ascending,
    Descending,
    /// Features of the seed not listed are kept without being tried.
    Given(Vec<usize>),
}

/// Shrinks a weak AXp to an AXp by deletion in ascending feature order.
pub fn extract_axp<O: ClassifierOracle + ?Sized>(o: &O, seed: &FeatureSet) -> Result<Explanation> {
    extract_axp_with(o, seed, &DeletionOrder::Ascending)
}

/// Deletion-based extraction: each feature of the seed is dropped when the
/// remainder is still a weak AXp. One oracle call to check the seed plus one
/// per tried feature.
pub fn extract_axp_with<O: ClassifierOracle + ?Sized>(
    o: &O,
    seed: &FeatureSet,
    order: &DeletionOrder,
) -> Result<Explanation> {
    if !is_weak_axp(o, seed)? {
        return Err(Error::NotWeakAxp { set: seed.clone() });
    }
    let candidates: Vec<usize> = match order {
        DeletionOrder::Ascending => seed.iter().collect(),
        DeletionOrder::Descending => {
            let mut v: Vec<usize> = seed.iter().collect();
            v.reverse();
            v
        }
        DeletionOrder::Given(v) => v.iter().copied().filter(|&i| seed.contains(i)).collect(),
    };
    let exhaustive = !matches!(order, DeletionOrder::Given(v) if seed.iter().any(|i| !v.contains(&i)));
    let mut current = seed.clone();
    for j in candidates {
        let reduced = current.without(j);
        if o.is_weak_axp(&reduced)? {
            current = reduced;
        }
    }
    Ok(Explanation {
        features: current,
        status: if exhaustive {
            ExplanationStatus::Axp
        } else {
            ExplanationStatus::WeakAxp
        },
    })
}

/// Deletion over a set `P` already known to satisfy `WAXp(P)` and
/// `¬WAXp(P \ {t})`. Every subset of `P` without `t` then fails, so `t` is
/// never tried and the seed is not rechecked: at most `|P| - 1` calls.
pub fn extract_axp_containing<O: ClassifierOracle + ?Sized>(
    o: &O,
    witness: &FeatureSet,
    t: usize,
) -> Result<FeatureSet> {
    let mut current = witness.clone();
    for j in witness.iter().filter(|&j| j != t) {
        let reduced = current.without(j);
        if o.is_weak_axp(&reduced)? {
            current = reduced;
        }
    }
    Ok(current)
}

/// Counts oracle calls.
#[derive(Debug)]
pub struct CountingOracle<O> {
    inner: O,
    calls: Cell<u64>,
}

impl<O: ClassifierOracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle {
            inner,
            calls: Cell::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: ClassifierOracle> ClassifierOracle for CountingOracle<O> {
    fn num_features(&self) -> usize {
        self.inner.num_features()
    }

    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool> {
        self.calls.set(self.calls.get() + 1);
        self.inner.is_weak_axp(set)
    }
}

pub const DEFAULT_MEMO_CAPACITY: usize = 4096;

/// Caches weak-AXp answers per feature set in a bounded LRU.
#[derive(Debug)]
pub struct Memoized<O> {
    inner: O,
    cache: RefCell<LruCache<FeatureSet, bool>>,
}

impl<O: ClassifierOracle> Memoized<O> {
    pub fn new(inner: O) -> Self {
        Self::with_capacity(inner, DEFAULT_MEMO_CAPACITY)
    }

    pub fn with_capacity(inner: O, capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity.max(1)).expect("nonzero");
        Memoized {
            inner,
            cache: RefCell::new(LruCache::new(cap)),
        }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: ClassifierOracle> ClassifierOracle for Memoized<O> {
    fn num_features(&self) -> usize {
        self.inner.num_features()
    }

    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool> {
        if let Some(&hit) = self.cache.borrow_mut().get(set) {
            return Ok(hit);
        }
        let answer = self.inner.is_weak_axp(set)?;
        self.cache.borrow_mut().put(set.clone(), answer);
        Ok(answer)
    }
}
