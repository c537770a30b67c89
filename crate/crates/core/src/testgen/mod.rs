//! Ground truth by exhaustive enumeration, plus instance generators.

mod manifest;
mod random;
mod reduction;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::monotone::MonotoneModel;
use crate::sat::CnfFormula;
use crate::xp::ClassifierOracle;

pub use manifest::{read_manifest, write_manifest, ManifestEntry};
pub use random::{
    boolean_points, class_zero_points, random_circuit, random_cnf, random_fbdd, random_monotone,
    random_point, CircuitShape,
};
pub use reduction::{
    fbdd_reduction_formula, gen_fbdd_from_cnf, gen_mono_from_cnf, CnfMonotoneModel, ReductionArtifact,
    ReductionClassifier,
};

/// Largest feature count the exhaustive procedures accept.
pub const ENUMERATION_LIMIT: usize = 20;

fn guard(m: usize) -> Result<()> {
    if m > ENUMERATION_LIMIT {
        return Err(Error::TooManyFeatures {
            num_features: m,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// All AXp's of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxpSet {
    pub num_features: usize,
    pub axps: Vec<FeatureSet>,
}

impl AxpSet {
    pub fn is_relevant(&self, t: usize) -> bool {
        self.axps.iter().any(|x| x.contains(t))
    }

    pub fn is_necessary(&self, t: usize) -> bool {
        self.axps.iter().all(|x| x.contains(t))
    }

    pub fn relevant(&self) -> FeatureSet {
        let mut u = FeatureSet::empty(self.num_features);
        for x in &self.axps {
            u.union_with(x);
        }
        u
    }

    pub fn necessary(&self) -> FeatureSet {
        FeatureSet::from_features(
            self.num_features,
            (1..=self.num_features).filter(|&t| self.is_necessary(t)),
        )
    }

    pub fn contains(&self, set: &FeatureSet) -> bool {
        self.axps.contains(set)
    }
}

/// Every subset is tested once; AXp's are the weak AXp's all of whose
/// one-smaller subsets fail. Sets are listed by size, then by mask.
pub fn enumerate_axps<O: ClassifierOracle + ?Sized>(o: &O) -> Result<AxpSet> {
    let m = o.num_features();
    guard(m)?;
    let n = 1usize << m;
    let mut waxp = vec![false; n];
    for (mask, w) in waxp.iter_mut().enumerate() {
        *w = o.is_weak_axp(&FeatureSet::from_mask(m, mask as u64))?;
    }
    let mut masks: Vec<usize> = (0..n).collect();
    masks.sort_by_key(|&x| (x.count_ones(), x));
    let mut found: Vec<usize> = Vec::new();
    for mask in masks {
        if !waxp[mask] || found.iter().any(|&a| a & !mask == 0) {
            continue;
        }
        if (0..m).all(|i| mask >> i & 1 == 0 || !waxp[mask & !(1 << i)]) {
            found.push(mask);
        }
    }
    Ok(AxpSet {
        num_features: m,
        axps: found
            .into_iter()
            .map(|x| FeatureSet::from_mask(m, x as u64))
            .collect(),
    })
}

/// Weak-AXp oracle from a full table of the points predicted differently.
///
/// For every such point `y`, `a(y)` is the set of features on which `y`
/// agrees with the instance. `X` is a weak AXp iff no `a(y)` contains `X`.
/// Independent of circuit conditioning and of bound probes.
#[derive(Debug, Clone)]
pub struct BruteForce {
    num_features: usize,
    /// `covered[S]`: some counterexample agrees with the instance on all of `S`.
    covered: Vec<bool>,
}

impl BruteForce {
    /// `agreements` holds the agreement mask of every point predicted differently.
    fn from_agreements(m: usize, agreements: impl Iterator<Item = usize>) -> Result<Self> {
        guard(m)?;
        let n = 1usize << m;
        let mut covered = vec![false; n];
        for a in agreements {
            covered[a] = true;
        }
        for i in 0..m {
            let bit = 1 << i;
            for s in (0..n).rev() {
                if s & bit == 0 && covered[s | bit] {
                    covered[s] = true;
                }
            }
        }
        Ok(BruteForce {
            num_features: m,
            covered,
        })
    }

    /// By evaluating the circuit on all `2^m` points.
    pub fn for_circuit(c: &Circuit, point: &[bool]) -> Result<Self> {
        c.evaluate(point)?;
        let root = c.root();
        Self::for_boolean_fn(c.num_features(), point, |y| c.node_values(y)[root])
    }

    /// By evaluating `f` on all `2^m` boolean points.
    pub fn for_boolean_fn(m: usize, point: &[bool], f: impl Fn(&[bool]) -> bool) -> Result<Self> {
        guard(m)?;
        let class = f(point);
        let v = point
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (b as usize) << i);
        let full = (1usize << m) - 1;
        let mut agreements = Vec::new();
        let mut y = vec![false; m];
        for mask in 0..1usize << m {
            for (i, b) in y.iter_mut().enumerate() {
                *b = mask >> i & 1 == 1;
            }
            if f(&y) != class {
                agreements.push(!(mask ^ v) & full);
            }
        }
        Self::from_agreements(m, agreements.into_iter())
    }

    /// By predicting every point of the integer grid `Π {λ_i..μ_i}`. Domain
    /// bounds must be integers.
    pub fn for_monotone_grid<M: MonotoneModel + ?Sized>(model: &M, values: &[f64], limit: usize) -> Result<Self> {
        let m = model.num_features();
        guard(m)?;
        let mut ranges = Vec::with_capacity(m);
        let mut total = 1usize;
        for i in 1..=m {
            let d = model.domain(i);
            if d.lower.fract() != 0.0 || d.upper.fract() != 0.0 {
                return Err(Error::Invalid(format!("feature {i} has a non-integer domain")));
            }
            let (lo, hi) = (d.lower as i64, d.upper as i64);
            total = total.saturating_mul((hi - lo + 1) as usize);
            ranges.push((lo, hi));
        }
        if total > limit {
            return Err(Error::Invalid(format!("grid of {total} points exceeds {limit}")));
        }
        let class = model.predict(values)?;
        let mut agreements = Vec::new();
        let mut y: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        let mut yf = vec![0.0; m];
        'outer: loop {
            for (f, &x) in yf.iter_mut().zip(&y) {
                *f = x as f64;
            }
            if model.predict(&yf)? != class {
                let a = (0..m).filter(|&i| yf[i] == values[i]).fold(0, |acc, i| acc | 1 << i);
                agreements.push(a);
            }
            for (i, yi) in y.iter_mut().enumerate() {
                if *yi < ranges[i].1 {
                    *yi += 1;
                    continue 'outer;
                }
                *yi = ranges[i].0;
            }
            break;
        }
        Self::from_agreements(m, agreements.into_iter())
    }
}

impl ClassifierOracle for BruteForce {
    fn num_features(&self) -> usize {
        self.num_features
    }

    fn is_weak_axp(&self, set: &FeatureSet) -> Result<bool> {
        Ok(!self.covered[set.to_mask() as usize])
    }
}

/// Satisfiability by trying all assignments.
pub fn brute_force_sat(f: &CnfFormula) -> Result<bool> {
    guard(f.num_vars)?;
    let mut x = vec![false; f.num_vars];
    for mask in 0u64..1 << f.num_vars {
        for (i, b) in x.iter_mut().enumerate() {
            *b = mask >> i & 1 == 1;
        }
        if f.is_satisfied_by(&x) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::tests::running_example;
    use crate::monotone::tests::kappa2;
    use crate::xp::is_axp;

    fn sets(m: usize, xs: &[&[usize]]) -> Vec<FeatureSet> {
        xs.iter()
            .map(|x| FeatureSet::from_features(m, x.iter().copied()))
            .collect()
    }

    #[test]
    fn running_example_axps() {
        let bf = BruteForce::for_circuit(&running_example(), &[false, true, false, false]).unwrap();
        let a = enumerate_axps(&bf).unwrap();
        assert_eq!(a.axps, sets(4, &[&[1, 3], &[1, 4]]));
        assert_eq!(a.necessary().to_vec(), vec![1]);
        assert_eq!(a.relevant().to_vec(), vec![1, 3, 4]);
        for x in &a.axps {
            assert!(is_axp(&bf, x).unwrap());
        }
    }

    #[test]
    fn kappa2_axps() {
        let bf = BruteForce::for_monotone_grid(&kappa2(), &[1.0; 4], 1 << 20).unwrap();
        let a = enumerate_axps(&bf).unwrap();
        assert_eq!(a.axps, sets(4, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert!(a.necessary().is_empty());
        assert!(!a.is_relevant(4));
    }

    #[test]
    fn identity_classifier() {
        let bf = BruteForce::for_boolean_fn(1, &[true], |x| x[0]).unwrap();
        assert_eq!(enumerate_axps(&bf).unwrap().axps, sets(1, &[&[1]]));
    }

    #[test]
    fn size_guard() {
        let bf = BruteForce::for_boolean_fn(1, &[true], |x| x[0]).unwrap();
        struct Wide;
        impl ClassifierOracle for Wide {
            fn num_features(&self) -> usize {
                21
            }
            fn is_weak_axp(&self, _: &FeatureSet) -> Result<bool> {
                Ok(true)
            }
        }
        assert!(matches!(enumerate_axps(&Wide), Err(Error::TooManyFeatures { .. })));
        assert_eq!(bf.num_features(), 1);
    }

    #[test]
    fn sat_by_enumeration() {
        let f = CnfFormula::from_clauses(2, vec![vec![1, 2], vec![-1], vec![-2]]);
        assert!(!brute_force_sat(&f).unwrap());
        let g = CnfFormula::from_clauses(2, vec![vec![1, 2], vec![-1]]);
        assert!(brute_force_sat(&g).unwrap());
    }
}
