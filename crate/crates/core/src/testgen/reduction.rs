//! Classifiers whose target-feature relevancy equals satisfiability of a CNF.

use crate::circuit::{Circuit, FbddBuilder};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::monotone::{FeatureDomain, ModelError, MonotoneModel};
use crate::sat::{self, CnfFormula, SatOutcome};

#[derive(Debug, Clone)]
pub enum ReductionClassifier {
    Monotone(CnfMonotoneModel),
    Circuit(Circuit),
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub cnf: CnfFormula,
    pub classifier: ReductionClassifier,
    pub instance: Instance,
    pub target: usize,
    /// Whether `cnf` is satisfiable, i.e. whether `target` is relevant.
    pub expected: bool,
}

fn satisfiable(f: &CnfFormula) -> Result<bool> {
    Ok(matches!(sat::solve(f, &[])?, SatOutcome::Sat(_)))
}

/// Boolean monotone model on `2k + 1` features built from a CNF over `k`
/// variables. Feature 1 is the switch; features `1+i` and `1+k+i` stand for
/// `x_i` and `¬x_i`. The class is 1 iff some pair `(1+i, 1+k+i)` is all
/// ones, or the switch is on and the CNF holds with `¬x_i` read as `1+k+i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CnfMonotoneModel {
    cnf: CnfFormula,
}

impl CnfMonotoneModel {
    pub fn new(cnf: CnfFormula) -> Self {
        CnfMonotoneModel { cnf }
    }

    pub fn cnf(&self) -> &CnfFormula {
        &self.cnf
    }

    pub fn classify(&self, x: &[bool]) -> bool {
        let k = self.cnf.num_vars;
        if (1..=k).any(|i| x[i] && x[i + k]) {
            return true;
        }
        x[0] && self.cnf.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = l.unsigned_abs() as usize;
                if l > 0 {
                    x[v]
                } else {
                    x[v + k]
                }
            })
        })
    }
}

impl MonotoneModel for CnfMonotoneModel {
    fn num_features(&self) -> usize {
        2 * self.cnf.num_vars + 1
    }

    fn num_classes(&self) -> usize {
        2
    }

    fn domain(&self, _feature: usize) -> FeatureDomain {
        FeatureDomain::boolean()
    }

    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        if point.len() != self.num_features() {
            return Err(ModelError::Arity {
                expected: self.num_features(),
                got: point.len(),
            });
        }
        let x: Vec<bool> = point.iter().map(|&v| v >= 0.5).collect();
        Ok(self.classify(&x) as usize)
    }
}

/// Rejects formulas with a literal common to every clause (including the
/// empty formula), since their relevancy question is trivial.
pub fn gen_mono_from_cnf(cnf: &CnfFormula) -> Result<ReductionArtifact> {
    let k = cnf.num_vars;
    let common = (1..=k as i32)
        .flat_map(|v| [v, -v])
        .any(|l| cnf.clauses.iter().all(|c| c.contains(&l)));
    if cnf.clauses.is_empty() || common {
        return Err(Error::Invalid(
            "formula is trivially satisfiable: a literal occurs in every clause".into(),
        ));
    }
    let model = CnfMonotoneModel::new(cnf.clone());
    let instance = Instance::new(vec![1.0; 2 * k + 1], 1);
    Ok(ReductionArtifact {
        cnf: cnf.clone(),
        classifier: ReductionClassifier::Monotone(model),
        instance,
        target: 1,
        expected: satisfiable(cnf)?,
    })
}

/// Feature of the copy of variable `j` (1-based) in clause `i` (1-based).
fn fbdd_feature(m: usize, i: usize, j: usize) -> usize {
    1 + (i - 1) * m + j
}

fn dedup_clauses(cnf: &CnfFormula) -> Result<Vec<Vec<i32>>> {
    let mut out = Vec::with_capacity(cnf.clauses.len());
    for (idx, c) in cnf.clauses.iter().enumerate() {
        let mut lits: Vec<i32> = Vec::with_capacity(c.len());
        for &l in c {
            if lits.contains(&-l) {
                return Err(Error::Invalid(format!("clause {} is tautological", idx + 1)));
            }
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        out.push(lits);
    }
    Ok(out)
}

/// Evaluates `(x_1 ∧ ψ') ∨ (¬x_1 ∧ φ)` directly, for checking the FBDD.
pub fn fbdd_reduction_formula(cnf: &CnfFormula, x: &[bool]) -> bool {
    let m = cnf.num_vars;
    let clauses = dedup_clauses(cnf).expect("checked by the generator");
    let lit = |i: usize, l: i32| {
        let v = x[fbdd_feature(m, i, l.unsigned_abs() as usize) - 1];
        if l > 0 {
            v
        } else {
            !v
        }
    };
    if x[0] {
        clauses
            .iter()
            .enumerate()
            .all(|(i, c)| c.iter().any(|&l| lit(i + 1, l)))
    } else {
        (1..=m as i32).any(|j| {
            let pos = clauses.iter().enumerate().any(|(i, c)| c.contains(&j) && lit(i + 1, j));
            let neg = clauses.iter().enumerate().any(|(i, c)| c.contains(&-j) && lit(i + 1, -j));
            pos && neg
        })
    }
}

/// FBDD over `1 + n·m` features for a CNF with `m` variables and `n`
/// clauses. Feature 1 is the target; `1 + (i-1)·m + j` is the private copy
/// of variable `j` in clause `i`. The 1-branch chains the clause tests, the
/// 0-branch detects a variable used with both polarities.
pub fn gen_fbdd_from_cnf(cnf: &CnfFormula) -> Result<ReductionArtifact> {
    let m = cnf.num_vars;
    let clauses = dedup_clauses(cnf)?;
    let n = clauses.len();
    let num_features = 1 + n * m;
    let mut b = FbddBuilder::new();
    let f = b.terminal(false);
    let t = b.terminal(true);

    let mut g = f;
    for j in (1..=m).rev() {
        let jl = j as i32;
        let plus: Vec<usize> = (1..=n).filter(|&i| clauses[i - 1].contains(&jl)).collect();
        let minus: Vec<usize> = (1..=n).filter(|&i| clauses[i - 1].contains(&-jl)).collect();
        if plus.is_empty() || minus.is_empty() {
            continue;
        }
        let mut neg = g;
        for &k in minus.iter().rev() {
            neg = b.decision(fbdd_feature(m, k, j), t, neg);
        }
        let mut pos = g;
        for &i in plus.iter().rev() {
            pos = b.decision(fbdd_feature(m, i, j), pos, neg);
        }
        g = pos;
    }

    let mut d = t;
    for i in (1..=n).rev() {
        let mut c = f;
        for &l in clauses[i - 1].iter().rev() {
            let var = fbdd_feature(m, i, l.unsigned_abs() as usize);
            c = if l > 0 {
                b.decision(var, c, d)
            } else {
                b.decision(var, d, c)
            };
        }
        d = c;
    }

    let root = b.decision(1, g, d);
    let circuit = b.build(root, num_features)?;

    let mut values = vec![0.0; num_features];
    values[0] = 1.0;
    for (i, c) in clauses.iter().enumerate() {
        for &l in c {
            if l > 0 {
                values[fbdd_feature(m, i + 1, l as usize) - 1] = 1.0;
            }
        }
    }
    Ok(ReductionArtifact {
        cnf: cnf.clone(),
        classifier: ReductionClassifier::Circuit(circuit),
        instance: Instance::new(values, 1),
        target: 1,
        expected: satisfiable(cnf)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureSet;
    use crate::testgen::{enumerate_axps, BruteForce};

    fn cnf(vars: usize, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::from_clauses(vars, clauses.iter().map(|c| c.to_vec()).collect())
    }

    fn mono_axps(a: &ReductionArtifact) -> crate::testgen::AxpSet {
        let ReductionClassifier::Monotone(model) = &a.classifier else { panic!() };
        let bf = BruteForce::for_monotone_grid(model, &a.instance.values, 1 << 20).unwrap();
        enumerate_axps(&bf).unwrap()
    }

    fn fbdd_axps(a: &ReductionArtifact) -> crate::testgen::AxpSet {
        let ReductionClassifier::Circuit(c) = &a.classifier else { panic!() };
        let bf = BruteForce::for_circuit(c, &a.instance.as_bools().unwrap()).unwrap();
        enumerate_axps(&bf).unwrap()
    }

    #[test]
    fn mono_sat_formula_makes_target_relevant() {
        let a = gen_mono_from_cnf(&cnf(2, &[&[1, 2], &[-1, -2]])).unwrap();
        assert!(a.expected);
        let axps = mono_axps(&a);
        assert!(axps.is_relevant(1));
        for i in 1..=2 {
            assert!(axps.contains(&FeatureSet::from_features(5, [1 + i, 3 + i])));
        }
    }

    #[test]
    fn mono_unsat_formula_leaves_only_pairs() {
        let a = gen_mono_from_cnf(&cnf(1, &[&[1], &[-1]])).unwrap();
        assert!(!a.expected);
        let axps = mono_axps(&a);
        assert_eq!(axps.axps, vec![FeatureSet::from_features(3, [2, 3])]);
    }

    #[test]
    fn mono_rejects_trivial_formulas() {
        assert!(gen_mono_from_cnf(&cnf(2, &[&[1, 2], &[1, -2]])).is_err());
        assert!(gen_mono_from_cnf(&cnf(2, &[])).is_err());
    }

    #[test]
    fn mono_model_is_monotone() {
        let a = gen_mono_from_cnf(&cnf(2, &[&[1, -2], &[-1, 2]])).unwrap();
        let ReductionClassifier::Monotone(model) = &a.classifier else { panic!() };
        crate::monotone::audit_monotonicity(model, 500, 3).unwrap();
    }

    #[test]
    fn fbdd_single_clause() {
        let a = gen_fbdd_from_cnf(&cnf(1, &[&[1]])).unwrap();
        let ReductionClassifier::Circuit(c) = &a.classifier else { panic!() };
        assert!(c.validate().is_clean());
        assert!(a.expected);
        assert!(fbdd_axps(&a).is_relevant(1));
    }

    #[test]
    fn fbdd_contradiction() {
        let a = gen_fbdd_from_cnf(&cnf(1, &[&[1], &[-1]])).unwrap();
        assert!(!a.expected);
        assert!(!fbdd_axps(&a).is_relevant(1));
    }

    #[test]
    fn fbdd_matches_formula_everywhere() {
        let f = cnf(3, &[&[1, -2], &[2, 3, -1], &[-3], &[1, 1, 2]]);
        let a = gen_fbdd_from_cnf(&f).unwrap();
        let ReductionClassifier::Circuit(c) = &a.classifier else { panic!() };
        assert!(c.validate().is_clean());
        let m = c.num_features();
        let mut x = vec![false; m];
        for mask in 0u32..1 << m {
            for (i, b) in x.iter_mut().enumerate() {
                *b = mask >> i & 1 == 1;
            }
            assert_eq!(c.evaluate(&x).unwrap() == 1, fbdd_reduction_formula(&f, &x));
        }
        assert_eq!(c.evaluate(&a.instance.as_bools().unwrap()).unwrap(), 1);
    }

    #[test]
    fn fbdd_rejects_tautologies() {
        assert!(gen_fbdd_from_cnf(&cnf(1, &[&[1, -1]])).is_err());
    }
}
