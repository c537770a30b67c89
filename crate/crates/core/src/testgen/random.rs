//! Seeded generators. The same arguments always produce the same artifact.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, CircuitKind, FbddBuilder, Literal, Node};
use crate::instance::Instance;
use crate::monotone::{FeatureDomain, LinearModel, MonotoneModel};
use crate::sat::CnfFormula;

/// Largest integer grid a random monotone model may span, so that ground
/// truth by enumeration stays cheap.
pub const MONOTONE_GRID_LIMIT: usize = 1 << 16;

struct CircuitGen {
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
}

impl CircuitGen {
    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn literal(&mut self, feature: usize, positive: bool) -> usize {
        self.push(Node::Literal(Literal::new(feature, positive)))
    }

    /// Decomposable by construction: AND children get disjoint variable
    /// sets, OR nodes are decisions `(¬x ∧ α) ∨ (x ∧ β)` with `x` outside
    /// both branches. AND splits do not consume depth.
    fn gen(&mut self, vars: &[usize], depth: usize) -> usize {
        match vars.len() {
            0 => {
                let node = if self.rng.gen_bool(0.5) { Node::True } else { Node::False };
                return self.push(node);
            }
            1 if depth == 0 || self.rng.gen_bool(0.5) => {
                let positive = self.rng.gen_bool(0.5);
                return self.literal(vars[0], positive);
            }
            _ => {}
        }
        if vars.len() >= 2 && (depth == 0 || self.rng.gen_bool(0.4)) {
            let mut shuffled = vars.to_vec();
            shuffled.shuffle(&mut self.rng);
            let parts = self.rng.gen_range(2..=vars.len().min(3));
            let mut cuts: Vec<usize> = (1..vars.len()).collect();
            cuts.shuffle(&mut self.rng);
            let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
            cuts.sort_unstable();
            let mut children = Vec::with_capacity(parts);
            let mut start = 0;
            for end in cuts.into_iter().chain([vars.len()]) {
                let mut part = shuffled[start..end].to_vec();
                part.sort_unstable();
                children.push(self.gen(&part, depth));
                start = end;
            }
            return self.push(Node::And(children));
        }
        let x = vars[self.rng.gen_range(0..vars.len())];
        let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != x).collect();
        let lo = self.gen(&rest, depth - 1);
        let hi = self.gen(&rest, depth - 1);
        let neg = self.literal(x, false);
        let lo_and = self.push(Node::And(vec![neg, lo]));
        let pos = self.literal(x, true);
        let hi_and = self.push(Node::And(vec![pos, hi]));
        self.push(Node::Or(vec![lo_and, hi_and]))
    }
}

/// A random d-DNNF over features `1..=m`. Each feature is used with
/// probability 0.9; `depth` bounds the nesting of decision nodes.
pub fn random_circuit(seed: u64, m: usize, depth: usize) -> Circuit {
    let mut g = CircuitGen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        nodes: Vec::new(),
    };
    let mut vars: Vec<usize> = (1..=m).filter(|_| g.rng.gen_bool(0.9)).collect();
    if vars.is_empty() && m > 0 {
        vars.push(1);
    }
    let root = g.gen(&vars, depth);
    Circuit::new(g.nodes, root, m, CircuitKind::Ddnnf).expect("generated circuit is well formed")
}

/// A random FBDD over features `1..=m` of decision depth at most `depth`.
pub fn random_fbdd(seed: u64, m: usize, depth: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = FbddBuilder::new();
    fn gen(b: &mut FbddBuilder, rng: &mut ChaCha8Rng, vars: &[usize], depth: usize) -> usize {
        if vars.is_empty() || depth == 0 || (vars.len() < 3 && rng.gen_bool(0.2)) {
            let v = rng.gen_bool(0.5);
            return b.terminal(v);
        }
        let x = vars[rng.gen_range(0..vars.len())];
        let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != x).collect();
        let lo = gen(b, rng, &rest, depth - 1);
        let hi = gen(b, rng, &rest, depth - 1);
        b.decision(x, lo, hi)
    }
    let vars: Vec<usize> = (1..=m).collect();
    let root = gen(&mut b, &mut rng, &vars, depth);
    b.build(root, m).expect("generated diagram is well formed")
}

pub fn random_point(seed: u64, m: usize) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m).map(|_| rng.gen_bool(0.5)).collect()
}

/// All boolean points of `m` features, in mask order.
pub fn boolean_points(m: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << m).map(move |mask| (0..m).map(|i| mask >> i & 1 == 1).collect())
}

/// Every point the circuit maps to class 0.
pub fn class_zero_points(c: &Circuit) -> Vec<Vec<bool>> {
    let root = c.root();
    boolean_points(c.num_features())
        .filter(|p| !c.node_values(p)[root])
        .collect()
}

/// Which family of random circuit to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitShape {
    Ddnnf,
    Fbdd,
}

impl CircuitShape {
    pub fn generate(self, seed: u64, m: usize, depth: usize) -> Circuit {
        match self {
            CircuitShape::Ddnnf => random_circuit(seed, m, depth),
            CircuitShape::Fbdd => random_fbdd(seed, m, depth),
        }
    }
}

/// Linear threshold model with integer weights in `0..=4`, integer domains
/// `{0..1}` or `{0..2}` (total grid at most [`MONOTONE_GRID_LIMIT`]) and
/// `num_classes - 1` distinct thresholds, plus a random instance on the grid.
pub fn random_monotone(seed: u64, m: usize, num_classes: usize) -> (LinearModel, Instance) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = 1usize;
    let mut domains = Vec::with_capacity(m);
    for _ in 0..m {
        let rest = 1usize << (m - domains.len() - 1).min(20);
        let upper = if grid * 3 * rest <= MONOTONE_GRID_LIMIT && rng.gen_bool(0.4) {
            2.0
        } else {
            1.0
        };
        grid *= upper as usize + 1;
        domains.push(FeatureDomain::new(0.0, upper));
    }
    let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0..=4) as f64).collect();
    let max_sum: f64 = weights.iter().zip(&domains).map(|(w, d)| w * d.upper).sum();
    let mut thresholds: Vec<f64> = Vec::new();
    let span = (max_sum as i64).max(1);
    while thresholds.len() + 1 < num_classes {
        let th = rng.gen_range(1..=span) as f64;
        if !thresholds.contains(&th) || thresholds.len() as i64 >= span {
            thresholds.push(th);
        }
    }
    let model = LinearModel::new(weights, thresholds, domains).expect("valid by construction");
    let values: Vec<f64> = (1..=m)
        .map(|i| rng.gen_range(0..=model.domain(i).upper as i64) as f64)
        .collect();
    let class = model.predict(&values).expect("arity matches");
    (model, Instance::new(values, class))
}

/// A CNF with `clauses` clauses of `width` distinct variables each.
pub fn random_cnf(seed: u64, vars: usize, clauses: usize, width: usize) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = width.min(vars);
    let pool: Vec<i32> = (1..=vars as i32).collect();
    let mut f = CnfFormula::new(vars);
    for _ in 0..clauses {
        let picked: Vec<i32> = pool.choose_multiple(&mut rng, width).copied().collect();
        let clause: Vec<i32> = picked
            .into_iter()
            .map(|v| if rng.gen_bool(0.5) { v } else { -v })
            .collect();
        f.add_clause(clause);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotone::{audit_monotonicity, DEFAULT_AUDIT_PAIRS};

    #[test]
    fn circuits_are_decomposable_and_deterministic() {
        for seed in 0..50 {
            let c = random_circuit(seed, 6, 3);
            let r = c.validate();
            assert!(r.is_clean(), "seed {seed}: {r:?}");
            assert_eq!(c, random_circuit(seed, 6, 3));
        }
        assert!(random_circuit(1, 6, 3).is_decomposable());
    }

    #[test]
    fn fbdds_are_read_once() {
        for seed in 0..50 {
            let c = random_fbdd(seed, 6, 4);
            assert!(c.validate().is_clean(), "seed {seed}");
            assert_eq!(c.kind(), CircuitKind::Fbdd);
        }
    }

    #[test]
    fn monotone_models_pass_audit() {
        let (model, inst) = random_monotone(1, 6, 3);
        assert_eq!(model.num_classes(), 3);
        audit_monotonicity(&model, DEFAULT_AUDIT_PAIRS, 1).unwrap();
        assert_eq!(model.predict(&inst.values).unwrap(), inst.class);
        assert_eq!(random_monotone(1, 6, 3).0, model);
        for seed in 0..20 {
            let (m, _) = random_monotone(seed, 12, 2);
            let grid: f64 = (1..=12).map(|i| m.domain(i).upper + 1.0).product();
            assert!(grid as usize <= MONOTONE_GRID_LIMIT);
        }
    }

    #[test]
    fn cnf_clauses_have_distinct_variables() {
        let f = random_cnf(3, 5, 20, 3);
        assert_eq!(f.num_clauses(), 20);
        for c in &f.clauses {
            let mut vars: Vec<u32> = c.iter().map(|l| l.unsigned_abs()).collect();
            vars.sort_unstable();
            vars.dedup();
            assert_eq!(vars.len(), 3);
        }
        assert_eq!(f, random_cnf(3, 5, 20, 3));
    }
}
