use serde::{Deserialize, Serialize};

/// A clause database over variables `1..=num_vars`, literals as signed DIMACS integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn from_clauses(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        CnfFormula { num_vars, clauses }
    }

    /// Appends a clause, growing `num_vars` to cover its literals.
    pub fn add_clause(&mut self, clause: impl Into<Vec<i32>>) {
        let clause = clause.into();
        for &l in &clause {
            assert!(l != 0, "0 is not a literal");
            self.num_vars = self.num_vars.max(l.unsigned_abs() as usize);
        }
        self.clauses.push(clause);
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Whether a total assignment (`model[v - 1]` is variable `v`) satisfies every clause.
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.first_falsified(model).is_none()
    }

    /// Index of the first clause the assignment falsifies.
    pub fn first_falsified(&self, model: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            !clause.iter().any(|&l| {
                let v = model.get(l.unsigned_abs() as usize - 1).copied().unwrap_or(false);
                v == (l > 0)
            })
        })
    }

    /// Checks the literal-range invariant.
    pub fn well_formed(&self) -> bool {
        self.clauses
            .iter()
            .flatten()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars)
    }
}

/// Allocator for fresh variables with named blocks.
#[derive(Debug, Clone, Default)]
pub struct VarPool {
    next: i32,
}

impl VarPool {
    pub fn new() -> Self {
        VarPool { next: 1 }
    }

    pub fn fresh(&mut self) -> i32 {
        let v = self.next;
        self.next += 1;
        v
    }

    /// Allocates `n` consecutive variables.
    pub fn block(&mut self, n: usize) -> Vec<i32> {
        (0..n).map(|_| self.fresh()).collect()
    }

    pub fn num_vars(&self) -> usize {
        (self.next - 1) as usize
    }
}
