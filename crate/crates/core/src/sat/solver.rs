//! Conflict-driven clause learning with two watched literals.
//!
//! The solver is incremental: clauses may be added between calls to
//! [`Solver::solve`], learned clauses are kept, and assumptions are decided
//! first on every call. Decisions are deterministic. With
//! [`Branching::Activity`] the unassigned variable of highest activity is
//! chosen (lowest index on ties) with its saved phase, initially false. With
//! [`Branching::ClauseOrder`] the first non-satisfied input clause is
//! satisfied through its first unassigned literal, and once every input
//! clause is satisfied the remaining variables repeat the previous model.

use std::time::{Duration, Instant};

use super::{CnfFormula, Model, SatError, SatOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Lit(u32);

impl Lit {
    fn from_dimacs(l: i32) -> Lit {
        let v = l.unsigned_abs() - 1;
        Lit(v << 1 | (l < 0) as u32)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const UNDEF: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;

#[inline]
fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let v = assigns[l.var()];
    if l.is_neg() {
        -v
    } else {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branching {
    #[default]
    Activity,
    ClauseOrder,
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub branching: Branching,
    /// Conflicts allowed per `solve` call.
    pub conflict_budget: Option<u64>,
    /// Wall-clock limit per `solve` call.
    pub time_limit: Option<Duration>,
}

pub const SAT_TIMEOUT_ENV: &str = "XPLAIN_SAT_TIMEOUT_MS";

impl SolverConfig {
    /// Default configuration with the time limit taken from `XPLAIN_SAT_TIMEOUT_MS`.
    pub fn from_env() -> Self {
        SolverConfig {
            time_limit: timeout_from_env(),
            ..Self::default()
        }
    }

    pub fn with_branching(mut self, branching: Branching) -> Self {
        self.branching = branching;
        self
    }
}

pub(crate) fn timeout_from_env() -> Option<Duration> {
    std::env::var(SAT_TIMEOUT_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(Duration::from_millis)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub solves: u64,
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Debug, Clone)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Max-heap on activity with the lowest variable index winning ties.
#[derive(Debug, Clone, Default)]
struct VarOrder {
    heap: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl VarOrder {
    fn better(act: &[f64], a: usize, b: usize) -> bool {
        act[a] > act[b] || (act[a] == act[b] && a < b)
    }

    fn grow(&mut self, n: usize, act: &[f64]) {
        while self.pos.len() < n {
            self.pos.push(None);
            self.insert(self.pos.len() - 1, act);
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v].is_some()
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = Some(self.heap.len());
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap.swap_remove(0);
        self.pos[top] = None;
        if !self.heap.is_empty() {
            self.pos[self.heap[0]] = Some(0);
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if let Some(i) = self.pos[v] {
            self.sift_up(i, act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::better(act, v, self.heap[parent]) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i]] = Some(i);
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v] = Some(i);
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let child = if r < self.heap.len() && Self::better(act, self.heap[r], self.heap[l]) {
                r
            } else {
                l
            };
            if !Self::better(act, self.heap[child], v) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i]] = Some(i);
            i = child;
        }
        self.heap[i] = v;
        self.pos[v] = Some(i);
    }
}

enum Search {
    Sat,
    Unsat,
    Restart,
    Budget,
}

#[derive(Debug, Clone)]
pub struct Solver {
    config: SolverConfig,
    ok: bool,
    input: CnfFormula,
    clauses: Vec<Clause>,
    originals: Vec<u32>,
    num_learnts: usize,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    order: VarOrder,
    phase: Vec<bool>,
    last_model: Vec<bool>,
    seen: Vec<bool>,
    max_learnts: f64,
    stats: SolverStats,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Self::with_config(SolverConfig::default())
    }

    pub fn with_config(config: SolverConfig) -> Self {
        Solver {
            config,
            ok: true,
            input: CnfFormula::new(0),
            clauses: Vec::new(),
            originals: Vec::new(),
            num_learnts: 0,
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            order: VarOrder::default(),
            phase: Vec::new(),
            last_model: Vec::new(),
            seen: Vec::new(),
            max_learnts: 0.0,
            stats: SolverStats::default(),
        }
    }

    pub fn from_formula(f: &CnfFormula, config: SolverConfig) -> Self {
        let mut s = Self::with_config(config);
        s.ensure_vars(f.num_vars);
        for c in &f.clauses {
            s.add_clause(c);
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.input.clauses.len()
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// Clauses added so far, as given.
    pub fn formula(&self) -> &CnfFormula {
        &self.input
    }

    pub fn ensure_vars(&mut self, n: usize) {
        if n <= self.assigns.len() {
            return;
        }
        self.assigns.resize(n, UNDEF);
        self.level.resize(n, 0);
        self.reason.resize(n, None);
        self.activity.resize(n, 0.0);
        self.phase.resize(n, false);
        self.last_model.resize(n, false);
        self.seen.resize(n, false);
        self.watches.resize(2 * n, Vec::new());
        self.input.num_vars = n;
        self.order.grow(n, &self.activity);
    }

    pub fn new_var(&mut self) -> i32 {
        let n = self.num_vars() + 1;
        self.ensure_vars(n);
        n as i32
    }

    fn value(&self, l: Lit) -> i8 {
        lit_value(&self.assigns, l)
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a clause of DIMACS literals. Returns `false` once the clause
    /// database is known to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[i32]) -> bool {
        let max_var = clause.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        self.ensure_vars(max_var);
        self.input.clauses.push(clause.to_vec());
        if !self.ok {
            return false;
        }
        self.cancel_until(0);

        let mut lits: Vec<Lit> = Vec::with_capacity(clause.len());
        for &l in clause {
            assert!(l != 0, "0 is not a literal");
            let lit = Lit::from_dimacs(l);
            if lits.contains(&!lit) || self.value(lit) == TRUE {
                return true;
            }
            if !lits.contains(&lit) && self.value(lit) != FALSE {
                lits.push(lit);
            }
        }
        match lits.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(lits[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                let cref = self.attach(lits, false);
                self.originals.push(cref);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[(!lits[0]).code()].push(Watcher { cref, blocker: lits[1] });
        self.watches[(!lits[1]).code()].push(Watcher { cref, blocker: lits[0] });
        if learnt {
            self.num_learnts += 1;
        }
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = l.var();
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = if l.is_neg() { FALSE } else { TRUE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.code()]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let clause = &mut self.clauses[w.cref as usize];
                if clause.deleted {
                    continue;
                }
                if clause.lits[0] == false_lit {
                    clause.lits.swap(0, 1);
                }
                let first = clause.lits[0];
                let watcher = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && lit_value(&self.assigns, first) == TRUE {
                    ws[j] = watcher;
                    j += 1;
                    continue;
                }
                for k in 2..clause.lits.len() {
                    if lit_value(&self.assigns, clause.lits[k]) != FALSE {
                        clause.lits.swap(1, k);
                        let new_watch = !clause.lits[1];
                        self.watches[new_watch.code()].push(watcher);
                        continue 'watchers;
                    }
                }
                ws[j] = watcher;
                j += 1;
                if lit_value(&self.assigns, first) == FALSE {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                    self.qhead = self.trail.len();
                } else {
                    self.enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[p.code()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for idx in (keep..self.trail.len()).rev() {
            let l = self.trail[idx];
            let v = l.var();
            self.phase[v] = !l.is_neg();
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.order.insert(v, &self.activity);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level);
        self.qhead = keep;
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level() as u32;
        loop {
            if self.clauses[confl as usize].learnt {
                self.bump_clause(confl);
            }
            let start = usize::from(p.is_some());
            let lits = self.clauses[confl as usize].lits.clone();
            for &q in &lits[start..] {
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let lit = self.trail[index];
            self.seen[lit.var()] = false;
            path -= 1;
            p = Some(lit);
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var()].expect("implied literal has a reason");
        }
        learnt[0] = !p.expect("conflict has a UIP");

        // Drop literals implied by other literals of the clause.
        let candidates: Vec<Lit> = learnt[1..].to_vec();
        let mut kept = vec![learnt[0]];
        for &q in &candidates {
            let redundant = match self.reason[q.var()] {
                None => false,
                Some(r) => self.clauses[r as usize].lits[1..]
                    .iter()
                    .all(|x| self.seen[x.var()] || self.level[x.var()] == 0),
            };
            if !redundant {
                kept.push(q);
            }
        }
        for &q in &candidates {
            self.seen[q.var()] = false;
        }
        let mut learnt = kept;

        let mut bt = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var()] > self.level[learnt[max_i].var()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[learnt[1].var()] as usize;
        }
        (learnt, bt)
    }

    fn locked(&self, cref: u32) -> bool {
        let c = &self.clauses[cref as usize];
        let v = c.lits[0].var();
        self.reason[v] == Some(cref) && self.value(c.lits[0]) == TRUE
    }

    fn reduce_db(&mut self) {
        let mut learnts: Vec<u32> = (0..self.clauses.len() as u32)
            .filter(|&c| {
                let cl = &self.clauses[c as usize];
                cl.learnt && !cl.deleted
            })
            .collect();
        learnts.sort_by(|&a, &b| {
            self.clauses[a as usize]
                .activity
                .total_cmp(&self.clauses[b as usize].activity)
        });
        let half = learnts.len() / 2;
        for &c in &learnts[..half] {
            if self.clauses[c as usize].lits.len() > 2 && !self.locked(c) {
                let cl = &mut self.clauses[c as usize];
                cl.deleted = true;
                cl.lits = Vec::new();
                self.num_learnts -= 1;
            }
        }
        for ws in &mut self.watches {
            let clauses = &self.clauses;
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        match self.config.branching {
            Branching::Activity => {
                while let Some(v) = self.order.pop(&self.activity) {
                    if self.assigns[v] == UNDEF {
                        let v = v as u32;
                        return Some(if self.phase[v as usize] {
                            Lit(v << 1)
                        } else {
                            Lit(v << 1 | 1)
                        });
                    }
                }
                None
            }
            Branching::ClauseOrder => {
                for &cref in &self.originals {
                    let c = &self.clauses[cref as usize];
                    if c.lits.iter().any(|&l| self.value(l) == TRUE) {
                        continue;
                    }
                    return c.lits.iter().copied().find(|&l| self.value(l) == UNDEF);
                }
                None
            }
        }
    }

    fn search(
        &mut self,
        assumptions: &[Lit],
        conflict_limit: u64,
        budget_start: u64,
        deadline: Option<Instant>,
    ) -> Search {
        let mut local_conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                local_conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Search::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let asserting = learnt[0];
                    let cref = self.attach(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(asserting, Some(cref));
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;

                if let Some(budget) = self.config.conflict_budget {
                    if self.stats.conflicts - budget_start >= budget {
                        return Search::Budget;
                    }
                }
                if let Some(d) = deadline {
                    if local_conflicts.is_multiple_of(64) && Instant::now() >= d {
                        return Search::Budget;
                    }
                }
            } else {
                if local_conflicts >= conflict_limit {
                    self.cancel_until(0);
                    return Search::Restart;
                }
                if self.num_learnts as f64 >= self.max_learnts + self.trail.len() as f64 {
                    self.reduce_db();
                    self.max_learnts *= 1.1;
                }

                let mut next = None;
                while self.decision_level() < assumptions.len() {
                    let p = assumptions[self.decision_level()];
                    match self.value(p) {
                        TRUE => self.trail_lim.push(self.trail.len()),
                        FALSE => return Search::Unsat,
                        _ => {
                            next = Some(p);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(p) => p,
                    None => match self.pick_branch() {
                        Some(p) => {
                            self.stats.decisions += 1;
                            p
                        }
                        None => return Search::Sat,
                    },
                };
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, None);
            }
        }
    }

    /// Decides the clause database under `assumptions` (DIMACS literals).
    pub fn solve(&mut self, assumptions: &[i32]) -> Result<SatOutcome, SatError> {
        self.stats.solves += 1;
        let max_var = assumptions.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        self.ensure_vars(max_var);
        if !self.ok {
            return Ok(SatOutcome::Unsat);
        }
        self.cancel_until(0);
        let assumptions: Vec<Lit> = assumptions
            .iter()
            .map(|&l| {
                assert!(l != 0, "0 is not a literal");
                Lit::from_dimacs(l)
            })
            .collect();
        let deadline = self.config.time_limit.map(|t| Instant::now() + t);
        let budget_start = self.stats.conflicts;
        self.max_learnts = (self.originals.len() as f64 / 3.0).max(2000.0);

        let mut restart = 0u32;
        let result = loop {
            let limit = (luby(2.0, restart) * 100.0) as u64;
            match self.search(&assumptions, limit, budget_start, deadline) {
                Search::Restart => {
                    restart += 1;
                    self.stats.restarts += 1;
                    if deadline.is_some_and(|d| Instant::now() >= d) {
                        break Err(SatError::BudgetExceeded);
                    }
                }
                Search::Budget => break Err(SatError::BudgetExceeded),
                Search::Unsat => break Ok(SatOutcome::Unsat),
                Search::Sat => {
                    let values: Vec<bool> = (0..self.num_vars())
                        .map(|v| match self.assigns[v] {
                            TRUE => true,
                            FALSE => false,
                            _ => self.last_model[v],
                        })
                        .collect();
                    if let Some(idx) = self.input.first_falsified(&values) {
                        break Err(SatError::ModelVerification { clause: idx });
                    }
                    self.last_model.clone_from(&values);
                    break Ok(SatOutcome::Sat(Model::new(values)));
                }
            }
        };
        self.cancel_until(0);
        result
    }
}

/// The Luby restart sequence scaled by powers of `y`.
fn luby(y: f64, mut x: u32) -> f64 {
    let mut size = 1u32;
    let mut seq = 0;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luby_prefix() {
        let seq: Vec<f64> = (0..15).map(|i| luby(2.0, i)).collect();
        assert_eq!(
            seq,
            vec![1., 1., 2., 1., 1., 2., 4., 1., 1., 2., 1., 1., 2., 4., 8.]
        );
    }

    #[test]
    fn heap_prefers_low_index_on_ties() {
        let act = vec![0.0; 5];
        let mut order = VarOrder::default();
        order.grow(5, &act);
        let popped: Vec<usize> = std::iter::from_fn(|| order.pop(&act)).collect();
        assert_eq!(popped, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn contradiction_is_unsat() {
        let mut s = Solver::new();
        s.add_clause(&[1]);
        s.add_clause(&[-1]);
        assert_eq!(s.solve(&[]).unwrap(), SatOutcome::Unsat);
    }

    #[test]
    fn propagation_forces_model() {
        let mut s = Solver::new();
        s.add_clause(&[1, 2]);
        s.add_clause(&[-1]);
        let SatOutcome::Sat(m) = s.solve(&[]).unwrap() else { panic!() };
        assert!(!m.value(1) && m.value(2));
    }

    #[test]
    fn assumptions_do_not_persist() {
        let mut s = Solver::new();
        s.add_clause(&[1, 2]);
        assert_eq!(s.solve(&[-1, -2]).unwrap(), SatOutcome::Unsat);
        assert!(matches!(s.solve(&[-1]).unwrap(), SatOutcome::Sat(_)));
        assert!(matches!(s.solve(&[]).unwrap(), SatOutcome::Sat(_)));
    }

    #[test]
    fn clause_order_follows_first_literals() {
        let mut s = Solver::with_config(SolverConfig::default().with_branching(Branching::ClauseOrder));
        s.ensure_vars(3);
        let SatOutcome::Sat(m) = s.solve(&[]).unwrap() else { panic!() };
        assert_eq!(m.values(), &[false, false, false]);
        s.add_clause(&[2, 3]);
        let SatOutcome::Sat(m) = s.solve(&[]).unwrap() else { panic!() };
        assert_eq!(m.values(), &[false, true, false]);
    }

    #[test]
    fn conflict_budget_is_reported() {
        // Pigeonhole 7 into 6 needs many conflicts.
        let f = crate::sat::tests::pigeonhole(7, 6);
        let mut s = Solver::from_formula(
            &f,
            SolverConfig {
                conflict_budget: Some(10),
                ..SolverConfig::default()
            },
        );
        assert!(matches!(s.solve(&[]), Err(SatError::BudgetExceeded)));
    }
}
