//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if a gating criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xplain_core::circuit::{parse_circuit, Circuit};
use xplain_core::frp::ddnnf::{decide_relevancy, encode_problem};
use xplain_core::frp::mono::{decide_relevancy_mono, MonoConfig, MonoOutcome, StepAction};
use xplain_core::frp::{verify_witness, FrpOutcome, Relevancy, SatBackend};
use xplain_core::monotone::{parse_model_spec, LinearModel, ModelSpec, MonotoneModel};
use xplain_core::record::{QueryKind, QueryRecord, QueryStats};
use xplain_core::testgen::{
    brute_force_sat, class_zero_points, enumerate_axps, gen_fbdd_from_cnf, gen_mono_from_cnf,
    random_circuit, random_cnf, random_fbdd, random_monotone, random_point, AxpSet, BruteForce,
    ReductionClassifier,
};
use xplain_core::xp::{is_necessary, ClassifierOracle};
use xplain_core::{CircuitProblem, FeatureSet, Instance, MonotoneProblem};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn set(m: usize, ids: &[usize]) -> FeatureSet {
    FeatureSet::from_features(m, ids.iter().copied())
}

/// Problems found while checking one criterion.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
    witness_checks: u64,
    witness_violations: Vec<String>,
    budget_checks: u64,
    budget_violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn witness<O: ClassifierOracle>(&mut self, oracle: &O, r: &Relevancy, t: usize, ctx: &str) {
        if let Relevancy::Relevant(w) = r {
            self.witness_checks += 1;
            match verify_witness(oracle, w, t) {
                Ok(true) => {}
                Ok(false) => self.witness_violations.push(format!("{ctx}: t={t} {w:?}")),
                Err(e) => self.witness_violations.push(format!("{ctx}: t={t} {e}")),
            }
        }
    }

    /// Checks the query bound on the record built from a monotone run.
    fn budget(&mut self, run: &MonoOutcome, m: usize, t: usize, values: &[f64], class: usize, ctx: &str) {
        let mut rec = QueryRecord::new(QueryKind::Relevancy, ctx, values.to_vec(), class)
            .with_relevancy(&run.outcome.relevancy);
        rec.feature = Some(t);
        rec.stats = QueryStats::from_frp(&run.outcome.stats, 0.0);
        self.budget_checks += 1;
        let bound = 4 * rec.stats.sat_calls + 2 * m as u64;
        if rec.stats.predict_calls > bound || !rec.is_consistent() {
            self.budget_violations.push(format!(
                "{ctx}: t={t} predict_calls={} sat_calls={} m={m}",
                rec.stats.predict_calls, rec.stats.sat_calls
            ));
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.witness_checks += other.witness_checks;
        self.witness_violations.extend(other.witness_violations);
        self.budget_checks += other.budget_checks;
        self.budget_violations.extend(other.budget_violations);
    }
}

struct Line {
    id: &'static str,
    pass: bool,
    gating: bool,
    detail: String,
}

fn circuit_answers(problem: &CircuitProblem, truth: &AxpSet, oracle: &BruteForce, tally: &mut Tally, ctx: &str) {
    let m = problem.num_features();
    for t in 1..=m {
        let r = decide_relevancy(problem, t, &SatBackend::default()).unwrap();
        tally.check(r.relevancy.is_relevant() == truth.is_relevant(t), || {
            format!("{ctx}: relevancy of {t} is {:?}, expected {}", r.relevancy, truth.is_relevant(t))
        });
        tally.witness(oracle, &r.relevancy, t, ctx);
        let nec = is_necessary(problem, t).unwrap();
        tally.check(nec == truth.is_necessary(t), || format!("{ctx}: necessity of {t} is {nec}"));
    }
}

fn mono_answers<M: MonotoneModel>(
    problem: &MonotoneProblem<M>,
    truth: &AxpSet,
    oracle: &BruteForce,
    tally: &mut Tally,
    ctx: &str,
) {
    let m = problem.num_features();
    for t in 1..=m {
        let run = decide_relevancy_mono(problem, t, &MonoConfig::default()).unwrap();
        let r = &run.outcome.relevancy;
        tally.check(r.is_relevant() == truth.is_relevant(t), || {
            format!("{ctx}: relevancy of {t} is {r:?}, expected {}", truth.is_relevant(t))
        });
        tally.witness(oracle, r, t, ctx);
        tally.budget(&run, m, t, problem.values(), problem.class(), ctx);
        let nec = is_necessary(problem, t).unwrap();
        tally.check(nec == truth.is_necessary(t), || format!("{ctx}: necessity of {t} is {nec}"));
    }
}

fn load_fig1() -> Circuit {
    parse_circuit(&std::fs::read_to_string(data("fig1.nnf")).unwrap()).unwrap()
}

fn load_kappa2() -> LinearModel {
    match parse_model_spec(&std::fs::read_to_string(data("kappa2.mono")).unwrap()).unwrap() {
        ModelSpec::Linear(m) => m,
        ModelSpec::Extern(_) => panic!("kappa2 is linear"),
    }
}

fn criterion1(all: &mut Tally) -> Line {
    let start = Instant::now();
    let mut tally = Tally::default();

    let fig1 = CircuitProblem::new(load_fig1(), None, &Instance::boolean(&[false, true, false, false], 0)).unwrap();
    let bf = BruteForce::for_circuit(fig1.circuit(), fig1.point()).unwrap();
    let axps = enumerate_axps(&fig1).unwrap();
    tally.check(axps.axps == vec![set(4, &[1, 3]), set(4, &[1, 4])], || format!("fig1 AXps {:?}", axps.axps));
    tally.check(enumerate_axps(&bf).unwrap() == axps, || "fig1 brute-force AXps differ".into());
    for t in 1..=4 {
        let nec = is_necessary(&fig1, t).unwrap();
        tally.check(nec == (t == 1), || format!("fig1 necessity of {t} = {nec}"));
        let r = decide_relevancy(&fig1, t, &SatBackend::default()).unwrap().relevancy;
        tally.check(r.is_relevant() == (t != 2), || format!("fig1 relevancy of {t} = {r:?}"));
        tally.witness(&bf, &r, t, "fig1");
    }

    let k2 = MonotoneProblem::new(load_kappa2(), &Instance::new(vec![1.0; 4], 1)).unwrap();
    let kbf = BruteForce::for_monotone_grid(k2.model(), k2.values(), 1 << 20).unwrap();
    let kaxps = enumerate_axps(&k2).unwrap();
    tally.check(
        kaxps.axps == vec![set(4, &[1, 2]), set(4, &[1, 3]), set(4, &[2, 3])],
        || format!("kappa2 AXps {:?}", kaxps.axps),
    );
    tally.check(enumerate_axps(&kbf).unwrap() == kaxps, || "kappa2 brute-force AXps differ".into());
    for t in 1..=4 {
        let nec = is_necessary(&k2, t).unwrap();
        tally.check(!nec, || format!("kappa2 necessity of {t}"));
        let run = decide_relevancy_mono(&k2, t, &MonoConfig::default()).unwrap();
        tally.check(run.outcome.relevancy.is_relevant() == (t != 4), || {
            format!("kappa2 relevancy of {t} = {:?}", run.outcome.relevancy)
        });
        tally.witness(&kbf, &run.outcome.relevancy, t, "kappa2");
        tally.budget(&run, 4, t, k2.values(), 1, "kappa2");
    }

    let elapsed = start.elapsed();
    tally.check(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"));
    let line = Line {
        id: "1 running-example goldens",
        pass: tally.failures.is_empty(),
        gating: true,
        detail: format!("{} checks in {:.3}s", tally.checks, elapsed.as_secs_f64()),
    };
    report_failures(&tally);
    all.absorb(tally);
    line
}

fn criterion2(all: &mut Tally) -> Line {
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    // d-DNNF circuits with class-0 instances.
    let mut ddnnf = 0;
    let mut seed = 0u64;
    while ddnnf < 350 {
        seed += 1;
        let m = rng.gen_range(2..=12);
        let depth = rng.gen_range(1..=5);
        let c = random_circuit(seed, m, depth);
        let zeros = class_zero_points(&c);
        if zeros.is_empty() {
            continue;
        }
        let point = zeros[rng.gen_range(0..zeros.len())].clone();
        let problem = CircuitProblem::new(c, None, &Instance::boolean(&point, 0)).unwrap();
        let bf = BruteForce::for_circuit(problem.circuit(), &point).unwrap();
        let truth = enumerate_axps(&bf).unwrap();
        circuit_answers(&problem, &truth, &bf, &mut tally, &format!("ddnnf seed {seed} m {m}"));
        ddnnf += 1;
    }
    // FBDDs with instances of either class; class 1 goes through negation.
    let mut class_one = 0;
    for seed in 0..150u64 {
        let m = rng.gen_range(2..=12);
        let c = random_fbdd(10_000 + seed, m, rng.gen_range(2..=8));
        let point = random_point(20_000 + seed, m);
        let class = c.evaluate(&point).unwrap();
        class_one += class;
        let problem = CircuitProblem::new(c, None, &Instance::boolean(&point, class)).unwrap();
        let bf = BruteForce::for_circuit(problem.circuit(), &point).unwrap();
        let truth = enumerate_axps(&bf).unwrap();
        circuit_answers(&problem, &truth, &bf, &mut tally, &format!("fbdd seed {seed} m {m}"));
    }
    // Monotone threshold models.
    for seed in 0..500u64 {
        let m = rng.gen_range(1..=12);
        let k = rng.gen_range(2..=4);
        let (model, inst) = random_monotone(seed, m, k);
        let problem = MonotoneProblem::new(model, &inst).unwrap();
        let bf = BruteForce::for_monotone_grid(problem.model(), &inst.values, 1 << 20).unwrap();
        let truth = enumerate_axps(&bf).unwrap();
        mono_answers(&problem, &truth, &bf, &mut tally, &format!("mono seed {seed} m {m} k {k}"));
    }

    let elapsed = start.elapsed();
    tally.check(elapsed.as_secs() < 600, || format!("took {elapsed:?}"));
    let line = Line {
        id: "2 oracle equivalence",
        pass: tally.failures.is_empty(),
        gating: true,
        detail: format!(
            "500 circuits ({class_one} class-1 FBDD instances) + 500 monotone models, {} answers compared, {} disagreements, {:.1}s",
            tally.checks,
            tally.failures.len(),
            elapsed.as_secs_f64()
        ),
    };
    report_failures(&tally);
    all.absorb(tally);
    line
}

fn criterion3(all: &mut Tally) -> Line {
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut done, mut sat, mut seed) = (0, 0, 0u64);
    while done < 200 {
        seed += 1;
        let vars = rng.gen_range(3..=12);
        let clauses = rng.gen_range(vars * 3..=vars * 5);
        let f = random_cnf(seed, vars, clauses, 3);
        let Ok(mono) = gen_mono_from_cnf(&f) else { continue };
        let fbdd = gen_fbdd_from_cnf(&f).unwrap();
        let expected = brute_force_sat(&f).unwrap();
        sat += expected as usize;
        let ctx = format!("cnf seed {seed} vars {vars} clauses {clauses}");

        let ReductionClassifier::Monotone(model) = mono.classifier else { unreachable!() };
        let mp = MonotoneProblem::new(model, &mono.instance).unwrap();
        // Without shrinking the refinement loop can need tens of thousands of
        // iterations on 12 variables, so the plain loop runs on smaller formulas.
        let shrink = MonoConfig { shrink: true, ..MonoConfig::default() };
        let mut configs = vec![shrink];
        if vars <= 8 {
            configs.push(MonoConfig::default());
        }
        for config in &configs {
            let run = decide_relevancy_mono(&mp, mono.target, config).unwrap();
            tally.check(run.outcome.relevancy.is_relevant() == expected, || {
                format!("{ctx}: mono relevancy {:?} (shrink {}), sat {expected}", run.outcome.relevancy, config.shrink)
            });
            tally.witness(&mp, &run.outcome.relevancy, mono.target, &ctx);
            if !config.shrink {
                tally.budget(&run, mp.num_features(), mono.target, mp.values(), 1, &ctx);
            }
        }

        let ReductionClassifier::Circuit(c) = fbdd.classifier else { unreachable!() };
        let cp = CircuitProblem::new(c, None, &fbdd.instance).unwrap();
        let r = decide_relevancy(&cp, fbdd.target, &SatBackend::default()).unwrap();
        tally.check(r.relevancy.is_relevant() == expected, || {
            format!("{ctx}: fbdd relevancy {:?}, sat {expected}", r.relevancy)
        });
        tally.witness(&cp, &r.relevancy, fbdd.target, &ctx);
        done += 1;
    }
    let line = Line {
        id: "3 reduction equivalence",
        pass: tally.failures.is_empty(),
        gating: true,
        detail: format!(
            "200 CNFs ({sat} sat, {} unsat) x 2 reductions, {} disagreements, {:.1}s",
            200 - sat,
            tally.failures.len(),
            start.elapsed().as_secs_f64()
        ),
    };
    report_failures(&tally);
    all.absorb(tally);
    line
}

fn criterion4(all: &Tally) -> Line {
    Line {
        id: "4 witness soundness",
        pass: all.witness_violations.is_empty() && all.witness_checks > 0,
        gating: true,
        detail: format!(
            "{} witnesses checked, {} violations",
            all.witness_checks,
            all.witness_violations.len()
        ),
    }
}

fn criterion5(all: &Tally) -> Line {
    Line {
        id: "5 query-budget bound",
        pass: all.budget_violations.is_empty() && all.budget_checks > 0,
        gating: true,
        detail: format!(
            "{} monotone runs checked, {} over 4*sat_calls + 2*m",
            all.budget_checks,
            all.budget_violations.len()
        ),
    }
}

fn criterion6() -> Line {
    let mut failures = Vec::new();
    let mut queries = 0u32;
    let mut total = 0.0f64;
    let mut sizes = Vec::new();
    let mut seed = 600u64;
    while queries < 100 {
        seed += 1;
        let m = 220;
        let c = random_circuit(seed, m, 5);
        if c.num_nodes() < 3000 {
            continue;
        }
        let mut point = None;
        for ps in 0..200 {
            let p = random_point(seed * 1000 + ps, m);
            if c.evaluate(&p).unwrap() == 0 {
                point = Some(p);
                break;
            }
        }
        let Some(point) = point else { continue };
        let nodes = c.num_nodes();
        sizes.push(nodes);
        let problem = CircuitProblem::new(c, None, &Instance::boolean(&point, 0)).unwrap();
        let mut frng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..25 {
            let t = frng.gen_range(1..=m);
            let enc = encode_problem(&problem, t).unwrap();
            if enc.formula.num_vars != 2 * nodes + m {
                failures.push(format!("seed {seed}: {} vars for {nodes} nodes", enc.formula.num_vars));
            }
            let start = Instant::now();
            let r: FrpOutcome = decide_relevancy(&problem, t, &SatBackend::default()).unwrap();
            total += start.elapsed().as_secs_f64();
            if r.relevancy == Relevancy::Unknown {
                failures.push(format!("seed {seed}: feature {t} unknown"));
            }
            queries += 1;
        }
    }
    let avg = total / queries as f64;
    if avg >= 30.0 {
        failures.push(format!("average {avg:.2}s"));
    }
    for f in &failures {
        eprintln!("    {f}");
    }
    Line {
        id: "6 scale substitute",
        pass: failures.is_empty(),
        gating: true,
        detail: format!(
            "{queries} queries on circuits with {:?} nodes and 220 features, avg {:.4}s/query, vars = 2*nodes + m",
            sizes,
            avg
        ),
    }
}

fn criterion7() -> Vec<Line> {
    let k2 = || MonotoneProblem::new(load_kappa2(), &Instance::new(vec![1.0; 4], 1)).unwrap();
    let mut same = true;
    for t in 1..=4 {
        let a = decide_relevancy_mono(&k2(), t, &MonoConfig::default()).unwrap();
        let b = decide_relevancy_mono(&k2(), t, &MonoConfig::default()).unwrap();
        same &= a.trace == b.trace && a.outcome.relevancy == b.outcome.relevancy;
    }
    for seed in 0..30u64 {
        let c = random_circuit(seed, 10, 4);
        let zeros = class_zero_points(&c);
        let Some(p) = zeros.first() else { continue };
        let run = || {
            let problem = CircuitProblem::new(random_circuit(seed, 10, 4), None, &Instance::boolean(p, 0)).unwrap();
            (1..=10)
                .map(|t| decide_relevancy(&problem, t, &SatBackend::default()).unwrap().relevancy)
                .collect::<Vec<_>>()
        };
        same &= run() == run();
        let (model, inst) = random_monotone(seed, 8, 3);
        let (model2, _) = random_monotone(seed, 8, 3);
        let p1 = MonotoneProblem::new(model, &inst).unwrap();
        let p2 = MonotoneProblem::new(model2, &inst).unwrap();
        for t in 1..=8 {
            let a = decide_relevancy_mono(&p1, t, &MonoConfig::default()).unwrap();
            let b = decide_relevancy_mono(&p2, t, &MonoConfig::default()).unwrap();
            same &= a.trace == b.trace && a.outcome.relevancy == b.outcome.relevancy;
        }
    }

    let run = decide_relevancy_mono(&k2(), 4, &MonoConfig::default()).unwrap();
    let clauses: Vec<Vec<i32>> = run
        .trace
        .iter()
        .filter(|s| s.action != StepAction::Witness)
        .map(|s| s.clause.clone())
        .collect();
    let reference: Vec<Vec<i32>> = vec![vec![1, 2, 3], vec![2, 3], vec![-1, -2], vec![-1, -3], vec![1]];
    let prefix_matches = clauses.len() >= 4 && clauses[..4] == reference[..4];
    let shape = clauses == reference && run.outcome.relevancy == Relevancy::Irrelevant;
    vec![
        Line {
            id: "7a determinism",
            pass: same,
            gating: true,
            detail: "repeated runs give identical traces and witnesses".into(),
        },
        Line {
            id: "7b reference trace shape (5 clauses then UNSAT)",
            pass: shape,
            gating: false,
            detail: format!(
                "got {} clauses then UNSAT: {:?}; first four match the reference: {}. The reference's fifth step \
                 adds (s1) at P={{2,3,4}} although both bounds give class 1, where the algorithm adds (-s2 v -s3); \
                 see README, Known deviations",
                clauses.len(),
                clauses,
                prefix_matches
            ),
        },
    ]
}

fn report_failures(t: &Tally) {
    for f in t.failures.iter().take(10) {
        eprintln!("    {f}");
    }
}

fn main() -> ExitCode {
    let mut all = Tally::default();
    let t0 = Instant::now();
    let mut lines = vec![criterion1(&mut all)];
    eprintln!("  [{:.1}s] criterion 1 done", t0.elapsed().as_secs_f64());
    lines.push(criterion2(&mut all));
    eprintln!("  [{:.1}s] criterion 2 done", t0.elapsed().as_secs_f64());
    lines.push(criterion3(&mut all));
    eprintln!("  [{:.1}s] criterion 3 done", t0.elapsed().as_secs_f64());
    lines.push(criterion4(&all));
    lines.push(criterion5(&all));
    for v in all.witness_violations.iter().chain(&all.budget_violations).take(10) {
        eprintln!("    {v}");
    }
    lines.push(criterion6());
    eprintln!("  [{:.1}s] criterion 6 done", t0.elapsed().as_secs_f64());
    lines.extend(criterion7());

    let mut ok = true;
    println!();
    for l in &lines {
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let note = if l.gating { "" } else { " [non-gating]" };
        println!("criterion {}: {verdict}{note} -- {}", l.id, l.detail);
        ok &= l.pass || !l.gating;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
