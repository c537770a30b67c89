//! Batch runs over a manifest, for `bench` and `enumerate --manifest`.

use std::path::Path;

use anyhow::{Context, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use xplain_core::testgen::{read_manifest, ManifestEntry};
use xplain_core::{Answer, QueryKind, QueryRecord};

use crate::load::{Classifier, Problem};
use crate::query::{self, QueryOptions};

pub struct CorpusOptions {
    pub kind: QueryKind,
    /// Features queried per entry: the entry's target first, then random others.
    pub features_per_entry: usize,
    pub seed: u64,
    pub jobs: usize,
    pub query: QueryOptions,
}

pub struct CorpusReport {
    pub records: Vec<QueryRecord>,
    pub summary: serde_json::Value,
    pub errors: usize,
    pub mismatches: usize,
    pub budget_violations: usize,
}

fn pick_features(e: &ManifestEntry, m: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut others: Vec<usize> = (1..=m).filter(|&t| t != e.target).collect();
    others.shuffle(&mut rng);
    let mut out = Vec::with_capacity(k);
    if (1..=m).contains(&e.target) {
        out.push(e.target);
    }
    out.extend(others.into_iter().take(k.saturating_sub(out.len())));
    out
}

struct EntryResult {
    records: Vec<QueryRecord>,
    errors: usize,
    mismatches: usize,
    budget_violations: usize,
}

fn run_entry(base: &Path, idx: usize, e: &ManifestEntry, opts: &CorpusOptions) -> EntryResult {
    let mut r = EntryResult {
        records: Vec::new(),
        errors: 0,
        mismatches: 0,
        budget_violations: 0,
    };
    let fail = |r: &mut EntryResult, err: anyhow::Error| {
        eprintln!("entry {}: {err:#}", idx + 1);
        r.errors += 1;
    };
    let Some(file) = &e.file else {
        fail(&mut r, anyhow::anyhow!("no classifier file"));
        return r;
    };
    let path = base.join(file);
    let classifier = match Classifier::load(&path, None) {
        Ok(c) => c,
        Err(err) => {
            fail(&mut r, err);
            return r;
        }
    };
    let problem = match classifier.problem(&e.instance, Some(e.class)) {
        Ok(p) => p,
        Err(err) => {
            fail(&mut r, err);
            return r;
        }
    };
    let m = e.instance.len();
    let features: Vec<Option<usize>> = match opts.kind {
        QueryKind::Enumerate | QueryKind::Axp => vec![None],
        _ => pick_features(e, m, opts.features_per_entry, opts.seed ^ idx as u64)
            .into_iter()
            .map(Some)
            .collect(),
    };
    for t in features {
        match query::run(opts.kind, &path.to_string_lossy(), &e.instance, &problem, t, &opts.query) {
            Ok(rec) => {
                if opts.kind == QueryKind::Relevancy && t == Some(e.target) {
                    if let (Some(exp), Some(got)) = (e.expected, answer_bool(rec.answer)) {
                        if exp != got {
                            eprintln!("entry {}: feature {} expected {exp}, got {got}", idx + 1, e.target);
                            r.mismatches += 1;
                        }
                    }
                }
                let mono = matches!(problem, Problem::Monotone(_));
                if mono && opts.kind == QueryKind::Relevancy && !opts.query.shrink && !within_budget(&rec, m) {
                    r.budget_violations += 1;
                }
                r.records.push(rec);
            }
            Err(err) => fail(&mut r, err),
        }
    }
    r
}

fn answer_bool(a: Answer) -> Option<bool> {
    match a {
        Answer::Yes => Some(true),
        Answer::No => Some(false),
        Answer::Unknown => None,
    }
}

/// `predict_calls ≤ 4·sat_calls + 2·m` for the monotone refinement loop.
pub fn within_budget(rec: &QueryRecord, m: usize) -> bool {
    rec.stats.predict_calls <= 4 * rec.stats.sat_calls + 2 * m as u64
}

pub fn run(manifest: &Path, opts: &CorpusOptions) -> Result<CorpusReport> {
    let text = std::fs::read_to_string(manifest).with_context(|| format!("reading {}", manifest.display()))?;
    let entries = read_manifest(&text)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build()?;
    let results: Vec<EntryResult> = pool.install(|| {
        entries
            .par_iter()
            .enumerate()
            .map(|(i, e)| run_entry(base, i, e, opts))
            .collect()
    });

    let mut report = CorpusReport {
        records: Vec::new(),
        summary: json!(null),
        errors: 0,
        mismatches: 0,
        budget_violations: 0,
    };
    for r in results {
        report.records.extend(r.records);
        report.errors += r.errors;
        report.mismatches += r.mismatches;
        report.budget_violations += r.budget_violations;
    }
    report.summary = summarize(&report, entries.len());
    Ok(report)
}

fn summarize(report: &CorpusReport, entries: usize) -> serde_json::Value {
    let recs = &report.records;
    let n = recs.len().max(1) as f64;
    let count = |a: Answer| recs.iter().filter(|r| r.answer == a).count();
    let max_u = |f: fn(&QueryRecord) -> u64| recs.iter().map(f).max().unwrap_or(0);
    let avg_u = |f: fn(&QueryRecord) -> u64| recs.iter().map(f).sum::<u64>() as f64 / n;
    json!({
        "summary": {
            "entries": entries,
            "records": recs.len(),
            "yes": count(Answer::Yes),
            "no": count(Answer::No),
            "unknown": count(Answer::Unknown),
            "errors": report.errors,
            "expected_mismatches": report.mismatches,
            "budget_violations": report.budget_violations,
            "max_wall_ms": recs.iter().map(|r| r.stats.wall_ms).fold(0.0, f64::max),
            "avg_wall_ms": recs.iter().map(|r| r.stats.wall_ms).sum::<f64>() / n,
            "max_sat_calls": max_u(|r| r.stats.sat_calls),
            "avg_sat_calls": avg_u(|r| r.stats.sat_calls),
            "max_predict_calls": max_u(|r| r.stats.predict_calls),
            "avg_predict_calls": avg_u(|r| r.stats.predict_calls),
            "max_cnf_vars": max_u(|r| r.stats.cnf_vars),
            "max_cnf_clauses": max_u(|r| r.stats.cnf_clauses),
        }
    })
}
