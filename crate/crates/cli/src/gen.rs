use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use xplain_core::circuit::{write_fbdd, write_nnf};
use xplain_core::monotone::{write_extern_spec, write_linear_spec, FeatureDomain, MonotoneModel};
use xplain_core::sat::{read_dimacs, write_dimacs, CnfFormula};
use xplain_core::testgen::{
    enumerate_axps, gen_fbdd_from_cnf, gen_mono_from_cnf, random_circuit, random_cnf, random_fbdd, random_monotone,
    random_point, write_manifest, BruteForce, ManifestEntry, ReductionClassifier,
};
use xplain_core::Circuit;

/// Largest feature count for which `gen` fills in the expected answer.
const EXPECTED_LIMIT: usize = 16;

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', r"'\''"))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    let p = dir.join(name);
    std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
}

fn finish(dir: &Path, entries: &[ManifestEntry]) -> Result<PathBuf> {
    let path = dir.join("manifest.jsonl");
    std::fs::write(&path, write_manifest(entries)).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Writes both reduction artifacts for every formula. The monotone model is
/// an extern spec that calls back into this binary.
pub fn reductions(formulas: Vec<(String, CnfFormula)>, seed: Option<u64>, out: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(out)?;
    let out = out.canonicalize()?;
    let exe = std::env::current_exe().context("locating the xplain binary")?;
    let mut entries = Vec::new();
    for (name, f) in formulas {
        let params = json!({"source": name, "vars": f.num_vars, "clauses": f.num_clauses()});
        let cnf_name = format!("{name}.cnf");
        write(&out, &cnf_name, &write_dimacs(&f))?;
        match gen_mono_from_cnf(&f) {
            Ok(a) => {
                let cmd = format!(
                    "{} reduction-oracle {}",
                    quote(&exe.to_string_lossy()),
                    quote(&out.join(&cnf_name).to_string_lossy())
                );
                let ReductionClassifier::Monotone(model) = &a.classifier else { unreachable!() };
                let domains = vec![FeatureDomain::boolean(); model.num_features()];
                let file = format!("{name}-mono.mono");
                write(&out, &file, &write_extern_spec(&cmd, 2, &domains))?;
                entries.push(ManifestEntry {
                    kind: "mono-reduction".into(),
                    seed,
                    params: params.clone(),
                    file: Some(file),
                    instance: a.instance.values,
                    class: a.instance.class,
                    target: a.target,
                    expected: Some(a.expected),
                });
            }
            Err(e) => eprintln!("{name}: no monotone artifact: {e}"),
        }
        match gen_fbdd_from_cnf(&f) {
            Ok(a) => {
                let ReductionClassifier::Circuit(c) = &a.classifier else { unreachable!() };
                let file = format!("{name}-fbdd.fbdd");
                write(&out, &file, &write_fbdd(c)?)?;
                entries.push(ManifestEntry {
                    kind: "fbdd-reduction".into(),
                    seed,
                    params,
                    file: Some(file),
                    instance: a.instance.values,
                    class: a.instance.class,
                    target: a.target,
                    expected: Some(a.expected),
                });
            }
            Err(e) => eprintln!("{name}: no FBDD artifact: {e}"),
        }
    }
    finish(&out, &entries)
}

pub fn read_cnf_files(paths: &[PathBuf]) -> Result<Vec<(String, CnfFormula)>> {
    let mut out = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        let f = read_dimacs(&text).with_context(|| format!("parsing {}", p.display()))?;
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "cnf".into());
        out.push((stem, f));
    }
    Ok(out)
}

pub fn random_cnfs(count: usize, vars: usize, clauses: usize, width: usize, seed: u64) -> Vec<(String, CnfFormula)> {
    (0..count as u64)
        .map(|i| (format!("cnf-{}", seed + i), random_cnf(seed + i, vars, clauses, width)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RandomKind {
    Ddnnf,
    Fbdd,
    Monotone,
}

pub struct RandomParams {
    pub kind: RandomKind,
    pub count: usize,
    pub features: usize,
    pub depth: usize,
    pub classes: usize,
    pub seed: u64,
}

fn circuit_expected(c: &Circuit, point: &[bool], target: usize) -> Result<Option<bool>> {
    if c.num_features() > EXPECTED_LIMIT {
        return Ok(None);
    }
    let bf = BruteForce::for_circuit(c, point)?;
    Ok(Some(enumerate_axps(&bf)?.is_relevant(target)))
}

/// Random classifiers with one instance and one target feature each.
pub fn random(p: &RandomParams, out: &Path) -> Result<PathBuf> {
    if p.features == 0 {
        bail!("--features must be positive");
    }
    std::fs::create_dir_all(out)?;
    let m = p.features;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut entries = Vec::new();
    let mut seed = p.seed;
    while entries.len() < p.count {
        seed += 1;
        let target = rng.gen_range(1..=m);
        let params = json!({"features": m, "depth": p.depth, "classes": p.classes});
        let (kind, file, text, values, class, expected) = match p.kind {
            RandomKind::Ddnnf | RandomKind::Fbdd => {
                let (c, ext) = if p.kind == RandomKind::Ddnnf {
                    (random_circuit(seed, m, p.depth), "nnf")
                } else {
                    (random_fbdd(seed, m, p.depth), "fbdd")
                };
                // d-DNNF queries need class 0 unless a negation is supplied.
                let want_zero = p.kind == RandomKind::Ddnnf;
                let Some(point) = (0..1000)
                    .map(|k| random_point(seed.wrapping_mul(1000).wrapping_add(k), m))
                    .find(|pt| !want_zero || c.evaluate(pt).map(|v| v == 0).unwrap_or(false))
                else {
                    continue;
                };
                let class = c.evaluate(&point)?;
                let text = if ext == "nnf" { write_nnf(&c) } else { write_fbdd(&c)? };
                let expected = circuit_expected(&c, &point, target)?;
                let values = point.iter().map(|&b| b as u8 as f64).collect();
                (format!("random-{ext}"), format!("{ext}-{seed}.{ext}"), text, values, class, expected)
            }
            RandomKind::Monotone => {
                let (model, inst) = random_monotone(seed, m, p.classes);
                let expected = if m <= EXPECTED_LIMIT {
                    let bf = BruteForce::for_monotone_grid(&model, &inst.values, 1 << 20)?;
                    Some(enumerate_axps(&bf)?.is_relevant(target))
                } else {
                    None
                };
                (
                    "random-monotone".into(),
                    format!("mono-{seed}.mono"),
                    write_linear_spec(&model),
                    inst.values,
                    inst.class,
                    expected,
                )
            }
        };
        write(out, &file, &text)?;
        entries.push(ManifestEntry {
            kind,
            seed: Some(seed),
            params,
            file: Some(file),
            instance: values,
            class,
            target,
            expected,
        });
    }
    finish(out, &entries)
}
