//! Monotonic classifiers queried only through `predict`.
//!
//! Classes are `0..K` in increasing order. A model is monotonic when a
//! pointwise larger input never gets a smaller class; this is an input
//! contract that [`audit_monotonicity`] can only spot-check.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const PREDICT_TIMEOUT_ENV: &str = "XPLAIN_PREDICT_TIMEOUT_MS";
pub const DEFAULT_PREDICT_TIMEOUT: Duration = Duration::from_secs(30);
pub const DEFAULT_AUDIT_PAIRS: usize = 1000;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model spec line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("point has {got} values but the model has {expected} features")]
    Arity { expected: usize, got: usize },
    #[error("feature {feature}: bounds must be finite with lambda <= mu")]
    InvalidBounds { feature: usize },
    #[error("feature {feature} has negative weight")]
    NegativeWeight { feature: usize },
    #[error("predicted class {class} outside 0..{num_classes}")]
    ClassOutOfRange { class: usize, num_classes: usize },
    #[error("failed to run model process: {0}")]
    Process(#[from] std::io::Error),
    #[error("model process gave no answer within {0:?}")]
    Timeout(Duration),
    #[error("model process exited")]
    Exited,
    #[error("unparsable model output {0:?}")]
    Output(String),
    #[error("monotonicity violated: predict({low:?}) = {low_class} > predict({high:?}) = {high_class}")]
    NotMonotone {
        low: Vec<f64>,
        high: Vec<f64>,
        low_class: usize,
        high_class: usize,
    },
}

/// Closed range `[lower, upper]` a feature takes values in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureDomain {
    pub lower: f64,
    pub upper: f64,
}

impl FeatureDomain {
    pub fn new(lower: f64, upper: f64) -> Self {
        FeatureDomain { lower, upper }
    }

    pub fn boolean() -> Self {
        FeatureDomain::new(0.0, 1.0)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    fn is_valid(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite() && self.lower <= self.upper
    }

    fn is_integral(&self) -> bool {
        self.lower.fract() == 0.0 && self.upper.fract() == 0.0
    }
}

pub trait MonotoneModel {
    fn num_features(&self) -> usize;
    fn num_classes(&self) -> usize;
    /// Domain of feature `i` (1-based).
    fn domain(&self, feature: usize) -> FeatureDomain;
    fn predict(&self, point: &[f64]) -> Result<usize, ModelError>;
}

impl<M: MonotoneModel + ?Sized> MonotoneModel for &M {
    fn num_features(&self) -> usize {
        (**self).num_features()
    }
    fn num_classes(&self) -> usize {
        (**self).num_classes()
    }
    fn domain(&self, feature: usize) -> FeatureDomain {
        (**self).domain(feature)
    }
    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        (**self).predict(point)
    }
}

impl<M: MonotoneModel + ?Sized> MonotoneModel for Box<M> {
    fn num_features(&self) -> usize {
        (**self).num_features()
    }
    fn num_classes(&self) -> usize {
        (**self).num_classes()
    }
    fn domain(&self, feature: usize) -> FeatureDomain {
        (**self).domain(feature)
    }
    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        (**self).predict(point)
    }
}

fn check_domains(domains: &[FeatureDomain]) -> Result<(), ModelError> {
    match domains.iter().position(|d| !d.is_valid()) {
        Some(i) => Err(ModelError::InvalidBounds { feature: i + 1 }),
        None => Ok(()),
    }
}

/// Class = number of thresholds not exceeding `w·x`, with `w ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    weights: Vec<f64>,
    thresholds: Vec<f64>,
    domains: Vec<FeatureDomain>,
}

impl LinearModel {
    /// Thresholds are sorted; `K = thresholds.len() + 1`.
    pub fn new(
        weights: Vec<f64>,
        mut thresholds: Vec<f64>,
        domains: Vec<FeatureDomain>,
    ) -> Result<Self, ModelError> {
        if domains.len() != weights.len() {
            return Err(ModelError::Arity {
                expected: weights.len(),
                got: domains.len(),
            });
        }
        if let Some(i) = weights.iter().position(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(ModelError::NegativeWeight { feature: i + 1 });
        }
        check_domains(&domains)?;
        thresholds.sort_by(f64::total_cmp);
        Ok(LinearModel {
            weights,
            thresholds,
            domains,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }
}

impl MonotoneModel for LinearModel {
    fn num_features(&self) -> usize {
        self.weights.len()
    }

    fn num_classes(&self) -> usize {
        self.thresholds.len() + 1
    }

    fn domain(&self, feature: usize) -> FeatureDomain {
        self.domains[feature - 1]
    }

    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        if point.len() != self.weights.len() {
            return Err(ModelError::Arity {
                expected: self.weights.len(),
                got: point.len(),
            });
        }
        let sum: f64 = self.weights.iter().zip(point).map(|(w, x)| w * x).sum();
        Ok(self.thresholds.iter().filter(|&&th| th <= sum).count())
    }
}

struct ExternProcess {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<String>>,
}

/// Model answered by a child process: one space-separated point per line on
/// its stdin, one class index per line on its stdout. The process is started
/// lazily and reused; calls are serialized.
pub struct ExternModel {
    command: String,
    num_classes: usize,
    domains: Vec<FeatureDomain>,
    timeout: Duration,
    process: Mutex<Option<ExternProcess>>,
}

impl std::fmt::Debug for ExternModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExternModel")
            .field("command", &self.command)
            .field("num_classes", &self.num_classes)
            .field("timeout", &self.timeout)
            .finish()
    }
}

fn predict_timeout_from_env() -> Duration {
    std::env::var(PREDICT_TIMEOUT_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .map(Duration::from_millis)
        .unwrap_or(DEFAULT_PREDICT_TIMEOUT)
}

impl ExternModel {
    pub fn new(
        command: impl Into<String>,
        num_classes: usize,
        domains: Vec<FeatureDomain>,
    ) -> Result<Self, ModelError> {
        check_domains(&domains)?;
        Ok(ExternModel {
            command: command.into(),
            num_classes,
            domains,
            timeout: predict_timeout_from_env(),
            process: Mutex::new(None),
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    fn spawn(&self) -> Result<ExternProcess, ModelError> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&self.command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        std::thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(ExternProcess {
            child,
            stdin,
            lines: rx,
        })
    }
}

impl Drop for ExternModel {
    fn drop(&mut self) {
        if let Ok(mut guard) = self.process.lock() {
            if let Some(mut p) = guard.take() {
                let _ = p.child.kill();
                let _ = p.child.wait();
            }
        }
    }
}

impl MonotoneModel for ExternModel {
    fn num_features(&self) -> usize {
        self.domains.len()
    }

    fn num_classes(&self) -> usize {
        self.num_classes
    }

    fn domain(&self, feature: usize) -> FeatureDomain {
        self.domains[feature - 1]
    }

    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        if point.len() != self.domains.len() {
            return Err(ModelError::Arity {
                expected: self.domains.len(),
                got: point.len(),
            });
        }
        let mut guard = self.process.lock().unwrap_or_else(|e| e.into_inner());
        if guard.is_none() {
            *guard = Some(self.spawn()?);
        }
        let proc = guard.as_mut().expect("spawned");
        let mut line = String::new();
        for (k, x) in point.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            write!(line, "{x}").expect("string write");
        }
        line.push('\n');
        let sent = proc
            .stdin
            .write_all(line.as_bytes())
            .and_then(|_| proc.stdin.flush());
        if let Err(e) = sent {
            *guard = None;
            return Err(if e.kind() == std::io::ErrorKind::BrokenPipe {
                ModelError::Exited
            } else {
                ModelError::Process(e)
            });
        }
        let reply = match proc.lines.recv_timeout(self.timeout) {
            Ok(Ok(reply)) => reply,
            Ok(Err(e)) => {
                *guard = None;
                return Err(ModelError::Process(e));
            }
            Err(RecvTimeoutError::Timeout) => {
                if let Some(mut p) = guard.take() {
                    let _ = p.child.kill();
                    let _ = p.child.wait();
                }
                return Err(ModelError::Timeout(self.timeout));
            }
            Err(RecvTimeoutError::Disconnected) => {
                *guard = None;
                return Err(ModelError::Exited);
            }
        };
        let class: usize = reply
            .trim()
            .parse()
            .map_err(|_| ModelError::Output(reply.clone()))?;
        if class >= self.num_classes {
            return Err(ModelError::ClassOutOfRange {
                class,
                num_classes: self.num_classes,
            });
        }
        Ok(class)
    }
}

/// A model read from a spec file.
#[derive(Debug)]
pub enum ModelSpec {
    Linear(LinearModel),
    Extern(ExternModel),
}

impl MonotoneModel for ModelSpec {
    fn num_features(&self) -> usize {
        match self {
            ModelSpec::Linear(m) => m.num_features(),
            ModelSpec::Extern(m) => m.num_features(),
        }
    }

    fn num_classes(&self) -> usize {
        match self {
            ModelSpec::Linear(m) => m.num_classes(),
            ModelSpec::Extern(m) => m.num_classes(),
        }
    }

    fn domain(&self, feature: usize) -> FeatureDomain {
        match self {
            ModelSpec::Linear(m) => m.domain(feature),
            ModelSpec::Extern(m) => m.domain(feature),
        }
    }

    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        match self {
            ModelSpec::Linear(m) => m.predict(point),
            ModelSpec::Extern(m) => m.predict(point),
        }
    }
}

fn parse_num(tok: &str, line: usize) -> Result<f64, ModelError> {
    tok.parse::<f64>().map_err(|_| ModelError::Parse {
        line,
        message: format!("expected a number, found {tok:?}"),
    })
}

/// Parses a `monotone <m> <K>` spec. Blank lines and lines starting with `c`
/// followed by whitespace are ignored.
pub fn parse_model_spec(text: &str) -> Result<ModelSpec, ModelError> {
    let err = |line: usize, message: String| ModelError::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut domains: Vec<Option<FeatureDomain>> = Vec::new();
    let mut body: Option<(usize, &str)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match (keyword, header) {
            ("monotone", None) => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [m, k] = toks[..] else {
                    return Err(err(lineno, "expected `monotone <m> <K>`".into()));
                };
                let m: usize = m.parse().map_err(|_| err(lineno, format!("bad feature count {m:?}")))?;
                let k: usize = k.parse().map_err(|_| err(lineno, format!("bad class count {k:?}")))?;
                if k == 0 {
                    return Err(err(lineno, "class count must be positive".into()));
                }
                header = Some((m, k));
                domains = vec![None; m];
            }
            (_, None) => return Err(err(lineno, "missing `monotone` header".into())),
            ("monotone", Some(_)) => return Err(err(lineno, "duplicate header".into())),
            ("d", Some((m, _))) => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [i, lo, hi] = toks[..] else {
                    return Err(err(lineno, "expected `d <i> <lambda> <mu>`".into()));
                };
                let i: usize = i.parse().map_err(|_| err(lineno, format!("bad feature id {i:?}")))?;
                if i == 0 || i > m {
                    return Err(err(lineno, format!("feature {i} outside 1..={m}")));
                }
                if domains[i - 1].is_some() {
                    return Err(err(lineno, format!("feature {i} declared twice")));
                }
                let d = FeatureDomain::new(parse_num(lo, lineno)?, parse_num(hi, lineno)?);
                if !d.is_valid() {
                    return Err(ModelError::InvalidBounds { feature: i });
                }
                domains[i - 1] = Some(d);
            }
            ("linear" | "extern", Some(_)) => {
                if body.is_some() {
                    return Err(err(lineno, "more than one model body".into()));
                }
                body = Some((lineno, line));
            }
            (other, Some(_)) => return Err(err(lineno, format!("unknown directive {other:?}"))),
        }
    }

    let Some((m, k)) = header else {
        return Err(err(1, "missing `monotone` header".into()));
    };
    let domains: Vec<FeatureDomain> = domains
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| err(0, format!("no bounds for feature {}", i + 1))))
        .collect::<Result<_, _>>()?;
    let Some((lineno, line)) = body else {
        return Err(err(0, "missing `linear` or `extern` line".into()));
    };
    if let Some(cmd) = line.strip_prefix("extern") {
        let cmd = cmd.trim();
        if cmd.is_empty() {
            return Err(err(lineno, "empty extern command".into()));
        }
        return Ok(ModelSpec::Extern(ExternModel::new(cmd, k, domains)?));
    }
    let rest = line.strip_prefix("linear").expect("keyword checked");
    let (w, th) = rest
        .split_once(':')
        .ok_or_else(|| err(lineno, "expected `linear w.. : theta..`".into()))?;
    let weights = w
        .split_whitespace()
        .map(|t| parse_num(t, lineno))
        .collect::<Result<Vec<_>, _>>()?;
    let thresholds = th
        .split_whitespace()
        .map(|t| parse_num(t, lineno))
        .collect::<Result<Vec<_>, _>>()?;
    if weights.len() != m {
        return Err(err(lineno, format!("{} weights for {m} features", weights.len())));
    }
    if thresholds.len() + 1 != k {
        return Err(err(lineno, format!("{} thresholds for {k} classes", thresholds.len())));
    }
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(err(lineno, "thresholds must be nondecreasing".into()));
    }
    Ok(ModelSpec::Linear(LinearModel::new(weights, thresholds, domains)?))
}

fn write_header(out: &mut String, m: usize, k: usize, domains: impl Iterator<Item = FeatureDomain>) {
    writeln!(out, "monotone {m} {k}").expect("string write");
    for (i, d) in domains.enumerate() {
        writeln!(out, "d {} {} {}", i + 1, d.lower, d.upper).expect("string write");
    }
}

pub fn write_linear_spec(model: &LinearModel) -> String {
    let mut out = String::new();
    write_header(
        &mut out,
        model.num_features(),
        model.num_classes(),
        model.domains.iter().copied(),
    );
    out.push_str("linear");
    for w in &model.weights {
        write!(out, " {w}").expect("string write");
    }
    out.push_str(" :");
    for t in &model.thresholds {
        write!(out, " {t}").expect("string write");
    }
    out.push('\n');
    out
}

pub fn write_extern_spec(command: &str, num_classes: usize, domains: &[FeatureDomain]) -> String {
    let mut out = String::new();
    write_header(&mut out, domains.len(), num_classes, domains.iter().copied());
    writeln!(out, "extern {command}").expect("string write");
    out
}

/// Counts `predict` calls; safe to share across threads.
#[derive(Debug)]
pub struct CountingModel<M> {
    inner: M,
    calls: AtomicU64,
}

impl<M: MonotoneModel> CountingModel<M> {
    pub fn new(inner: M) -> Self {
        CountingModel {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }
}

impl<M: MonotoneModel> MonotoneModel for CountingModel<M> {
    fn num_features(&self) -> usize {
        self.inner.num_features()
    }
    fn num_classes(&self) -> usize {
        self.inner.num_classes()
    }
    fn domain(&self, feature: usize) -> FeatureDomain {
        self.inner.domain(feature)
    }
    fn predict(&self, point: &[f64]) -> Result<usize, ModelError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.predict(point)
    }
}

fn sample(rng: &mut impl Rng, d: FeatureDomain) -> f64 {
    if d.lower == d.upper {
        d.lower
    } else if d.is_integral() && d.upper - d.lower < 1e9 {
        rng.gen_range(d.lower as i64..=d.upper as i64) as f64
    } else {
        rng.gen_range(d.lower..=d.upper)
    }
}

/// Samples `pairs` ordered pairs `x ≤ y` inside the domain box and checks
/// `predict(x) ≤ predict(y)`. Returns the first violation found.
pub fn audit_monotonicity<M: MonotoneModel + ?Sized>(
    model: &M,
    pairs: usize,
    seed: u64,
) -> Result<(), ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = model.num_features();
    for _ in 0..pairs {
        let mut low = Vec::with_capacity(m);
        let mut high = Vec::with_capacity(m);
        for i in 1..=m {
            let d = model.domain(i);
            let a = sample(&mut rng, d);
            let b = sample(&mut rng, d);
            low.push(a.min(b));
            high.push(a.max(b));
        }
        let low_class = model.predict(&low)?;
        let high_class = model.predict(&high)?;
        if low_class > high_class {
            return Err(ModelError::NotMonotone {
                low,
                high,
                low_class,
                high_class,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const KAPPA2: &str = "monotone 4 2\nd 1 0 1\nd 2 0 1\nd 3 0 1\nd 4 0 1\nlinear 1 1 1 0 : 2\n";

    pub(crate) fn kappa2() -> LinearModel {
        match parse_model_spec(KAPPA2).unwrap() {
            ModelSpec::Linear(m) => m,
            ModelSpec::Extern(_) => unreachable!(),
        }
    }

    #[test]
    fn kappa2_predictions() {
        let k = kappa2();
        assert_eq!(k.num_classes(), 2);
        assert_eq!(k.predict(&[1.0, 1.0, 1.0, 1.0]).unwrap(), 1);
        assert_eq!(k.predict(&[1.0, 0.0, 0.0, 1.0]).unwrap(), 0);
        assert_eq!(k.predict(&[0.0, 1.0, 1.0, 0.0]).unwrap(), 1);
        assert!(matches!(k.predict(&[1.0]), Err(ModelError::Arity { .. })));
    }

    #[test]
    fn spec_round_trip() {
        let k = kappa2();
        let text = write_linear_spec(&k);
        assert_eq!(text, KAPPA2);
    }

    #[test]
    fn spec_errors_carry_lines() {
        let cases = [
            ("d 1 0 1\n", 1),
            ("monotone 1 2\nd 2 0 1\n", 2),
            ("monotone 1 2\nd 1 0 x\n", 2),
            ("monotone 1 2\nd 1 0 1\nlinear 1 1 : 0\n", 3),
            ("monotone 1 3\nd 1 0 1\nlinear 1 : 0\n", 3),
            ("monotone 1 2\nd 1 0 1\nbogus\n", 3),
        ];
        for (text, line) in cases {
            match parse_model_spec(text) {
                Err(ModelError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_model_spec("monotone 1 2\nd 1 1 0\nlinear 1 : 0\n"),
            Err(ModelError::InvalidBounds { feature: 1 })
        ));
        assert!(matches!(
            parse_model_spec("monotone 1 2\nd 1 0 1\nlinear -1 : 0\n"),
            Err(ModelError::NegativeWeight { feature: 1 })
        ));
        assert!(matches!(
            parse_model_spec("monotone 2 2\nd 1 0 1\nlinear 1 1 : 0\n"),
            Err(ModelError::Parse { .. })
        ));
    }

    #[test]
    fn multi_class_thresholds() {
        let m = LinearModel::new(vec![1.0, 2.0], vec![3.0, 1.0], vec![FeatureDomain::new(0.0, 3.0); 2]).unwrap();
        assert_eq!(m.thresholds(), &[1.0, 3.0]);
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), 0);
        assert_eq!(m.predict(&[1.0, 0.0]).unwrap(), 1);
        assert_eq!(m.predict(&[1.0, 1.0]).unwrap(), 2);
    }

    #[test]
    fn audit_accepts_linear_and_flags_antitone() {
        audit_monotonicity(&kappa2(), DEFAULT_AUDIT_PAIRS, 7).unwrap();
        struct Antitone;
        impl MonotoneModel for Antitone {
            fn num_features(&self) -> usize {
                1
            }
            fn num_classes(&self) -> usize {
                2
            }
            fn domain(&self, _: usize) -> FeatureDomain {
                FeatureDomain::boolean()
            }
            fn predict(&self, p: &[f64]) -> Result<usize, ModelError> {
                Ok((p[0] == 0.0) as usize)
            }
        }
        assert!(matches!(
            audit_monotonicity(&Antitone, 200, 1),
            Err(ModelError::NotMonotone { .. })
        ));
    }

    #[test]
    fn extern_model_line_protocol() {
        // class 1 iff the first two coordinates sum to at least 2
        let cmd = "while read a b c; do if [ $((a + b)) -ge 2 ]; then echo 1; else echo 0; fi; done";
        let m = CountingModel::new(ExternModel::new(cmd, 2, vec![FeatureDomain::boolean(); 3]).unwrap());
        assert_eq!(m.predict(&[1.0, 1.0, 0.0]).unwrap(), 1);
        assert_eq!(m.predict(&[1.0, 0.0, 1.0]).unwrap(), 0);
        assert_eq!(m.calls(), 2);
    }

    #[test]
    fn extern_model_errors() {
        let bad = ExternModel::new("while read l; do echo nope; done", 2, vec![FeatureDomain::boolean()]).unwrap();
        assert!(matches!(bad.predict(&[0.0]), Err(ModelError::Output(_))));
        let out_of_range = ExternModel::new("while read l; do echo 5; done", 2, vec![FeatureDomain::boolean()]).unwrap();
        assert!(matches!(
            out_of_range.predict(&[0.0]),
            Err(ModelError::ClassOutOfRange { class: 5, .. })
        ));
        let dead = ExternModel::new("exit 0", 2, vec![FeatureDomain::boolean()]).unwrap();
        assert!(matches!(dead.predict(&[0.0]), Err(ModelError::Exited)));
        let slow = ExternModel::new("sleep 5", 2, vec![FeatureDomain::boolean()])
            .unwrap()
            .with_timeout(Duration::from_millis(100));
        assert!(matches!(slow.predict(&[0.0]), Err(ModelError::Timeout(_))));
    }

    #[test]
    fn parses_extern_spec() {
        let text = write_extern_spec("cat", 3, &[FeatureDomain::new(0.0, 2.5)]);
        let spec = parse_model_spec(&text).unwrap();
        assert_eq!(spec.num_classes(), 3);
        assert_eq!(spec.domain(1), FeatureDomain::new(0.0, 2.5));
        assert!(matches!(spec, ModelSpec::Extern(ref e) if e.command() == "cat"));
    }
}
