//! Adapter for off-the-shelf solvers speaking the competition output format.
//!
//! The command runs through `sh -c`. If it contains `{}` the placeholder is
//! replaced by the path of a temporary DIMACS file; otherwise the formula is
//! written to the solver's stdin. The exit status is ignored; only the `s`
//! and `v` lines of stdout matter, and any model is re-checked locally.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::{solver::timeout_from_env, write_dimacs, CnfFormula, Model, SatError, SatOutcome};

#[derive(Debug, Clone)]
pub struct ExternalSolver {
    pub command: String,
    pub timeout: Option<Duration>,
}

impl ExternalSolver {
    /// Uses `XPLAIN_SAT_TIMEOUT_MS` as the timeout when set.
    pub fn new(command: impl Into<String>) -> Self {
        ExternalSolver {
            command: command.into(),
            timeout: timeout_from_env(),
        }
    }

    pub fn solve(&self, f: &CnfFormula, assumptions: &[i32]) -> Result<SatOutcome, SatError> {
        let mut f = f.clone();
        for &a in assumptions {
            f.add_clause(vec![a]);
        }
        let dimacs = write_dimacs(&f);

        let tmp;
        let (command, feed_stdin) = if self.command.contains("{}") {
            tmp = tempfile::Builder::new().suffix(".cnf").tempfile()?;
            std::fs::write(tmp.path(), &dimacs)?;
            let path = tmp.path().to_string_lossy().into_owned();
            (self.command.replace("{}", &path), false)
        } else {
            (self.command.clone(), true)
        };

        let mut child = Command::new("sh")
            .arg("-c")
            .arg(&command)
            .stdin(if feed_stdin { Stdio::piped() } else { Stdio::null() })
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()?;

        let writer = child.stdin.take().map(|mut stdin| {
            thread::spawn(move || {
                // A solver may exit before reading everything; that is its business.
                let _ = stdin.write_all(dimacs.as_bytes());
            })
        });
        let mut stdout = child.stdout.take().expect("stdout is piped");
        let reader = thread::spawn(move || {
            let mut out = String::new();
            stdout.read_to_string(&mut out).map(|_| out)
        });

        let deadline = self.timeout.map(|t| Instant::now() + t);
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let _ = child.kill();
                let _ = child.wait();
                return Err(SatError::Timeout);
            }
            thread::sleep(Duration::from_millis(2));
        }
        if let Some(w) = writer {
            let _ = w.join();
        }
        let output = reader
            .join()
            .map_err(|_| SatError::Output("stdout reader panicked".into()))??;

        let outcome = parse_solver_output(&output, f.num_vars)?;
        if let SatOutcome::Sat(m) = &outcome {
            if let Some(clause) = f.first_falsified(m.values()) {
                return Err(SatError::ModelVerification { clause });
            }
        }
        Ok(outcome)
    }
}

pub fn solve_external(f: &CnfFormula, command: &str) -> Result<SatOutcome, SatError> {
    ExternalSolver::new(command).solve(f, &[])
}

/// Parses `s SATISFIABLE` / `s UNSATISFIABLE` and `v` lines. Variables the
/// solver does not mention default to false.
pub fn parse_solver_output(output: &str, num_vars: usize) -> Result<SatOutcome, SatError> {
    let mut status = None;
    let mut values = vec![false; num_vars];
    for line in output.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => true,
                "UNSATISFIABLE" => false,
                "UNKNOWN" => return Err(SatError::BudgetExceeded),
                other => return Err(SatError::Output(format!("unknown status `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| SatError::Output(format!("invalid value `{tok}`")))?;
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs() as usize;
                if var > num_vars {
                    return Err(SatError::Output(format!("variable {var} out of range")));
                }
                values[var - 1] = lit > 0;
            }
        }
    }
    match status {
        Some(true) => Ok(SatOutcome::Sat(Model::new(values))),
        Some(false) => Ok(SatOutcome::Unsat),
        None => Err(SatError::Output("no status line".into())),
    }
}
