use std::fmt::Write as _;

use super::{CnfFormula, SatError};

fn err(line: usize, message: impl Into<String>) -> SatError {
    SatError::Dimacs {
        line,
        message: message.into(),
    }
}

/// Reads `p cnf V C` DIMACS. Clauses may span lines and must be 0-terminated;
/// `c` lines are comments and a `%` line ends the input.
pub fn read_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate problem line"));
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(err(line_no, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = toks[2]
                .parse()
                .map_err(|_| err(line_no, format!("invalid variable count `{}`", toks[2])))?;
            let count = toks[3]
                .parse()
                .map_err(|_| err(line_no, format!("invalid clause count `{}`", toks[3])))?;
            header = Some((vars, count, line_no));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(err(line_no, "clause before the problem line"));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| err(line_no, format!("invalid literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > vars {
                    return Err(err(
                        line_no,
                        format!("literal {lit} exceeds the {vars} declared variables"),
                    ));
                }
                current.push(lit);
            }
        }
    }
    let Some((vars, count, hline)) = header else {
        return Err(err(last_line.max(1), "missing problem line"));
    };
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(err(
            hline,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfFormula::from_clauses(vars, clauses))
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    write_dimacs_into(&mut out, f);
    out
}

pub(crate) fn write_dimacs_into(out: &mut String, f: &CnfFormula) {
    let _ = writeln!(out, "p cnf {} {}", f.num_vars, f.clauses.len());
    for clause in &f.clauses {
        for l in clause {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
}
