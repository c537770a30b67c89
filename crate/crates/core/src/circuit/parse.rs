//! Text formats for circuits.
//!
//! `nnf` files list one node per line in topological order, children before
//! parents, with the root last:
//!
//! ```text
//! nnf <nodes> <edges> <vars>
//! L <signed literal>
//! A <k> <c1> ... <ck>        (A 0 is the constant true)
//! O <j> <k> <c1> ... <ck>    (O 0 0 is the constant false)
//! ```
//!
//! `fbdd` files describe a decision diagram that is compiled on load:
//!
//! ```text
//! fbdd <nodes> <vars>
//! T 0 | T 1
//! N <var> <lo-child> <hi-child>
//! ```

use std::fmt::Write as _;

use super::{Circuit, CircuitError, CircuitKind, FbddBuilder, Literal, Node};

fn err(line: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Parse {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based line numbers; blank lines and `c` comments skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((n + 1, toks)),
        }
    })
}

fn num<T: std::str::FromStr>(tok: Option<&&str>, line: usize, what: &str) -> Result<T, CircuitError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn child_list(
    toks: &[&str],
    count: usize,
    own: usize,
    line: usize,
) -> Result<Vec<usize>, CircuitError> {
    if toks.len() != count {
        return Err(err(
            line,
            format!("expected {count} children, found {}", toks.len()),
        ));
    }
    toks.iter()
        .map(|t| {
            let c: usize = t
                .parse()
                .map_err(|_| err(line, format!("invalid child index `{t}`")))?;
            if c >= own {
                return Err(err(
                    line,
                    format!("child {c} is not defined before node {own}"),
                ));
            }
            Ok(c)
        })
        .collect()
}

pub fn parse_nnf(text: &str) -> Result<Circuit, CircuitError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if header.len() != 4 || header[0] != "nnf" {
        return Err(err(hline, "expected header `nnf <nodes> <edges> <vars>`"));
    }
    let n_nodes: usize = num(header.get(1), hline, "node count")?;
    let n_edges: usize = num(header.get(2), hline, "edge count")?;
    let n_vars: usize = num(header.get(3), hline, "variable count")?;
    if n_nodes == 0 {
        return Err(err(hline, "a circuit needs at least one node"));
    }

    let mut nodes = Vec::with_capacity(n_nodes);
    let mut edges = 0;
    for (line, toks) in lines {
        let own = nodes.len();
        if own == n_nodes {
            return Err(err(line, format!("more than {n_nodes} nodes")));
        }
        let node = match toks[0] {
            "L" => {
                if toks.len() != 2 {
                    return Err(err(line, "expected `L <literal>`"));
                }
                let lit: i64 = num(toks.get(1), line, "literal")?;
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(err(
                        line,
                        format!("literal {lit} outside the {n_vars} declared variables"),
                    ));
                }
                Node::Literal(Literal::from_signed(lit))
            }
            "A" => {
                let k: usize = num(toks.get(1), line, "child count")?;
                let children = child_list(&toks[2..], k, own, line)?;
                edges += k;
                if k == 0 {
                    Node::True
                } else {
                    Node::And(children)
                }
            }
            "O" => {
                let _decision: usize = num(toks.get(1), line, "decision variable")?;
                let k: usize = num(toks.get(2), line, "child count")?;
                let children = child_list(toks.get(3..).unwrap_or(&[]), k, own, line)?;
                edges += k;
                if k == 0 {
                    Node::False
                } else {
                    Node::Or(children)
                }
            }
            other => return Err(err(line, format!("unknown node type `{other}`"))),
        };
        nodes.push(node);
    }
    if nodes.len() != n_nodes {
        return Err(err(
            hline,
            format!("header declares {n_nodes} nodes, found {}", nodes.len()),
        ));
    }
    if edges != n_edges {
        return Err(err(
            hline,
            format!("header declares {n_edges} edges, found {edges}"),
        ));
    }
    let root = nodes.len() - 1;
    Circuit::new(nodes, root, n_vars, CircuitKind::Ddnnf)
}

pub fn parse_fbdd(text: &str) -> Result<Circuit, CircuitError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    if header.len() != 3 || header[0] != "fbdd" {
        return Err(err(hline, "expected header `fbdd <nodes> <vars>`"));
    }
    let n_nodes: usize = num(header.get(1), hline, "node count")?;
    let n_vars: usize = num(header.get(2), hline, "variable count")?;
    if n_nodes == 0 {
        return Err(err(hline, "a diagram needs at least one node"));
    }
    let mut builder = FbddBuilder::new();
    for (line, toks) in lines {
        let own = builder.len();
        if own == n_nodes {
            return Err(err(line, format!("more than {n_nodes} nodes")));
        }
        match toks[0] {
            "T" => {
                if toks.len() != 2 {
                    return Err(err(line, "expected `T 0` or `T 1`"));
                }
                match toks[1] {
                    "0" => builder.raw_terminal(false),
                    "1" => builder.raw_terminal(true),
                    other => return Err(err(line, format!("invalid terminal `{other}`"))),
                };
            }
            "N" => {
                if toks.len() != 4 {
                    return Err(err(line, "expected `N <var> <lo> <hi>`"));
                }
                let var: usize = num(toks.get(1), line, "variable")?;
                if var == 0 || var > n_vars {
                    return Err(err(
                        line,
                        format!("variable {var} outside the {n_vars} declared variables"),
                    ));
                }
                let children = child_list(&toks[2..], 2, own, line)?;
                builder.decision(var, children[0], children[1]);
            }
            other => return Err(err(line, format!("unknown node type `{other}`"))),
        }
    }
    if builder.len() != n_nodes {
        return Err(err(
            hline,
            format!("header declares {n_nodes} nodes, found {}", builder.len()),
        ));
    }
    builder.build(n_nodes - 1, n_vars)
}

/// Parses either format, chosen by the first header token.
pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let first = content_lines(text)
        .next()
        .map(|(_, toks)| toks[0].to_string())
        .unwrap_or_default();
    match first.as_str() {
        "fbdd" => parse_fbdd(text),
        _ => parse_nnf(text),
    }
}

pub fn write_nnf(c: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "nnf {} {} {}",
        c.num_nodes(),
        c.num_edges(),
        c.num_features()
    );
    for node in c.nodes() {
        let _ = match node {
            Node::Literal(l) => {
                let lit = l.feature as i64;
                writeln!(out, "L {}", if l.positive { lit } else { -lit })
            }
            Node::True => writeln!(out, "A 0"),
            Node::False => writeln!(out, "O 0 0"),
            Node::And(ch) => writeln!(out, "A {} {}", ch.len(), join(ch)),
            Node::Or(ch) => writeln!(out, "O 0 {} {}", ch.len(), join(ch)),
        };
    }
    out
}

fn join(ch: &[usize]) -> String {
    ch.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Recovers the decision diagram of an FBDD-tagged circuit (as produced by
/// [`FbddBuilder::build`]) in the `fbdd` format. Only nodes reachable from
/// the root are written.
pub fn write_fbdd(c: &Circuit) -> Result<String, CircuitError> {
    if c.kind() != CircuitKind::Fbdd {
        return Err(CircuitError::Malformed {
            node: c.root(),
            message: "not an FBDD-tagged circuit".into(),
        });
    }
    let decision = |j: usize| c.as_decision(j);

    let mut reach = vec![false; c.num_nodes()];
    reach[c.root()] = true;
    let mut index = vec![usize::MAX; c.num_nodes()];
    let mut lines = Vec::new();
    for j in (0..=c.root()).rev() {
        if !reach[j] {
            continue;
        }
        match c.node(j) {
            Node::True | Node::False => {}
            _ => {
                let (_, lo, hi) = decision(j).ok_or_else(|| CircuitError::Malformed {
                    node: j,
                    message: "node is not a decision".into(),
                })?;
                reach[lo] = true;
                reach[hi] = true;
            }
        }
    }
    for j in 0..=c.root() {
        if !reach[j] {
            continue;
        }
        index[j] = lines.len();
        lines.push(match c.node(j) {
            Node::True => "T 1".to_string(),
            Node::False => "T 0".to_string(),
            _ => {
                let (var, lo, hi) = decision(j).expect("checked above");
                format!("N {var} {} {}", index[lo], index[hi])
            }
        });
    }
    let mut out = format!("fbdd {} {}\n", lines.len(), c.num_features());
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    Ok(out)
}
