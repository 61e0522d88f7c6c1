use std::fmt::Write;

use tcc_core::Graph;

use super::{content_lines, parse, syntax, FormatError};

/// `n m`, then one `u v` line per edge in ascending order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (ln, head) = lines.next().ok_or_else(|| FormatError::Truncated("missing `n m` header".into()))?;
    let (n, m) = pair(ln, head)?;
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        edges.push(pair(ln, l)?);
    }
    if edges.len() != m {
        return Err(syntax(ln, format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok(Graph::new(n, edges)?)
}

fn pair(ln: usize, l: &str) -> Result<(usize, usize), FormatError> {
    let w: Vec<&str> = l.split_whitespace().collect();
    if w.len() != 2 {
        return Err(syntax(ln, "expected two numbers"));
    }
    Ok((parse(ln, w[0])?, parse(ln, w[1])?))
}
