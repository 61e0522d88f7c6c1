use std::fmt::Write;

use tcc_core::graph::Vertex;
use tcc_core::{BookDrawing, CylindricalDrawing, Graph, Route};

use super::{after_key, content_lines, parse, parse_list, syntax, FormatError};

/// `inner: …`, `outer: …`, then `u v in|out|ann:<w>` per edge in edge order.
pub fn write_cylindrical(d: &CylindricalDrawing) -> String {
    let mut out = String::new();
    order_line(&mut out, "inner", d.inner());
    order_line(&mut out, "outer", d.outer());
    for (&(u, v), r) in d.graph().edges().iter().zip(d.routes()) {
        writeln!(out, "{u} {v} {r}").unwrap();
    }
    out
}

pub fn read_cylindrical(text: &str) -> Result<CylindricalDrawing, FormatError> {
    let mut lines = content_lines(text);
    let inner = order(lines.next(), "inner")?;
    let outer = order(lines.next(), "outer")?;
    let n = inner.len() + outer.len();
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let w: Vec<&str> = l.split_whitespace().collect();
        if w.len() != 3 {
            return Err(syntax(ln, "expected `u v route`"));
        }
        let (u, v) = ordered(ln, parse(ln, w[0])?, parse(ln, w[1])?)?;
        edges.push(((u, v), route(ln, w[2])?));
    }
    let (g, routes) = in_edge_order(n, edges)?;
    Ok(CylindricalDrawing::new(g, inner, outer, routes)?)
}

/// `spine: …`, then `u v page` per edge in edge order. The page count is
/// the largest page used.
pub fn write_book(d: &BookDrawing) -> String {
    let mut out = String::new();
    order_line(&mut out, "spine", d.spine());
    for (&(u, v), p) in d.graph().edges().iter().zip(d.pages()) {
        writeln!(out, "{u} {v} {p}").unwrap();
    }
    out
}

pub fn read_book(text: &str) -> Result<BookDrawing, FormatError> {
    let mut lines = content_lines(text);
    let spine = order(lines.next(), "spine")?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let w: Vec<usize> = parse_list(ln, l)?;
        if w.len() != 3 {
            return Err(syntax(ln, "expected `u v page`"));
        }
        edges.push((ordered(ln, w[0], w[1])?, w[2]));
    }
    let p = edges.iter().map(|e| e.1).max().unwrap_or(1).max(1);
    let (g, pages) = in_edge_order(spine.len(), edges)?;
    Ok(BookDrawing::new(g, spine, pages, p)?)
}

fn order_line(out: &mut String, key: &str, vs: &[Vertex]) {
    out.push_str(key);
    out.push(':');
    for v in vs {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

fn order(line: Option<(usize, &str)>, key: &str) -> Result<Vec<Vertex>, FormatError> {
    let (ln, l) = line.ok_or_else(|| FormatError::Truncated(format!("missing `{key}:` line")))?;
    parse_list(ln, after_key(ln, l, key)?)
}

/// Edges are written with the smaller end first, which fixes the direction
/// windings are measured in.
fn ordered(ln: usize, u: Vertex, v: Vertex) -> Result<(Vertex, Vertex), FormatError> {
    if u < v {
        Ok((u, v))
    } else {
        Err(syntax(ln, format!("edge {u} {v} must be written with the smaller end first")))
    }
}

fn route(ln: usize, w: &str) -> Result<Route, FormatError> {
    match w {
        "in" => Ok(Route::InnerDisk),
        "out" => Ok(Route::OuterDisk),
        _ => {
            let turns = w.strip_prefix("ann:").ok_or_else(|| syntax(ln, format!("unknown route `{w}`")))?;
            Ok(Route::Annulus(parse(ln, turns)?))
        }
    }
}

/// Build the graph and reorder the per-edge values to match its edge ids.
fn in_edge_order<T: Copy>(n: usize, edges: Vec<((Vertex, Vertex), T)>) -> Result<(Graph, Vec<T>), FormatError> {
    let g = Graph::new(n, edges.iter().map(|e| e.0))?;
    let mut values: Vec<Option<T>> = vec![None; g.m()];
    for ((u, v), x) in edges {
        values[g.edge_id(u, v).expect("edge just added")] = Some(x);
    }
    Ok((g, values.into_iter().map(|x| x.expect("every edge listed")).collect()))
}
