use std::fmt::Write;

use tcc_core::graph::Vertex;
use tcc_core::{Graph, RotationMap};

use super::{after_key, content_lines, parse, parse_list, syntax, FormatError};

/// One `v: w1 w2 …` line per vertex, neighbours clockwise.
pub fn write_rotation(lists: &[Vec<Vertex>]) -> String {
    let mut out = String::new();
    for (v, l) in lists.iter().enumerate() {
        write!(out, "{v}:").unwrap();
        for w in l {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Rotation lists, the graph they describe and the crossing-free map.
pub fn read_rotation(text: &str) -> Result<(Vec<Vec<Vertex>>, Graph, RotationMap), FormatError> {
    let mut lists: Vec<Vec<Vertex>> = Vec::new();
    for (ln, l) in content_lines(text) {
        let (head, _) = l.split_once(':').ok_or_else(|| syntax(ln, "expected `v: neighbours`"))?;
        let v: usize = parse(ln, head.trim())?;
        if v != lists.len() {
            return Err(syntax(ln, format!("expected vertex {}, found {v}", lists.len())));
        }
        lists.push(parse_list(ln, after_key(ln, l, head)?)?);
    }
    let edges = lists
        .iter()
        .enumerate()
        .flat_map(|(v, l)| l.iter().map(move |&w| (v, w)))
        .filter(|&(v, w)| v < w);
    let g = Graph::new(lists.len(), edges)?;
    let map = RotationMap::from_rotation_lists(&g, &lists)?;
    Ok((lists, g, map))
}
