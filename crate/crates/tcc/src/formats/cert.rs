use std::fmt::Write;

use tcc_core::map::{NodeKind, SegLabel, Segment};
use tcc_core::{RotationMap, TCurveCertificate};

use super::{content_lines, parse, parse_list, syntax, FormatError};

const HEADER: &str = "tcc-cert 1";

/// Header `tcc-cert 1 t=<t> k=<k>`, then the sections NODES (`id kind`),
/// SEGMENTS (`id a b edge=<eid|blue> color=graph|blue`), ROT (`id: darts`,
/// clockwise) and BLUE (`cycle i: segments`). Segment `s` owns darts `2s`
/// (at `a`) and `2s+1` (at `b`).
pub fn write_certificate(cert: &TCurveCertificate) -> String {
    let map = cert.map();
    let mut out = format!("{HEADER} t={} k={}\nNODES\n", cert.t(), cert.claimed_k());
    for (i, kind) in map.nodes().iter().enumerate() {
        let kind = match kind {
            NodeKind::Vertex => "vertex",
            NodeKind::Crossing => "crossing",
        };
        writeln!(out, "{i} {kind}").unwrap();
    }
    out.push_str("SEGMENTS\n");
    for (i, s) in map.segments().iter().enumerate() {
        let (edge, color) = match s.label {
            SegLabel::Edge(e) => (e.to_string(), "graph"),
            SegLabel::Blue => ("blue".to_string(), "blue"),
        };
        writeln!(out, "{i} {} {} edge={edge} color={color}", s.a, s.b).unwrap();
    }
    out.push_str("ROT\n");
    for (i, rot) in map.rotations().iter().enumerate() {
        write!(out, "{i}:").unwrap();
        for d in rot {
            write!(out, " {d}").unwrap();
        }
        out.push('\n');
    }
    out.push_str("BLUE\n");
    for (i, cycle) in cert.blue_cycles().iter().enumerate() {
        write!(out, "cycle {i}:").unwrap();
        for s in cycle {
            write!(out, " {s}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Nodes,
    Segments,
    Rot,
    Blue,
}

/// Parse a certificate. Only the syntax is checked here; whether the map
/// is a valid plane drawing is for the verifier to decide.
pub fn read_certificate(text: &str) -> Result<TCurveCertificate, FormatError> {
    let mut lines = content_lines(text);
    let (ln, head) = lines.next().ok_or_else(|| FormatError::Truncated("missing header".into()))?;
    let rest = head.strip_prefix(HEADER).ok_or_else(|| syntax(ln, format!("expected `{HEADER}`")))?;
    let mut t = None;
    let mut k = None;
    for w in rest.split_whitespace() {
        match w.split_once('=') {
            Some(("t", v)) => t = Some(parse(ln, v)?),
            Some(("k", v)) => k = Some(parse(ln, v)?),
            _ => return Err(syntax(ln, format!("unknown header field `{w}`"))),
        }
    }
    let (t, k) = t.zip(k).ok_or_else(|| syntax(ln, "header needs t= and k="))?;

    let mut nodes = Vec::new();
    let mut segments = Vec::new();
    let mut rotation = Vec::new();
    let mut cycles = Vec::new();
    let mut section = None;
    for (ln, l) in lines {
        let next = match l {
            "NODES" => Some(Section::Nodes),
            "SEGMENTS" => Some(Section::Segments),
            "ROT" => Some(Section::Rot),
            "BLUE" => Some(Section::Blue),
            _ => None,
        };
        if next.is_some() {
            section = next;
            continue;
        }
        match section {
            None => return Err(syntax(ln, "record outside any section")),
            Some(Section::Nodes) => {
                let (id, kind) = l.split_once(' ').ok_or_else(|| syntax(ln, "expected `id kind`"))?;
                expect_id(ln, parse(ln, id)?, nodes.len())?;
                nodes.push(match kind.trim() {
                    "vertex" => NodeKind::Vertex,
                    "crossing" => NodeKind::Crossing,
                    other => return Err(syntax(ln, format!("unknown node kind `{other}`"))),
                });
            }
            Some(Section::Segments) => segments.push(segment(ln, l, segments.len())?),
            Some(Section::Rot) => {
                let (id, darts) = l.split_once(':').ok_or_else(|| syntax(ln, "expected `id: darts`"))?;
                expect_id(ln, parse(ln, id.trim())?, rotation.len())?;
                rotation.push(parse_list(ln, darts)?);
            }
            Some(Section::Blue) => {
                let body = l.strip_prefix("cycle ").ok_or_else(|| syntax(ln, "expected `cycle i: segments`"))?;
                let (id, segs) = body.split_once(':').ok_or_else(|| syntax(ln, "expected `cycle i: segments`"))?;
                expect_id(ln, parse(ln, id.trim())?, cycles.len())?;
                cycles.push(parse_list(ln, segs)?);
            }
        }
    }
    if rotation.len() != nodes.len() {
        return Err(FormatError::Truncated(format!(
            "{} nodes but {} rotations",
            nodes.len(),
            rotation.len()
        )));
    }
    let map = RotationMap::from_parts(nodes, segments, rotation);
    Ok(TCurveCertificate::new(map, cycles, k, t))
}

fn expect_id(ln: usize, found: usize, expected: usize) -> Result<(), FormatError> {
    if found == expected {
        Ok(())
    } else {
        Err(syntax(ln, format!("expected id {expected}, found {found}")))
    }
}

fn segment(ln: usize, l: &str, expected: usize) -> Result<Segment, FormatError> {
    let w: Vec<&str> = l.split_whitespace().collect();
    if w.len() != 5 {
        return Err(syntax(ln, "expected `id a b edge=.. color=..`"));
    }
    expect_id(ln, parse(ln, w[0])?, expected)?;
    let label = match (w[3], w[4]) {
        ("edge=blue", "color=blue") => SegLabel::Blue,
        (e, "color=graph") => {
            let e = e.strip_prefix("edge=").ok_or_else(|| syntax(ln, "expected `edge=`"))?;
            SegLabel::Edge(parse(ln, e)?)
        }
        _ => return Err(syntax(ln, "edge and color fields disagree")),
    };
    Ok(Segment {
        a: parse(ln, w[1])?,
        b: parse(ln, w[2])?,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcc_core::cert::verify_certificate;
    use tcc_core::constructions::k33_book_drawing;
    use tcc_core::drawing::book_to_certificate;

    #[test]
    fn round_trip_keeps_a_valid_certificate() {
        let d = k33_book_drawing();
        let cert = book_to_certificate(&d).unwrap();
        let text = write_certificate(&cert);
        assert!(text.starts_with("tcc-cert 1 t=1 k=1\nNODES\n0 vertex\n"));
        let back = read_certificate(&text).unwrap();
        assert_eq!(write_certificate(&back), text);
        assert!(verify_certificate(d.graph(), &back, 1, 1).is_ok());
    }

    #[test]
    fn rejects_malformed_records() {
        assert!(read_certificate("tcc-cert 2 t=1 k=0\n").is_err());
        assert!(read_certificate("tcc-cert 1 t=1\n").is_err());
        assert!(read_certificate("tcc-cert 1 t=1 k=0\n0 vertex\n").is_err());
        assert!(read_certificate("tcc-cert 1 t=1 k=0\nNODES\n0 vertex\n").is_err());
        let seg = "tcc-cert 1 t=1 k=0\nNODES\n0 vertex\n1 vertex\nSEGMENTS\n0 0 1 edge=blue color=graph\n";
        assert!(read_certificate(seg).is_err());
    }
}
