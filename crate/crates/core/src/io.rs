//! Text formats: graph and fibre files, blow-up scripts and DOT export.
//!
//! ```text
//! # comment
//! graph bs
//! vertex E1 selfint=-2 genus=3
//! vertex E2 selfint=-2 genus=0
//! edge E1 E2
//! ```
//!
//! A `fibre` header requires `mult=` on every vertex; a `graph` header forbids
//! it and requires `selfint ≤ −1`. Edges take an optional `mult=` (default 1).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::kulikov::{BlowupScript, FibreGraph, ScriptStep};
use crate::lattice::ResolutionGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Fibre,
}

impl FileKind {
    pub fn keyword(self) -> &'static str {
        match self {
            FileKind::Graph => "graph",
            FileKind::Fibre => "fibre",
        }
    }
}

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Graph { name: String, graph: ResolutionGraph },
    Fibre { name: String, fibre: FibreGraph },
}

impl GraphFile {
    pub fn name(&self) -> &str {
        match self {
            GraphFile::Graph { name, .. } | GraphFile::Fibre { name, .. } => name,
        }
    }

    pub fn graph(&self) -> &ResolutionGraph {
        match self {
            GraphFile::Graph { graph, .. } => graph,
            GraphFile::Fibre { fibre, .. } => &fibre.graph,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && !s.contains('=') && !s.starts_with('#') && !s.starts_with('%')
}

fn parse_kv<'a>(
    line: usize,
    tokens: &[&'a str],
    allowed: &[&str],
) -> Result<BTreeMap<&'a str, i64>> {
    let mut out = BTreeMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got `{tok}`")))?;
        if !allowed.contains(&k) {
            return Err(parse_err(line, format!("unknown key `{k}`")));
        }
        let v: i64 = v
            .parse()
            .map_err(|_| parse_err(line, format!("`{k}` needs an integer, got `{v}`")))?;
        if out.insert(k, v).is_some() {
            return Err(parse_err(line, format!("`{k}` given twice")));
        }
    }
    Ok(out)
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    }
}

/// Parses a `graph` or `fibre` file. Errors carry 1-based line numbers.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(FileKind, String)> = None;
    let mut g = ResolutionGraph::new();
    let mut mult = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            kw @ ("graph" | "fibre") => {
                if header.is_some() {
                    return Err(parse_err(line, "second header"));
                }
                if !g.is_empty() {
                    return Err(parse_err(line, "header must come first"));
                }
                let [_, name] = tokens[..] else {
                    return Err(parse_err(line, format!("expected `{kw} <name>`")));
                };
                let kind = if kw == "graph" { FileKind::Graph } else { FileKind::Fibre };
                header = Some((kind, name.to_string()));
            }
            "vertex" => {
                let (kind, _) = header.as_ref().ok_or_else(|| parse_err(line, "missing header"))?;
                if tokens.len() < 2 || !valid_id(tokens[1]) {
                    return Err(parse_err(line, "expected `vertex <id> selfint=<n> genus=<n>`"));
                }
                let kv = parse_kv(line, &tokens[2..], &["selfint", "genus", "mult"])?;
                let (Some(&s), Some(&genus)) = (kv.get("selfint"), kv.get("genus")) else {
                    return Err(parse_err(line, "vertex needs selfint= and genus="));
                };
                match (kind, kv.get("mult")) {
                    (FileKind::Graph, Some(_)) => {
                        return Err(parse_err(line, "mult= on a vertex needs a fibre header"))
                    }
                    (FileKind::Graph, None) if s > -1 => {
                        return Err(parse_err(line, format!("selfint must be ≤ −1, got {s}")))
                    }
                    (FileKind::Fibre, None) => return Err(parse_err(line, "fibre vertex needs mult=")),
                    (FileKind::Fibre, Some(&m)) if m < 1 => {
                        return Err(parse_err(line, format!("multiplicity must be ≥ 1, got {m}")))
                    }
                    (FileKind::Fibre, Some(&m)) => mult.push(m),
                    _ => {}
                }
                g.add_vertex(tokens[1], s, genus).map_err(|e| at_line(line, e))?;
            }
            "edge" => {
                if header.is_none() {
                    return Err(parse_err(line, "missing header"));
                }
                if tokens.len() < 3 || !valid_id(tokens[1]) || !valid_id(tokens[2]) {
                    return Err(parse_err(line, "expected `edge <id> <id> [mult=<n>]`"));
                }
                let kv = parse_kv(line, &tokens[3..], &["mult"])?;
                let m = kv.get("mult").copied().unwrap_or(1);
                g.add_edge(tokens[1], tokens[2], m).map_err(|e| at_line(line, e))?;
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let (kind, name) = header.ok_or_else(|| parse_err(0, "empty file"))?;
    if g.is_empty() {
        return Err(parse_err(0, "no vertices"));
    }
    Ok(match kind {
        FileKind::Graph => GraphFile::Graph { name, graph: g },
        FileKind::Fibre => GraphFile::Fibre { name, fibre: FibreGraph::new(g, mult)? },
    })
}

/// Parses a file that must carry a `graph` header.
pub fn parse_resolution_graph(text: &str) -> Result<ResolutionGraph> {
    match parse_graph(text)? {
        GraphFile::Graph { graph, .. } => Ok(graph),
        GraphFile::Fibre { .. } => Err(parse_err(0, "expected a graph file, found a fibre")),
    }
}

/// Parses a file that must carry a `fibre` header.
pub fn parse_fibre(text: &str) -> Result<FibreGraph> {
    match parse_graph(text)? {
        GraphFile::Fibre { fibre, .. } => Ok(fibre),
        GraphFile::Graph { .. } => Err(parse_err(0, "expected a fibre file, found a graph")),
    }
}

fn write_body(out: &mut String, g: &ResolutionGraph, mult: Option<&[i64]>) {
    for (i, v) in g.vertices().iter().enumerate() {
        let _ = write!(out, "vertex {} selfint={} genus={}", v.id, v.self_int, v.genus);
        if let Some(m) = mult {
            let _ = write!(out, " mult={}", m[i]);
        }
        out.push('\n');
    }
    for (i, j, m) in g.edges() {
        let _ = write!(out, "edge {} {}", g.vertex(i).id, g.vertex(j).id);
        if m > 1 {
            let _ = write!(out, " mult={m}");
        }
        out.push('\n');
    }
}

/// Canonical text form of a resolution graph.
pub fn write_graph(name: &str, g: &ResolutionGraph) -> String {
    let mut out = format!("{} {name}\n", FileKind::Graph.keyword());
    write_body(&mut out, g, None);
    out
}

pub fn write_fibre(name: &str, f: &FibreGraph) -> String {
    let mut out = format!("{} {name}\n", FileKind::Fibre.keyword());
    write_body(&mut out, &f.graph, Some(&f.mult));
    out
}

pub fn write_graph_file(file: &GraphFile) -> String {
    match file {
        GraphFile::Graph { name, graph } => write_graph(name, graph),
        GraphFile::Fibre { name, fibre } => write_fibre(name, fibre),
    }
}

/// Parses a blow-up script: one component per line, `%k` for the curve
/// created at step `k`. A line naming two components is read as an
/// intersection point, which the construction rejects.
pub fn parse_script(text: &str) -> Result<BlowupScript> {
    let mut steps = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let step = match tokens[..] {
            [one] => parse_target(line, one)?,
            [a, b] => ScriptStep::Intersection(a.to_string(), b.to_string()),
            _ => return Err(parse_err(line, "expected one component id")),
        };
        steps.push(step);
    }
    Ok(BlowupScript::new(steps))
}

fn parse_target(line: usize, tok: &str) -> Result<ScriptStep> {
    match tok.strip_prefix('%') {
        Some(k) => k
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .map(ScriptStep::OnCreated)
            .ok_or_else(|| parse_err(line, format!("bad step reference `{tok}`"))),
        None if valid_id(tok) => Ok(ScriptStep::On(tok.to_string())),
        None => Err(parse_err(line, format!("bad component id `{tok}`"))),
    }
}

pub fn write_script(s: &BlowupScript) -> String {
    let mut out = String::new();
    for step in &s.steps {
        match step {
            ScriptStep::On(id) => out.push_str(id),
            ScriptStep::OnCreated(k) => {
                let _ = write!(out, "%{k}");
            }
            ScriptStep::Intersection(a, b) => {
                let _ = write!(out, "{a} {b}");
            }
        }
        out.push('\n');
    }
    out
}

fn dot_quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// The drawing label of a vertex: self-intersection, then genus in brackets
/// unless it is zero.
pub fn vertex_label(self_int: i64, genus: i64) -> String {
    if genus == 0 {
        self_int.to_string()
    } else {
        format!("{self_int} [{genus}]")
    }
}

/// Undirected DOT graph. Nodes are labelled `id: selfint [genus]`; edges carry
/// a label only when the multiplicity exceeds one.
pub fn emit_dot(name: &str, g: &ResolutionGraph) -> String {
    let mut out = format!("graph {} {{\n", dot_quote(name));
    for v in g.vertices() {
        let label = format!("{}: {}", v.id, vertex_label(v.self_int, v.genus));
        let _ = writeln!(out, "  {} [label={}];", dot_quote(&v.id), dot_quote(&label));
    }
    for (i, j, m) in g.edges() {
        let _ = write!(out, "  {} -- {}", dot_quote(&g.vertex(i).id), dot_quote(&g.vertex(j).id));
        if m > 1 {
            let _ = write!(out, " [label={}]", dot_quote(&m.to_string()));
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BS: &str = "graph bs\nvertex E1 selfint=-2 genus=3\nvertex E2 selfint=-2 genus=0\nedge E1 E2\n";

    #[test]
    fn parses_briancon_speder() {
        let g = parse_resolution_graph(BS).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.mult(0, 1), 1);
        assert_eq!(write_graph("bs", &g), BS);
    }

    #[test]
    fn line_numbers_and_semantic_errors() {
        let cases = [
            ("graph x\nvertex a selfint=-2 genus=0\nedge a a\n", 3),
            ("graph x\n# c\nvertex a selfint=-2 genus=0\nvertex a selfint=-2 genus=0\n", 4),
            ("graph x\nvertex a selfint=-2 genus=0\nvertex b selfint=-2 genus=0\nedge a b mult=0\n", 4),
            ("graph x\nvertex a selfint=0 genus=0\n", 2),
            ("graph x\nvertex a selfint=-1 genus=0 mult=1\n", 2),
            ("fibre x\nvertex a selfint=0 genus=1\n", 2),
            ("graph x\nnode a\n", 2),
            ("vertex a selfint=-1 genus=0\n", 1),
            ("graph x\nvertex a selfint=-1 genus=zero\n", 2),
            ("graph x\nvertex a selfint=-1\n", 2),
        ];
        for (text, want) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn fibre_round_trip() {
        let text = "fibre tri\nvertex C1 selfint=-2 genus=0 mult=1\nvertex C2 selfint=-2 genus=0 mult=1\nedge C1 C2 mult=2\n";
        let f = parse_fibre(text).unwrap();
        assert_eq!(f.mult, vec![1, 1]);
        assert_eq!(write_fibre("tri", &f), text);
        assert!(parse_resolution_graph(text).is_err());
    }

    #[test]
    fn scripts() {
        let s = parse_script("# bs\nC1\nC1\n%2\n").unwrap();
        assert_eq!(
            s.steps,
            vec![
                ScriptStep::On("C1".into()),
                ScriptStep::On("C1".into()),
                ScriptStep::OnCreated(2)
            ]
        );
        assert_eq!(parse_script(&write_script(&s)).unwrap(), s);
        assert!(matches!(parse_script("C1 C2\n").unwrap().steps[0], ScriptStep::Intersection(..)));
        assert!(parse_script("%0\n").is_err());
        assert!(parse_script("a b c\n").is_err());
    }

    #[test]
    fn dot_labels() {
        let mut g = ResolutionGraph::new();
        g.add_vertex("E", -1, 2).unwrap();
        assert!(emit_dot("g", &g).contains("label=\"E: -1 [2]\""));
        let mut g = ResolutionGraph::new();
        g.add_vertex("A", -2, 0).unwrap();
        g.add_vertex("B", -3, 0).unwrap();
        g.add_edge("A", "B", 2).unwrap();
        let dot = emit_dot("g", &g);
        assert!(dot.contains("label=\"A: -2\""));
        assert!(dot.contains("\"A\" -- \"B\" [label=\"2\"]"));
        assert_eq!(vertex_label(-2, 0), "-2");
    }
}
