//! The line-based graph file format.
//!
//! ```text
//! # comment
//! graph <name>
//! v <id> euler=<int> [genus=<uint>]
//! e <id> <id>
//! cycle <name> <id>=<int> ...
//! ```
//!
//! Edges are repeated for multi-edges. Cycle entries that are omitted are 0.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use plumb_core::{Cycle, GraphBuilder, GraphError, PlumbingGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(#[from] GraphError),
}

impl FormatError {
    /// True for structurally valid files whose graph is mathematically
    /// unusable (disconnected or not negative definite).
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            FormatError::Invalid(GraphError::Disconnected { .. } | GraphError::NotNegativeDefinite { .. })
        )
    }
}

/// A named integral cycle declared in a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCycle {
    pub name: String,
    pub cycle: Cycle,
}

/// A parsed graph file: the validated graph and its declared cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: PlumbingGraph,
    pub cycles: Vec<NamedCycle>,
}

impl GraphFile {
    pub fn new(graph: PlumbingGraph) -> Self {
        GraphFile { graph, cycles: Vec::new() }
    }

    pub fn cycle(&self, name: &str) -> Option<&Cycle> {
        self.cycles.iter().find(|c| c.name == name).map(|c| &c.cycle)
    }
}

/// Whitespace-separated tokens with 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((c, s))) => {
                out.push((c, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, s)) = start {
        out.push((c, &line[s..]));
    }
    out
}

struct Ctx {
    line: usize,
}

impl Ctx {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Syntax { line: self.line, column, message: message.into() })
    }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && !s.contains('=') && !s.contains('#') && !s.contains(',') && !s.contains('*')
}

struct PendingCycle {
    line: usize,
    name: String,
    entries: Vec<(usize, String, i64)>,
}

/// Parses and validates a graph file.
pub fn parse_graph(text: &str) -> Result<GraphFile, FormatError> {
    let mut builder = GraphBuilder::new();
    let mut name_seen = false;
    let mut ids: Vec<String> = Vec::new();
    let mut known: BTreeSet<String> = BTreeSet::new();
    let mut pending: Vec<PendingCycle> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let ctx = Ctx { line: lineno + 1 };
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(kcol, keyword)) = toks.first() else { continue };
        match keyword {
            "graph" => {
                if toks.len() != 2 {
                    return ctx.err(kcol, "expected `graph <name>`");
                }
                if name_seen {
                    return ctx.err(kcol, "graph name given twice");
                }
                name_seen = true;
                builder.set_name(toks[1].1);
            }
            "v" => {
                let Some(&(icol, id)) = toks.get(1) else { return ctx.err(kcol, "expected a vertex id") };
                if !valid_id(id) {
                    return ctx.err(icol, format!("invalid vertex id `{id}`"));
                }
                if !known.insert(id.to_owned()) {
                    return ctx.err(icol, format!("duplicate vertex `{id}`"));
                }
                let mut euler = None;
                let mut genus = None;
                for &(col, tok) in &toks[2..] {
                    let Some((key, value)) = tok.split_once('=') else {
                        return ctx.err(col, format!("expected key=value, found `{tok}`"));
                    };
                    match key {
                        "euler" if euler.is_none() => match value.parse::<i64>() {
                            Ok(e) => euler = Some(e),
                            Err(_) => return ctx.err(col + 6, format!("invalid integer `{value}`")),
                        },
                        "genus" if genus.is_none() => match value.parse::<u32>() {
                            Ok(g) => genus = Some(g),
                            Err(_) => return ctx.err(col + 6, format!("invalid genus `{value}`")),
                        },
                        "euler" | "genus" => return ctx.err(col, format!("`{key}` given twice")),
                        _ => return ctx.err(col, format!("unknown key `{key}`")),
                    }
                }
                let Some(euler) = euler else { return ctx.err(icol, format!("vertex `{id}` needs euler=<int>")) };
                builder.add_vertex(id, euler, genus.unwrap_or(0));
                ids.push(id.to_owned());
            }
            "e" => {
                if toks.len() != 3 {
                    return ctx.err(kcol, "expected `e <id> <id>`");
                }
                let (ucol, u) = toks[1];
                let (wcol, w) = toks[2];
                for (col, id) in [(ucol, u), (wcol, w)] {
                    if !known.contains(id) {
                        return ctx.err(col, format!("unknown vertex `{id}`"));
                    }
                }
                if u == w {
                    return ctx.err(wcol, format!("self-loop at vertex `{u}`"));
                }
                builder.add_edge(u, w);
            }
            "cycle" => {
                let Some(&(ncol, name)) = toks.get(1) else { return ctx.err(kcol, "expected a cycle name") };
                if !valid_id(name) {
                    return ctx.err(ncol, format!("invalid cycle name `{name}`"));
                }
                if pending.iter().any(|p| p.name == name) {
                    return ctx.err(ncol, format!("cycle `{name}` declared twice"));
                }
                let mut entries = Vec::new();
                for &(col, tok) in &toks[2..] {
                    let Some((id, value)) = tok.split_once('=') else {
                        return ctx.err(col, format!("expected <id>=<int>, found `{tok}`"));
                    };
                    let Ok(value) = value.parse::<i64>() else {
                        return ctx.err(col + id.chars().count() + 1, format!("invalid integer `{value}`"));
                    };
                    entries.push((col, id.to_owned(), value));
                }
                pending.push(PendingCycle { line: ctx.line, name: name.to_owned(), entries });
            }
            other => return ctx.err(kcol, format!("unknown directive `{other}`")),
        }
    }

    let mut cycles = Vec::with_capacity(pending.len());
    for p in pending {
        let ctx = Ctx { line: p.line };
        let mut coeffs = vec![0i64; ids.len()];
        for (col, id, value) in p.entries {
            let Some(v) = ids.iter().position(|x| *x == id) else {
                return ctx.err(col, format!("unknown vertex `{id}`"));
            };
            coeffs[v] = value;
        }
        cycles.push(NamedCycle { name: p.name, cycle: Cycle::new(coeffs) });
    }
    Ok(GraphFile { graph: builder.build()?, cycles })
}

/// Serializes a graph; `parse_graph` reads it back to an equal graph.
pub fn serialize_graph(g: &PlumbingGraph) -> String {
    serialize_file(&GraphFile::new(g.clone()))
}

/// Serializes a graph with its named cycles (zero entries are omitted).
pub fn serialize_file(file: &GraphFile) -> String {
    let g = &file.graph;
    let mut out = String::new();
    if let Some(name) = g.name() {
        let _ = writeln!(out, "graph {name}");
    }
    for (v, id) in g.ids().iter().enumerate() {
        let _ = writeln!(out, "v {id} euler={} genus={}", g.euler(v), g.genus(v));
    }
    for &(u, w) in g.edges() {
        let _ = writeln!(out, "e {} {}", g.id(u), g.id(w));
    }
    for c in &file.cycles {
        let _ = write!(out, "cycle {}", c.name);
        for (v, &x) in c.cycle.coeffs().iter().enumerate() {
            if x != 0 {
                let _ = write!(out, " {}={x}", g.id(v));
            }
        }
        out.push('\n');
    }
    out
}

/// Graphviz DOT with vertices labelled `id\ne=..,g=..`.
pub fn to_dot(g: &PlumbingGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", escape(g.name().unwrap_or("plumbing")));
    for (v, id) in g.ids().iter().enumerate() {
        let id = escape(id.as_str());
        let _ = writeln!(out, "  \"{id}\" [label=\"{id}\\ne={},g={}\"];", g.euler(v), g.genus(v));
    }
    for &(u, w) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", escape(g.id(u).as_str()), escape(g.id(w).as_str()));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
