//! Plumbing (resolution dual) graphs and the blow-up calculus on them.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cycle::{Cycle, RatCycle};
use crate::lattice;

/// Token naming a vertex. Ids are stable across transforms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

/// Decoration of a vertex: self-intersection `e_v` and genus `g_v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexData {
    pub euler: i64,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(VertexId),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error(
        "intersection form is not negative definite: leading principal minor of order {order} \
         (ending at vertex `{vertex}`) is {minor}"
    )]
    NotNegativeDefinite {
        /// Size of the first leading principal minor with the wrong sign.
        order: usize,
        vertex: VertexId,
        minor: BigInt,
    },
    #[error("no edge between `{0}` and `{1}`")]
    NoSuchEdge(VertexId, VertexId),
    #[error("blow-up count must be at least 1")]
    ZeroBlowups,
}

/// A connected, negative-definite plumbing graph.
///
/// Vertices keep insertion order; that order indexes cycles on the graph.
/// Edges form a multiset of unordered pairs (multi-edges allowed, no loops).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    name: Option<String>,
    ids: Vec<VertexId>,
    data: Vec<VertexData>,
    edges: Vec<(usize, usize)>,
    index: BTreeMap<VertexId, usize>,
}

/// Incremental constructor; validation happens in [`GraphBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    name: Option<String>,
    vertices: Vec<(VertexId, VertexData)>,
    edges: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn vertex(mut self, id: &str, euler: i64, genus: u32) -> Self {
        self.add_vertex(id, euler, genus);
        self
    }

    pub fn add_vertex(&mut self, id: &str, euler: i64, genus: u32) {
        self.vertices.push((VertexId::new(id), VertexData { euler, genus }));
    }

    pub fn edge(mut self, u: &str, w: &str) -> Self {
        self.add_edge(u, w);
        self
    }

    pub fn add_edge(&mut self, u: &str, w: &str) {
        self.edges.push((u.to_owned(), w.to_owned()));
    }

    pub fn build(self) -> Result<PlumbingGraph, GraphError> {
        let g = self.build_structure()?;
        g.check_connected()?;
        g.check_negative_definite()?;
        Ok(g)
    }

    /// Everything except the connectivity and definiteness checks.
    fn build_structure(self) -> Result<PlumbingGraph, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut index = BTreeMap::new();
        let mut ids = Vec::with_capacity(self.vertices.len());
        let mut data = Vec::with_capacity(self.vertices.len());
        for (i, (id, d)) in self.vertices.into_iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
            ids.push(id);
            data.push(d);
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (u, w) in &self.edges {
            let iu = *index.get(u.as_str()).ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let iw = *index.get(w.as_str()).ok_or_else(|| GraphError::UnknownVertex(w.clone()))?;
            if iu == iw {
                return Err(GraphError::SelfLoop(ids[iu].clone()));
            }
            edges.push((iu, iw));
        }
        Ok(PlumbingGraph { name: self.name, ids, data, edges, index })
    }
}

impl PlumbingGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &VertexId {
        &self.ids[v]
    }

    pub fn vertex(&self, v: usize) -> VertexData {
        self.data[v]
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.data[v].euler
    }

    pub fn genus(&self, v: usize) -> u32 {
        self.data[v].genus
    }

    /// Edges as index pairs, in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index_of(id).ok_or_else(|| GraphError::UnknownVertex(id.to_owned()))
    }

    /// Number of edge ends at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Multiplicity of the edge `{u, w}`.
    pub fn edge_multiplicity(&self, u: usize, w: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| (a == u && b == w) || (a == w && b == u))
            .count()
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().any(|&(a, b)| !seen.insert((a.min(b), a.max(b))))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The integer intersection matrix `I`: `I_vv = e_v`, `I_vw` = number of edges `{v, w}`.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0i64; n]; n];
        for (v, d) in self.data.iter().enumerate() {
            m[v][v] = d.euler;
        }
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            m[b][a] += 1;
        }
        m
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        let comps = components_of(self, &all);
        if comps.len() > 1 {
            return Err(GraphError::Disconnected { components: comps.len() });
        }
        Ok(())
    }

    fn check_negative_definite(&self) -> Result<(), GraphError> {
        lattice::negative_definite_pivots(&self.intersection_matrix()).map(|_| ()).map_err(|e| {
            GraphError::NotNegativeDefinite {
                order: e.index + 1,
                vertex: self.ids[e.index].clone(),
                minor: e.minor,
            }
        })
    }

    /// First id of the form `_b<k>` not already used.
    fn fresh_id(&self) -> VertexId {
        (1..)
            .map(|k| format!("_b{k}"))
            .find(|s| !self.index.contains_key(s.as_str()))
            .map(VertexId)
            .expect("unbounded id supply")
    }

    fn push_vertex(&mut self, id: VertexId, d: VertexData) -> usize {
        let i = self.ids.len();
        self.index.insert(id.clone(), i);
        self.ids.push(id);
        self.data.push(d);
        i
    }

    /// Blow up a generic point of `E_v`.
    pub fn blow_up_vertex(&self, v: &str) -> Result<(PlumbingGraph, BlowupRecord), GraphError> {
        let iv = self.require(v)?;
        let mut g = self.clone();
        let new_id = g.fresh_id();
        g.data[iv].euler -= 1;
        let iw = g.push_vertex(new_id.clone(), VertexData { euler: -1, genus: 0 });
        g.edges.push((iv, iw));
        let mut row = vec![0; self.vertex_count()];
        row[iv] = 1;
        let record = BlowupRecord {
            kind: BlowupKind::Vertex(self.ids[iv].clone()),
            new_vertex: new_id,
            pullback: Pullback { source_dim: self.vertex_count(), rows: vec![row] },
        };
        Ok((g, record))
    }

    /// Blow up one intersection point of `E_u` and `E_w` (one copy of the edge).
    pub fn blow_up_edge(&self, u: &str, w: &str) -> Result<(PlumbingGraph, BlowupRecord), GraphError> {
        let iu = self.require(u)?;
        let iw = self.require(w)?;
        let pos = self
            .edges
            .iter()
            .position(|&(a, b)| (a == iu && b == iw) || (a == iw && b == iu))
            .ok_or_else(|| GraphError::NoSuchEdge(self.ids[iu].clone(), self.ids[iw].clone()))?;
        let mut g = self.clone();
        g.edges.remove(pos);
        let new_id = g.fresh_id();
        g.data[iu].euler -= 1;
        g.data[iw].euler -= 1;
        let inew = g.push_vertex(new_id.clone(), VertexData { euler: -1, genus: 0 });
        g.edges.push((iu, inew));
        g.edges.push((inew, iw));
        let mut row = vec![0; self.vertex_count()];
        row[iu] += 1;
        row[iw] += 1;
        let record = BlowupRecord {
            kind: BlowupKind::Edge(self.ids[iu].clone(), self.ids[iw].clone()),
            new_vertex: new_id,
            pullback: Pullback { source_dim: self.vertex_count(), rows: vec![row] },
        };
        Ok((g, record))
    }

    /// Blow up `E_u` at a generic point, then the newest curve, `times` times in total.
    pub fn blow_up_sequence_at(&self, u: &str, times: usize) -> Result<BlowupSequence, GraphError> {
        if times == 0 {
            return Err(GraphError::ZeroBlowups);
        }
        self.require(u)?;
        let mut graph = self.clone();
        let mut records = Vec::with_capacity(times);
        let mut pullback = Pullback::identity(self.vertex_count());
        let mut at = VertexId::new(u);
        for _ in 0..times {
            let (next, rec) = graph.blow_up_vertex(at.as_str())?;
            pullback = rec.pullback.compose_after(&pullback);
            at = rec.new_vertex.clone();
            records.push(rec);
            graph = next;
        }
        Ok(BlowupSequence { graph, records, pullback })
    }

    /// Replays a recorded blow-up on this graph.
    pub fn apply(&self, kind: &BlowupKind) -> Result<(PlumbingGraph, BlowupRecord), GraphError> {
        match kind {
            BlowupKind::Vertex(v) => self.blow_up_vertex(v.as_str()),
            BlowupKind::Edge(u, w) => self.blow_up_edge(u.as_str(), w.as_str()),
        }
    }

    /// The induced subgraph on `kept`.
    pub fn full_subgraph<S: AsRef<str>>(&self, kept: &[S]) -> Result<Subconfiguration<'_>, GraphError> {
        let mut idx = Vec::with_capacity(kept.len());
        for k in kept {
            idx.push(self.require(k.as_ref())?);
        }
        Ok(self.full_subgraph_indices(&idx))
    }

    pub fn full_subgraph_indices(&self, kept: &[usize]) -> Subconfiguration<'_> {
        let mut kept = kept.to_vec();
        kept.sort_unstable();
        kept.dedup();
        Subconfiguration { parent: self, kept }
    }

    /// Induced subgraph on `kept` as a standalone graph (must be connected).
    pub fn induced_graph(&self, kept: &[usize]) -> Result<PlumbingGraph, GraphError> {
        let mut kept = kept.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let mut b = GraphBuilder::new();
        if let Some(n) = &self.name {
            b.set_name(n.clone());
        }
        for &v in &kept {
            b.add_vertex(self.ids[v].as_str(), self.data[v].euler, self.data[v].genus);
        }
        let inside: BTreeSet<usize> = kept.iter().copied().collect();
        for &(a, c) in &self.edges {
            if inside.contains(&a) && inside.contains(&c) {
                b.add_edge(self.ids[a].as_str(), self.ids[c].as_str());
            }
        }
        b.build()
    }
}

/// Connected components of the induced subgraph on `kept`, each sorted,
/// ordered by smallest member.
pub(crate) fn components_of(g: &PlumbingGraph, kept: &[usize]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in kept {
        inside[v] = true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        if inside[a] && inside[b] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut sorted = kept.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Which blow-up was performed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowupKind {
    Vertex(VertexId),
    Edge(VertexId, VertexId),
}

impl fmt::Display for BlowupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupKind::Vertex(v) => write!(f, "vertex({v})"),
            BlowupKind::Edge(u, w) => write!(f, "edge({u},{w})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRecord {
    pub kind: BlowupKind,
    pub new_vertex: VertexId,
    pub pullback: Pullback,
}

/// Result of [`PlumbingGraph::blow_up_sequence_at`].
#[derive(Clone, Debug)]
pub struct BlowupSequence {
    pub graph: PlumbingGraph,
    pub records: Vec<BlowupRecord>,
    /// Composite pullback from the original graph to `graph`.
    pub pullback: Pullback,
}

/// Pullback of cycles along a sequence of blow-ups.
///
/// The target graph has the source vertices first (same order) followed by
/// one vertex per row; each row gives the new coefficient as an integer
/// combination of the source coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    source_dim: usize,
    rows: Vec<Vec<i64>>,
}

impl Pullback {
    pub fn identity(dim: usize) -> Self {
        Pullback { source_dim: dim, rows: Vec::new() }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.source_dim + self.rows.len()
    }

    /// Coefficient rows of the appended vertices.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn apply(&self, l: &Cycle) -> Cycle {
        assert_eq!(l.len(), self.source_dim, "pullback source dimension mismatch");
        let mut out = l.coeffs().to_vec();
        for row in &self.rows {
            out.push(row.iter().zip(l.coeffs()).map(|(a, b)| a * b).sum());
        }
        Cycle::new(out)
    }

    pub fn apply_rational(&self, l: &RatCycle) -> RatCycle {
        assert_eq!(l.len(), self.source_dim, "pullback source dimension mismatch");
        let mut out = l.coeffs().to_vec();
        for row in &self.rows {
            out.push(
                row.iter()
                    .zip(l.coeffs())
                    .map(|(&a, b)| b * num_rational::BigRational::from_integer(a.into()))
                    .sum(),
            );
        }
        RatCycle::new(out)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose_after(&self, first: &Pullback) -> Pullback {
        assert_eq!(self.source_dim, first.target_dim(), "pullback composition mismatch");
        let s = first.source_dim;
        let mut rows = first.rows.clone();
        for row in &self.rows {
            // Express row (over first's target) in first's source coordinates.
            let mut out = row[..s].to_vec();
            for (k, frow) in first.rows.iter().enumerate() {
                let c = row[s + k];
                if c != 0 {
                    for (o, f) in out.iter_mut().zip(frow) {
                        *o += c * f;
                    }
                }
            }
            rows.push(out);
        }
        Pullback { source_dim: s, rows }
    }
}

/// An induced ("full") subgraph of a parent graph; may be disconnected.
#[derive(Clone, Debug)]
pub struct Subconfiguration<'a> {
    parent: &'a PlumbingGraph,
    kept: Vec<usize>,
}

impl<'a> Subconfiguration<'a> {
    pub fn parent(&self) -> &'a PlumbingGraph {
        self.parent
    }

    /// Kept parent indices, sorted.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    /// Parent indices of each connected component.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.parent, &self.kept)
    }

    /// Each component as a standalone validated graph.
    pub fn component_graphs(&self) -> Result<Vec<PlumbingGraph>, GraphError> {
        self.components()
            .iter()
            .enumerate()
            .map(|(i, comp)| {
                let g = self.parent.induced_graph(comp)?;
                Ok(match self.parent.name() {
                    Some(n) => g.with_name(format!("{n}.c{i}")),
                    None => g,
                })
            })
            .collect()
    }
}

/// A random negative-definite tree, deterministic in `seed`.
///
/// Genera are drawn from {0, 1}; each Euler number is at most `-(deg + 1)`,
/// so `-I` is strictly diagonally dominant.
pub fn random_negdef_graph(seed: u64, n_vertices: usize) -> PlumbingGraph {
    assert!(n_vertices >= 1, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parents = Vec::with_capacity(n_vertices);
    let mut degree = vec![0usize; n_vertices];
    for i in 1..n_vertices {
        let p = rng.gen_range(0..i);
        parents.push((p, i));
        degree[p] += 1;
        degree[i] += 1;
    }
    let mut b = GraphBuilder::new().name(format!("random-{seed}-{n_vertices}"));
    for (i, &deg) in degree.iter().enumerate() {
        let genus = rng.gen_range(0..=1u32);
        let extra = rng.gen_range(0..=2i64);
        let floor = if n_vertices == 1 { 2 } else { deg as i64 + 1 };
        b.add_vertex(&format!("v{i}"), -(floor + extra), genus);
    }
    for (p, i) in parents {
        b.add_edge(&format!("v{p}"), &format!("v{i}"));
    }
    b.build().expect("diagonally dominant trees are valid")
}

/// A random negative-definite multigraph, deterministic in `seed`.
///
/// Unlike [`random_negdef_graph`] this reaches `(-1)`-curves, cycles and
/// multi-edges, hence non-rational genus-0 graphs. A random tree gets one
/// extra edge (possibly doubling an existing one) a quarter of the time;
/// genera are 1 with probability 1/4; Euler numbers start uniform in
/// `-(deg + 2)..=-1`. While the form is not negative definite, a random row
/// that is not yet diagonally dominant is lowered by one, so the loop ends.
pub fn random_negdef_multigraph(seed: u64, n_vertices: usize) -> PlumbingGraph {
    assert!(n_vertices >= 1, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (1..n_vertices).map(|i| (rng.gen_range(0..i), i)).collect();
    if n_vertices >= 2 && rng.gen_range(0..4) == 0 {
        let u = rng.gen_range(0..n_vertices);
        let w = (u + rng.gen_range(1..n_vertices)) % n_vertices;
        edges.push((u.min(w), u.max(w)));
    }
    let mut degree = vec![0i64; n_vertices];
    for &(u, w) in &edges {
        degree[u] += 1;
        degree[w] += 1;
    }
    let genus: Vec<u32> = (0..n_vertices).map(|_| u32::from(rng.gen_range(0..4) == 0)).collect();
    let mut euler: Vec<i64> = degree.iter().map(|&d| -rng.gen_range(1..=d + 2)).collect();
    loop {
        let mut matrix = vec![vec![0i64; n_vertices]; n_vertices];
        for (v, row) in matrix.iter_mut().enumerate() {
            row[v] = euler[v];
        }
        for &(u, w) in &edges {
            matrix[u][w] += 1;
            matrix[w][u] += 1;
        }
        if lattice::negative_definite_pivots(&matrix).is_ok() {
            break;
        }
        let weak: Vec<usize> = (0..n_vertices).filter(|&v| -euler[v] <= degree[v]).collect();
        let v = weak[rng.gen_range(0..weak.len())];
        euler[v] -= 1;
    }
    let mut b = GraphBuilder::new().name(format!("random-multi-{seed}-{n_vertices}"));
    for v in 0..n_vertices {
        b.add_vertex(&format!("v{v}"), euler[v], genus[v]);
    }
    for (u, w) in edges {
        b.add_edge(&format!("v{u}"), &format!("v{w}"));
    }
    b.build().expect("generator only returns negative definite graphs")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_vertex_builds() {
        let g = PlumbingGraph::builder().vertex("a", -2, 0).build().unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.vertex(0), VertexData { euler: -2, genus: 0 });
    }

    #[test]
    fn zero_euler_is_not_negative_definite() {
        let err = PlumbingGraph::builder().vertex("a", 0, 0).build().unwrap_err();
        assert!(matches!(err, GraphError::NotNegativeDefinite { order: 1, .. }));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(GraphBuilder::new().build().unwrap_err(), GraphError::NoVertices);
        let e = PlumbingGraph::builder().vertex("a", -2, 0).edge("a", "a").build().unwrap_err();
        assert!(matches!(e, GraphError::SelfLoop(_)));
        let e = PlumbingGraph::builder().vertex("a", -2, 0).edge("a", "b").build().unwrap_err();
        assert_eq!(e, GraphError::UnknownVertex("b".into()));
        let e = PlumbingGraph::builder().vertex("a", -2, 0).vertex("b", -2, 0).build().unwrap_err();
        assert_eq!(e, GraphError::Disconnected { components: 2 });
        let e = PlumbingGraph::builder().vertex("a", -2, 0).vertex("a", -3, 0).build().unwrap_err();
        assert!(matches!(e, GraphError::DuplicateVertex(_)));
    }

    #[test]
    fn non_negative_definite_reports_minor() {
        // [[-1, 1], [1, -1]] is only semidefinite; second minor is 0.
        let e = PlumbingGraph::builder()
            .vertex("a", -1, 0)
            .vertex("b", -1, 0)
            .edge("a", "b")
            .build()
            .unwrap_err();
        match e {
            GraphError::NotNegativeDefinite { order, vertex, minor } => {
                assert_eq!(order, 2);
                assert_eq!(vertex.as_str(), "b");
                assert_eq!(minor, BigInt::from(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_edge_is_valid() {
        let g = PlumbingGraph::builder()
            .vertex("a", -3, 0)
            .vertex("b", -3, 0)
            .edge("a", "b")
            .edge("a", "b")
            .build()
            .unwrap();
        assert!(g.has_multi_edges());
        assert_eq!(g.intersection_matrix(), vec![vec![-3, 2], vec![2, -3]]);
    }

    #[test]
    fn vertex_blowup_on_single_vertex() {
        let g = fixtures::single(-2, 0);
        let (h, rec) = g.blow_up_vertex("a").unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.euler(0), -3);
        assert_eq!(h.vertex(1), VertexData { euler: -1, genus: 0 });
        assert_eq!(h.edges(), &[(0, 1)]);
        assert_eq!(rec.new_vertex.as_str(), "_b1");
        assert_eq!(rec.pullback.apply(&Cycle::basis(1, 0)), Cycle::new(vec![1, 1]));
        assert!(g.blow_up_vertex("zz").is_err());
    }

    #[test]
    fn edge_blowup_on_a2() {
        let g = fixtures::a_n(2);
        let (h, rec) = g.blow_up_edge("a1", "a2").unwrap();
        let eulers: Vec<i64> = (0..3).map(|v| h.euler(v)).collect();
        assert_eq!(eulers, vec![-3, -3, -1]);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.neighbors(2), vec![0, 1]);
        assert_eq!(rec.pullback.apply(&Cycle::new(vec![2, 5])), Cycle::new(vec![2, 5, 7]));
        assert!(matches!(g.blow_up_edge("a1", "a1"), Err(GraphError::NoSuchEdge(..))));
    }

    #[test]
    fn edge_blowup_removes_one_copy_of_multi_edge() {
        let g = PlumbingGraph::builder()
            .vertex("a", -3, 0)
            .vertex("b", -3, 0)
            .edge("a", "b")
            .edge("a", "b")
            .build()
            .unwrap();
        let (h, _) = g.blow_up_edge("b", "a").unwrap();
        assert_eq!(h.edge_multiplicity(0, 1), 1);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn sequence_builds_chain() {
        let g = fixtures::single(-2, 0);
        let seq = g.blow_up_sequence_at("a", 2).unwrap();
        let eulers: Vec<i64> = (0..3).map(|v| seq.graph.euler(v)).collect();
        assert_eq!(eulers, vec![-3, -2, -1]);
        assert_eq!(seq.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(seq.records.len(), 2);
        assert_eq!(seq.pullback.apply(&Cycle::basis(1, 0)), Cycle::new(vec![1, 1, 1]));

        let one = g.blow_up_sequence_at("a", 1).unwrap();
        let (h, rec) = g.blow_up_vertex("a").unwrap();
        assert_eq!(one.graph, h);
        assert_eq!(one.pullback, rec.pullback);
        assert_eq!(g.blow_up_sequence_at("a", 0).unwrap_err(), GraphError::ZeroBlowups);
    }

    #[test]
    fn composite_pullback_matches_stepwise() {
        let g = fixtures::dpp();
        let seq = g.blow_up_sequence_at("c2", 3).unwrap();
        let l = Cycle::new((1..=10).collect());
        let mut step = l.clone();
        for r in &seq.records {
            step = r.pullback.apply(&step);
        }
        assert_eq!(seq.pullback.apply(&l), step);
    }

    #[test]
    fn subgraph_components() {
        let g = fixtures::dpp();
        let all: Vec<&str> = g.ids().iter().map(|v| v.as_str()).collect();
        let sub = g.full_subgraph(&all).unwrap();
        assert_eq!(sub.components().len(), 1);
        assert_eq!(sub.component_graphs().unwrap()[0].edge_count(), 9);

        let kept: Vec<&str> = all.iter().copied().filter(|v| *v != "u1" && *v != "u2").collect();
        let sub = g.full_subgraph(&kept).unwrap();
        assert_eq!(sub.components().len(), 5);
        for c in sub.component_graphs().unwrap() {
            assert!(crate::lattice::build_intersection(&c).is_ok());
        }

        let empty: [&str; 0] = [];
        let sub = g.full_subgraph(&empty).unwrap();
        assert!(sub.is_empty());
        assert!(sub.components().is_empty());
        assert!(g.full_subgraph(&["nope"]).is_err());
    }

    #[test]
    fn random_generator_is_deterministic() {
        for seed in 0..20 {
            let a = random_negdef_graph(seed, 6);
            let b = random_negdef_graph(seed, 6);
            assert_eq!(a, b);
            assert_eq!(a.edge_count(), 5);
            let m = random_negdef_multigraph(seed, 6);
            assert_eq!(m, random_negdef_multigraph(seed, 6));
            assert!((5..=6).contains(&m.edge_count()));
        }
        let one = random_negdef_graph(7, 1);
        assert_eq!(one.vertex_count(), 1);
        assert!(one.euler(0) <= -2);
    }
}
