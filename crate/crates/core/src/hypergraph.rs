//! Hypergraphs, instances, contraction, and restricted subinstances.
//!
//! Edges form a multiset: two distinct edge ids may carry identical vertex
//! sets, and cut sizes count them separately. Contraction keeps edge ids
//! stable so a sequence of contractions can be replayed and audited.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Identifier of a vertex. Ids are never reused within one contraction history.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Identifier of a hyperedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// An undirected hypergraph with stable ids.
///
/// Invariants: every vertex listed in an edge is in the vertex set, and every
/// edge has at least two vertices (size-1 edges are eliminated on
/// construction and contraction since they can never lie in a cut).
#[derive(Debug, Clone, Default)]
pub struct Hypergraph {
    vertices: VertexSet,
    edges: BTreeMap<EdgeId, VertexSet>,
    next_vertex: u32,
    next_edge: u32,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        // Allocation counters are history, not structure.
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a hypergraph from explicit vertex and edge lists.
    pub fn build<V, E, I>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = u32>,
        E: IntoIterator<Item = (u32, I)>,
        I: IntoIterator<Item = u32>,
    {
        let mut g = Hypergraph::new();
        for v in vertices {
            g.insert_vertex(VertexId(v));
        }
        for (id, vs) in edges {
            g.insert_edge(EdgeId(id), vs.into_iter().map(VertexId))?;
        }
        Ok(g)
    }

    pub fn insert_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
        self.next_vertex = self.next_vertex.max(v.0 + 1);
    }

    pub fn insert_edge(
        &mut self,
        id: EdgeId,
        vertices: impl IntoIterator<Item = VertexId>,
    ) -> Result<()> {
        let set: VertexSet = vertices.into_iter().collect();
        if set.len() < 2 {
            return Err(Error::EdgeTooSmall(id));
        }
        for &v in &set {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        self.edges.insert(id, set);
        self.next_edge = self.next_edge.max(id.0 + 1);
        Ok(())
    }

    pub fn fresh_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(v);
        v
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, VertexSet> {
        &self.edges
    }

    pub fn edge_vertices(&self, e: EdgeId) -> Result<&VertexSet> {
        self.edges.get(&e).ok_or(Error::UnknownEdge(e))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Size of the largest hyperedge; 0 for edgeless graphs.
    pub fn rank(&self) -> usize {
        self.edges.values().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Total size `p`, the sum of all edge cardinalities.
    pub fn total_size(&self) -> usize {
        self.edges.values().map(|e| e.len()).sum()
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .filter(move |(_, vs)| vs.contains(&v))
            .map(|(&id, _)| id)
    }

    /// Edges meeting both `x` and its complement.
    pub fn boundary(&self, x: &VertexSet) -> Result<EdgeSet> {
        self.check_vertex_subset(x)?;
        Ok(self
            .edges
            .iter()
            .filter(|(_, vs)| {
                let inside = vs.iter().filter(|v| x.contains(v)).count();
                inside > 0 && inside < vs.len()
            })
            .map(|(&id, _)| id)
            .collect())
    }

    /// Edges fully contained in `x`.
    pub fn induced_edges(&self, x: &VertexSet) -> Result<EdgeSet> {
        self.check_vertex_subset(x)?;
        Ok(self
            .edges
            .iter()
            .filter(|(_, vs)| vs.iter().all(|v| x.contains(v)))
            .map(|(&id, _)| id)
            .collect())
    }

    fn check_vertex_subset(&self, x: &VertexSet) -> Result<()> {
        match x.iter().find(|v| !self.vertices.contains(v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// Connected components after deleting `removed`, ordered by smallest
    /// contained vertex id. Isolated vertices form singleton components.
    pub fn components(&self, removed: &EdgeSet) -> Result<Vec<VertexSet>> {
        for &e in removed {
            if !self.edges.contains_key(&e) {
                return Err(Error::UnknownEdge(e));
            }
        }
        let verts: Vec<VertexId> = self.vertices.iter().copied().collect();
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut dsu = Dsu::new(verts.len());
        for (id, vs) in &self.edges {
            if removed.contains(id) {
                continue;
            }
            let mut it = vs.iter();
            if let Some(first) = it.next() {
                let a = index[first];
                for v in it {
                    dsu.union(a, index[v]);
                }
            }
        }
        let mut blocks: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for (i, &v) in verts.iter().enumerate() {
            blocks.entry(dsu.find(i)).or_default().insert(v);
        }
        let mut out: Vec<VertexSet> = blocks.into_values().collect();
        out.sort_by_key(|b| *b.iter().next().unwrap());
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.components(&EdgeSet::new())
            .map(|c| c.len() <= 1)
            .unwrap_or(false)
    }

    /// Contracts edge `e`: its vertices merge into one fresh vertex, `e` is
    /// removed, other edges are rewritten through the merge, and edges that
    /// collapse to a single vertex are dropped (recorded in the map).
    pub fn contract(&self, e: EdgeId) -> Result<(Hypergraph, ContractionMap)> {
        let merged = self.edges.get(&e).ok_or(Error::UnknownEdge(e))?.clone();
        let mut out = self.clone();
        out.edges.remove(&e);
        for v in &merged {
            out.vertices.remove(v);
        }
        let new_v = VertexId(out.next_vertex);
        out.next_vertex += 1;
        out.vertices.insert(new_v);

        let mut dropped = Vec::new();
        let ids: Vec<EdgeId> = out.edges.keys().copied().collect();
        for id in ids {
            let vs = out.edges.get_mut(&id).unwrap();
            if vs.iter().any(|v| merged.contains(v)) {
                let rewritten: VertexSet = vs
                    .iter()
                    .map(|v| if merged.contains(v) { new_v } else { *v })
                    .collect();
                if rewritten.len() < 2 {
                    out.edges.remove(&id);
                    dropped.push(id);
                } else {
                    *vs = rewritten;
                }
            }
        }

        let map = ContractionMap {
            vertex_map: merged.iter().map(|&v| (v, new_v)).collect(),
            contracted_edges: vec![e],
            dropped_edges: dropped,
        };
        Ok((out, map))
    }
}

/// Union-find over dense indices.
#[derive(Debug)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, a: usize) -> usize {
        if self.parent[a] != a {
            let root = self.find(self.parent[a]);
            self.parent[a] = root;
        }
        self.parent[a]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins: keeps results independent of union order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Record of a contraction sequence.
///
/// `vertex_map` sends every merged original vertex to its final image
/// (untouched vertices are implicit identities); `contracted_edges` preserves
/// the order, which matters because contractions do not commute with respect
/// to mimicking guarantees. Edges deleted because they shrank to one vertex
/// are listed in `dropped_edges`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContractionMap {
    vertex_map: BTreeMap<VertexId, VertexId>,
    contracted_edges: Vec<EdgeId>,
    dropped_edges: Vec<EdgeId>,
}

impl ContractionMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.contracted_edges.is_empty()
    }

    pub fn resolve(&self, v: VertexId) -> VertexId {
        *self.vertex_map.get(&v).unwrap_or(&v)
    }

    pub fn resolve_set(&self, vs: &VertexSet) -> VertexSet {
        vs.iter().map(|&v| self.resolve(v)).collect()
    }

    pub fn contracted_edges(&self) -> &[EdgeId] {
        &self.contracted_edges
    }

    pub fn dropped_edges(&self) -> &[EdgeId] {
        &self.dropped_edges
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    /// Applies `later` after `self`, flattening the vertex map.
    pub fn compose(&self, later: &ContractionMap) -> ContractionMap {
        let mut vertex_map: BTreeMap<VertexId, VertexId> = self
            .vertex_map
            .iter()
            .map(|(&src, &mid)| (src, later.resolve(mid)))
            .collect();
        for (&src, &dst) in &later.vertex_map {
            vertex_map.entry(src).or_insert(dst);
        }
        let mut contracted_edges = self.contracted_edges.clone();
        contracted_edges.extend_from_slice(&later.contracted_edges);
        let mut dropped_edges = self.dropped_edges.clone();
        dropped_edges.extend_from_slice(&later.dropped_edges);
        ContractionMap {
            vertex_map,
            contracted_edges,
            dropped_edges,
        }
    }
}

/// Replays a contraction sequence, returning the result and the true map.
pub fn replay_contractions(graph: &Hypergraph, order: &[EdgeId]) -> Result<(Hypergraph, ContractionMap)> {
    let mut g = graph.clone();
    let mut map = ContractionMap::identity();
    for &e in order {
        let (next, step) = g.contract(e)?;
        g = next;
        map = map.compose(&step);
    }
    Ok((g, map))
}

/// An instance: hypergraph, terminal set, and cut budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Hypergraph,
    pub terminals: VertexSet,
    pub budget: u64,
}

impl Instance {
    pub fn new(graph: Hypergraph, terminals: VertexSet, budget: u64) -> Result<Self> {
        if let Some(&t) = terminals.iter().find(|t| !graph.contains_vertex(**t)) {
            return Err(Error::TerminalNotInGraph(t));
        }
        Ok(Instance {
            graph,
            terminals,
            budget,
        })
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    /// Contracts an edge, mapping terminals through the merge. Terminals that
    /// merge are deduplicated: downstream checks treat them as one.
    pub fn contract(&self, e: EdgeId) -> Result<(Instance, ContractionMap)> {
        let (graph, map) = self.graph.contract(e)?;
        let terminals = map.resolve_set(&self.terminals);
        Ok((
            Instance {
                graph,
                terminals,
                budget: self.budget,
            },
            map,
        ))
    }

    /// Restriction to a union of connected components (no boundary edges).
    ///
    /// Unlike `subinstance` this keeps the full budget: separation across
    /// components is free, so per-component essentiality with the original
    /// budget matches the whole.
    pub fn restrict_to_component(&self, comp: &VertexSet) -> Result<Instance> {
        debug_assert!(self.graph.boundary(comp)?.is_empty());
        let mut graph = Hypergraph::new();
        for &v in comp {
            graph.insert_vertex(v);
        }
        for e in self.graph.induced_edges(comp)? {
            graph.insert_edge(e, self.graph.edge_vertices(e)?.iter().copied())?;
        }
        let terminals: VertexSet = self.terminals.intersection(comp).copied().collect();
        Instance::new(graph, terminals, self.budget)
    }
}

/// Anchor bookkeeping for one restricted boundary edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchorPair {
    /// Fresh attachment vertex, present in no other edge.
    pub attach: VertexId,
    /// Chosen terminal inside the edge trace, or a fresh vertex.
    pub terminal: VertexId,
    /// True when `terminal` was already a terminal of the parent instance.
    pub terminal_preexisting: bool,
}

/// A restricted subinstance of a parent instance over a host vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subinstance {
    pub instance: Instance,
    /// The vertex set `X` in the parent graph.
    pub host_set: VertexSet,
    /// Parent edge id -> restricted edge id (ids are kept identical).
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
    /// Per parent boundary edge: its anchor pair.
    pub anchors: BTreeMap<EdgeId, AnchorPair>,
}

impl Subinstance {
    /// Parent edge ids whose restricted counterpart carries anchors.
    pub fn boundary_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.anchors.keys().copied()
    }
}

/// Builds the restricted subinstance for `x`.
///
/// Each boundary edge `e` is replaced by its trace on `x` plus a fresh
/// attachment vertex and an anchored terminal: the smallest-id terminal of
/// the parent inside `e ∩ x`, or a fresh vertex when none exists. The new
/// terminal set is `T ∩ x` plus all anchors, and the budget is capped at its
/// size.
pub fn subinstance(inst: &Instance, x: &VertexSet) -> Result<Subinstance> {
    if x.is_empty() {
        return Err(Error::EmptyVertexSet());
    }
    let parent = &inst.graph;
    let boundary = parent.boundary(x)?;
    let interior = parent.induced_edges(x)?;

    let mut graph = Hypergraph::new();
    // fresh ids must not collide with any parent vertex
    graph.next_vertex = parent.next_vertex;
    for &v in x {
        graph.insert_vertex(v);
    }

    let mut edge_map = BTreeMap::new();
    let mut anchors = BTreeMap::new();
    let mut terminals: VertexSet = inst.terminals.intersection(x).copied().collect();

    for &e in &interior {
        graph.insert_edge(e, parent.edge_vertices(e)?.iter().copied())?;
        edge_map.insert(e, e);
    }
    for &e in &boundary {
        let trace: VertexSet = parent
            .edge_vertices(e)?
            .intersection(x)
            .copied()
            .collect();
        let attach = graph.fresh_vertex();
        let existing = trace
            .iter()
            .find(|v| inst.terminals.contains(v))
            .copied();
        let (terminal, preexisting) = match existing {
            Some(t) => (t, true),
            None => (graph.fresh_vertex(), false),
        };
        let mut restricted = trace;
        restricted.insert(attach);
        restricted.insert(terminal);
        graph.insert_edge(e, restricted)?;
        edge_map.insert(e, e);
        terminals.insert(attach);
        terminals.insert(terminal);
        anchors.insert(
            e,
            AnchorPair {
                attach,
                terminal,
                terminal_preexisting: preexisting,
            },
        );
    }

    let budget = inst.budget.min(terminals.len() as u64);
    Ok(Subinstance {
        instance: Instance::new(graph, terminals, budget)?,
        host_set: x.clone(),
        edge_map,
        anchors,
    })
}

/// Replaces every terminal by `c + 1` fresh degree-one terminals, each hung
/// off the old terminal by a fresh rank-2 edge. The old terminals become
/// plain vertices. Returns the new instance and the dummy map.
pub fn degree_one_terminal_transform(
    inst: &Instance,
) -> (Instance, BTreeMap<VertexId, Vec<VertexId>>) {
    let mut graph = inst.graph.clone();
    let mut terminals = VertexSet::new();
    let mut dummy_map = BTreeMap::new();
    let copies = inst.budget + 1;
    for &t in &inst.terminals {
        let mut dummies = Vec::new();
        for _ in 0..copies {
            let d = graph.fresh_vertex();
            let id = EdgeId(graph.next_edge);
            graph
                .insert_edge(id, [t, d])
                .expect("fresh degree-one edge is always valid");
            terminals.insert(d);
            dummies.push(d);
        }
        dummy_map.insert(t, dummies);
    }
    let out = Instance {
        graph,
        terminals,
        budget: inst.budget,
    };
    (out, dummy_map)
}
