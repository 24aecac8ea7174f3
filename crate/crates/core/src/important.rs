//! Important cuts: directed enumeration, the incidence digraph reduction,
//! and useful-partition pruning.
//!
//! A cut `∂R` of `(A, B)` is important when no strictly larger source side
//! avoiding `B` achieves an equal or smaller boundary. Enumeration runs the
//! standard branching on the minimum cut closest to `B`; every emitted
//! candidate is then re-verified against the definition, so the output is
//! exact and duplicate-free. Hypergraph-side cuts go through an incidence
//! digraph whose heavy parallel bundles make vertex-side arcs uncuttable
//! within budget.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::HashSet;

use crate::cuts::{is_connected_multiway_cut, PartitionCuts};
use crate::flow::{FlowNetwork, INF};
use crate::hypergraph::{EdgeSet, VertexSet};
use crate::oracle::{for_each_subset_upto, is_multiway_cut};
use crate::{EdgeId, Error, Instance, Ratio, Result, VertexId};

/// Node of an auxiliary digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n{}", self.0)
    }
}

pub type NodeSet = BTreeSet<NodeId>;
pub type ArcSet = BTreeSet<(NodeId, NodeId)>;

/// A directed graph with parallel-arc multiplicities stored as capacities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    nodes: NodeSet,
    arcs: BTreeMap<(NodeId, NodeId), u64>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_node(&mut self, n: NodeId) {
        self.nodes.insert(n);
    }

    /// Adds `multiplicity` parallel arcs from `tail` to `head`.
    pub fn insert_arc(&mut self, tail: NodeId, head: NodeId, multiplicity: u64) -> Result<()> {
        if multiplicity == 0 {
            return Err(Error::BadParameter("arc multiplicity must be >= 1".into()));
        }
        if !self.nodes.contains(&tail) || !self.nodes.contains(&head) {
            return Err(Error::BadParameter(format!(
                "arc {tail}->{head} references a missing node"
            )));
        }
        *self.arcs.entry((tail, head)).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Iterates arc bundles as `(tail, head, multiplicity)`.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId, u64)> + '_ {
        self.arcs.iter().map(|(&(t, h), &m)| (t, h, m))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.arcs.values().sum()
    }

    /// Outgoing bundle boundary of `side`, skipping `excluded` bundles.
    fn boundary_bundles(&self, side: &NodeSet, excluded: &ArcSet) -> Vec<(NodeId, NodeId, u64)> {
        self.arcs()
            .filter(|(t, h, _)| side.contains(t) && !side.contains(h))
            .filter(|(t, h, _)| !excluded.contains(&(*t, *h)))
            .collect()
    }
}

/// An important cut in a digraph: the inclusion-maximal source side and its
/// outgoing arc bundles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ImportantCut {
    pub source_side: NodeSet,
    pub cut: ArcSet,
    pub value: u64,
}

/// An important cut mapped back to the hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HyperImportantCut {
    pub source_side: VertexSet,
    pub cut: EdgeSet,
}

/// Node maps for the incidence digraph.
#[derive(Debug, Clone)]
pub struct IncidenceMaps {
    pub vertex_node: BTreeMap<VertexId, NodeId>,
    pub edge_in: BTreeMap<EdgeId, NodeId>,
    pub edge_out: BTreeMap<EdgeId, NodeId>,
}

impl IncidenceMaps {
    /// The hyperedge whose internal arc is `(tail, head)`, if any.
    pub fn arc_edge(&self, tail: NodeId, head: NodeId) -> Option<EdgeId> {
        self.edge_in
            .iter()
            .find(|(e, &n)| n == tail && self.edge_out[e] == head)
            .map(|(&e, _)| e)
    }
}

/// Builds the incidence digraph: one node per vertex plus in/out copies of
/// every edge. Each edge contributes a single internal arc; each incidence
/// contributes `2c` parallel arcs in both directions, which keeps them out
/// of any cut of size at most `c`.
pub fn build_d_inc(g: &crate::Hypergraph, c: u64) -> Result<(Digraph, IncidenceMaps)> {
    if c == 0 {
        return Err(Error::BudgetTooSmall);
    }
    let mut d = Digraph::new();
    let mut vertex_node = BTreeMap::new();
    let mut edge_in = BTreeMap::new();
    let mut edge_out = BTreeMap::new();
    let mut next = 0u32;
    for &v in g.vertices() {
        let n = NodeId(next);
        next += 1;
        d.insert_node(n);
        vertex_node.insert(v, n);
    }
    for e in g.edge_ids() {
        let nin = NodeId(next);
        let nout = NodeId(next + 1);
        next += 2;
        d.insert_node(nin);
        d.insert_node(nout);
        edge_in.insert(e, nin);
        edge_out.insert(e, nout);
    }
    for (e, vs) in g.edges() {
        d.insert_arc(edge_in[e], edge_out[e], 1)?;
        for v in vs {
            d.insert_arc(vertex_node[v], edge_in[e], 2 * c)?;
            d.insert_arc(edge_out[e], vertex_node[v], 2 * c)?;
        }
    }
    Ok((
        d,
        IncidenceMaps {
            vertex_node,
            edge_in,
            edge_out,
        },
    ))
}

/// Flow state for one `(side, B)` query on a digraph with some bundles
/// removed.
struct SideFlow {
    value: u64,
    /// Maximal minimum-cut source side (closest to `B`).
    max_side: NodeSet,
}

fn side_flow(d: &Digraph, excluded: &ArcSet, side: &NodeSet, b: &NodeSet, cap: u64) -> SideFlow {
    let order: Vec<NodeId> = d.nodes().iter().copied().collect();
    let index: BTreeMap<NodeId, usize> = order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut net = FlowNetwork::new(order.len() + 2);
    let source = order.len();
    let sink = order.len() + 1;
    for (t, h, m) in d.arcs() {
        if !excluded.contains(&(t, h)) {
            net.add_arc(index[&t], index[&h], m);
        }
    }
    for n in side {
        net.add_arc(source, index[n], INF);
    }
    for n in b {
        net.add_arc(index[n], sink, INF);
    }
    let value = net.max_flow_capped(source, sink, cap);
    let coreach = net.residual_coreachable(sink);
    let max_side: NodeSet = order
        .iter()
        .enumerate()
        .filter(|(i, _)| !coreach[*i])
        .map(|(_, &n)| n)
        .collect();
    SideFlow { value, max_side }
}

/// Nodes that cannot reach `b` once `cut` bundles are removed.
fn unreaching_side(d: &Digraph, cut: &ArcSet, b: &NodeSet) -> NodeSet {
    let mut reach: NodeSet = b.clone();
    loop {
        let mut grew = false;
        for (t, h, _) in d.arcs() {
            if cut.contains(&(t, h)) {
                continue;
            }
            if reach.contains(&h) && reach.insert(t) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    d.nodes().difference(&reach).copied().collect()
}

/// Exact check of the importance definition for a candidate source side.
fn is_important_side(d: &Digraph, a: &NodeSet, b: &NodeSet, side: &NodeSet, budget: u64) -> bool {
    if !a.is_subset(side) || side.intersection(b).next().is_some() {
        return false;
    }
    let boundary = d.boundary_bundles(side, &ArcSet::new());
    let value: u64 = boundary.iter().map(|&(_, _, m)| m).sum();
    if value > budget {
        return false;
    }
    let flow = side_flow(d, &ArcSet::new(), side, b, value + 1);
    flow.value == value && flow.max_side == *side
}

/// Enumerates all important `(A, B)`-cuts of size at most `c`.
///
/// Branching on the minimum cut closest to `B` generates candidate source
/// sides; each candidate is verified against the definition before being
/// returned, and results are deduplicated by source side.
pub fn enumerate_important_cuts(
    d: &Digraph,
    a: &NodeSet,
    b: &NodeSet,
    c: u64,
) -> Result<Vec<ImportantCut>> {
    if a.intersection(b).next().is_some() {
        return Err(Error::BadParameter("A and B must be disjoint".into()));
    }
    for n in a.iter().chain(b.iter()) {
        if !d.nodes().contains(n) {
            return Err(Error::BadParameter(format!("node {n} not in digraph")));
        }
    }

    type BranchState = (Vec<NodeId>, Vec<(NodeId, NodeId)>);
    let mut candidates: BTreeSet<NodeSet> = BTreeSet::new();
    let mut memo: HashSet<BranchState> = HashSet::new();
    let mut stack: Vec<(NodeSet, ArcSet, u64)> = vec![(a.clone(), ArcSet::new(), 0)];

    while let Some((side, committed, committed_cost)) = stack.pop() {
        let key = (
            side.iter().copied().collect::<Vec<_>>(),
            committed.iter().copied().collect::<Vec<_>>(),
        );
        if !memo.insert(key) {
            continue;
        }
        let flow = side_flow(d, &committed, &side, b, c + 1);
        if committed_cost + flow.value > c {
            continue;
        }
        let reach = flow.max_side;
        // candidate: committed bundles plus the current closest min cut
        let mut cut: ArcSet = committed.clone();
        for (t, h, _) in d.boundary_bundles(&reach, &committed) {
            cut.insert((t, h));
        }
        candidates.insert(unreaching_side(d, &cut, b));

        let boundary = d.boundary_bundles(&reach, &committed);
        if boundary.is_empty() {
            // zero residual cut: deeper important sides exist past this one
            for &n in d.nodes() {
                if !reach.contains(&n) && !b.contains(&n) {
                    let mut next = reach.clone();
                    next.insert(n);
                    stack.push((next, committed.clone(), committed_cost));
                }
            }
        } else {
            let (t, h, m) = boundary[0];
            // include the bundle in the final cut
            if committed_cost + m <= c {
                let mut next_committed = committed.clone();
                next_committed.insert((t, h));
                stack.push((reach.clone(), next_committed, committed_cost + m));
            }
            // or force its head into the source side
            if !b.contains(&h) {
                let mut next = reach.clone();
                next.insert(h);
                stack.push((next, committed, committed_cost));
            }
        }
    }

    let mut out = Vec::new();
    for side in candidates {
        if is_important_side(d, a, b, &side, c) {
            let cut: ArcSet = d
                .boundary_bundles(&side, &ArcSet::new())
                .iter()
                .map(|&(t, h, _)| (t, h))
                .collect();
            let value = d
                .boundary_bundles(&side, &ArcSet::new())
                .iter()
                .map(|&(_, _, m)| m)
                .sum();
            out.push(ImportantCut {
                source_side: side,
                cut,
                value,
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Enumerates important hyperedge cuts of `(A, B)` by running the directed
/// enumeration on the incidence digraph and mapping internal arcs back.
pub fn important_cuts_hypergraph(
    inst: &Instance,
    a: &VertexSet,
    b: &VertexSet,
    c: u64,
) -> Result<Vec<HyperImportantCut>> {
    for v in a.iter().chain(b.iter()) {
        if !inst.graph.contains_vertex(*v) {
            return Err(Error::UnknownVertex(*v));
        }
    }
    if a.intersection(b).next().is_some() {
        return Err(Error::BadParameter("A and B must be disjoint".into()));
    }
    if c == 0 {
        // only the empty cut is affordable: its side is everything not
        // connected to B, which must contain A
        let comps = inst.graph.components(&EdgeSet::new())?;
        let mut side = VertexSet::new();
        for comp in &comps {
            if comp.intersection(b).next().is_none() {
                side.extend(comp.iter().copied());
            }
        }
        if a.is_subset(&side) {
            return Ok(vec![HyperImportantCut {
                source_side: side,
                cut: EdgeSet::new(),
            }]);
        }
        return Ok(Vec::new());
    }

    let (d, maps) = build_d_inc(&inst.graph, c)?;
    let a_nodes: NodeSet = a.iter().map(|v| maps.vertex_node[v]).collect();
    let b_nodes: NodeSet = b.iter().map(|v| maps.vertex_node[v]).collect();
    let directed = enumerate_important_cuts(&d, &a_nodes, &b_nodes, c)?;

    let out_to_edge: BTreeMap<(NodeId, NodeId), EdgeId> = maps
        .edge_in
        .iter()
        .map(|(&e, &nin)| ((nin, maps.edge_out[&e]), e))
        .collect();
    let node_to_vertex: BTreeMap<NodeId, VertexId> =
        maps.vertex_node.iter().map(|(&v, &n)| (n, v)).collect();

    let mut out = Vec::new();
    for ic in directed {
        let mut cut = EdgeSet::new();
        for arc in &ic.cut {
            match out_to_edge.get(arc) {
                Some(&e) => {
                    cut.insert(e);
                }
                // bundles of 2c parallel arcs cost more than the budget, so
                // they can never appear in an enumerated cut
                None => {
                    return Err(Error::BadParameter(
                        "incidence cut contains a non-edge arc".into(),
                    ))
                }
            }
        }
        let source_side: VertexSet = ic
            .source_side
            .iter()
            .filter_map(|n| node_to_vertex.get(n).copied())
            .collect();
        // the incidence digraph also has degenerate important sides made of
        // edge nodes alone; only vertex-generated sides correspond to
        // hypergraph cuts
        if inst.graph.boundary(&source_side)? == cut {
            out.push(HyperImportantCut { source_side, cut });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Keeps the candidate partitions that pass the important-cut usefulness
/// test: every minimum multiway cut that traps a large important source side
/// (`∂R ⊆ F`, `|E(R)| >= c * phi^{-1}`, `F ∩ E(R) = ∅`) must be a connected
/// multiway cut.
///
/// Minimum cuts are checked over the candidate pool extended with the
/// important-cut completions `∂R ∪ F'` for `F' ⊆ E(V \ R)`; on an expander
/// that exterior pool is small.
pub fn prune_useful(
    inst: &Instance,
    candidates: &[PartitionCuts],
    phi: Ratio,
) -> Result<Vec<PartitionCuts>> {
    let phi_inv = phi.recip()?;
    let c = inst.budget;
    let interior_threshold = |edges: u64| -> bool {
        // |E(R)| >= c * phi^{-1}
        (edges as u128) * (phi_inv.den() as u128) >= (c as u128) * (phi_inv.num() as u128)
    };

    let mut kept = Vec::new();
    for group in candidates {
        // important cuts per block, filtered to large interiors
        let mut witnesses: Vec<HyperImportantCut> = Vec::new();
        for block in group.partition.blocks() {
            let rest: VertexSet = inst.terminals.difference(block).copied().collect();
            for ic in important_cuts_hypergraph(inst, block, &rest, c)? {
                let interior = inst.graph.induced_edges(&ic.source_side)?.len() as u64;
                if interior_threshold(interior) {
                    witnesses.push(ic);
                }
            }
        }

        // pool: recorded cuts plus witness completions that cut the partition
        let mut pool: BTreeSet<EdgeSet> = group.cuts.iter().cloned().collect();
        for w in &witnesses {
            if w.cut.len() as u64 > c {
                continue;
            }
            let complement: VertexSet = inst
                .graph
                .vertices()
                .difference(&w.source_side)
                .copied()
                .collect();
            let exterior: Vec<EdgeId> = inst
                .graph
                .induced_edges(&complement)?
                .into_iter()
                .filter(|e| !w.cut.contains(e))
                .collect();
            if exterior.len() > 24 {
                return Err(Error::GuardExceeded {
                    what: "useful-partition completion pool",
                    limit: 24,
                    actual: exterior.len(),
                });
            }
            let room = (c as usize).saturating_sub(w.cut.len());
            let mut completions: Vec<EdgeSet> = Vec::new();
            for_each_subset_upto(&exterior, room, |extra| {
                let mut cut = w.cut.clone();
                cut.extend(extra.iter().copied());
                completions.push(cut);
                true
            });
            for cut in completions {
                if is_multiway_cut(inst, &group.partition, &cut)? {
                    pool.insert(cut);
                }
            }
        }

        let value = pool.iter().map(|f| f.len()).min().unwrap_or(0) as u64;
        let minima: Vec<EdgeSet> = pool
            .into_iter()
            .filter(|f| f.len() as u64 == value)
            .collect();

        let mut useful = true;
        for cut in &minima {
            let triggered = witnesses.iter().any(|w| {
                w.cut.is_subset(cut)
                    && inst
                        .graph
                        .induced_edges(&w.source_side)
                        .map(|int| int.intersection(cut).next().is_none())
                        .unwrap_or(false)
            });
            if triggered && !is_connected_multiway_cut(inst, cut, phi)? {
                useful = false;
                break;
            }
        }
        if useful {
            kept.push(PartitionCuts {
                partition: group.partition.clone(),
                value,
                cuts: minima,
            });
        }
    }
    Ok(kept)
}
