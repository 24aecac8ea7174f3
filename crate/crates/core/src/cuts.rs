//! Enumeration of connected vertex sets, cores, and connected multiway cuts
//! on certified expanders.
//!
//! On a `phi`-expander every connected multiway cut of size at most `c` lives
//! inside a small core around some terminal, so a bounded branching DFS per
//! terminal enumerates a superset of all of them. The enumerated cuts are
//! grouped by the terminal partition they induce, keeping per-partition
//! minima; the `important` module prunes those groups down to the useful
//! partitions.

use std::collections::BTreeMap;
use std::collections::HashSet;

use crate::expander::is_phi_expander;
use crate::hypergraph::{subinstance, EdgeSet, VertexSet};
use crate::oracle::{
    for_each_subset_upto, induced_partition, min_multiway_cut, CutSearch, TerminalPartition,
};
use crate::{EdgeId, Error, Hypergraph, Instance, Ratio, Result, VertexId};

/// The core of a cut: the union of the small components it leaves behind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    pub vertex_set: VertexSet,
    pub generating_cut: EdgeSet,
}

/// A cut produced by the enumeration, with its core and (after grouping) the
/// partitions for which it is a recorded minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCut {
    pub edges: EdgeSet,
    pub core: Core,
    pub partitions: Vec<TerminalPartition>,
}

/// Cuts grouped by the terminal partition they induce; only minimum-size
/// cuts per partition are retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCuts {
    pub partition: TerminalPartition,
    pub value: u64,
    pub cuts: Vec<EdgeSet>,
}

/// Union of the components of `G - F` whose interior edge count is at most
/// `phi^{-1} |F|`. On an expander at most one component is excluded.
pub fn core_of(inst: &Instance, cut: &EdgeSet, phi: Ratio) -> Result<Core> {
    let phi_inv = phi.recip()?;
    let comps = inst.graph.components(cut)?;
    let mut core = VertexSet::new();
    for comp in &comps {
        let interior = inst.graph.induced_edges(comp)?.len() as u64;
        if phi_inv.scaled_at_least(interior, cut.len() as u64) {
            core.extend(comp.iter().copied());
        }
    }
    Ok(Core {
        vertex_set: core,
        generating_cut: cut.clone(),
    })
}

/// Bounded DFS from `t` avoiding `x`: explores edge traces in ascending edge
/// id order and stops once more than `edge_limit` edges have been touched.
fn bounded_dfs(
    g: &Hypergraph,
    t: VertexId,
    x: &VertexSet,
    edge_limit: usize,
) -> (VertexSet, EdgeSet) {
    struct State<'a> {
        g: &'a Hypergraph,
        x: &'a VertexSet,
        limit: usize,
        visited: VertexSet,
        edges: EdgeSet,
        stopped: bool,
    }

    fn visit(s: &mut State<'_>, v: VertexId) {
        if s.stopped || !s.visited.insert(v) {
            return;
        }
        let incident: Vec<EdgeId> = s.g.incident_edges(v).collect();
        for e in incident {
            if s.stopped {
                return;
            }
            if s.edges.contains(&e) {
                continue;
            }
            s.edges.insert(e);
            if s.edges.len() > s.limit {
                s.stopped = true;
                return;
            }
            let others: Vec<VertexId> = s
                .g
                .edge_vertices(e)
                .expect("edge exists")
                .iter()
                .copied()
                .filter(|u| !s.x.contains(u))
                .collect();
            for u in others {
                visit(s, u);
                if s.stopped {
                    return;
                }
            }
        }
    }

    let mut state = State {
        g,
        x,
        limit: edge_limit,
        visited: VertexSet::new(),
        edges: EdgeSet::new(),
        stopped: false,
    };
    visit(&mut state, t);
    (state.visited, state.edges)
}

/// Enumerates connected vertex sets `C` of `G - x` with `t ∈ C`,
/// `|∂C| <= c`, and at most `edge_limit` touched edges, by branching on the
/// vertices of each DFS window. Results are deduplicated; the branching
/// aborts once `|x| > rank * c`.
///
/// Branching continues past successful windows: returning only the emitted
/// component would hide every qualifying subset nested inside it (a
/// singleton inside a small component, say), and the downstream cut
/// enumeration needs the full superset. Window states are memoized, so the
/// work stays bounded by the number of blocker sets of size at most
/// `rank * c`.
pub fn enumerate_cuts_help(
    g: &Hypergraph,
    t: VertexId,
    x: &VertexSet,
    c: u64,
    edge_limit: usize,
) -> Result<Vec<VertexSet>> {
    if !g.contains_vertex(t) {
        return Err(Error::UnknownVertex(t));
    }
    let depth_cap = g.rank() * c as usize;
    let mut seen: HashSet<Vec<VertexId>> = HashSet::new();
    let mut out: std::collections::BTreeSet<VertexSet> = std::collections::BTreeSet::new();
    let mut stack: Vec<VertexSet> = vec![x.clone()];
    while let Some(cur) = stack.pop() {
        if cur.len() > depth_cap || cur.contains(&t) {
            continue;
        }
        let key: Vec<VertexId> = cur.iter().copied().collect();
        if !seen.insert(key) {
            continue;
        }
        let (component, touched) = bounded_dfs(g, t, &cur, edge_limit);
        let boundary = g.boundary(&component)?;
        if boundary.len() as u64 <= c && touched.len() <= edge_limit {
            out.insert(component.clone());
        }
        for &v in &component {
            if v == t {
                continue;
            }
            let mut next = cur.clone();
            next.insert(v);
            stack.push(next);
        }
    }
    Ok(out.into_iter().collect())
}

/// Enumerates multiway cuts of size at most the budget, covering every
/// connected multiway cut of the expander instance.
///
/// For each terminal (or each vertex with `from_all_vertices`) the bounded
/// enumeration gathers candidate cores with `edge_limit = 3c*phi^{-1} + c`;
/// every `∂C ∪ F'` with `F' ⊆ E(C)` within budget is then emitted.
pub fn connected_multiway_cuts(
    inst: &Instance,
    phi: Ratio,
    guard_n: usize,
    from_all_vertices: bool,
) -> Result<Vec<CandidateCut>> {
    if !inst.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    match is_phi_expander(&inst.graph, phi, guard_n)? {
        v if v.is_expander() => {}
        v => {
            return Err(Error::NotExpander {
                witness_len: v.witness().map(|w| w.len()).unwrap_or(0),
            })
        }
    }
    let c = inst.budget;
    let phi_inv = phi.recip()?;
    let edge_limit = (phi_inv.ceil_mul(3 * c) + c) as usize;

    let roots: Vec<VertexId> = if from_all_vertices {
        inst.graph.vertices().iter().copied().collect()
    } else {
        inst.terminals.iter().copied().collect()
    };
    let mut cores: std::collections::BTreeSet<VertexSet> = std::collections::BTreeSet::new();
    for t in roots {
        for c_set in enumerate_cuts_help(&inst.graph, t, &VertexSet::new(), c, edge_limit)? {
            cores.insert(c_set);
        }
    }

    let mut cuts: std::collections::BTreeSet<EdgeSet> = std::collections::BTreeSet::new();
    // the empty cut is always the minimum of the partition it induces; the
    // bounded enumeration cannot reach it once m exceeds the edge limit
    cuts.insert(EdgeSet::new());
    for core in &cores {
        let boundary = inst.graph.boundary(core)?;
        if boundary.len() as u64 > c {
            continue;
        }
        let interior: Vec<EdgeId> = inst.graph.induced_edges(core)?.into_iter().collect();
        let room = (c as usize).saturating_sub(boundary.len());
        for_each_subset_upto(&interior, room, |extra| {
            let mut cut = boundary.clone();
            cut.extend(extra.iter().copied());
            cuts.insert(cut);
            true
        });
    }

    cuts.into_iter()
        .map(|edges| {
            let core = core_of(inst, &edges, phi)?;
            Ok(CandidateCut {
                edges,
                core,
                partitions: Vec::new(),
            })
        })
        .collect()
}

/// True when `cut` is a minimum multiway cut of the partition it induces
/// (within budget) and the terminals of its core stay connected in the
/// core's restricted hypergraph.
pub fn is_connected_multiway_cut(inst: &Instance, cut: &EdgeSet, phi: Ratio) -> Result<bool> {
    for &e in cut {
        if !inst.graph.contains_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
    }
    if cut.len() as u64 > inst.budget {
        return Ok(false);
    }
    let comps = inst.graph.components(cut)?;
    let part = induced_partition(&inst.terminals, &comps);
    match min_multiway_cut(inst, &part)? {
        CutSearch::Cut(c) if c.value == cut.len() as u64 => {}
        _ => return Ok(false),
    }
    let core = core_of(inst, cut, phi)?;
    let core_terminals: VertexSet = inst
        .terminals
        .intersection(&core.vertex_set)
        .copied()
        .collect();
    if core_terminals.len() <= 1 {
        return Ok(true);
    }
    let sub = subinstance(inst, &core.vertex_set)?;
    let comps = sub.instance.graph.components(&EdgeSet::new())?;
    let joined = comps
        .iter()
        .any(|comp| core_terminals.iter().all(|t| comp.contains(t)));
    Ok(joined)
}

/// Every way of merging the blocks of `part` into a coarser partition.
fn coarsenings(part: &TerminalPartition) -> Vec<TerminalPartition> {
    let blocks = part.blocks();
    let mut out = Vec::new();
    fn go(
        blocks: &[VertexSet],
        i: usize,
        merged: &mut Vec<VertexSet>,
        out: &mut Vec<TerminalPartition>,
    ) {
        if i == blocks.len() {
            out.push(TerminalPartition::new(merged.clone()).expect("blocks stay disjoint"));
            return;
        }
        for slot in 0..merged.len() {
            let before = merged[slot].clone();
            merged[slot].extend(blocks[i].iter().copied());
            go(blocks, i + 1, merged, out);
            merged[slot] = before;
        }
        merged.push(blocks[i].clone());
        go(blocks, i + 1, merged, out);
        merged.pop();
    }
    if blocks.is_empty() {
        return vec![part.clone()];
    }
    go(blocks, 0, &mut Vec::new(), &mut out);
    out
}

/// Groups cuts by the terminal partitions they cut (the induced partition
/// and all of its coarsenings) and keeps the minimum-size cuts per group.
/// Each candidate learns the partitions it is recorded as a minimum for.
pub fn partitions_from_cuts(
    inst: &Instance,
    cuts: &mut [CandidateCut],
) -> Result<Vec<PartitionCuts>> {
    let mut groups: BTreeMap<TerminalPartition, Vec<EdgeSet>> = BTreeMap::new();
    for cand in cuts.iter() {
        let comps = inst.graph.components(&cand.edges)?;
        let induced = induced_partition(&inst.terminals, &comps);
        if induced.block_count() > 10 {
            return Err(Error::GuardExceeded {
                what: "partition coarsening fan-out",
                limit: 10,
                actual: induced.block_count(),
            });
        }
        for part in coarsenings(&induced) {
            groups.entry(part).or_default().push(cand.edges.clone());
        }
    }
    let out: Vec<PartitionCuts> = groups
        .into_iter()
        .map(|(partition, mut cuts)| {
            let value = cuts.iter().map(|c| c.len()).min().unwrap_or(0) as u64;
            cuts.retain(|c| c.len() as u64 == value);
            cuts.sort();
            cuts.dedup();
            PartitionCuts {
                partition,
                value,
                cuts,
            }
        })
        .collect();
    for cand in cuts.iter_mut() {
        cand.partitions = out
            .iter()
            .filter(|g| g.cuts.contains(&cand.edges))
            .map(|g| g.partition.clone())
            .collect();
    }
    Ok(out)
}
