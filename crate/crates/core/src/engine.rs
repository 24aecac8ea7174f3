//! The sparsifier: per-expander minimal mimicking networks, the
//! decompose-solve-glue pass, and the outer halving loop.
//!
//! Contractions are strictly sequential everywhere. Two edges can each be
//! contractible on its own while contracting both breaks preservation, so
//! the engine re-certifies (against its enumerated cut lists or the oracle)
//! before every single contraction.

use rayon::prelude::*;
use std::collections::BTreeMap;

use crate::cuts::{connected_multiway_cuts, partitions_from_cuts};
use crate::expander::{expander_decompose, formula_phi_inv, is_phi_expander};
use crate::hypergraph::{replay_contractions, subinstance, EdgeSet, Subinstance, VertexSet};
use crate::important::prune_useful;
use crate::oracle::{essential_edges, TerminalPartition};
use crate::{
    ContractionMap, EdgeId, Error, Hypergraph, Instance, Ratio, Result,
};

/// Tuning knobs for the sparsifier.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Expansion parameter override; `None` computes the formula value.
    pub phi_override: Option<Ratio>,
    /// Exponent constant in the formula `phi^{-1} = 4 r c^(M r log c) log^3 n`.
    pub m_const: u32,
    /// Scales the informational cut-size bound of the decomposition.
    pub cut_budget_factor: Ratio,
    /// Cap for exhaustive expander scans.
    pub guard_n: usize,
    /// Cap for terminal-partition enumeration.
    pub guard_k: usize,
    /// Enumerate connected sets from every vertex instead of terminals only.
    pub roots_all_vertices: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            phi_override: None,
            m_const: 1,
            cut_budget_factor: Ratio::int(1),
            guard_n: crate::expander::DEFAULT_EXPANDER_GUARD,
            guard_k: crate::oracle::PARTITION_GUARD,
            roots_all_vertices: false,
        }
    }
}

/// Statistics for one decompose-solve-glue pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PassStats {
    pub phi: Ratio,
    pub parts: usize,
    pub cut_size: usize,
    pub m_before: usize,
    pub m_after: usize,
    pub contracted: usize,
}

/// Full record of a sparsify run: replaying `contractions` on the input
/// reproduces the output.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsifyReport {
    pub passes: usize,
    pub contractions: Vec<EdgeId>,
    pub final_size: usize,
    pub pass_stats: Vec<PassStats>,
}

/// Contracts everything: with a zero budget no partition can force an edge,
/// so every edge is contractible in any order.
fn contract_all(inst: &Instance) -> Result<(Instance, ContractionMap)> {
    let mut cur = inst.clone();
    let mut map = ContractionMap::identity();
    loop {
        let next_edge = cur.graph.edge_ids().next();
        let e = match next_edge {
            Some(e) => e,
            None => return Ok((cur, map)),
        };
        let (next, step) = cur.contract(e)?;
        cur = next;
        map = map.compose(&step);
    }
}

/// Repeatedly contracts the smallest brute-force non-essential edge until
/// every remaining edge is essential.
pub fn minimal_mimicking_small(
    inst: &Instance,
    guard_k: usize,
) -> Result<(Hypergraph, ContractionMap)> {
    if inst.budget == 0 {
        let (cur, map) = contract_all(inst)?;
        return Ok((cur.graph, map));
    }
    let mut cur = inst.clone();
    let mut map = ContractionMap::identity();
    loop {
        let essential = essential_edges(&cur, guard_k)?;
        let candidate = cur.graph.edge_ids().find(|e| !essential.contains(e));
        match candidate {
            None => return Ok((cur.graph, map)),
            Some(e) => {
                let (next, step) = cur.contract(e)?;
                cur = next;
                map = map.compose(&step);
            }
        }
    }
}

/// Lists of recorded minimum cuts per useful partition; shrinks as edges
/// are contracted.
struct CutLists {
    groups: Vec<(TerminalPartition, Vec<EdgeSet>)>,
}

impl CutLists {
    /// An edge is certified essential when some surviving partition has all
    /// of its recorded minimum cuts through it.
    fn certifies_essential(&self, e: EdgeId) -> bool {
        self.groups
            .iter()
            .any(|(_, cuts)| !cuts.is_empty() && cuts.iter().all(|c| c.contains(&e)))
    }

    /// Drops every recorded cut that uses a now-dead edge; partitions left
    /// without cuts carry no signal and are removed.
    fn retire_edges(&mut self, dead: &EdgeSet) {
        for (_, cuts) in &mut self.groups {
            cuts.retain(|c| c.intersection(dead).next().is_none());
        }
        self.groups.retain(|(_, cuts)| !cuts.is_empty());
    }
}

/// Minimal mimicking network of a connected expander instance.
///
/// Small instances (at most `3c*phi^{-1} + c` edges) run the brute-force
/// loop. Larger ones enumerate useful partitions and their minimum cuts
/// once, then visit each edge at most once: an edge whose every recorded
/// minimum cut for some useful partition passes through it is essential and
/// kept; anything else is contracted immediately, retiring the cuts it
/// invalidated. When the edge count falls to the threshold the remainder is
/// finished in small mode.
pub fn minimal_mimicking_expander(
    inst: &Instance,
    phi: Ratio,
    cfg: &EngineConfig,
) -> Result<(Hypergraph, ContractionMap)> {
    if inst.budget == 0 {
        let (cur, map) = contract_all(inst)?;
        return Ok((cur.graph, map));
    }
    let threshold = (phi.recip()?.ceil_mul(3 * inst.budget) + inst.budget) as usize;
    if inst.graph.edge_count() <= threshold {
        return minimal_mimicking_small(inst, cfg.guard_k);
    }
    if !inst.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    match is_phi_expander(&inst.graph, phi, cfg.guard_n)? {
        v if v.is_expander() => {}
        v => {
            return Err(Error::NotExpander {
                witness_len: v.witness().map(|w| w.len()).unwrap_or(0),
            })
        }
    }

    let mut cuts = connected_multiway_cuts(inst, phi, cfg.guard_n, cfg.roots_all_vertices)?;
    let groups = partitions_from_cuts(inst, &mut cuts)?;
    let useful = prune_useful(inst, &groups, phi)?;
    let mut lists = CutLists {
        groups: useful
            .into_iter()
            .map(|g| (g.partition, g.cuts))
            .collect(),
    };

    let order: Vec<EdgeId> = inst.graph.edge_ids().collect();
    let mut cur = inst.clone();
    let mut map = ContractionMap::identity();
    for e in order {
        if cur.graph.edge_count() <= threshold {
            let (h, tail) = minimal_mimicking_small(&cur, cfg.guard_k)?;
            return Ok((h, map.compose(&tail)));
        }
        if !cur.graph.contains_edge(e) {
            continue;
        }
        if lists.certifies_essential(e) {
            continue;
        }
        let (next, step) = cur.contract(e)?;
        let mut dead: EdgeSet = step.dropped_edges().iter().copied().collect();
        dead.insert(e);
        lists.retire_edges(&dead);
        cur = next;
        map = map.compose(&step);
    }
    Ok((cur.graph, map))
}

/// Runs the expander engine per connected component and replays the merged
/// contraction order on the whole graph.
fn engine_per_component(
    inst: &Instance,
    phi: Ratio,
    cfg: &EngineConfig,
) -> Result<(Hypergraph, ContractionMap)> {
    if inst.graph.is_connected() {
        return minimal_mimicking_expander(inst, phi, cfg);
    }
    let comps = inst.graph.components(&EdgeSet::new())?;
    let mut order: Vec<EdgeId> = Vec::new();
    for comp in &comps {
        if inst.graph.induced_edges(comp)?.is_empty() {
            continue;
        }
        let part = inst.restrict_to_component(comp)?;
        let (_, part_map) = minimal_mimicking_expander(&part, phi, cfg)?;
        order.extend_from_slice(part_map.contracted_edges());
    }
    replay_contractions(&inst.graph, &order)
}

/// Fuses per-part results back into one network over the host's ids.
///
/// The host graph is reconstructed from the parts (interior edges verbatim,
/// boundary edges as the union of their traces), the per-part contraction
/// orders are concatenated, and the merged order is replayed on the host.
/// Anchors disappear with the restricted edges they lived on.
pub fn glue(
    parts: &[(Hypergraph, Subinstance, ContractionMap)],
) -> Result<(Hypergraph, ContractionMap)> {
    let mut host = Hypergraph::new();
    let mut covered = VertexSet::new();
    for (_, sub, _) in parts {
        for &v in &sub.host_set {
            if !covered.insert(v) {
                return Err(Error::GlueMismatch(format!("vertex {v} in two parts")));
            }
            host.insert_vertex(v);
        }
    }

    #[derive(PartialEq)]
    enum Kind {
        Interior,
        Boundary { appearances: usize },
    }
    let mut edge_verts: BTreeMap<EdgeId, (VertexSet, Kind)> = BTreeMap::new();
    for (result, sub, map) in parts {
        // the claimed result must replay from the subinstance
        let (replayed, _) = replay_contractions(&sub.instance.graph, map.contracted_edges())?;
        if &replayed != result {
            return Err(Error::GlueMismatch("part result does not replay".into()));
        }
        for &e in map.contracted_edges() {
            if sub.anchors.contains_key(&e) {
                return Err(Error::GlueMismatch(format!(
                    "boundary edge {e} was contracted inside a part"
                )));
            }
        }
        for (&parent, &restricted) in &sub.edge_map {
            let vs = sub.instance.graph.edge_vertices(restricted)?;
            if sub.anchors.contains_key(&parent) {
                let trace: VertexSet = vs.intersection(&sub.host_set).copied().collect();
                match edge_verts.entry(parent) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert((trace, Kind::Boundary { appearances: 1 }));
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        let (all, kind) = slot.get_mut();
                        match kind {
                            Kind::Interior => {
                                return Err(Error::GlueMismatch(format!(
                                    "edge {parent} is interior and anchored"
                                )))
                            }
                            Kind::Boundary { appearances } => {
                                all.extend(trace);
                                *appearances += 1;
                            }
                        }
                    }
                }
            } else {
                if edge_verts.contains_key(&parent) {
                    return Err(Error::GlueMismatch(format!(
                        "interior edge {parent} appears in two parts"
                    )));
                }
                edge_verts.insert(parent, (vs.clone(), Kind::Interior));
            }
        }
    }
    for (id, (vs, kind)) in edge_verts {
        if let Kind::Boundary { appearances } = kind {
            if appearances < 2 {
                return Err(Error::GlueMismatch(format!(
                    "boundary edge {id} has no sibling part"
                )));
            }
        }
        host.insert_edge(id, vs)?;
    }

    let mut order: Vec<EdgeId> = Vec::new();
    for (_, _, map) in parts {
        order.extend_from_slice(map.contracted_edges());
    }
    replay_contractions(&host, &order)
}

/// One decompose-solve-glue pass over an instance.
pub fn mimicking_expander_pass(
    inst: &Instance,
    cfg: &EngineConfig,
) -> Result<(Instance, ContractionMap, PassStats)> {
    let m_before = inst.graph.edge_count();
    let phi = match cfg.phi_override {
        Some(p) => p,
        None => Ratio::new(
            1,
            formula_phi_inv(
                inst.graph.vertex_count(),
                inst.graph.rank(),
                inst.budget,
                cfg.m_const,
            ),
        )?,
    };

    if inst.budget == 0 {
        let (next, map) = contract_all(inst)?;
        let stats = PassStats {
            phi,
            parts: 1,
            cut_size: 0,
            m_before,
            m_after: next.graph.edge_count(),
            contracted: map.contracted_edges().len(),
        };
        return Ok((next, map, stats));
    }

    let decomp = expander_decompose(&inst.graph, phi, cfg.cut_budget_factor, cfg.guard_n)?;
    let subs: Vec<Subinstance> = decomp
        .parts
        .iter()
        .map(|part| subinstance(inst, part))
        .collect::<Result<_>>()?;
    let solved: Vec<(Hypergraph, Subinstance, ContractionMap)> = subs
        .into_par_iter()
        .map(|sub| {
            let (h, map) = engine_per_component(&sub.instance, phi, cfg)?;
            Ok((h, sub, map))
        })
        .collect::<Result<_>>()?;

    let (glued, glue_map) = glue(&solved)?;
    // replay on the true host so vertex allocation stays continuous
    let (result, map) = replay_contractions(&inst.graph, glue_map.contracted_edges())?;
    if result != glued {
        return Err(Error::GlueMismatch(
            "glued network differs from the host replay".into(),
        ));
    }
    let stats = PassStats {
        phi,
        parts: decomp.parts.len(),
        cut_size: decomp.cut_edges.len(),
        m_before,
        m_after: result.edge_count(),
        contracted: map.contracted_edges().len(),
    };
    let terminals = map.resolve_set(&inst.terminals);
    Ok((
        Instance::new(result, terminals, inst.budget)?,
        map,
        stats,
    ))
}

/// Iterates passes until no pass shrinks the edge count (at most
/// `ceil(log2 m)` rounds), returning the final network, the composed
/// contraction map, and the per-pass report.
pub fn sparsify(
    inst: &Instance,
    cfg: &EngineConfig,
) -> Result<(Hypergraph, ContractionMap, SparsifyReport)> {
    let m0 = inst.graph.edge_count();
    let max_passes = (m0.max(2) as f64).log2().ceil() as usize;
    let mut cur = inst.clone();
    let mut map = ContractionMap::identity();
    let mut pass_stats = Vec::new();
    for _ in 0..max_passes.max(1) {
        let (next, pass_map, stats) = mimicking_expander_pass(&cur, cfg)?;
        let contracted = stats.contracted;
        pass_stats.push(stats);
        cur = next;
        map = map.compose(&pass_map);
        if contracted == 0 {
            break;
        }
    }
    let report = SparsifyReport {
        passes: pass_stats.len(),
        contractions: map.contracted_edges().to_vec(),
        final_size: cur.graph.edge_count(),
        pass_stats,
    };
    Ok((cur.graph, map, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_essential, is_mimicking};
    use crate::VertexId;

    fn vset(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    fn path(n: u32, terminals: &[u32], c: u64) -> Instance {
        let g = Hypergraph::build(
            1..=n,
            (1..n).map(|i| (i, vec![i, i + 1])),
        )
        .unwrap();
        Instance::new(g, vset(terminals), c).unwrap()
    }

    #[test]
    fn small_mode_collapses_path_to_one_edge() {
        let inst = path(4, &[1, 4], 1);
        let (h, map) = minimal_mimicking_small(&inst, 12).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert!(is_mimicking(&inst, &h, &map, 12).unwrap());
    }

    #[test]
    fn small_mode_keeps_essential_triangle() {
        // triangle with all vertices terminals: at c=2 every edge sits in
        // the unique minimum cut of some leaf-vs-rest partition
        let g = Hypergraph::build(
            [1, 2, 3],
            [(1, vec![1, 2]), (2, vec![2, 3]), (3, vec![1, 3])],
        )
        .unwrap();
        let inst = Instance::new(g.clone(), vset(&[1, 2, 3]), 2).unwrap();
        for e in [1, 2, 3] {
            assert!(is_essential(&inst, EdgeId(e), 12).unwrap());
        }
        let (h, map) = minimal_mimicking_small(&inst, 12).unwrap();
        assert_eq!(h, g);
        assert!(map.is_identity());

        // at c=1 no partition fits the budget, so everything collapses
        let loose = Instance::new(g, vset(&[1, 2, 3]), 1).unwrap();
        let (h1, map1) = minimal_mimicking_small(&loose, 12).unwrap();
        assert_eq!(h1.edge_count(), 0);
        assert!(is_mimicking(&loose, &h1, &map1, 12).unwrap());
    }

    #[test]
    fn enumeration_regime_keeps_all_essential_star() {
        // leaf star, every leaf a terminal: each edge is the unique minimum
        // cut of its leaf-vs-rest partition, so nothing contracts even in
        // the enumeration regime (m = 5 > 3c/phi + c = 4 at phi = 1)
        let g = Hypergraph::build(
            1..=6,
            (1..=5).map(|i| (i, vec![i, 6])),
        )
        .unwrap();
        let inst = Instance::new(g.clone(), vset(&[1, 2, 3, 4, 5]), 1).unwrap();
        let phi = Ratio::int(1);
        let (h, map) = minimal_mimicking_expander(&inst, phi, &EngineConfig::default()).unwrap();
        assert_eq!(h, g);
        assert!(map.is_identity());
    }

    #[test]
    fn expander_mode_matches_small_mode_size() {
        // 6-edge path collapses to a single edge either way
        let inst = path(7, &[1, 7], 1);
        let cfg = EngineConfig::default();
        let phi = Ratio::new(1, 2).unwrap();
        let (h, map) = minimal_mimicking_expander(&inst, phi, &cfg).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert!(is_mimicking(&inst, &h, &map, 12).unwrap());
    }

    #[test]
    fn glue_of_uncontracted_parts_roundtrips() {
        let inst = path(4, &[1, 4], 1);
        let left = subinstance(&inst, &vset(&[1, 2])).unwrap();
        let right = subinstance(&inst, &vset(&[3, 4])).unwrap();
        let parts = vec![
            (left.instance.graph.clone(), left, ContractionMap::identity()),
            (
                right.instance.graph.clone(),
                right,
                ContractionMap::identity(),
            ),
        ];
        let (host, map) = glue(&parts).unwrap();
        assert_eq!(host, inst.graph);
        assert!(map.is_identity());
    }

    #[test]
    fn glue_replays_interior_contractions() {
        let inst = path(5, &[1, 5], 1);
        let left = subinstance(&inst, &vset(&[1, 2, 3])).unwrap();
        let right = subinstance(&inst, &vset(&[4, 5])).unwrap();
        // contract interior edge e1 = {1,2} inside the left part
        let (lh, lmap) = left.instance.graph.contract(EdgeId(1)).unwrap();
        let parts = vec![
            (lh, left, lmap),
            (
                right.instance.graph.clone(),
                right,
                ContractionMap::identity(),
            ),
        ];
        let (glued, map) = glue(&parts).unwrap();
        let (direct, _) = inst.graph.contract(EdgeId(1)).unwrap();
        assert_eq!(glued, direct);
        assert_eq!(map.contracted_edges(), &[EdgeId(1)]);
    }

    #[test]
    fn glue_rejects_boundary_contraction() {
        let inst = path(4, &[1, 4], 1);
        let left = subinstance(&inst, &vset(&[1, 2])).unwrap();
        let right = subinstance(&inst, &vset(&[3, 4])).unwrap();
        // edge 2 = {2,3} is the decomposition cut; contract its restricted copy
        let (lh, lmap) = left.instance.graph.contract(EdgeId(2)).unwrap();
        let parts = vec![
            (lh, left, lmap),
            (
                right.instance.graph.clone(),
                right,
                ContractionMap::identity(),
            ),
        ];
        assert!(matches!(glue(&parts), Err(Error::GlueMismatch(_))));
    }

    #[test]
    fn pass_equals_engine_when_one_part() {
        let inst = path(4, &[1, 4], 1);
        let cfg = EngineConfig {
            phi_override: Some(Ratio::int(1)),
            ..EngineConfig::default()
        };
        // a 3-edge path at phi=1 certifies (every split has a tiny side)
        let (next, map, stats) = mimicking_expander_pass(&inst, &cfg).unwrap();
        assert!(is_mimicking(&inst, &next.graph, &map, 12).unwrap());
        assert_eq!(stats.m_before, 3);
        assert_eq!(stats.m_after, next.graph.edge_count());
    }

    #[test]
    fn sparsify_path6_reaches_one_edge() {
        let inst = path(7, &[1, 7], 1);
        let (h, map, report) = sparsify(&inst, &EngineConfig::default()).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(report.final_size, 1);
        assert!(is_mimicking(&inst, &h, &map, 12).unwrap());
        // monotone pass sizes
        for w in report.pass_stats.windows(2) {
            assert!(w[1].m_before <= w[0].m_after.max(w[0].m_before));
        }
    }

    #[test]
    fn sparsify_identity_on_minimal_input() {
        let g = Hypergraph::build([1, 2], [(1, vec![1, 2])]).unwrap();
        let inst = Instance::new(g.clone(), vset(&[1, 2]), 1).unwrap();
        let (h, map, report) = sparsify(&inst, &EngineConfig::default()).unwrap();
        assert_eq!(h, g);
        assert!(map.is_identity());
        assert_eq!(report.passes, 1);
    }

    #[test]
    fn sparsify_budget_zero_contracts_everything() {
        let inst = path(4, &[1, 4], 0);
        let (h, map, _) = sparsify(&inst, &EngineConfig::default()).unwrap();
        assert_eq!(h.edge_count(), 0);
        assert!(is_mimicking(&inst, &h, &map, 12).unwrap());
    }
}
