//! Independent exhaustive oracles for the acceptance suite. These re-derive
//! every quantity from the definitions with their own code, separately from
//! the library paths they gate.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hypermim_core::hypergraph::{EdgeSet, VertexSet};
use hypermim_core::oracle::TerminalPartition;
use hypermim_core::{EdgeId, Hypergraph, Instance, Ratio, VertexId};

/// Flood-fill components (no union-find).
pub fn components(g: &Hypergraph, removed: &EdgeSet) -> Vec<VertexSet> {
    let mut label: BTreeMap<VertexId, VertexId> =
        g.vertices().iter().map(|&v| (v, v)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for (id, vs) in g.edges() {
            if removed.contains(id) {
                continue;
            }
            let lo = vs.iter().map(|v| label[v]).min().unwrap();
            for v in vs {
                if label[v] != lo {
                    label.insert(*v, lo);
                    changed = true;
                }
            }
        }
        // propagate labels to their representatives
        let keys: Vec<VertexId> = label.keys().copied().collect();
        for v in keys {
            let root = label[&label[&v]];
            if label[&v] != root {
                label.insert(v, root);
                changed = true;
            }
        }
    }
    let mut blocks: BTreeMap<VertexId, VertexSet> = BTreeMap::new();
    for (&v, &root) in &label {
        blocks.entry(root).or_default().insert(v);
    }
    blocks.into_values().collect()
}

pub fn separates(g: &Hypergraph, removed: &EdgeSet, blocks: &[VertexSet]) -> bool {
    let comps = components(g, removed);
    let comp_of = |v: VertexId| comps.iter().position(|c| c.contains(&v)).unwrap();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for &s in &blocks[i] {
                for &t in &blocks[j] {
                    if comp_of(s) == comp_of(t) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All minimum multiway cuts within the budget, full bitmask scan.
pub fn min_cuts(inst: &Instance, blocks: &[VertexSet]) -> Option<(u64, Vec<EdgeSet>)> {
    let ids: Vec<EdgeId> = inst.graph.edge_ids().collect();
    let mut best: Option<u64> = None;
    let mut minima = Vec::new();
    for mask in 0..(1u32 << ids.len()) {
        let size = mask.count_ones() as u64;
        if size > inst.budget || best.is_some_and(|b| size > b) {
            continue;
        }
        let cut: EdgeSet = (0..ids.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ids[i])
            .collect();
        if separates(&inst.graph, &cut, blocks) {
            if best == Some(size) {
                minima.push(cut);
            } else {
                best = Some(size);
                minima = vec![cut];
            }
        }
    }
    best.map(|b| (b, minima))
}

/// Recursive partition enumeration.
pub fn partitions(terminals: &VertexSet) -> Vec<Vec<VertexSet>> {
    fn go(ts: &[VertexId], i: usize, acc: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        if i == ts.len() {
            out.push(acc.clone());
            return;
        }
        for b in 0..acc.len() {
            acc[b].insert(ts[i]);
            go(ts, i + 1, acc, out);
            acc[b].remove(&ts[i]);
        }
        acc.push(VertexSet::from([ts[i]]));
        go(ts, i + 1, acc, out);
        acc.pop();
    }
    let ts: Vec<VertexId> = terminals.iter().copied().collect();
    let mut out = Vec::new();
    if ts.is_empty() {
        return vec![Vec::new()];
    }
    go(&ts, 0, &mut Vec::new(), &mut out);
    out
}

pub fn is_essential(inst: &Instance, e: EdgeId) -> bool {
    for blocks in partitions(&inst.terminals) {
        if let Some((_, minima)) = min_cuts(inst, &blocks) {
            if !minima.is_empty() && minima.iter().all(|f| f.contains(&e)) {
                return true;
            }
        }
    }
    false
}

/// Useful partitions straight from the definition.
pub fn useful_partitions(inst: &Instance, phi: Ratio) -> Vec<TerminalPartition> {
    let mut out = Vec::new();
    for blocks in partitions(&inst.terminals) {
        if let Some((_, minima)) = min_cuts(inst, &blocks) {
            if minima
                .iter()
                .all(|f| hypermim_core::cuts::is_connected_multiway_cut(inst, f, phi).unwrap())
            {
                out.push(TerminalPartition::new(blocks).unwrap());
            }
        }
    }
    out.sort();
    out
}

/// Exhaustive hypergraph-side important cuts.
pub fn hyper_important_cuts(
    inst: &Instance,
    a: &VertexSet,
    b: &VertexSet,
    c: u64,
) -> Vec<(VertexSet, EdgeSet)> {
    let order: Vec<VertexId> = inst.graph.vertices().iter().copied().collect();
    let n = order.len();
    let side_of = |mask: u32| -> VertexSet {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| order[i])
            .collect()
    };
    let boundary = |x: &VertexSet| -> EdgeSet {
        inst.graph
            .edges()
            .iter()
            .filter(|(_, vs)| {
                let inside = vs.iter().filter(|v| x.contains(v)).count();
                inside > 0 && inside < vs.len()
            })
            .map(|(&id, _)| id)
            .collect()
    };
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let side = side_of(mask);
        if !a.is_subset(&side) || side.intersection(b).next().is_some() {
            continue;
        }
        let cut = boundary(&side);
        if cut.len() as u64 > c {
            continue;
        }
        let mut important = true;
        for bigger in 0..(1u32 << n) {
            if bigger & mask == mask && bigger != mask {
                let side2 = side_of(bigger);
                if side2.intersection(b).next().is_none()
                    && boundary(&side2).len() <= cut.len()
                {
                    important = false;
                    break;
                }
            }
        }
        if important {
            out.push((side, cut));
        }
    }
    out.sort();
    out
}

/// A target occurrence for the path-system search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetOcc {
    Plain(EdgeId),
    SinkCopy(EdgeId),
}

/// Maximum routable path system by backtracking.
pub fn max_path_system(g: &Hypergraph, sources: &VertexSet, targets: &[TargetOcc]) -> usize {
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let meets = |a: EdgeId, b: EdgeId| {
        g.edge_vertices(a)
            .unwrap()
            .intersection(g.edge_vertices(b).unwrap())
            .next()
            .is_some()
    };
    let is_source = |e: EdgeId| {
        g.edge_vertices(e)
            .unwrap()
            .iter()
            .any(|v| sources.contains(v))
    };
    let accepts = |last: EdgeId, t: TargetOcc| match t {
        TargetOcc::Plain(e) => last == e,
        TargetOcc::SinkCopy(e) => last == e || meets(last, e),
    };

    fn route(
        ids: &[EdgeId],
        meets: &dyn Fn(EdgeId, EdgeId) -> bool,
        is_source: &dyn Fn(EdgeId) -> bool,
        accepts: &dyn Fn(EdgeId, TargetOcc) -> bool,
        remaining: &[TargetOcc],
        used: &mut EdgeSet,
        path: &mut Vec<EdgeId>,
    ) -> bool {
        let target = match remaining.first() {
            None => return true,
            Some(&t) => t,
        };
        if let Some(&last) = path.last() {
            if accepts(last, target) {
                let mut fresh = Vec::new();
                if route(ids, meets, is_source, accepts, &remaining[1..], used, &mut fresh) {
                    return true;
                }
            }
        }
        let candidates: Vec<EdgeId> = ids
            .iter()
            .copied()
            .filter(|e| !used.contains(e))
            .filter(|&e| match path.last() {
                None => is_source(e),
                Some(&last) => meets(last, e),
            })
            .collect();
        for e in candidates {
            used.insert(e);
            path.push(e);
            if route(ids, meets, is_source, accepts, remaining, used, path) {
                return true;
            }
            path.pop();
            used.remove(&e);
        }
        false
    }

    let t = targets.len();
    for k in (0..=t).rev() {
        for mask in 0..(1u32 << t) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let subset: Vec<TargetOcc> = (0..t)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| targets[i])
                .collect();
            let mut used = EdgeSet::new();
            let mut path = Vec::new();
            if route(&ids, &meets, &is_source, &accepts, &subset, &mut used, &mut path) {
                return k;
            }
        }
    }
    0
}

pub fn unbreakable(inst: &Instance, d: u64) -> bool {
    let order: Vec<VertexId> = inst.graph.vertices().iter().copied().collect();
    for mask in 0..(1u32 << order.len()) {
        let x: VertexSet = (0..order.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| order[i])
            .collect();
        let t_in = inst.terminals.intersection(&x).count() as u64;
        let t_out = inst.terminals.len() as u64 - t_in;
        if t_in <= t_out
            && inst.graph.boundary(&x).unwrap().len() as u64 <= inst.budget
            && t_in > d
        {
            return false;
        }
    }
    true
}

pub fn dense(inst: &Instance, alpha: f64) -> bool {
    let order: Vec<VertexId> = inst.graph.vertices().iter().copied().collect();
    for mask in 0..(1u32 << order.len()) {
        let x: VertexSet = (0..order.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| order[i])
            .collect();
        let inside = inst.graph.induced_edges(&x).unwrap().len() as u64;
        let comp: VertexSet = inst.graph.vertices().difference(&x).copied().collect();
        let outside = inst.graph.induced_edges(&comp).unwrap().len() as u64;
        let boundary = inst.graph.boundary(&x).unwrap().len() as u64;
        if inside > 0 && inside <= outside && boundary <= inst.budget {
            let cap = (2 * boundary + inst.terminals.intersection(&x).count() as u64) as f64;
            if inside as f64 > cap.powf(alpha) {
                return false;
            }
        }
    }
    true
}
