//! Shared test support: a seeded instance generator and independent
//! brute-force oracles. Everything here re-derives results from the
//! definitions with its own code paths so the production routines are
//! checked against genuinely second opinions.

#![allow(dead_code)]
#![allow(clippy::too_many_arguments)]

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hypermim_core::hypergraph::{EdgeSet, VertexSet};
use hypermim_core::oracle::TerminalPartition;
use hypermim_core::{EdgeId, Hypergraph, Instance, Ratio, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random hypergraph with `n` vertices (ids 1..=n) and `m` edges of size
/// 2..=r.
pub fn gen_graph(rng: &mut ChaCha8Rng, n: u32, m: u32, r: usize) -> Hypergraph {
    let mut g = Hypergraph::new();
    for v in 1..=n {
        g.insert_vertex(VertexId(v));
    }
    let mut pool: Vec<u32> = (1..=n).collect();
    for id in 1..=m {
        let size = rng.gen_range(2..=r.min(n as usize).max(2));
        pool.shuffle(rng);
        g.insert_edge(EdgeId(id), pool[..size].iter().map(|&v| VertexId(v)))
            .expect("generated edge is valid");
    }
    g
}

pub fn gen_instance(
    rng: &mut ChaCha8Rng,
    max_n: u32,
    max_m: u32,
    max_r: usize,
    max_k: usize,
    max_c: u64,
) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=max_m);
    let g = gen_graph(rng, n, m, max_r);
    let k = rng.gen_range(1..=max_k.min(n as usize));
    let mut pool: Vec<u32> = (1..=n).collect();
    pool.shuffle(rng);
    let terminals: VertexSet = pool[..k].iter().map(|&v| VertexId(v)).collect();
    let c = rng.gen_range(0..=max_c);
    Instance::new(g, terminals, c).expect("generated instance is valid")
}

pub fn gen_connected_instance(
    rng: &mut ChaCha8Rng,
    max_n: u32,
    max_m: u32,
    max_r: usize,
    max_k: usize,
    max_c: u64,
) -> Instance {
    loop {
        let inst = gen_instance(rng, max_n, max_m, max_r, max_k, max_c);
        if inst.graph.is_connected() {
            return inst;
        }
    }
}

/// Retries random connected instances until one certifies as a
/// `phi`-expander; gives up after `tries`.
pub fn gen_expander_instance(
    rng: &mut ChaCha8Rng,
    phi: Ratio,
    max_n: u32,
    max_m: u32,
    max_r: usize,
    max_k: usize,
    max_c: u64,
    tries: usize,
) -> Option<Instance> {
    for _ in 0..tries {
        let inst = gen_connected_instance(rng, max_n, max_m, max_r, max_k, max_c);
        if inst.budget == 0 {
            continue;
        }
        if hypermim_core::expander::is_phi_expander(&inst.graph, phi, 16)
            .map(|v| v.is_expander())
            .unwrap_or(false)
        {
            return Some(inst);
        }
    }
    None
}

/// Independent reachability: repeated relaxation over edge membership.
pub fn naive_components(g: &Hypergraph, removed: &EdgeSet) -> Vec<VertexSet> {
    let mut comp: BTreeMap<VertexId, VertexId> =
        g.vertices().iter().map(|&v| (v, v)).collect();
    loop {
        let mut changed = false;
        for (id, vs) in g.edges() {
            if removed.contains(id) {
                continue;
            }
            let smallest = vs.iter().map(|v| comp[v]).min().unwrap();
            for v in vs {
                if comp[v] != smallest {
                    comp.insert(*v, smallest);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // normalize labels to fixpoints
    loop {
        let mut changed = false;
        let keys: Vec<VertexId> = comp.keys().copied().collect();
        for v in keys {
            let root = comp[&comp[&v]];
            if comp[&v] != root {
                comp.insert(v, root);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut blocks: BTreeMap<VertexId, VertexSet> = BTreeMap::new();
    for (&v, &root) in &comp {
        blocks.entry(root).or_default().insert(v);
    }
    blocks.into_values().collect()
}

fn comp_of(components: &[VertexSet], v: VertexId) -> usize {
    components
        .iter()
        .position(|c| c.contains(&v))
        .expect("vertex in some component")
}

/// True when no component holds terminals of two different blocks.
pub fn naive_separates(g: &Hypergraph, removed: &EdgeSet, blocks: &[VertexSet]) -> bool {
    let comps = naive_components(g, removed);
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for &s in &blocks[i] {
                for &t in &blocks[j] {
                    if comp_of(&comps, s) == comp_of(&comps, t) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All minimum multiway cuts within budget, by full bitmask enumeration.
pub fn naive_min_cuts(inst: &Instance, blocks: &[VertexSet]) -> Option<(u64, Vec<EdgeSet>)> {
    let ids: Vec<EdgeId> = inst.graph.edge_ids().collect();
    let m = ids.len();
    let mut best: Option<u64> = None;
    let mut minima: Vec<EdgeSet> = Vec::new();
    for mask in 0..(1u32 << m) {
        let size = mask.count_ones() as u64;
        if size > inst.budget {
            continue;
        }
        if let Some(b) = best {
            if size > b {
                continue;
            }
        }
        let cut: EdgeSet = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ids[i])
            .collect();
        if naive_separates(&inst.graph, &cut, blocks) {
            match best {
                Some(b) if b == size => minima.push(cut),
                Some(b) if b < size => {}
                _ => {
                    best = Some(size);
                    minima = vec![cut];
                }
            }
        }
    }
    best.map(|b| {
        minima.sort();
        (b, minima)
    })
}

/// Recursive set-partition enumeration (independent of the library's
/// restricted-growth strings).
pub fn naive_partitions(terminals: &VertexSet) -> Vec<Vec<VertexSet>> {
    let ts: Vec<VertexId> = terminals.iter().copied().collect();
    let mut out = Vec::new();
    fn go(ts: &[VertexId], i: usize, blocks: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        if i == ts.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].insert(ts[i]);
            go(ts, i + 1, blocks, out);
            blocks[b].remove(&ts[i]);
        }
        blocks.push(VertexSet::from([ts[i]]));
        go(ts, i + 1, blocks, out);
        blocks.pop();
    }
    if ts.is_empty() {
        out.push(Vec::new());
        return out;
    }
    go(&ts, 0, &mut Vec::new(), &mut out);
    out
}

/// Definition-level essentiality with its own partition and cut scans.
pub fn naive_is_essential(inst: &Instance, e: EdgeId) -> bool {
    for blocks in naive_partitions(&inst.terminals) {
        if let Some((_, minima)) = naive_min_cuts(inst, &blocks) {
            if !minima.is_empty() && minima.iter().all(|f| f.contains(&e)) {
                return true;
            }
        }
    }
    false
}

/// Minimum multicut for pairs by direct enumeration.
pub fn naive_min_multicut(inst: &Instance, pairs: &[(VertexId, VertexId)]) -> Option<u64> {
    let ids: Vec<EdgeId> = inst.graph.edge_ids().collect();
    let m = ids.len();
    let mut best: Option<u64> = None;
    for mask in 0..(1u32 << m) {
        let size = mask.count_ones() as u64;
        if size > inst.budget {
            continue;
        }
        let cut: EdgeSet = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ids[i])
            .collect();
        let comps = naive_components(&inst.graph, &cut);
        if pairs
            .iter()
            .all(|&(s, t)| comp_of(&comps, s) != comp_of(&comps, t))
        {
            best = Some(best.map_or(size, |b: u64| b.min(size)));
        }
    }
    best
}

/// One occurrence of a path target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetOcc {
    /// The path's last edge must be this edge.
    Plain(EdgeId),
    /// The path's last edge must intersect this edge (it may be the edge).
    SinkCopy(EdgeId),
}

/// Brute-force maximum routable path system: the largest number of target
/// occurrences that can be served by pairwise edge-disjoint hyperedge paths
/// starting at source-incident edges.
pub fn naive_max_path_system(
    g: &Hypergraph,
    sources: &VertexSet,
    targets: &[TargetOcc],
) -> usize {
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
    ) -> bool {
        let target = match remaining.first() {
            None => return true,
            Some(&t) => t,
        };
        // depth-first over simple edge paths
        fn extend(
            ids: &[EdgeId],
            meets: &dyn Fn(EdgeId, EdgeId) -> bool,
            is_source: &dyn Fn(EdgeId) -> bool,
            accepts: &dyn Fn(EdgeId, TargetOcc) -> bool,
            remaining: &[TargetOcc],
            used: &mut EdgeSet,
            path: &mut Vec<EdgeId>,
            target: TargetOcc,
        ) -> bool {
            if let Some(&last) = path.last() {
                if accepts(last, target)
                    && route(ids, meets, is_source, accepts, &remaining[1..], used)
                {
                    return true;
                }
            }
            let candidates: Vec<EdgeId> = ids
                .iter()
                .copied()
                .filter(|&e| !used.contains(&e))
                .filter(|&e| match path.last() {
                    None => is_source(e),
                    Some(&last) => meets(last, e),
                })
                .collect();
            for e in candidates {
                used.insert(e);
                path.push(e);
                if extend(ids, meets, is_source, accepts, remaining, used, path, target) {
                    return true;
                }
                path.pop();
                used.remove(&e);
            }
            false
        }
        let mut path = Vec::new();
        extend(
            ids, meets, is_source, accepts, remaining, used, &mut path, target,
        )
    }

    // largest routable subset of target occurrences
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
            if route(&ids, &meets, &is_source, &accepts, &subset, &mut used) {
                return k;
            }
        }
    }
    0
}

/// Exhaustive hypergraph-side important cuts: every source side containing
/// `a`, avoiding `b`, within budget, with no equal-or-cheaper superset.
pub fn naive_hyper_important_cuts(
    inst: &Instance,
    a: &VertexSet,
    b: &VertexSet,
    c: u64,
) -> Vec<(VertexSet, EdgeSet)> {
    let order: Vec<VertexId> = inst.graph.vertices().iter().copied().collect();
    let n = order.len();
    let subset = |mask: u32| -> VertexSet {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| order[i])
            .collect()
    };
    let boundary_size = |x: &VertexSet| -> u64 {
        inst.graph
            .edges()
            .values()
            .filter(|vs| {
                let inside = vs.iter().filter(|v| x.contains(v)).count();
                inside > 0 && inside < vs.len()
            })
            .count() as u64
    };

    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let r = subset(mask);
        if !a.is_subset(&r) || r.intersection(b).next().is_some() {
            continue;
        }
        let size = boundary_size(&r);
        if size > c {
            continue;
        }
        let mut important = true;
        for bigger in 0..(1u32 << n) {
            if bigger & mask == mask && bigger != mask {
                let r2 = subset(bigger);
                if r2.intersection(b).next().is_none() && boundary_size(&r2) <= size {
                    important = false;
                    break;
                }
            }
        }
        if important {
            let cut: EdgeSet = inst
                .graph
                .edges()
                .iter()
                .filter(|(_, vs)| {
                    let inside = vs.iter().filter(|v| r.contains(v)).count();
                    inside > 0 && inside < vs.len()
                })
                .map(|(&id, _)| id)
                .collect();
            out.push((r, cut));
        }
    }
    out.sort();
    out
}

/// Useful partitions by definition: within budget and every minimum
/// multiway cut is a connected multiway cut.
pub fn naive_useful_partitions(inst: &Instance, phi: Ratio) -> Vec<TerminalPartition> {
    let mut out = Vec::new();
    for blocks in naive_partitions(&inst.terminals) {
        if let Some((_, minima)) = naive_min_cuts(inst, &blocks) {
            let all_connected = minima.iter().all(|f| {
                hypermim_core::cuts::is_connected_multiway_cut(inst, f, phi).unwrap()
            });
            if all_connected {
                out.push(TerminalPartition::new(blocks).unwrap());
            }
        }
    }
    out.sort();
    out
}

/// Independent unbreakable scan.
pub fn naive_unbreakable(inst: &Instance, d: u64) -> bool {
    let order: Vec<VertexId> = inst.graph.vertices().iter().copied().collect();
    let n = order.len();
    for mask in 0..(1u32 << n) {
        let x: VertexSet = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| order[i])
            .collect();
        let t_in = inst.terminals.intersection(&x).count() as u64;
        let t_out = inst.terminals.len() as u64 - t_in;
        let boundary = inst.graph.boundary(&x).unwrap().len() as u64;
        if t_in <= t_out && boundary <= inst.budget && t_in > d {
            return false;
        }
    }
    true
}

/// Independent density scan.
pub fn naive_dense(inst: &Instance, alpha: f64) -> bool {
    let order: Vec<VertexId> = inst.graph.vertices().iter().copied().collect();
    let n = order.len();
    for mask in 0..(1u32 << n) {
        let x: VertexSet = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| order[i])
            .collect();
        let inside = inst.graph.induced_edges(&x).unwrap().len() as u64;
        let comp: VertexSet = inst.graph.vertices().difference(&x).copied().collect();
        let outside = inst.graph.induced_edges(&comp).unwrap().len() as u64;
        let boundary = inst.graph.boundary(&x).unwrap().len() as u64;
        if inside > 0 && inside <= outside && boundary <= inst.budget {
            let cap = (2 * boundary) as f64 + inst.terminals.intersection(&x).count() as f64;
            if inside as f64 > cap.powf(alpha) {
                return false;
            }
        }
    }
    true
}
