//! Deterministic random instance generation.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hypermim_core::hypergraph::VertexSet;
use hypermim_core::{EdgeId, Error, Hypergraph, Instance, VertexId};

/// Generation parameters; all sampling is a pure function of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub n: u32,
    pub m: u32,
    pub r: usize,
    pub k: usize,
    pub c: u64,
}

const CONNECT_RETRIES: usize = 500;

/// Samples a connected instance: edge sizes in `[2, r]`, terminals drawn
/// without replacement, connectivity enforced by regeneration.
pub fn generate_random(p: GenParams) -> Result<Instance, Error> {
    if p.n < 2 {
        return Err(Error::BadParameter("need at least 2 vertices".into()));
    }
    if p.r < 2 {
        return Err(Error::BadParameter("rank bound must be at least 2".into()));
    }
    if p.m == 0 {
        return Err(Error::BadParameter("need at least one edge".into()));
    }
    if p.k == 0 || p.k > p.n as usize {
        return Err(Error::BadParameter(format!(
            "terminal count must be in 1..={}",
            p.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..CONNECT_RETRIES {
        let mut g = Hypergraph::new();
        for v in 1..=p.n {
            g.insert_vertex(VertexId(v));
        }
        let mut pool: Vec<u32> = (1..=p.n).collect();
        for id in 1..=p.m {
            let size = rng.gen_range(2..=p.r.min(p.n as usize));
            pool.shuffle(&mut rng);
            g.insert_edge(EdgeId(id), pool[..size].iter().map(|&v| VertexId(v)))
                .expect("sampled edge is valid");
        }
        if !g.is_connected() {
            continue;
        }
        pool.shuffle(&mut rng);
        let terminals: VertexSet = pool[..p.k].iter().map(|&v| VertexId(v)).collect();
        return Instance::new(g, terminals, p.c);
    }
    Err(Error::BadParameter(format!(
        "no connected instance found for n={} m={} r={} after {CONNECT_RETRIES} tries",
        p.n, p.m, p.r
    )))
}
