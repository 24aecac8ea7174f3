//! Machine-readable result documents.
//!
//! The document records everything needed to audit a run: the input hash,
//! the effective parameters, the contraction sequence (replaying it on the
//! input reproduces the final hypergraph), per-pass statistics, and the
//! verification verdicts. `doc_hash` covers the whole document except the
//! timestamp, so identical runs produce identical hashes.

use serde::{Deserialize, Serialize};

use hypermim_core::engine::{PassStats, SparsifyReport};
use hypermim_core::{Hypergraph, Instance};

pub fn fnv1a_hex(data: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in data.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Parameters {
    pub c: u64,
    /// Expansion override as `num/den`; absent means the formula value.
    pub phi: Option<String>,
    pub m_const: u32,
    pub seed: Option<u64>,
    pub guard_n: usize,
    pub guard_k: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeDoc {
    pub id: u32,
    pub vertices: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphDoc {
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeDoc>,
    pub terminals: Vec<u32>,
}

impl GraphDoc {
    pub fn from_instance(graph: &Hypergraph, terminals: &hypermim_core::hypergraph::VertexSet) -> Self {
        GraphDoc {
            vertices: graph.vertices().iter().map(|v| v.0).collect(),
            edges: graph
                .edges()
                .iter()
                .map(|(id, vs)| EdgeDoc {
                    id: id.0,
                    vertices: vs.iter().map(|v| v.0).collect(),
                })
                .collect(),
            terminals: terminals.iter().map(|t| t.0).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PassDoc {
    pub phi: String,
    pub parts: usize,
    pub cut_size: usize,
    pub m_before: usize,
    pub m_after: usize,
    pub contracted: usize,
}

impl From<&PassStats> for PassDoc {
    fn from(s: &PassStats) -> Self {
        PassDoc {
            phi: s.phi.to_string(),
            parts: s.parts,
            cut_size: s.cut_size,
            m_before: s.m_before,
            m_after: s.m_after,
            contracted: s.contracted,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationDoc {
    pub mimicking: bool,
    pub minimal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultDocument {
    pub input_hash: String,
    pub parameters: Parameters,
    pub contractions: Vec<u32>,
    pub final_size: usize,
    pub final_network: GraphDoc,
    pub passes: Vec<PassDoc>,
    pub verification: Option<VerificationDoc>,
    pub doc_hash: String,
    pub generated_unix: Option<u64>,
}

impl ResultDocument {
    pub fn new(
        input_text: &str,
        parameters: Parameters,
        result: &Hypergraph,
        result_terminals: &hypermim_core::hypergraph::VertexSet,
        report: &SparsifyReport,
        verification: Option<VerificationDoc>,
    ) -> Self {
        let mut doc = ResultDocument {
            input_hash: fnv1a_hex(input_text),
            parameters,
            contractions: report.contractions.iter().map(|e| e.0).collect(),
            final_size: report.final_size,
            final_network: GraphDoc::from_instance(result, result_terminals),
            passes: report.pass_stats.iter().map(PassDoc::from).collect(),
            verification,
            doc_hash: String::new(),
            generated_unix: None,
        };
        doc.doc_hash = doc.content_hash();
        doc
    }

    /// Hash of the canonical JSON with the timestamp and hash cleared.
    pub fn content_hash(&self) -> String {
        let mut clone = self.clone();
        clone.doc_hash = String::new();
        clone.generated_unix = None;
        fnv1a_hex(&serde_json::to_string(&clone).expect("document serializes"))
    }

    pub fn stamp(&mut self) {
        self.generated_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }

    /// Replays the recorded contractions on `input`, checking the final
    /// network matches, and returns the replayed pair.
    pub fn replay(
        &self,
        input: &Instance,
    ) -> Result<(Hypergraph, hypermim_core::ContractionMap), hypermim_core::Error> {
        let order: Vec<hypermim_core::EdgeId> = self
            .contractions
            .iter()
            .map(|&e| hypermim_core::EdgeId(e))
            .collect();
        let (graph, map) = hypermim_core::hypergraph::replay_contractions(&input.graph, &order)?;
        let doc = GraphDoc::from_instance(&graph, &map.resolve_set(&input.terminals));
        if doc != self.final_network {
            return Err(hypermim_core::Error::InconsistentMap);
        }
        Ok((graph, map))
    }
}
