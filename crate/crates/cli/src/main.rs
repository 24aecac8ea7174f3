//! `hypermim`: build and audit multicut-mimicking networks of hypergraph
//! instances.
//!
//! Exit codes: 0 success/verified, 1 verification failed, 2 input error.
//! `HYPERMIM_THREADS` caps the worker pool.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use hypermim_cli::format::{parse_instance, serialize_instance};
use hypermim_cli::gen::{generate_random, GenParams};
use hypermim_cli::report::{fnv1a_hex, Parameters, ResultDocument, VerificationDoc};
use hypermim_core::engine::{sparsify, EngineConfig};
use hypermim_core::expander::{expander_decompose, formula_phi_inv};
use hypermim_core::hypergraph::VertexSet;
use hypermim_core::matroid::{
    constants, essential_edge_cap, is_dense, is_unbreakable, unbreakable_decompose,
    HyperedgeGammoid, Matroid,
};
use hypermim_core::oracle::{
    essential_edges, is_essential, is_mimicking, min_multicut, min_multiway_cut, CutSearch,
    TerminalPartition,
};
use hypermim_core::{EdgeId, Instance, Ratio, VertexId};

#[derive(Parser)]
#[command(
    name = "hypermim",
    version,
    about = "Multicut-mimicking networks for hypergraph instances (G, T, c)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, clap::Args)]
struct CommonOpts {
    /// Budget override (defaults to the instance's C line)
    #[arg(long)]
    c: Option<u64>,
    /// Expansion parameter as `NUM/DEN` or an integer; default is the
    /// formula value 1 / (4 r c^(M r log2 c) log2^3 n)
    #[arg(long)]
    phi: Option<String>,
    /// Exponent constant M in the formula expansion parameter
    #[arg(long = "M", default_value_t = 1)]
    m_const: u32,
    /// Cap for exhaustive expander scans
    #[arg(long, default_value_t = 16)]
    guard_n: usize,
    /// Cap for terminal-partition enumeration
    #[arg(long, default_value_t = 12)]
    guard_k: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Contract non-essential hyperedges until every survivor is essential
    Sparsify {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Verify the output (preservation + per-edge essentiality)
        #[arg(long)]
        verify: bool,
        /// Write the result document here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include a wall-clock timestamp in the result document
        #[arg(long)]
        timestamp: bool,
    },
    /// Check a result document against its input instance
    Verify {
        file: PathBuf,
        result: PathBuf,
        /// Also require every remaining edge to be essential
        #[arg(long)]
        require_minimal: bool,
        #[arg(long, default_value_t = 12)]
        guard_k: usize,
    },
    /// Enumerate multiway cuts on a certified expander and group them by
    /// terminal partition
    EnumerateCuts {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Enumerate from every vertex instead of terminals only
        #[arg(long)]
        all_vertices: bool,
    },
    /// Enumerate important cuts between two vertex sets
    ImportantCuts {
        file: PathBuf,
        /// Source set, e.g. "1,2" (may be empty: "")
        #[arg(long, default_value = "")]
        a: String,
        /// Avoided set, e.g. "3"
        #[arg(long)]
        b: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Decompose the vertex set into certified expander parts
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Scales the informational cut-size bound
        #[arg(long, default_value = "1")]
        cut_budget_factor: String,
    },
    /// Exact brute-force queries
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Independence-oracle diagnostics and size-bound experiments
    CheckMatroid {
        file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
        /// Unbreakability parameter (default min(5c, |T|))
        #[arg(long)]
        d: Option<u64>,
        /// Density exponent (default 35 (r+2) log2(5c))
        #[arg(long)]
        alpha: Option<f64>,
        /// Axiom spot-check sample count
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Seed for the axiom spot checks
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generate a deterministic random instance
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Minimum multiway cut of a terminal partition, e.g. --partition "1|3"
    MinMultiway {
        file: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Minimum multicut of terminal pairs, e.g. --pairs "1-3,2-4"
    MinMulticut {
        file: PathBuf,
        #[arg(long)]
        pairs: String,
    },
    /// Whether an edge lies in every minimum cut of some budgeted partition
    Essential {
        file: PathBuf,
        #[arg(long)]
        edge: u32,
        #[arg(long, default_value_t = 12)]
        guard_k: usize,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HYPERMIM_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(file: &PathBuf, c_override: Option<u64>) -> anyhow::Result<(Instance, String)> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))?;
    let mut inst = parse_instance(&text).context("cannot parse instance")?;
    if let Some(c) = c_override {
        inst.budget = c;
    }
    Ok((inst, text))
}

fn parse_phi(s: &Option<String>) -> anyhow::Result<Option<Ratio>> {
    Ok(match s {
        Some(s) => Some(s.parse::<Ratio>().map_err(|e| anyhow!("{e}"))?),
        None => None,
    })
}

fn engine_config(common: &CommonOpts) -> anyhow::Result<EngineConfig> {
    Ok(EngineConfig {
        phi_override: parse_phi(&common.phi)?,
        m_const: common.m_const,
        guard_n: common.guard_n,
        guard_k: common.guard_k,
        ..EngineConfig::default()
    })
}

fn effective_phi(inst: &Instance, common: &CommonOpts) -> anyhow::Result<Ratio> {
    Ok(match parse_phi(&common.phi)? {
        Some(p) => p,
        None => Ratio::new(
            1,
            formula_phi_inv(
                inst.graph.vertex_count(),
                inst.graph.rank(),
                inst.budget,
                common.m_const,
            ),
        )
        .map_err(|e| anyhow!("{e}"))?,
    })
}

fn parse_vertices(s: &str, inst: &Instance) -> anyhow::Result<VertexSet> {
    let mut out = VertexSet::new();
    for tok in s.split([',', ' ']).filter(|t| !t.is_empty()) {
        let v: u32 = tok.parse().with_context(|| format!("bad vertex {tok:?}"))?;
        let v = VertexId(v);
        if !inst.graph.contains_vertex(v) {
            bail!("vertex {v} is not in the instance");
        }
        out.insert(v);
    }
    Ok(out)
}

fn parse_partition(s: &str, inst: &Instance) -> anyhow::Result<TerminalPartition> {
    let mut blocks = Vec::new();
    for block in s.split('|') {
        let set = parse_vertices(block, inst)?;
        if !set.is_empty() {
            blocks.push(set);
        }
    }
    let part = TerminalPartition::new(blocks).map_err(|e| anyhow!("{e}"))?;
    if part.covered() != inst.terminals {
        bail!(
            "partition must cover the terminal set exactly (terminals: {:?})",
            inst.terminals.iter().map(|t| t.0).collect::<Vec<_>>()
        );
    }
    Ok(part)
}

fn parse_pairs(s: &str, inst: &Instance) -> anyhow::Result<Vec<(VertexId, VertexId)>> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = tok
            .split_once('-')
            .ok_or_else(|| anyhow!("pair {tok:?} must look like 1-3"))?;
        let a = VertexId(a.trim().parse::<u32>().context("bad pair vertex")?);
        let b = VertexId(b.trim().parse::<u32>().context("bad pair vertex")?);
        for v in [a, b] {
            if !inst.terminals.contains(&v) {
                bail!("pair vertex {v} is not a terminal");
            }
        }
        out.push((a, b));
    }
    Ok(out)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Sparsify {
            file,
            common,
            verify,
            out,
            timestamp,
        } => {
            let (inst, text) = read_instance(&file, common.c)?;
            let cfg = engine_config(&common)?;
            let (network, map, report) = sparsify(&inst, &cfg)?;
            let terminals = map.resolve_set(&inst.terminals);

            let verification = if verify {
                let mimicking = is_mimicking(&inst, &network, &map, common.guard_k)?;
                let final_inst =
                    Instance::new(network.clone(), terminals.clone(), inst.budget)?;
                let essential = essential_edges(&final_inst, common.guard_k)?;
                let minimal = network.edge_ids().all(|e| essential.contains(&e));
                Some(VerificationDoc { mimicking, minimal })
            } else {
                None
            };

            let params = Parameters {
                c: inst.budget,
                phi: common.phi.clone(),
                m_const: common.m_const,
                seed: None,
                guard_n: common.guard_n,
                guard_k: common.guard_k,
            };
            let mut doc = ResultDocument::new(
                &text,
                params,
                &network,
                &terminals,
                &report,
                verification.clone(),
            );
            if timestamp {
                doc.stamp();
            }

            match common.format {
                OutputFormat::Structured => {
                    let json = serde_json::to_string_pretty(&doc)?;
                    match &out {
                        Some(path) => std::fs::write(path, json)?,
                        None => println!("{json}"),
                    }
                }
                OutputFormat::Text => {
                    println!(
                        "sparsify: {} -> {} edges in {} pass(es)",
                        inst.graph.edge_count(),
                        report.final_size,
                        report.passes
                    );
                    for (i, p) in doc.passes.iter().enumerate() {
                        println!(
                            "  pass {}: phi {} parts {} cut {} edges {} -> {}",
                            i + 1,
                            p.phi,
                            p.parts,
                            p.cut_size,
                            p.m_before,
                            p.m_after
                        );
                    }
                    println!(
                        "contractions: [{}]",
                        doc.contractions
                            .iter()
                            .map(|e| format!("e{e}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    if let Some(v) = &verification {
                        println!("verified: mimicking {} minimal {}", v.mimicking, v.minimal);
                    }
                    if let Some(path) = &out {
                        std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
                    }
                }
            }
            if let Some(v) = verification {
                if !v.mimicking || !v.minimal {
                    return Ok(ExitCode::from(1));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            file,
            result,
            require_minimal,
            guard_k,
        } => {
            let (inst, text) = read_instance(&file, None)?;
            let doc_text = std::fs::read_to_string(&result)
                .with_context(|| format!("cannot read {}", result.display()))?;
            let doc: ResultDocument =
                serde_json::from_str(&doc_text).context("cannot parse result document")?;

            let mut ok = true;
            if doc.input_hash != fnv1a_hex(&text) {
                println!("input-hash: FAIL (document belongs to a different input)");
                ok = false;
            } else {
                println!("input-hash: ok");
            }
            if doc.content_hash() != doc.doc_hash {
                println!("doc-hash: FAIL (document was altered)");
                ok = false;
            } else {
                println!("doc-hash: ok");
            }
            match doc.replay(&inst) {
                Err(e) => {
                    println!("replay: FAIL ({e})");
                    ok = false;
                }
                Ok((network, map)) => {
                    println!("replay: ok ({} edges)", network.edge_count());
                    let mimicking = is_mimicking(&inst, &network, &map, guard_k)?;
                    println!("mimicking: {}", if mimicking { "ok" } else { "FAIL" });
                    ok &= mimicking;
                    let final_inst = Instance::new(
                        network.clone(),
                        map.resolve_set(&inst.terminals),
                        inst.budget,
                    )?;
                    let essential = essential_edges(&final_inst, guard_k)?;
                    let minimal = network.edge_ids().all(|e| essential.contains(&e));
                    println!(
                        "minimal: {}",
                        if minimal { "ok" } else { "no (non-essential edges remain)" }
                    );
                    if require_minimal {
                        ok &= minimal;
                    }
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::EnumerateCuts {
            file,
            common,
            all_vertices,
        } => {
            let (inst, _) = read_instance(&file, common.c)?;
            let phi = effective_phi(&inst, &common)?;
            let mut cuts = hypermim_core::cuts::connected_multiway_cuts(
                &inst,
                phi,
                common.guard_n,
                all_vertices,
            )?;
            let groups = hypermim_core::cuts::partitions_from_cuts(&inst, &mut cuts)?;
            let useful = hypermim_core::important::prune_useful(&inst, &groups, phi)?;
            match common.format {
                OutputFormat::Structured => {
                    let json = serde_json::json!({
                        "phi": phi.to_string(),
                        "cuts": cuts.iter().map(|c| serde_json::json!({
                            "edges": c.edges.iter().map(|e| e.0).collect::<Vec<_>>(),
                            "core": c.core.vertex_set.iter().map(|v| v.0).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                        "partitions": groups.iter().map(|g| serde_json::json!({
                            "blocks": g.partition.blocks().iter().map(|b| b.iter().map(|v| v.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                            "value": g.value,
                            "cuts": g.cuts.iter().map(|f| f.iter().map(|e| e.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                        "useful": useful.iter().map(|g| serde_json::json!({
                            "blocks": g.partition.blocks().iter().map(|b| b.iter().map(|v| v.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                            "value": g.value,
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&json)?);
                }
                OutputFormat::Text => {
                    println!("phi = {phi}: {} cuts enumerated", cuts.len());
                    println!("{} candidate partitions, {} useful", groups.len(), useful.len());
                    for g in &useful {
                        let blocks: Vec<String> = g
                            .partition
                            .blocks()
                            .iter()
                            .map(|b| {
                                b.iter()
                                    .map(|v| v.0.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" ")
                            })
                            .collect();
                        println!(
                            "  useful {{{}}} value {} ({} min cuts)",
                            blocks.join(" | "),
                            g.value,
                            g.cuts.len()
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::ImportantCuts { file, a, b, common } => {
            let (inst, _) = read_instance(&file, common.c)?;
            let a_set = parse_vertices(&a, &inst)?;
            let b_set = parse_vertices(&b, &inst)?;
            let cuts = hypermim_core::important::important_cuts_hypergraph(
                &inst,
                &a_set,
                &b_set,
                inst.budget,
            )?;
            match common.format {
                OutputFormat::Structured => {
                    let json = serde_json::json!({
                        "count": cuts.len(),
                        "cuts": cuts.iter().map(|ic| serde_json::json!({
                            "side": ic.source_side.iter().map(|v| v.0).collect::<Vec<_>>(),
                            "edges": ic.cut.iter().map(|e| e.0).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&json)?);
                }
                OutputFormat::Text => {
                    println!("{} important cut(s) within budget {}", cuts.len(), inst.budget);
                    for ic in &cuts {
                        let side: Vec<String> =
                            ic.source_side.iter().map(|v| v.0.to_string()).collect();
                        let edges: Vec<String> =
                            ic.cut.iter().map(|e| format!("e{}", e.0)).collect();
                        println!("  side {{{}}} cut {{{}}}", side.join(" "), edges.join(" "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Decompose {
            file,
            common,
            cut_budget_factor,
        } => {
            let (inst, _) = read_instance(&file, common.c)?;
            let phi = effective_phi(&inst, &common)?;
            let factor: Ratio = cut_budget_factor.parse().map_err(|e| anyhow!("{e}"))?;
            let d = expander_decompose(&inst.graph, phi, factor, common.guard_n)?;
            match common.format {
                OutputFormat::Structured => {
                    let json = serde_json::json!({
                        "phi": phi.to_string(),
                        "parts": d.parts.iter().map(|p| p.iter().map(|v| v.0).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "cut_edges": d.cut_edges.iter().map(|e| e.0).collect::<Vec<_>>(),
                        "cut_bound": d.cut_bound,
                        "within_bound": d.within_bound,
                    });
                    println!("{}", serde_json::to_string_pretty(&json)?);
                }
                OutputFormat::Text => {
                    println!(
                        "phi = {phi}: {} part(s), {} crossing edge(s)",
                        d.parts.len(),
                        d.cut_edges.len()
                    );
                    for (i, p) in d.parts.iter().enumerate() {
                        let vs: Vec<String> = p.iter().map(|v| v.0.to_string()).collect();
                        println!("  part {}: {{{}}}", i + 1, vs.join(" "));
                    }
                    println!(
                        "cut bound {:.2} ({})",
                        d.cut_bound,
                        if d.within_bound { "met" } else { "informational: exceeded" }
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Oracle { op } => match op {
            OracleOp::MinMultiway { file, partition } => {
                let (inst, _) = read_instance(&file, None)?;
                let part = parse_partition(&partition, &inst)?;
                match min_multiway_cut(&inst, &part)? {
                    CutSearch::Cut(c) => {
                        let edges: Vec<String> =
                            c.edges.iter().map(|e| format!("e{}", e.0)).collect();
                        println!("value {} cut {{{}}}", c.value, edges.join(" "));
                    }
                    CutSearch::ExceedsBudget => {
                        println!("exceeds budget {}", inst.budget)
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            OracleOp::MinMulticut { file, pairs } => {
                let (inst, _) = read_instance(&file, None)?;
                let pairs = parse_pairs(&pairs, &inst)?;
                match min_multicut(&inst, &pairs)? {
                    CutSearch::Cut(c) => {
                        let edges: Vec<String> =
                            c.edges.iter().map(|e| format!("e{}", e.0)).collect();
                        println!("value {} cut {{{}}}", c.value, edges.join(" "));
                    }
                    CutSearch::ExceedsBudget => {
                        println!("exceeds budget {}", inst.budget)
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            OracleOp::Essential {
                file,
                edge,
                guard_k,
            } => {
                let (inst, _) = read_instance(&file, None)?;
                let essential = is_essential(&inst, EdgeId(edge), guard_k)?;
                println!("edge e{edge}: {}", if essential { "essential" } else { "non-essential" });
                Ok(ExitCode::SUCCESS)
            }
        },

        Command::CheckMatroid {
            file,
            common,
            d,
            alpha,
            samples,
            seed,
        } => {
            let (inst, _) = read_instance(&file, common.c)?;
            let k = inst.terminals.len() as u64;
            let rank = inst.graph.rank();
            let d = d.unwrap_or((5 * inst.budget).min(k));
            let alpha = alpha.unwrap_or_else(|| constants::alpha_of(inst.budget, rank));

            // axiom spot checks on the hyperedge gammoid
            let gammoid = HyperedgeGammoid::new(&inst.graph, &inst.terminals, 0)?;
            let universe: Vec<_> = gammoid.universe().iter().copied().collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut axioms_ok = true;
            for _ in 0..samples {
                let mut set: BTreeSet<_> = BTreeSet::new();
                for &x in &universe {
                    if rng.gen_bool(0.4) {
                        set.insert(x);
                    }
                }
                if gammoid.is_independent(&set) {
                    // hereditary on a random element drop
                    if let Some(&x) = set.iter().next() {
                        let mut sub = set.clone();
                        sub.remove(&x);
                        if !gammoid.is_independent(&sub) {
                            axioms_ok = false;
                        }
                    }
                }
            }
            println!(
                "gammoid axioms ({} samples): {}",
                samples,
                if axioms_ok { "ok" } else { "FAIL" }
            );

            let unb = is_unbreakable(&inst, d, common.guard_n)?;
            println!(
                "{d}-unbreakable: {}",
                match &unb {
                    v if v.holds() => "yes".to_string(),
                    v => format!(
                        "no (witness {:?})",
                        v.witness().unwrap().iter().map(|v| v.0).collect::<Vec<_>>()
                    ),
                }
            );
            let dense = is_dense(&inst, alpha, common.guard_n)?;
            println!(
                "{alpha:.2}-dense: {}",
                match &dense {
                    v if v.holds() => "yes".to_string(),
                    v => format!(
                        "no (witness {:?})",
                        v.witness().unwrap().iter().map(|v| v.0).collect::<Vec<_>>()
                    ),
                }
            );

            let parts = unbreakable_decompose(&inst, common.guard_n)?;
            let total: usize = parts.iter().map(|p| p.instance.terminals.len()).sum();
            println!(
                "unbreakable decomposition: {} part(s), terminal growth {total} <= {}",
                parts.len(),
                5 * inst.terminals.len()
            );

            let profile =
                hypermim_core::matroid::density_profile(&inst, d, alpha, common.guard_n)?;
            let unb_bad = profile.records.iter().filter(|r| !r.unbreakable_ok).count();
            let dense_bad = profile.records.iter().filter(|r| !r.dense_ok).count();
            println!(
                "density profile: {} splits, {} unbreakability violations, {} density violations",
                profile.records.len(),
                unb_bad,
                dense_bad
            );

            match essential_edge_cap(&inst, common.guard_k, common.guard_n)? {
                Some(report) => println!(
                    "essential-edge cap: {} essential, cap {:.3e} ({})",
                    report.essential_count,
                    report.cap,
                    if report.within { "ok" } else { "EXCEEDED" }
                ),
                None => println!("essential-edge cap: gates not met (needs 1 <= c <= |T|, unbreakable, dense)"),
            }
            Ok(if axioms_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Gen {
            seed,
            n,
            m,
            r,
            k,
            c,
            out,
        } => {
            let inst = generate_random(GenParams {
                seed,
                n,
                m,
                r,
                k,
                c,
            })?;
            let text = serialize_instance(&inst);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
