//! Checking the regularity theorems on concrete graphs.
//!
//! [`analyze`] computes every invariant of a graph once and evaluates each
//! statement as a [`Verdict`]. Since the statements are theorems, a failing
//! verdict means a bug in one of the computations, and its details carry
//! the values that disagree.

use std::collections::BTreeMap;
use std::sync::Arc;

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{
    max_join_with_caps, min_even_ear_decomposition, nested_decompositions_by_epsilon, EarDecomposition,
    JoinCertificate, DEFAULT_JOIN_EDGE_CAP,
};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, DEFAULT_CYCLE_CAP};
use crate::groebner::{ideal_of_graph_with_cap, parse_t_order, GroebnerBasis, DEFAULT_PAIR_CAP};
use crate::invariants::{
    degree_formula, degree_from_hf, hilbert_until_stable, initial_ideal, regularity_artinian, MonomialIdeal,
};

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Characteristic of the coefficient field.
    pub p: u32,
    /// Further characteristics compared against `p`.
    pub primes: Vec<u32>,
    /// Order of the edge variables, e.g. `"12>23>13"`.
    pub t_order: Option<String>,
    pub cap_pairs: usize,
    pub cap_cycles: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { p: 3, primes: vec![5, 7], t_order: None, cap_pairs: DEFAULT_PAIR_CAP, cap_cycles: DEFAULT_CYCLE_CAP }
    }
}

impl RunConfig {
    /// `p` followed by the other primes, without repeats.
    pub fn all_primes(&self) -> Vec<u32> {
        let mut out = vec![self.p];
        for &q in &self.primes {
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    pub fn edge_order(&self, g: &Graph) -> Result<Option<Vec<Edge>>> {
        self.t_order.as_deref().map(|text| parse_t_order(text, g)).transpose()
    }

    pub fn ideal(&self, g: &Graph, p: u32) -> Result<Arc<GroebnerBasis>> {
        ideal_of_graph_with_cap(g, p, self.edge_order(g)?.as_deref(), self.cap_pairs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Verdict {
    pub theorem: &'static str,
    pub status: Status,
    pub details: Value,
}

impl Verdict {
    fn new(theorem: &'static str, ok: bool, details: Value) -> Verdict {
        Verdict { theorem, status: Status::of(ok), details }
    }

    fn skipped(theorem: &'static str, reason: &str) -> Verdict {
        Verdict { theorem, status: Status::Skipped, details: json!({ "reason": reason }) }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GraphSummary {
    pub v: usize,
    pub e: usize,
    pub b0: usize,
    pub bipartite: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportVerdicts {
    pub lower_bound: Status,
    pub upper_bound: Status,
    pub bipartite_equality: Status,
    pub degree_formula: Status,
    pub field_independence: Status,
    pub frank_identity: Status,
}

/// Summary of one graph; `hf` lists `HF(0), ..., HF(reg)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantReport {
    pub graph: GraphSummary,
    pub p: u32,
    pub degree: u64,
    pub hf: Vec<u64>,
    pub reg: u32,
    pub reg_artinian: u32,
    pub mu: usize,
    pub phi: Option<usize>,
    pub epsilon: Option<usize>,
    pub verdicts: ReportVerdicts,
}

/// Everything computed about one graph.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub graph: Graph,
    pub p: u32,
    pub gb: Arc<GroebnerBasis>,
    pub hf: Vec<u64>,
    pub degree: u64,
    pub reg: u32,
    /// Artinian regularity for each edge, in edge order.
    pub reg_artinian: Vec<(Edge, u32)>,
    pub mu: usize,
    pub join: JoinCertificate,
    /// `phi(G)` and a witness, for 2-connected graphs.
    pub phi: Option<(usize, EarDecomposition)>,
    /// Nested decompositions by even-ear count, for 2-connected graphs.
    pub nested: BTreeMap<usize, EarDecomposition>,
    pub verdicts: Vec<Verdict>,
}

impl Analysis {
    pub fn verdict(&self, theorem: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.theorem == theorem)
    }

    fn status(&self, theorem: &str) -> Status {
        self.verdict(theorem).map_or(Status::Skipped, |v| v.status)
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail).collect()
    }

    pub fn report(&self) -> InvariantReport {
        let g = &self.graph;
        InvariantReport {
            graph: GraphSummary {
                v: g.num_vertices(),
                e: g.num_edges(),
                b0: g.num_components(),
                bipartite: g.is_bipartite(),
            },
            p: self.p,
            degree: self.degree,
            hf: self.hf.clone(),
            reg: self.reg,
            reg_artinian: self.reg_artinian[0].1,
            mu: self.mu,
            phi: self.phi.as_ref().map(|(phi, _)| *phi),
            epsilon: self.nested.keys().next().copied(),
            verdicts: ReportVerdicts {
                lower_bound: self.status("lowerBound"),
                upper_bound: self.status("upperBound"),
                bipartite_equality: self.status("bipartiteEquality"),
                degree_formula: self.status("degreeFormula"),
                field_independence: self.status("fieldIndependence"),
                frank_identity: self.status("frankIdentity"),
            },
        }
    }
}

/// `reg I(X_G)` over `GF(p)`.
pub fn regularity_of(g: &Graph, p: u32, cfg: &RunConfig) -> Result<u32> {
    let gb = ideal_of_graph_with_cap(g, p, None, cfg.cap_pairs)?;
    Ok(hilbert_until_stable(&gb, g)?.len() as u32)
}

fn format_ideal(gb: &GroebnerBasis, mi: &MonomialIdeal) -> Vec<String> {
    mi.generators().iter().map(|m| m.format_with(gb.ring().names())).collect()
}

/// Computes all invariants of `g` and evaluates every statement.
pub fn analyze(g: &Graph, cfg: &RunConfig) -> Result<Analysis> {
    info!("analyzing {g}");
    let gb = cfg.ideal(g, cfg.p)?;
    let mut hf = hilbert_until_stable(&gb, g)?;
    let reg = hf.len() as u32;
    hf.push(*hf.last().unwrap());
    let degree = degree_formula(g);
    let reg_artinian =
        g.edges().iter().map(|&e| Ok((e, regularity_artinian(&gb, e)?))).collect::<Result<Vec<_>>>()?;
    let (mu, join) = max_join_with_caps(g, DEFAULT_JOIN_EDGE_CAP, cfg.cap_cycles)?;
    let two_connected = g.is_two_connected();
    let phi = if two_connected { Some(min_even_ear_decomposition(g)?) } else { None };
    let nested = if two_connected { nested_decompositions_by_epsilon(g)? } else { BTreeMap::new() };
    debug!("{g}: reg {reg}, mu {mu}, phi {:?}, nested eps {:?}", phi.as_ref().map(|p| p.0), nested.keys());

    let v = g.num_vertices();
    let b0 = g.num_components();
    let bipartite = g.is_bipartite();
    let mut verdicts = Vec::new();

    verdicts.push(Verdict::new("lowerBound", mu as u32 <= reg, json!({ "mu": mu, "reg": reg })));
    let bound = (v - b0 + usize::from(!bipartite)) as u32;
    verdicts.push(Verdict::new("upperBound", reg <= bound, json!({ "reg": reg, "bound": bound })));
    verdicts.push(if bipartite {
        Verdict::new("bipartiteEquality", reg == mu as u32, json!({ "reg": reg, "mu": mu, "join": join.edges }))
    } else {
        Verdict::skipped("bipartiteEquality", "graph is not bipartite")
    });

    let settled = degree_from_hf(&initial_ideal(&gb), g)?;
    verdicts.push(Verdict::new(
        "degreeFormula",
        settled == degree && hf.last() == Some(&degree),
        json!({ "formula": degree, "hilbert": settled }),
    ));

    verdicts.push(field_independence(g, cfg, &gb, reg)?);

    verdicts.push(match &phi {
        Some((phi, _)) => Verdict::new(
            "frankIdentity",
            2 * mu == phi + v - 1,
            json!({ "mu": mu, "phi": phi, "vertices": v }),
        ),
        None => Verdict::skipped("frankIdentity", "graph is not 2-connected"),
    });

    verdicts.push(if bipartite {
        let blocks = g.biconnected_blocks().blocks;
        let regs = blocks
            .iter()
            .map(|b| regularity_of(&g.subgraph(b)?, cfg.p, cfg))
            .collect::<Result<Vec<u32>>>()?;
        let sum: u32 = regs.iter().sum();
        Verdict::new("blockAdditivity", sum == reg, json!({ "blocks": regs, "sum": sum, "reg": reg }))
    } else {
        Verdict::skipped("blockAdditivity", "graph is not bipartite")
    });

    let artinian: BTreeMap<String, u32> = reg_artinian.iter().map(|(e, k)| (e.to_string(), *k)).collect();
    verdicts.push(Verdict::new(
        "artinianRegularity",
        reg_artinian.iter().all(|&(_, k)| k == reg),
        json!({ "reg": reg, "byEdge": artinian }),
    ));

    verdicts.push(match (&phi, bipartite, nested.is_empty()) {
        (Some((phi, _)), true, false) => {
            let ok = nested.keys().all(|&eps| 2 * reg as usize == v + eps - 1 && eps == *phi);
            let eps: Vec<usize> = nested.keys().copied().collect();
            Verdict::new("nestedEarFormula", ok, json!({ "reg": reg, "epsilons": eps, "phi": phi }))
        }
        (None, _, _) => Verdict::skipped("nestedEarFormula", "graph is not 2-connected"),
        (_, false, _) => Verdict::skipped("nestedEarFormula", "graph is not bipartite"),
        _ => Verdict::skipped("nestedEarFormula", "no nested ear decomposition"),
    });

    for v in &verdicts {
        if v.status == Status::Fail {
            log::warn!("{g}: {} failed: {}", v.theorem, v.details);
        }
    }
    Ok(Analysis {
        graph: g.clone(),
        p: cfg.p,
        gb,
        hf,
        degree,
        reg,
        reg_artinian,
        mu,
        join,
        phi,
        nested,
        verdicts,
    })
}

/// Same initial ideal, reduced basis and regularity over every prime.
fn field_independence(g: &Graph, cfg: &RunConfig, gb: &GroebnerBasis, reg: u32) -> Result<Verdict> {
    let reference = (format_ideal(gb, &initial_ideal(gb)), gb.format_elements(), reg);
    let mut mismatches = Vec::new();
    for q in cfg.all_primes().into_iter().skip(1) {
        let other = cfg.ideal(g, q)?;
        let reg_q = hilbert_until_stable(&other, g)?.len() as u32;
        let got = (format_ideal(&other, &initial_ideal(&other)), other.format_elements(), reg_q);
        if got != reference {
            mismatches.push(json!({ "p": q, "initialIdeal": got.0, "basis": got.1, "reg": got.2 }));
        }
    }
    Ok(Verdict::new(
        "fieldIndependence",
        mismatches.is_empty(),
        json!({ "primes": cfg.all_primes(), "initialIdeal": reference.0, "mismatches": mismatches }),
    ))
}

/// Outcome for one corpus graph.
#[derive(Clone, Debug, Serialize)]
pub struct CorpusResult {
    pub id: String,
    pub graph: Vec<Edge>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<InvariantReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusReport {
    pub graphs: usize,
    pub passed: usize,
    pub failed: usize,
    pub resource_limited: usize,
    pub results: Vec<CorpusResult>,
}

/// Analyzes every entry (in parallel) and aggregates the outcomes in
/// entry order.
pub fn run_corpus(entries: &[CorpusEntry], cfg: &RunConfig) -> CorpusReport {
    let results: Vec<CorpusResult> = entries
        .par_iter()
        .map(|entry| {
            let graph = entry.graph.edges().to_vec();
            let id = entry.id.clone();
            match analyze(&entry.graph, cfg) {
                Ok(a) => CorpusResult {
                    id,
                    graph,
                    status: if a.passed() { "pass" } else { "fail" },
                    report: Some(a.report()),
                    failures: a.failures().into_iter().cloned().collect(),
                    error: None,
                },
                Err(e @ Error::ResourceLimit { .. }) => CorpusResult {
                    id,
                    graph,
                    status: "resource-limit",
                    report: None,
                    failures: Vec::new(),
                    error: Some(e.to_string()),
                },
                Err(e) => CorpusResult { id, graph, status: "fail", report: None, failures: Vec::new(), error: Some(e.to_string()) },
            }
        })
        .collect();
    let count = |s: &str| results.iter().filter(|r| r.status == s).count();
    CorpusReport {
        graphs: results.len(),
        passed: count("pass"),
        failed: count("fail"),
        resource_limited: count("resource-limit"),
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Graph {
        Graph::parse(text).unwrap()
    }

    #[test]
    fn triangle_verdicts() {
        let a = analyze(&g("1 2\n2 3\n1 3"), &RunConfig::default()).unwrap();
        assert!(a.passed());
        let r = a.report();
        assert_eq!((r.reg, r.degree, r.mu, r.phi), (3, 4, 1, Some(0)));
        assert_eq!(r.hf, vec![1, 3, 4, 4]);
        assert_eq!(r.verdicts.bipartite_equality, Status::Skipped);
        assert_eq!(r.verdicts.upper_bound, Status::Pass);
    }

    #[test]
    fn forest_verdicts() {
        let forest = g("1 2\n2 3\n3 4\n5 6\n6 7\n6 8");
        let a = analyze(&forest, &RunConfig::default()).unwrap();
        assert!(a.passed(), "{:?}", a.failures());
        assert_eq!(a.reg as usize, forest.num_vertices() - forest.num_components());
        assert_eq!(a.mu, 6);
        assert_eq!(a.verdict("blockAdditivity").unwrap().status, Status::Pass);
    }

    #[test]
    fn report_key_order() {
        let a = analyze(&g("1 2"), &RunConfig::default()).unwrap();
        let text = serde_json::to_string(&a.report()).unwrap();
        assert_eq!(
            text,
            r#"{"graph":{"v":2,"e":1,"b0":1,"bipartite":true},"p":3,"degree":1,"hf":[1,1],"reg":1,"regArtinian":1,"mu":1,"phi":null,"epsilon":null,"verdicts":{"lowerBound":"pass","upperBound":"pass","bipartiteEquality":"pass","degreeFormula":"pass","fieldIndependence":"pass","frankIdentity":"skipped"}}"#
        );
    }

    #[test]
    fn custom_t_order() {
        let cfg = RunConfig { t_order: Some("13>12>23".into()), ..RunConfig::default() };
        let a = analyze(&g("1 2\n2 3\n1 3"), &cfg).unwrap();
        assert!(a.passed());
        let bad = RunConfig { t_order: Some("12>23".into()), ..RunConfig::default() };
        assert!(analyze(&g("1 2\n2 3\n1 3"), &bad).is_err());
    }
}
