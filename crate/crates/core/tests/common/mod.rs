#![allow(dead_code)]

use std::path::PathBuf;

use graph_ideal::algebra::Monomial;
use graph_ideal::corpus::CorpusEntry;
use graph_ideal::{Graph, Vertex};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden(name: &str) -> Graph {
    let text = std::fs::read_to_string(golden_dir().join(format!("{name}.graph"))).unwrap();
    Graph::parse(&text).unwrap()
}

pub const GOLDEN: [&str; 9] = ["single_edge", "c4", "c6", "k3", "k23", "bridged_triangles", "bipartite_hamiltonian", "forest6", "theta"];

pub fn golden_corpus() -> Vec<CorpusEntry> {
    GOLDEN.iter().map(|&n| CorpusEntry { id: n.to_string(), graph: golden(n) }).collect()
}

pub fn graph(text: &str) -> Graph {
    Graph::parse(text).unwrap()
}

/// Every monomial of degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(exps: &mut Vec<u16>, i: usize, left: u16, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(exps, i + 1, left - e, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    rec(&mut vec![0; n], 0, d as u16, &mut out);
    out
}

/// Largest edge subset meeting every cycle in at most half its edges,
/// by trying all subsets.
pub fn mu_by_exhaustion(g: &Graph) -> usize {
    let cycles: Vec<u64> = g.simple_cycles(1 << 20).unwrap().iter().map(|c| c.mask()).collect();
    let lens: Vec<u32> = cycles.iter().map(|m| m.count_ones()).collect();
    (0u64..1 << g.num_edges())
        .filter(|s| cycles.iter().zip(&lens).all(|(c, &l)| 2 * (s & c).count_ones() <= l))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Edges of paths sharing the end-vertices `1` and `2`, one path per
/// length, with fresh inner vertices.
pub fn theta(lengths: &[usize]) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    let mut next = 3;
    for &len in lengths {
        let mut prev = 1;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 2));
    }
    edges
}

/// A path of `len` edges from `a` to `b` through fresh vertices numbered
/// from `*next`.
pub fn path_between(a: Vertex, b: Vertex, len: usize, next: &mut Vertex) -> Vec<Vertex> {
    let mut vs = vec![a];
    for _ in 1..len {
        vs.push(*next);
        *next += 1;
    }
    vs.push(b);
    vs
}

fn push_path(edges: &mut Vec<(Vertex, Vertex)>, vs: &[Vertex]) {
    for w in vs.windows(2) {
        edges.push((w[0], w[1]));
    }
}

/// Bipartite 2-connected graphs with at most `max_edges` edges, most of
/// them series-parallel: theta graphs with two to five paths of equal
/// parity, and a cycle with two further ears, the second attached anywhere
/// (on the cycle, on the first ear, or across both).
pub fn nested_gadgets(max_edges: usize) -> Vec<Graph> {
    let mut out: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    // theta graphs, lengths non-decreasing, at most one path of length 1
    fn thetas(prefix: &mut Vec<usize>, k: usize, max_edges: usize, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
        let used: usize = prefix.iter().sum();
        if prefix.len() == k {
            out.push(theta(prefix));
            return;
        }
        let start = prefix.last().copied().unwrap_or(1);
        for len in start..=max_edges.saturating_sub(used) {
            if len == 1 && prefix.contains(&1) {
                continue;
            }
            if prefix.first().is_some_and(|&f| f % 2 != len % 2) {
                continue;
            }
            prefix.push(len);
            thetas(prefix, k, max_edges, out);
            prefix.pop();
        }
    }
    for k in 2..=5 {
        thetas(&mut Vec::new(), k, max_edges, &mut out);
    }
    // cycle 1..L, an ear P2 from 1 to cycle vertex 1 + d, then an ear P3
    // between any two vertices present so far
    for cycle_len in (4..=max_edges).step_by(2) {
        for d in 1..=cycle_len / 2 {
            for len2 in (1..=max_edges - cycle_len).filter(|l| *l > 1 || d > 1) {
                let mut next = cycle_len as Vertex + 1;
                let mut base: Vec<(Vertex, Vertex)> =
                    (1..=cycle_len as Vertex).map(|i| (i, i % cycle_len as Vertex + 1)).collect();
                let p2 = path_between(1, 1 + d as Vertex, len2, &mut next);
                push_path(&mut base, &p2);
                let room = max_edges - cycle_len - len2;
                for a in 1..next {
                    for b in a + 1..next {
                        for len3 in 1..=room {
                            let mut edges = base.clone();
                            let mut fresh = next;
                            push_path(&mut edges, &path_between(a, b, len3, &mut fresh));
                            out.push(edges);
                        }
                    }
                }
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    out.into_iter()
        .filter(|e| e.len() <= max_edges)
        .filter(|e| {
            let mut key = e.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect::<Vec<_>>();
            key.sort_unstable();
            seen.insert(key)
        })
        .filter_map(|e| Graph::from_edges(e).ok())
        .filter(|g| g.is_bipartite() && g.is_two_connected())
        .collect()
}
