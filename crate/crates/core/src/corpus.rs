//! Graph corpora for batch verification: seeded random graphs and an
//! exhaustive list of small connected bipartite graphs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// A graph with a stable identifier used to order batch output.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
}

/// Largest vertex set the random generator draws from.
pub const RANDOM_MAX_VERTICES: usize = 8;

/// `count` random graphs with between 1 and `max_edges` edges, alternating
/// bipartite and non-bipartite (even ids bipartite).
///
/// Each draw picks a vertex count and an edge probability, includes every
/// pair independently, deletes isolated vertices and relabels the rest
/// `1..=n`. Draws that break the edge bound or the bipartite quota are
/// rejected. The stream depends only on `seed`.
pub fn random_corpus(count: usize, max_edges: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_vertices = RANDOM_MAX_VERTICES.min(max_edges + 1).max(2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let want_bipartite = out.len() % 2 == 0;
        if !want_bipartite && max_edges < 3 {
            // no odd cycle fits
            break;
        }
        let n = rng.gen_range(2..=max_vertices) as Vertex;
        let density: f64 = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if rng.gen_bool(density) {
                    edges.push((a, b));
                }
            }
        }
        if edges.is_empty() || edges.len() > max_edges {
            continue;
        }
        let graph = relabel(&edges);
        if graph.is_bipartite() == want_bipartite {
            out.push(CorpusEntry { id: format!("random-{:03}", out.len()), graph });
        }
    }
    out
}

/// Builds the graph on the endpoints of `edges`, renumbered `1..=n` in
/// increasing order, which drops isolated vertices.
fn relabel(edges: &[(Vertex, Vertex)]) -> Graph {
    let used: Vec<Vertex> = edges.iter().flat_map(|&(a, b)| [a, b]).collect::<BTreeSet<_>>().into_iter().collect();
    let pos = |v: Vertex| used.binary_search(&v).unwrap() as Vertex + 1;
    Graph::from_edges(edges.iter().map(|&(a, b)| (pos(a), pos(b)))).expect("relabelled edges form a valid graph")
}

/// Every connected bipartite graph with at most `max_edges` edges, one per
/// isomorphism class, on vertices `1..=n`, ordered by edge count and then
/// canonical edge list.
///
/// Classes are grown one edge at a time, either between existing vertices
/// or to a new vertex; every connected graph arises this way from a
/// connected graph with one edge fewer (delete a non-bridge edge or a leaf
/// edge), and bipartiteness is inherited by subgraphs.
pub fn connected_bipartite_graphs(max_edges: usize) -> Vec<CorpusEntry> {
    let mut level: BTreeSet<Vec<(Vertex, Vertex)>> = BTreeSet::from([vec![(1, 2)]]);
    let mut all: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    for _ in 1..=max_edges {
        all.extend(level.iter().cloned());
        let mut next = BTreeSet::new();
        for edges in &level {
            let n = edges.iter().map(|&(_, b)| b).max().unwrap();
            let mut extensions: Vec<(Vertex, Vertex)> = (1..=n).map(|a| (a, n + 1)).collect();
            for a in 1..=n {
                for b in a + 1..=n {
                    if !edges.contains(&(a, b)) {
                        extensions.push((a, b));
                    }
                }
            }
            for e in extensions {
                let mut bigger = edges.clone();
                bigger.push(e);
                let g = Graph::from_edges(bigger.iter().copied()).unwrap();
                if g.is_bipartite() {
                    next.insert(canonical_form(&bigger));
                }
            }
        }
        level = next;
    }
    all.into_iter()
        .enumerate()
        .map(|(i, edges)| CorpusEntry {
            id: format!("bipartite-{i:03}"),
            graph: Graph::from_edges(edges).unwrap(),
        })
        .collect()
}

/// Lexicographically least sorted edge list over all relabellings of the
/// vertices `1..=n` of a graph given on exactly those vertices.
pub fn canonical_form(edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let n = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize;
    let mut perm: Vec<Vertex> = (1..=n as Vertex).collect();
    let mut best: Option<Vec<(Vertex, Vertex)>> = None;
    let mut consider = |perm: &[Vertex]| {
        let mut image: Vec<(Vertex, Vertex)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a as usize - 1], perm[b as usize - 1]);
                (x.min(y), x.max(y))
            })
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    consider(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_corpus_is_deterministic_and_balanced() {
        let a = random_corpus(20, 8, 1);
        let b = random_corpus(20, 8, 1);
        assert_eq!(a.len(), 20);
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            assert_eq!(x.graph, y.graph);
            assert!(x.graph.num_edges() <= 8);
            assert_eq!(x.graph.is_bipartite(), i % 2 == 0);
            assert!(x.graph.vertices().iter().all(|&v| x.graph.degree(v) > 0));
        }
        assert_ne!(random_corpus(20, 8, 2).iter().map(|e| e.graph.clone()).collect::<Vec<_>>(),
            a.iter().map(|e| e.graph.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_form_identifies_relabellings() {
        let path = canonical_form(&[(1, 2), (2, 3)]);
        assert_eq!(canonical_form(&[(1, 3), (2, 3)]), path);
        assert_eq!(canonical_form(&[(1, 2), (1, 3)]), path);
        assert_ne!(canonical_form(&[(1, 2), (2, 3), (1, 3)]), path);
    }

    #[test]
    fn bipartite_class_counts() {
        // trees with k edges: 1, 1, 2, 3, 6; the only cyclic ones are C4
        // and C4 with a pendant edge
        let graphs = connected_bipartite_graphs(5);
        let mut counts = [0usize; 6];
        for e in &graphs {
            assert!(e.graph.is_connected() && e.graph.is_bipartite());
            counts[e.graph.num_edges()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 2, 4, 7]);
    }
}
