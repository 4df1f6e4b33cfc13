//! Simple undirected graphs with a canonical vertex and edge order.
//!
//! Vertices are positive integers. Edges are stored as `(i, j)` with `i < j`
//! and kept sorted lexicographically; an edge's position in that list is its
//! *edge index*, which every other module uses to name edge variables and
//! edge subsets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError};

pub type Vertex = u32;

/// Default bound on the number of simple cycles [`Graph::simple_cycles`] will
/// produce before giving up.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Largest edge count accepted by routines that encode edge subsets as a
/// 64-bit mask.
pub const MAX_MASK_EDGES: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    /// Builds the canonical `(min, max)` form.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn other(&self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    adjacency: BTreeMap<Vertex, Vec<Vertex>>,
}

/// A simple cycle, given both as sorted edge indices and as a closed walk
/// `v0, v1, ..., v_{k-1}` (the closing edge `v_{k-1} v0` is implicit).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cycle {
    pub edges: Vec<usize>,
    pub vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.edges.len().is_multiple_of(2)
    }

    /// Edge-index bitmask; only meaningful for graphs with at most 64 edges.
    pub fn mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &e| m | (1u64 << e))
    }
}

/// Edge indices grouped into blocks (maximal biconnected pieces and bridges).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bipartition {
    pub is_bipartite: bool,
    /// Colour classes, present when bipartite. The class containing the
    /// smallest vertex of each component is listed first.
    pub partition: Option<(Vec<Vertex>, Vec<Vertex>)>,
    pub odd_cycle: Option<Cycle>,
}

#[derive(Deserialize)]
struct GraphJson {
    vertices: Option<Vec<i64>>,
    edges: Vec<(i64, i64)>,
}

impl Graph {
    /// Builds a graph from an edge list. Vertices are the edge endpoints.
    pub fn from_edges<I>(edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::build(None, edges.into_iter().map(|(a, b)| (a as i64, b as i64)).collect())
    }

    fn build(declared: Option<Vec<i64>>, raw: Vec<(i64, i64)>) -> Result<Graph> {
        let mut edges = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            for v in [a, b] {
                if v <= 0 || v > Vertex::MAX as i64 {
                    return Err(ValidationError::NonPositiveVertex(v).into());
                }
            }
            if a == b {
                return Err(ValidationError::Loop(a as Vertex).into());
            }
            edges.push(Edge::new(a as Vertex, b as Vertex));
        }
        if edges.is_empty() {
            return Err(ValidationError::Empty.into());
        }
        edges.sort();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(ValidationError::ParallelEdge(w[0].0, w[0].1).into());
            }
        }
        let endpoints: BTreeSet<Vertex> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
        if let Some(declared) = declared {
            let mut listed = BTreeSet::new();
            for v in declared {
                if v <= 0 || v > Vertex::MAX as i64 {
                    return Err(ValidationError::NonPositiveVertex(v).into());
                }
                listed.insert(v as Vertex);
            }
            if let Some(&v) = endpoints.difference(&listed).next() {
                return Err(ValidationError::UndeclaredVertex(v).into());
            }
            if let Some(&v) = listed.difference(&endpoints).next() {
                return Err(ValidationError::IsolatedVertex(v).into());
            }
        }
        let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in &edges {
            adjacency.entry(e.0).or_default().push(e.1);
            adjacency.entry(e.1).or_default().push(e.0);
        }
        for list in adjacency.values_mut() {
            list.sort_unstable();
        }
        Ok(Graph { vertices: endpoints.into_iter().collect(), edges, adjacency })
    }

    /// Parses either the JSON form `{"vertices": [...], "edges": [[i, j], ...]}`
    /// or a plain edge list with one `i j` pair per line and `#` comments.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            let parsed: GraphJson =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::build(parsed.vertices, parsed.edges);
        }
        let mut raw = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse(format!(
                    "line {}: expected two vertex ids, found {:?}",
                    lineno + 1,
                    line
                )));
            }
            let parse = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad vertex id {:?}", lineno + 1, s)))
            };
            raw.push((parse(fields[0])?, parse(fields[1])?));
        }
        Self::build(None, raw)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        self.edges.binary_search(&Edge::new(a, b)).ok()
    }

    pub fn vertex_position(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// The subgraph spanned by the given edge indices (vertices = endpoints).
    pub fn subgraph(&self, edge_indices: &[usize]) -> Result<Graph> {
        Graph::from_edges(edge_indices.iter().map(|&i| (self.edges[i].0, self.edges[i].1)))
    }

    /// JSON form used by the CLI and golden files.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| [e.0, e.1]).collect::<Vec<_>>(),
        })
    }

    /// Number of connected components and a component id per vertex, in
    /// vertex order. Ids are assigned in order of each component's smallest
    /// vertex.
    pub fn connected_components(&self) -> (usize, BTreeMap<Vertex, usize>) {
        let mut label = BTreeMap::new();
        let mut count = 0;
        for &start in &self.vertices {
            if label.contains_key(&start) {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            label.insert(start, count);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if let std::collections::btree_map::Entry::Vacant(e) = label.entry(w) {
                        e.insert(count);
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn num_components(&self) -> usize {
        self.connected_components().0
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// Two-colours the graph by BFS; on failure returns an odd cycle.
    pub fn bipartition(&self) -> Bipartition {
        let mut colour: BTreeMap<Vertex, u8> = BTreeMap::new();
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut depth: BTreeMap<Vertex, usize> = BTreeMap::new();
        for &start in &self.vertices {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, 0);
            depth.insert(start, 0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    match colour.get(&w) {
                        None => {
                            colour.insert(w, 1 - colour[&v]);
                            parent.insert(w, v);
                            depth.insert(w, depth[&v] + 1);
                            queue.push_back(w);
                        }
                        Some(&c) if c == colour[&v] => {
                            let cycle = self.close_tree_cycle(v, w, &parent, &depth);
                            return Bipartition { is_bipartite: false, partition: None, odd_cycle: Some(cycle) };
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (a, b): (Vec<_>, Vec<_>) = self.vertices.iter().partition(|v| colour[v] == 0);
        Bipartition { is_bipartite: true, partition: Some((a, b)), odd_cycle: None }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite
    }

    /// Cycle formed by the non-tree edge `u w` and the tree paths to their
    /// common ancestor.
    fn close_tree_cycle(
        &self,
        u: Vertex,
        w: Vertex,
        parent: &BTreeMap<Vertex, Vertex>,
        depth: &BTreeMap<Vertex, usize>,
    ) -> Cycle {
        let (mut a, mut b) = (u, w);
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            if depth[&a] >= depth[&b] {
                a = parent[&a];
                left.push(a);
            } else {
                b = parent[&b];
                right.push(b);
            }
        }
        // both end at the common ancestor
        right.pop();
        let mut walk = left;
        walk.reverse();
        walk.extend(right);
        self.cycle_from_walk(walk)
    }

    /// Builds a [`Cycle`] from a closed walk given without its repeated
    /// first vertex. Panics if consecutive vertices are not adjacent.
    pub fn cycle_from_walk(&self, walk: Vec<Vertex>) -> Cycle {
        let k = walk.len();
        let mut edges: Vec<usize> = (0..k)
            .map(|i| self.edge_index(walk[i], walk[(i + 1) % k]).expect("walk uses graph edges"))
            .collect();
        edges.sort_unstable();
        Cycle { edges, vertices: walk }
    }

    /// All simple cycles, each reported once. A cycle is found from its
    /// smallest vertex `s`, walking only through vertices larger than `s`,
    /// and kept in the orientation whose second vertex is smaller than its
    /// last; this makes the output order deterministic.
    pub fn simple_cycles(&self, cap: usize) -> Result<Vec<Cycle>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on_path = BTreeSet::new();
        for &s in &self.vertices {
            path.push(s);
            on_path.insert(s);
            self.extend_cycles(s, &mut path, &mut on_path, &mut out, cap)?;
            path.pop();
            on_path.remove(&s);
        }
        Ok(out)
    }

    fn extend_cycles(
        &self,
        start: Vertex,
        path: &mut Vec<Vertex>,
        on_path: &mut BTreeSet<Vertex>,
        out: &mut Vec<Cycle>,
        cap: usize,
    ) -> Result<()> {
        let last = *path.last().unwrap();
        for &w in self.neighbors(last) {
            if w == start && path.len() >= 3 && path[1] < last {
                if out.len() >= cap {
                    return Err(Error::ResourceLimit { what: "simple cycles", cap });
                }
                out.push(self.cycle_from_walk(path.clone()));
            } else if w > start && !on_path.contains(&w) {
                path.push(w);
                on_path.insert(w);
                self.extend_cycles(start, path, on_path, out, cap)?;
                path.pop();
                on_path.remove(&w);
            }
        }
        Ok(())
    }

    /// Blocks via the Hopcroft–Tarjan edge-stack DFS. Blocks are returned
    /// with sorted edge indices, ordered by their smallest edge index.
    pub fn biconnected_blocks(&self) -> BlockDecomposition {
        let mut state = BlockState {
            disc: BTreeMap::new(),
            low: BTreeMap::new(),
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
        };
        for &v in &self.vertices {
            if !state.disc.contains_key(&v) {
                self.block_dfs(v, None, &mut state);
            }
        }
        let mut blocks = state.blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        BlockDecomposition { blocks }
    }

    fn block_dfs(&self, v: Vertex, parent: Option<Vertex>, st: &mut BlockState) {
        st.disc.insert(v, st.time);
        st.low.insert(v, st.time);
        st.time += 1;
        for &w in self.neighbors(v) {
            if Some(w) == parent {
                continue;
            }
            let e = self.edge_index(v, w).unwrap();
            match st.disc.get(&w).copied() {
                None => {
                    st.stack.push(e);
                    self.block_dfs(w, Some(v), st);
                    let lw = st.low[&w];
                    if lw < st.low[&v] {
                        st.low.insert(v, lw);
                    }
                    if lw >= st.disc[&v] {
                        let mut block = Vec::new();
                        while let Some(f) = st.stack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        st.blocks.push(block);
                    }
                }
                Some(dw) if dw < st.disc[&v] => {
                    st.stack.push(e);
                    if dw < st.low[&v] {
                        st.low.insert(v, dw);
                    }
                }
                Some(_) => {}
            }
        }
    }

    /// Connected, at least three vertices and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        self.num_vertices() >= 3 && self.is_connected() && self.biconnected_blocks().blocks.len() == 1
    }

    /// A spanning subgraph with the same components that is a forest when
    /// the graph is bipartite, and otherwise a spanning forest plus one
    /// edge closing an odd cycle in the first non-bipartite component.
    pub fn upper_bound_witness(&self) -> Graph {
        let mut depth: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut tree = Vec::new();
        let mut odd_chord: Option<usize> = None;
        for &start in &self.vertices {
            if depth.contains_key(&start) {
                continue;
            }
            depth.insert(start, 0);
            let mut queue = VecDeque::from([start]);
            let mut component = vec![start];
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if !depth.contains_key(&w) {
                        depth.insert(w, depth[&v] + 1);
                        tree.push(self.edge_index(v, w).unwrap());
                        queue.push_back(w);
                        component.push(w);
                    }
                }
            }
            if odd_chord.is_none() {
                odd_chord = component.iter().find_map(|&v| {
                    self.neighbors(v)
                        .iter()
                        .find(|&&w| depth[&v] % 2 == depth[&w] % 2)
                        .map(|&w| self.edge_index(v, w).unwrap())
                });
            }
        }
        tree.extend(odd_chord);
        tree.sort_unstable();
        self.subgraph(&tree).expect("spanning subgraph of a valid graph")
    }

    /// Length of the longest cycle in each connected component (0 for trees),
    /// in component-id order.
    pub fn circumferences(&self, cap: usize) -> Result<Vec<usize>> {
        let (count, label) = self.connected_components();
        let mut best = vec![0; count];
        for c in self.simple_cycles(cap)? {
            let comp = label[&c.vertices[0]];
            best[comp] = best[comp].max(c.len());
        }
        Ok(best)
    }

    /// Edge indices lying in the given vertex set's induced subgraph.
    pub fn edges_within(&self, vertices: &BTreeSet<Vertex>) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| vertices.contains(&self.edges[i].0) && vertices.contains(&self.edges[i].1))
            .collect()
    }
}

struct BlockState {
    disc: BTreeMap<Vertex, usize>,
    low: BTreeMap<Vertex, usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| format!("{}-{}", e.0, e.1)).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
