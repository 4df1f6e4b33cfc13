//! Joins, ear decompositions and the even-ear invariants of a graph.
//!
//! * A *join* is an edge set `J` meeting every cycle `C` in at most
//!   `|C|/2` edges; `mu(G)` is the largest size of a join.
//! * An *ear decomposition* starts from a vertex `P_0` and adds paths
//!   `P_1, ..., P_r` whose end-vertices are already present and whose inner
//!   vertices are new. A path may be closed (both ends equal), as the first
//!   ear always is.
//! * `phi(G)` is the least number of even ears over all ear decompositions;
//!   Frank's identity states `2 mu(G) = phi(G) + |V| - 1`.
//! * A decomposition is *nested* when every ear has both ends on a single
//!   earlier piece (its host) and the subpaths of a host spanned by its
//!   nested ears (nest intervals) are pairwise disjoint or contained in
//!   one another.
//!
//! Searches use `u64` bitmasks over edge indices and vertex positions, so
//! they accept graphs with at most 64 edges and 64 vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cycle, Edge, Graph, Vertex, DEFAULT_CYCLE_CAP, MAX_MASK_EDGES};

/// Largest edge count accepted by [`max_join`].
pub const DEFAULT_JOIN_EDGE_CAP: usize = 22;
/// Search nodes visited by the ear searches before giving up.
pub const DEFAULT_SEARCH_CAP: usize = 5_000_000;

/// A join together with, for every simple cycle, `(|J ∩ C|, |C|)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct JoinCertificate {
    #[serde(rename = "join")]
    pub edges: Vec<Edge>,
    #[serde(skip)]
    pub cycle_checks: Vec<(usize, usize)>,
}

/// One ear: its vertex sequence (first equals last when closed) and, in a
/// nested decomposition, its host piece and nest interval.
///
/// Hosts are numbered `0` for `P_0` and `i` for the ear `P_i`, so ear
/// `ears[k]` is `P_{k+1}`. The interval is the subpath of the host between
/// the ear's end-vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Ear {
    pub vertices: Vec<Vertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Vec<Vertex>>,
}

impl Ear {
    pub fn path(vertices: Vec<Vertex>) -> Ear {
        Ear { vertices, host: None, interval: None }
    }

    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_even(&self) -> bool {
        self.len().is_multiple_of(2)
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.len() > 1 && self.vertices.first() == self.vertices.last()
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base: Vertex,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    pub fn new(base: Vertex, ears: Vec<Vec<Vertex>>) -> EarDecomposition {
        EarDecomposition { base, ears: ears.into_iter().map(Ear::path).collect() }
    }

    pub fn is_annotated(&self) -> bool {
        self.ears.iter().all(|e| e.host.is_some() && e.interval.is_some())
    }

    /// The same ears without nesting data.
    pub fn stripped(&self) -> EarDecomposition {
        EarDecomposition::new(self.base, self.ears.iter().map(|e| e.vertices.clone()).collect())
    }

    /// Vertex sequence of piece `k` (`0` is `P_0`).
    fn piece(&self, k: usize) -> Vec<Vertex> {
        if k == 0 {
            vec![self.base]
        } else {
            self.ears[k - 1].vertices.clone()
        }
    }
}

/// Outcome of [`verify_ear_decomposition`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EarCheck {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

fn mask_limit(g: &Graph) -> Result<()> {
    if g.num_edges() > MAX_MASK_EDGES || g.num_vertices() > 64 {
        return Err(Error::ResourceLimit { what: "edges or vertices in a bitmask search", cap: MAX_MASK_EDGES });
    }
    Ok(())
}

fn edge_indices(g: &Graph, edges: &[Edge]) -> Result<Vec<usize>> {
    edges
        .iter()
        .map(|e| {
            g.edge_index(e.0, e.1)
                .ok_or_else(|| Error::Precondition(format!("{}-{} is not an edge", e.0, e.1)))
        })
        .collect()
}

/// Whether `j` is a join; otherwise the first simple cycle it overloads.
pub fn is_join(g: &Graph, j: &[Edge]) -> Result<(bool, Option<Cycle>)> {
    let chosen: BTreeSet<usize> = edge_indices(g, j)?.into_iter().collect();
    for c in g.simple_cycles(DEFAULT_CYCLE_CAP)? {
        let hit = c.edges.iter().filter(|e| chosen.contains(e)).count();
        if 2 * hit > c.len() {
            return Ok((false, Some(c)));
        }
    }
    Ok((true, None))
}

/// `mu(G)` with a maximum join, refusing graphs with more than
/// [`DEFAULT_JOIN_EDGE_CAP`] edges.
pub fn max_join(g: &Graph) -> Result<(usize, JoinCertificate)> {
    max_join_with_caps(g, DEFAULT_JOIN_EDGE_CAP, DEFAULT_CYCLE_CAP)
}

/// Branch-and-bound over the edges of each block separately: every cycle
/// lies inside one block, so maximum joins of the blocks combine.
pub fn max_join_with_caps(g: &Graph, edge_cap: usize, cycle_cap: usize) -> Result<(usize, JoinCertificate)> {
    if g.num_edges() > edge_cap {
        return Err(Error::ResourceLimit { what: "edges for the join search", cap: edge_cap });
    }
    let cycles = g.simple_cycles(cycle_cap)?;
    let mut chosen = Vec::new();
    for block in g.biconnected_blocks().blocks {
        let block_cycles: Vec<&Cycle> = cycles.iter().filter(|c| block.contains(&c.edges[0])).collect();
        chosen.extend(block_max_join(&block, &block_cycles));
    }
    chosen.sort_unstable();
    let set: BTreeSet<usize> = chosen.iter().copied().collect();
    let cycle_checks = cycles.iter().map(|c| (c.edges.iter().filter(|e| set.contains(e)).count(), c.len())).collect();
    let edges = chosen.iter().map(|&i| g.edges()[i]).collect();
    Ok((chosen.len(), JoinCertificate { edges, cycle_checks }))
}

struct JoinSearch<'a> {
    edges: &'a [usize],
    /// Cycles through each edge, as indices into `budget`.
    through: Vec<Vec<usize>>,
    budget: Vec<usize>,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl JoinSearch<'_> {
    fn run(&mut self, i: usize) {
        if self.current.len() + (self.edges.len() - i) <= self.best.len() {
            return;
        }
        if i == self.edges.len() {
            self.best = self.current.clone();
            return;
        }
        if self.through[i].iter().all(|&c| self.budget[c] > 0) {
            for &c in &self.through[i] {
                self.budget[c] -= 1;
            }
            self.current.push(self.edges[i]);
            self.run(i + 1);
            self.current.pop();
            for &c in &self.through[i] {
                self.budget[c] += 1;
            }
        }
        self.run(i + 1);
    }
}

fn block_max_join(block: &[usize], cycles: &[&Cycle]) -> Vec<usize> {
    let through = block
        .iter()
        .map(|e| (0..cycles.len()).filter(|&c| cycles[c].edges.contains(e)).collect())
        .collect();
    let mut search = JoinSearch {
        edges: block,
        through,
        budget: cycles.iter().map(|c| c.len() / 2).collect(),
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(0);
    search.best
}

/// Checks that `d` is an ear decomposition of `g`, and, when every ear
/// carries a host and an interval, that these form a valid nesting.
pub fn verify_ear_decomposition(g: &Graph, d: &EarDecomposition) -> EarCheck {
    let mut diagnostics = Vec::new();
    let mut covered: BTreeSet<Vertex> = BTreeSet::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    if g.vertex_position(d.base).is_none() {
        diagnostics.push(format!("base vertex {} is not in the graph", d.base));
    }
    covered.insert(d.base);
    for (k, ear) in d.ears.iter().enumerate() {
        let name = format!("P_{}", k + 1);
        let vs = &ear.vertices;
        if vs.len() < 2 {
            diagnostics.push(format!("{name} has no edges"));
            continue;
        }
        if ear.is_closed() && vs.len() < 4 {
            diagnostics.push(format!("{name} is closed but shorter than 3"));
        }
        for w in vs.windows(2) {
            match g.edge_index(w[0], w[1]) {
                None => diagnostics.push(format!("{name} uses {}-{}, which is not an edge", w[0], w[1])),
                Some(e) => {
                    if !used.insert(e) {
                        diagnostics.push(format!("{name} reuses edge {}-{}", w[0], w[1]));
                    }
                }
            }
        }
        let (a, b) = ear.ends();
        for end in [a, b] {
            if !covered.contains(&end) {
                diagnostics.push(format!("{name} ends at {end}, outside the earlier pieces"));
            }
        }
        let inner = &vs[1..vs.len() - 1];
        let mut seen = BTreeSet::from([a, b]);
        for &v in inner {
            if covered.contains(&v) {
                diagnostics.push(format!("{name} has inner vertex {v} in an earlier piece"));
            }
            if !seen.insert(v) {
                diagnostics.push(format!("{name} repeats vertex {v}"));
            }
        }
        covered.extend(vs.iter().copied());
    }
    if used.len() != g.num_edges() {
        let missing: Vec<String> =
            (0..g.num_edges()).filter(|e| !used.contains(e)).map(|e| g.edges()[e].to_string()).collect();
        diagnostics.push(format!("edges not covered by any ear: {}", missing.join(", ")));
    }
    if diagnostics.is_empty() && d.ears.iter().any(|e| e.host.is_some() || e.interval.is_some()) {
        diagnostics.extend(nesting_diagnostics(g, d));
    }
    EarCheck { valid: diagnostics.is_empty(), diagnostics }
}

/// Edge indices of consecutive vertex pairs in `vs`.
fn path_edges(g: &Graph, vs: &[Vertex]) -> BTreeSet<usize> {
    vs.windows(2).filter_map(|w| g.edge_index(w[0], w[1])).collect()
}

fn nesting_diagnostics(g: &Graph, d: &EarDecomposition) -> Vec<String> {
    let mut out = Vec::new();
    let mut intervals: BTreeMap<usize, Vec<BTreeSet<usize>>> = BTreeMap::new();
    for (k, ear) in d.ears.iter().enumerate() {
        let name = format!("P_{}", k + 1);
        let (Some(host), Some(interval)) = (ear.host, ear.interval.as_ref()) else {
            out.push(format!("{name} lacks a host or an interval"));
            continue;
        };
        if host > k {
            out.push(format!("{name} is hosted by a later piece P_{host}"));
            continue;
        }
        let piece = d.piece(host);
        let (a, b) = ear.ends();
        let ends_ok = interval.first().zip(interval.last()).is_some_and(|(&x, &y)| (x, y) == (a, b) || (x, y) == (b, a));
        let contiguous = interval.len() <= piece.len()
            && (0..=piece.len() - interval.len()).any(|s| {
                let window = &piece[s..s + interval.len()];
                window == interval.as_slice() || window.iter().rev().eq(interval.iter())
            });
        if !ends_ok || !contiguous {
            out.push(format!("{name}: {interval:?} is not the subpath of P_{host} between its ends"));
            continue;
        }
        let edges = path_edges(g, interval);
        for other in intervals.get(&host).into_iter().flatten() {
            if !laminar(other, &edges) {
                out.push(format!("{name}: nest interval crosses another interval in P_{host}"));
            }
        }
        intervals.entry(host).or_default().push(edges);
    }
    out
}

fn laminar(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)
}

/// Number of ears of even length.
pub fn even_ear_count(d: &EarDecomposition) -> usize {
    d.ears.iter().filter(|e| e.is_even()).count()
}

/// Candidate nest intervals of an ear with ends `a`, `b` on the vertex
/// sequence `piece`, as position pairs `(i, j)` with `i <= j`. A closed
/// piece lists its closing vertex twice, so that vertex may bound the
/// interval from either side.
fn interval_positions<T: PartialEq + Copy>(piece: &[T], a: T, b: T) -> Vec<(usize, usize)> {
    let pa: Vec<usize> = (0..piece.len()).filter(|&i| piece[i] == a).collect();
    let pb: Vec<usize> = (0..piece.len()).filter(|&i| piece[i] == b).collect();
    let mut out = Vec::new();
    for &i in &pa {
        for &j in &pb {
            let iv = (i.min(j), i.max(j));
            if !out.contains(&iv) {
                out.push(iv);
            }
        }
    }
    out
}

/// Searches for hosts and intervals that make `d` nested, returning the
/// annotated decomposition if one exists. `P_1` is hosted by `P_0`.
pub fn is_nested(g: &Graph, d: &EarDecomposition) -> Option<EarDecomposition> {
    if !verify_ear_decomposition(g, &d.stripped()).valid {
        return None;
    }
    let mut annotated = d.stripped();
    let mut intervals: Vec<Vec<u64>> = vec![Vec::new(); d.ears.len() + 1];
    if assign_nesting(g, &mut annotated, 0, &mut intervals) {
        Some(annotated)
    } else {
        None
    }
}

fn mask_of(g: &Graph, vs: &[Vertex]) -> u64 {
    path_edges(g, vs).into_iter().fold(0, |m, e| m | (1u64 << e))
}

fn masks_laminar(a: u64, b: u64) -> bool {
    a & b == 0 || a & !b == 0 || b & !a == 0
}

fn assign_nesting(g: &Graph, d: &mut EarDecomposition, k: usize, intervals: &mut [Vec<u64>]) -> bool {
    if k == d.ears.len() {
        return true;
    }
    let (a, b) = d.ears[k].ends();
    for host in 0..=k {
        let piece = d.piece(host);
        for (i, j) in interval_positions(&piece, a, b) {
            let span = &piece[i..=j];
            let m = mask_of(g, span);
            if !intervals[host].iter().all(|&o| masks_laminar(o, m)) {
                continue;
            }
            intervals[host].push(m);
            d.ears[k].host = Some(host);
            d.ears[k].interval = Some(span.to_vec());
            if assign_nesting(g, d, k + 1, intervals) {
                return true;
            }
            intervals[host].pop();
        }
    }
    d.ears[k].host = None;
    d.ears[k].interval = None;
    false
}

/// Adjacency by vertex position, with edge indices.
struct Indexed<'a> {
    g: &'a Graph,
    adj: Vec<Vec<(usize, usize)>>,
    full: u64,
}

impl<'a> Indexed<'a> {
    fn new(g: &'a Graph) -> Result<Indexed<'a>> {
        mask_limit(g)?;
        let adj = g
            .vertices()
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .map(|&w| (g.vertex_position(w).unwrap(), g.edge_index(v, w).unwrap()))
                    .collect()
            })
            .collect();
        let full = if g.num_edges() == 64 { u64::MAX } else { (1u64 << g.num_edges()) - 1 };
        Ok(Indexed { g, adj, full })
    }

    fn covered(&self, used: u64) -> u64 {
        let mut out = 0;
        for (i, e) in self.g.edges().iter().enumerate() {
            if used >> i & 1 == 1 {
                out |= 1 << self.g.vertex_position(e.0).unwrap();
                out |= 1 << self.g.vertex_position(e.1).unwrap();
            }
        }
        out
    }

    fn vertices_of(&self, positions: &[usize]) -> Vec<Vertex> {
        positions.iter().map(|&p| self.g.vertices()[p]).collect()
    }

    /// Every ear that can be added to the pieces covering `covered` with
    /// edges `used`, reported once each as (positions, edge mask). Open ears
    /// run from a smaller to a larger end position; closed ears (when
    /// allowed) have second position smaller than their penultimate one.
    fn ears(&self, covered: u64, used: u64, closed: bool, out: &mut Vec<(Vec<usize>, u64)>) {
        for u in 0..self.adj.len() {
            if covered >> u & 1 == 0 {
                continue;
            }
            let mut path = vec![u];
            self.extend_ear(covered, used, closed, &mut path, 0, out);
        }
    }

    fn extend_ear(
        &self,
        covered: u64,
        used: u64,
        closed: bool,
        path: &mut Vec<usize>,
        mask: u64,
        out: &mut Vec<(Vec<usize>, u64)>,
    ) {
        let last = *path.last().unwrap();
        let start = path[0];
        for &(w, e) in &self.adj[last] {
            if used >> e & 1 == 1 || mask >> e & 1 == 1 {
                continue;
            }
            if covered >> w & 1 == 1 {
                let keep = if w == start {
                    closed && path.len() >= 3 && path[1] < last
                } else {
                    start < w
                };
                if keep {
                    path.push(w);
                    out.push((path.clone(), mask | 1 << e));
                    path.pop();
                }
            } else if !path.contains(&w) {
                path.push(w);
                self.extend_ear(covered, used, closed, path, mask | 1 << e, out);
                path.pop();
            }
        }
    }

    /// Closed first ears `P_1` through each base position, rotated to
    /// start at the base.
    fn first_ears(&self, cap: usize) -> Result<Vec<(usize, Vec<usize>, u64)>> {
        let mut out = Vec::new();
        for c in self.g.simple_cycles(cap)? {
            let pos: Vec<usize> = c.vertices.iter().map(|&v| self.g.vertex_position(v).unwrap()).collect();
            for s in 0..pos.len() {
                let mut walk: Vec<usize> = pos[s..].iter().chain(&pos[..s]).copied().collect();
                walk.push(pos[s]);
                out.push((pos[s], walk, c.mask()));
            }
        }
        Ok(out)
    }
}

fn require_two_connected(g: &Graph) -> Result<()> {
    if !g.is_two_connected() {
        return Err(Error::Precondition("ear decompositions need a 2-connected graph".into()));
    }
    Ok(())
}

/// `phi(G)` for a 2-connected graph.
pub fn min_even_ears(g: &Graph) -> Result<usize> {
    Ok(min_even_ear_decomposition(g)?.0)
}

/// `phi(G)` together with a decomposition attaining it. Ears may be closed.
///
/// What remains possible after some ears depends only on the set of edges
/// used so far, so the minimum is a memoized recursion over that set.
pub fn min_even_ear_decomposition(g: &Graph) -> Result<(usize, EarDecomposition)> {
    require_two_connected(g)?;
    let ix = Indexed::new(g)?;
    let mut memo: HashMap<u64, (usize, Option<(Vec<usize>, u64)>)> = HashMap::new();
    let mut best = (usize::MAX, None);
    for (base, walk, mask) in ix.first_ears(DEFAULT_CYCLE_CAP)? {
        let even = usize::from((walk.len() - 1) % 2 == 0);
        let rest = phi_rec(&ix, mask, &mut memo)?;
        if even + rest < best.0 {
            best = (even + rest, Some((base, walk, mask)));
        }
    }
    let (phi, Some((base, walk, mut used))) = best else {
        return Err(Error::Inconsistency("no ear decomposition of a 2-connected graph".into()));
    };
    let mut ears = vec![ix.vertices_of(&walk)];
    while used != ix.full {
        let (_, Some((path, mask))) = &memo[&used] else {
            return Err(Error::Inconsistency("ear search lost its witness".into()));
        };
        ears.push(ix.vertices_of(path));
        used |= mask;
    }
    Ok((phi, EarDecomposition::new(g.vertices()[base], ears)))
}

fn phi_rec(ix: &Indexed, used: u64, memo: &mut HashMap<u64, (usize, Option<(Vec<usize>, u64)>)>) -> Result<usize> {
    if used == ix.full {
        return Ok(0);
    }
    if let Some((v, _)) = memo.get(&used) {
        return Ok(*v);
    }
    if memo.len() >= DEFAULT_SEARCH_CAP {
        return Err(Error::ResourceLimit { what: "ear search states", cap: DEFAULT_SEARCH_CAP });
    }
    let mut candidates = Vec::new();
    ix.ears(ix.covered(used), used, true, &mut candidates);
    let mut best = (usize::MAX, None);
    for (path, mask) in candidates {
        let even = usize::from((path.len() - 1) % 2 == 0);
        let rest = phi_rec(ix, used | mask, memo)?;
        if rest != usize::MAX && even + rest < best.0 {
            best = (even + rest, Some((path, mask)));
        }
    }
    let value = best.0;
    memo.insert(used, best);
    Ok(value)
}

/// Both sides of Frank's identity `2 mu = phi + |V| - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FrankCheck {
    pub holds: bool,
    pub mu: usize,
    pub phi: usize,
}

pub fn frank_check(g: &Graph) -> Result<FrankCheck> {
    let phi = min_even_ears(g)?;
    let (mu, _) = max_join(g)?;
    Ok(FrankCheck { holds: 2 * mu == phi + g.num_vertices() - 1, mu, phi })
}

/// Some nested ear decomposition with its even-ear count, if any exists.
pub fn search_nested_decomposition(g: &Graph) -> Result<Option<(EarDecomposition, usize)>> {
    Ok(nested_decompositions_by_epsilon(g)?.into_iter().next().map(|(eps, d)| (d, eps)))
}

/// For every even-ear count attained by a nested ear decomposition, one
/// decomposition attaining it. After the closed ear `P_1`, ears are open.
pub fn nested_decompositions_by_epsilon(g: &Graph) -> Result<BTreeMap<usize, EarDecomposition>> {
    require_two_connected(g)?;
    let ix = Indexed::new(g)?;
    let mut search = NestedSearch { ix: &ix, seen: HashSet::new(), found: BTreeMap::new(), nodes: 0 };
    for (base, walk, mask) in ix.first_ears(DEFAULT_CYCLE_CAP)? {
        let mut state = NestedState {
            base,
            ears: vec![NestedEar { path: walk, mask, host: 0, interval: (0, 0), imask: 0 }],
            used: mask,
        };
        search.run(&mut state)?;
    }
    Ok(search.found)
}

#[derive(Clone)]
struct NestedEar {
    path: Vec<usize>,
    mask: u64,
    /// 0 for `P_0`, otherwise `i` for `P_i`.
    host: usize,
    interval: (usize, usize),
    imask: u64,
}

struct NestedState {
    base: usize,
    ears: Vec<NestedEar>,
    used: u64,
}

struct NestedSearch<'a, 'g> {
    ix: &'a Indexed<'g>,
    /// Unordered ear sets already expanded; the future depends on nothing else.
    seen: HashSet<(usize, Vec<(u64, u64, u64)>)>,
    found: BTreeMap<usize, EarDecomposition>,
    nodes: usize,
}

impl NestedSearch<'_, '_> {
    fn run(&mut self, st: &mut NestedState) -> Result<()> {
        self.nodes += 1;
        if self.nodes > DEFAULT_SEARCH_CAP {
            return Err(Error::ResourceLimit { what: "nested ear search nodes", cap: DEFAULT_SEARCH_CAP });
        }
        let mut key: Vec<(u64, u64, u64)> = st
            .ears
            .iter()
            .map(|e| (e.mask, if e.host == 0 { 0 } else { st.ears[e.host - 1].mask }, e.imask))
            .collect();
        key.sort_unstable();
        if !self.seen.insert((st.base, key)) {
            return Ok(());
        }
        if st.used == self.ix.full {
            let eps = st.ears.iter().filter(|e| (e.path.len() - 1) % 2 == 0).count();
            if !self.found.contains_key(&eps) {
                let d = self.decomposition(st);
                self.found.insert(eps, d);
            }
            return Ok(());
        }
        let mut candidates = Vec::new();
        self.ix.ears(self.ix.covered(st.used), st.used, false, &mut candidates);
        for (path, mask) in candidates {
            let (a, b) = (path[0], *path.last().unwrap());
            for h in 1..=st.ears.len() {
                let host_path = st.ears[h - 1].path.clone();
                for (i, j) in interval_positions(&host_path, a, b) {
                    let imask = self.span_mask(&host_path[i..=j]);
                    let laminar = st.ears.iter().filter(|e| e.host == h).all(|e| masks_laminar(e.imask, imask));
                    if !laminar {
                        continue;
                    }
                    st.ears.push(NestedEar { path: path.clone(), mask, host: h, interval: (i, j), imask });
                    st.used |= mask;
                    self.run(st)?;
                    st.used &= !mask;
                    st.ears.pop();
                }
            }
        }
        Ok(())
    }

    fn span_mask(&self, span: &[usize]) -> u64 {
        mask_of(self.ix.g, &self.ix.vertices_of(span))
    }

    fn decomposition(&self, st: &NestedState) -> EarDecomposition {
        let ears = st
            .ears
            .iter()
            .map(|e| {
                let host_path = if e.host == 0 { vec![st.base] } else { st.ears[e.host - 1].path.clone() };
                Ear {
                    vertices: self.ix.vertices_of(&e.path),
                    host: Some(e.host),
                    interval: Some(self.ix.vertices_of(&host_path[e.interval.0..=e.interval.1])),
                }
            })
            .collect();
        EarDecomposition { base: self.ix.g.vertices()[st.base], ears }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> Graph {
        Graph::parse(text).unwrap()
    }

    fn bipartite_hamiltonian() -> Graph {
        g("1 2\n1 4\n1 6\n2 3\n2 5\n3 4\n3 6\n4 5")
    }

    fn theta222() -> Graph {
        g("1 2\n2 5\n1 3\n3 5\n1 4\n4 5")
    }

    /// Largest subset of edges passing `is_join`, by exhaustion.
    fn mu_oracle(graph: &Graph) -> usize {
        let m = graph.num_edges();
        let cycles = graph.simple_cycles(DEFAULT_CYCLE_CAP).unwrap();
        (0u64..1 << m)
            .filter(|s| cycles.iter().all(|c| 2 * (s & c.mask()).count_ones() as usize <= c.len()))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn join_examples() {
        let forest = g("1 2\n2 3\n4 5");
        assert!(is_join(&forest, forest.edges()).unwrap().0);
        assert_eq!(max_join(&forest).unwrap().0, 3);
        let k3 = g("1 2\n2 3\n1 3");
        let (ok, witness) = is_join(&k3, &[Edge(1, 2), Edge(2, 3)]).unwrap();
        assert!(!ok);
        assert_eq!(witness.unwrap().len(), 3);
        let bridged_triangles = g("1 2\n2 3\n1 3\n3 4\n4 5\n5 6\n4 6");
        assert!(is_join(&bridged_triangles, &[Edge(1, 2), Edge(3, 4), Edge(5, 6)]).unwrap().0);
        assert_eq!(max_join(&bridged_triangles).unwrap().0, 3);
        assert_eq!(max_join(&g("1 2\n2 3\n3 4\n1 4")).unwrap().0, 2);
    }

    #[test]
    fn join_witness_is_maximal_and_certified() {
        for graph in [bipartite_hamiltonian(), theta222(), g("1 2\n2 3\n1 3\n3 4\n4 5\n5 6\n4 6"), g("1 2\n1 3\n1 4\n2 3\n2 4\n3 4")] {
            let (mu, cert) = max_join(&graph).unwrap();
            assert_eq!(mu, mu_oracle(&graph));
            assert!(is_join(&graph, &cert.edges).unwrap().0);
            assert!(cert.cycle_checks.iter().all(|&(hit, len)| 2 * hit <= len));
            for &e in graph.edges() {
                if !cert.edges.contains(&e) {
                    let mut bigger = cert.edges.clone();
                    bigger.push(e);
                    assert!(!is_join(&graph, &bigger).unwrap().0);
                }
            }
        }
    }

    #[test]
    fn join_cap() {
        let big = Graph::from_edges((1..=23).map(|i| (i, i + 1))).unwrap();
        assert!(matches!(max_join(&big), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn bipartite_hamiltonian_decompositions() {
        let graph = bipartite_hamiltonian();
        let first = EarDecomposition::new(1, vec![vec![1, 2, 5, 4, 3, 6, 1], vec![2, 3], vec![1, 4]]);
        let second = EarDecomposition::new(1, vec![vec![1, 2, 3, 4, 1], vec![2, 5, 4], vec![3, 6, 1]]);
        for (d, eps) in [(&first, 1), (&second, 3)] {
            assert!(verify_ear_decomposition(&graph, d).valid);
            assert_eq!(even_ear_count(d), eps);
            assert!(is_nested(&graph, d).is_none());
        }
        let mut broken = first.clone();
        broken.ears.pop();
        let check = verify_ear_decomposition(&graph, &broken);
        assert!(!check.valid);
        assert!(check.diagnostics[0].contains("not covered"));
        assert_eq!(min_even_ears(&graph).unwrap(), 1);
        assert_eq!(frank_check(&graph).unwrap(), FrankCheck { holds: true, mu: 3, phi: 1 });
        assert!(search_nested_decomposition(&graph).unwrap().is_none());
    }

    #[test]
    fn invalid_decompositions() {
        let c4 = g("1 2\n2 3\n3 4\n1 4");
        for d in [
            EarDecomposition::new(1, vec![vec![2, 3, 4, 1, 2]]),
            EarDecomposition::new(1, vec![vec![1, 2, 3], vec![3, 4, 1]]),
            EarDecomposition::new(1, vec![vec![1, 2, 3, 4, 1], vec![1, 2]]),
            EarDecomposition::new(1, vec![vec![1, 3, 4, 1, 2]]),
        ] {
            assert!(!verify_ear_decomposition(&c4, &d).valid, "{d:?}");
        }
    }

    #[test]
    fn small_phi_and_nesting() {
        let c4 = g("1 2\n2 3\n3 4\n1 4");
        assert_eq!(min_even_ears(&c4).unwrap(), 1);
        assert_eq!(frank_check(&c4).unwrap(), FrankCheck { holds: true, mu: 2, phi: 1 });
        let d = EarDecomposition::new(1, vec![vec![1, 2, 3, 4, 1]]);
        assert!(is_nested(&c4, &d).is_some());
        let (found, eps) = search_nested_decomposition(&c4).unwrap().unwrap();
        assert_eq!(eps, 1);
        assert!(verify_ear_decomposition(&c4, &found).valid);

        let k3 = g("1 2\n2 3\n1 3");
        assert_eq!(min_even_ears(&k3).unwrap(), 0);
        assert!(frank_check(&k3).unwrap().holds);

        assert!(matches!(min_even_ears(&g("1 2\n2 3")), Err(Error::Precondition(_))));
    }

    #[test]
    fn theta_is_nested() {
        let theta = theta222();
        let d = EarDecomposition::new(1, vec![vec![1, 2, 5, 3, 1], vec![1, 4, 5]]);
        let nested = is_nested(&theta, &d).unwrap();
        assert!(verify_ear_decomposition(&theta, &nested).valid);
        assert_eq!(nested.ears[1].host, Some(1));
        let all = nested_decompositions_by_epsilon(&theta).unwrap();
        assert_eq!(all.keys().copied().collect::<Vec<_>>(), vec![2]);
        for d in all.values() {
            assert!(verify_ear_decomposition(&theta, d).valid);
            assert_eq!(d.ears.len(), theta.num_edges() - theta.num_vertices() + 1);
        }
        assert_eq!(min_even_ears(&theta).unwrap(), 2);
    }

    #[test]
    fn witness_decomposition_attains_phi() {
        for graph in [bipartite_hamiltonian(), theta222(), g("1 2\n1 3\n1 4\n2 3\n2 4\n3 4")] {
            let (phi, d) = min_even_ear_decomposition(&graph).unwrap();
            assert!(verify_ear_decomposition(&graph, &d).valid);
            assert_eq!(even_ear_count(&d), phi);
            assert_eq!(d.ears.len(), graph.num_edges() - graph.num_vertices() + 1);
        }
    }

    #[test]
    fn nesting_annotations_are_checked() {
        let theta = theta222();
        let mut d = EarDecomposition::new(1, vec![vec![1, 2, 5, 3, 1], vec![1, 4, 5]]);
        d.ears[0].host = Some(0);
        d.ears[0].interval = Some(vec![1]);
        d.ears[1].host = Some(1);
        d.ears[1].interval = Some(vec![1, 2, 5]);
        assert!(verify_ear_decomposition(&theta, &d).valid);
        d.ears[1].interval = Some(vec![1, 2]);
        assert!(!verify_ear_decomposition(&theta, &d).valid);
    }

    #[test]
    fn json_shapes() {
        let d = EarDecomposition::new(1, vec![vec![1, 2, 3, 1]]);
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"base":1,"ears":[{"vertices":[1,2,3,1]}]}"#);
        let (_, cert) = max_join(&g("1 2\n2 3")).unwrap();
        assert_eq!(serde_json::to_string(&cert).unwrap(), r#"{"join":[[1,2],[2,3]]}"#);
    }
}
