//! Groebner bases of the edge ideal `I(X_G)`.
//!
//! The ideal is the preimage of `(x_i^2 - x_j^2)` under `t_{ij} -> x_i x_j`.
//! It is computed by elimination: a Groebner basis of
//!
//! ```text
//! { t_e - x_i x_j z : e = {i,j} } ∪ { x_i^2 - x_k^2 : i != k }      (k = largest vertex)
//! ```
//!
//! is computed under a block order in which every `x`/`z` monomial beats
//! every pure `t` monomial, and the elements that only involve `t`
//! variables form a Groebner basis of `I(X_G)`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use log::{debug, info};
use serde::Serialize;

use crate::algebra::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Default bound on the number of critical pairs Buchberger may create.
pub const DEFAULT_PAIR_CAP: usize = 1_000_000;

/// Variable layout `x_v (v in V) | z | t_e (e in E)`. The `t` variables
/// follow `t_edges`, largest first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VariableSpace {
    vertices: Vec<Vertex>,
    t_edges: Vec<Edge>,
}

pub fn t_name(e: Edge) -> String {
    format!("t{}_{}", e.0, e.1)
}

impl VariableSpace {
    /// `t_order`, when given, must be a permutation of the graph's edges;
    /// otherwise the canonical edge order is used.
    pub fn new(g: &Graph, t_order: Option<&[Edge]>) -> Result<VariableSpace> {
        let t_edges = match t_order {
            None => g.edges().to_vec(),
            Some(order) => {
                let mut sorted = order.to_vec();
                sorted.sort();
                if sorted != g.edges() {
                    return Err(Error::Precondition(
                        "t-variable order must list every edge of the graph exactly once".into(),
                    ));
                }
                order.to_vec()
            }
        };
        Ok(VariableSpace { vertices: g.vertices().to_vec(), t_edges })
    }

    pub fn t_edges(&self) -> &[Edge] {
        &self.t_edges
    }

    pub fn num_x(&self) -> usize {
        self.vertices.len()
    }

    pub fn z_index(&self) -> usize {
        self.vertices.len()
    }

    /// Index of the first `t` variable in the full space.
    pub fn t_offset(&self) -> usize {
        self.vertices.len() + 1
    }

    pub fn num_t(&self) -> usize {
        self.t_edges.len()
    }

    pub fn nvars(&self) -> usize {
        self.t_offset() + self.num_t()
    }

    /// Position of an edge among the `t` variables.
    pub fn t_index(&self, e: Edge) -> Option<usize> {
        self.t_edges.iter().position(|&f| f == e)
    }

    /// Weights making the extended generators homogeneous: `x` and `z`
    /// weigh 1, each `t` weighs 3.
    pub fn homogenizing_weights(&self) -> Vec<u32> {
        let mut w = vec![1; self.t_offset()];
        w.extend(std::iter::repeat_n(3, self.num_t()));
        w
    }

    /// The ring `K[x, z, t]` under the block elimination order.
    pub fn full_ring(&self, field: PrimeField) -> PolyRing {
        let mut names: Vec<String> = self.vertices.iter().map(|v| format!("x{v}")).collect();
        names.push("z".into());
        names.extend(self.t_edges.iter().map(|&e| t_name(e)));
        let ring = PolyRing::new(field, MonomialOrder::BlockElimination { split: self.t_offset() }, names);
        self.with_short_aliases(ring, self.t_offset())
    }

    /// The ring `K[t]` under grevlex in the configured `t` order.
    pub fn t_ring(&self, field: PrimeField) -> PolyRing {
        let names = self.t_edges.iter().map(|&e| t_name(e)).collect();
        self.with_short_aliases(PolyRing::new(field, MonomialOrder::Grevlex, names), 0)
    }

    /// Lets `t12` stand for `t1_2` when unambiguous.
    fn with_short_aliases(&self, mut ring: PolyRing, offset: usize) -> PolyRing {
        let mut seen: HashMap<String, usize> = HashMap::new();
        for e in &self.t_edges {
            *seen.entry(format!("t{}{}", e.0, e.1)).or_default() += 1;
        }
        for (i, e) in self.t_edges.iter().enumerate() {
            let alias = format!("t{}{}", e.0, e.1);
            if seen[&alias] == 1 {
                ring = ring.with_alias(&alias, offset + i);
            }
        }
        ring
    }
}

/// Parses `"12>23>13"` or `"1-2>2-3>1-3"` or `"t1_2>t2_3"` into edges.
pub fn parse_t_order(text: &str, g: &Graph) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    for raw in text.split('>') {
        let tok = raw.trim().trim_start_matches('t');
        let parts: Vec<&str> = tok.split(['-', '_', ',']).filter(|s| !s.is_empty()).collect();
        let (a, b) = match parts.as_slice() {
            [a, b] => (a.parse::<Vertex>().ok(), b.parse::<Vertex>().ok()),
            // two single-digit vertices written together
            [ab] if ab.len() == 2 => (ab[..1].parse().ok(), ab[1..].parse().ok()),
            _ => (None, None),
        };
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::Parse(format!("bad edge {raw:?} in t-order")));
        };
        if g.edge_index(a, b).is_none() {
            return Err(Error::Parse(format!("t-order names {a}-{b}, which is not an edge")));
        }
        out.push(Edge::new(a, b));
    }
    Ok(out)
}

/// A reduced, monic Groebner basis of `I(X_G)` in the `t` variables, sorted
/// ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    space: VariableSpace,
    elements: Vec<Polynomial>,
}

#[derive(Serialize)]
pub struct GroebnerBasisJson {
    pub characteristic: u32,
    pub order: String,
    pub variables: Vec<String>,
    pub elements: Vec<String>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn space(&self) -> &VariableSpace {
        &self.space
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.field().characteristic()
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|f| f.leading_monomial().unwrap().clone()).collect()
    }

    /// Normal form of `f` (a polynomial of [`GroebnerBasis::ring`]).
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.elements.is_empty() {
            return f.clone();
        }
        self.ring.reduce(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Monomial `t^a` as a polynomial of this ring, from exponents in `t` order.
    pub fn t_monomial(&self, exps: Vec<u16>) -> Monomial {
        debug_assert_eq!(exps.len(), self.space.num_t());
        Monomial::from_exponents(exps)
    }

    pub fn edge_var(&self, e: Edge) -> Option<usize> {
        self.space.t_index(e)
    }

    pub fn format_elements(&self) -> Vec<String> {
        self.elements.iter().map(|f| self.ring.format(f)).collect()
    }

    pub fn to_json(&self) -> GroebnerBasisJson {
        GroebnerBasisJson {
            characteristic: self.characteristic(),
            order: format!(
                "grevlex({})",
                self.space.t_edges.iter().map(|&e| t_name(e)).collect::<Vec<_>>().join(">")
            ),
            variables: self.ring.names().to_vec(),
            elements: self.format_elements(),
        }
    }

    /// Groebner basis of `I(X_G) + (extra...)` in the same ring.
    pub fn augmented(&self, extra: &[Polynomial], cap_pairs: usize) -> Result<GroebnerBasis> {
        let mut gens = self.elements.clone();
        gens.extend(extra.iter().cloned());
        let elements = buchberger(&self.ring, &gens, cap_pairs)?;
        Ok(GroebnerBasis { ring: self.ring.clone(), space: self.space.clone(), elements })
    }
}

/// `{ t_e - x_i x_j z } ∪ { x_i^2 - x_k^2 : i != k }` with `k` the largest
/// vertex, in the full block-ordered ring.
pub fn build_extended_generators(space: &VariableSpace, field: PrimeField) -> (PolyRing, Vec<Polynomial>) {
    let ring = space.full_ring(field);
    let n = ring.nvars();
    let x = |v: Vertex| space.vertices.binary_search(&v).expect("endpoint is a vertex");
    let mut gens = Vec::new();
    for (i, &e) in space.t_edges.iter().enumerate() {
        let t = Monomial::var(n, space.t_offset() + i);
        let mut exps = vec![0u16; n];
        exps[x(e.0)] = 1;
        exps[x(e.1)] = 1;
        exps[space.z_index()] = 1;
        gens.push(ring.binomial(Monomial::from_exponents(exps), t));
    }
    let k = space.num_x() - 1;
    for i in 0..k {
        gens.push(ring.binomial(Monomial::var_pow(n, i, 2), Monomial::var_pow(n, k, 2)));
    }
    (ring, gens)
}

/// Buchberger's algorithm with all variables of weight 1. See
/// [`buchberger_weighted`].
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial], cap_pairs: usize) -> Result<Vec<Polynomial>> {
    buchberger_weighted(ring, gens, &vec![1; ring.nvars()], cap_pairs)
}

fn weighted_degree(m: &Monomial, weights: &[u32]) -> u32 {
    m.exponents().iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

/// Buchberger's algorithm with the Gebauer–Möller pair update and the normal
/// selection strategy: the pair whose lcm has the smallest weighted degree
/// goes first, ties broken by pair index. When the generators are
/// homogeneous for `weights` this processes the ideal degree by degree.
///
/// Returns the reduced, monic basis sorted ascending by leading monomial.
pub fn buchberger_weighted(
    ring: &PolyRing,
    gens: &[Polynomial],
    weights: &[u32],
    cap_pairs: usize,
) -> Result<Vec<Polynomial>> {
    let mut engine = Engine {
        ring,
        weights,
        basis: Vec::new(),
        leads: Vec::new(),
        active: Vec::new(),
        pairs: BTreeSet::new(),
        created: 0,
        cap_pairs,
    };
    for g in gens {
        let g = ring.monic(g);
        if g.is_zero() {
            continue;
        }
        let g = ring.monic(&engine.reduce(&g));
        if g.is_zero() {
            continue;
        }
        if g.leading_monomial().unwrap().is_one() {
            return Ok(vec![ring.one()]);
        }
        engine.insert(g)?;
    }
    let mut reductions = 0usize;
    while let Some((_, i, j)) = engine.pairs.pop_first() {
        let s = ring.s_polynomial(&engine.basis[i], &engine.basis[j]);
        let h = engine.reduce(&s);
        reductions += 1;
        if h.is_zero() {
            continue;
        }
        let h = ring.monic(&h);
        if h.leading_monomial().unwrap().is_one() {
            return Ok(vec![ring.one()]);
        }
        engine.insert(h)?;
    }
    debug!(
        "buchberger: {} elements ({} active), {} pairs, {} S-reductions",
        engine.basis.len(),
        engine.active.iter().filter(|&&a| a).count(),
        engine.created,
        reductions
    );
    let kept: Vec<Polynomial> =
        engine.basis.into_iter().zip(engine.active).filter(|(_, a)| *a).map(|(f, _)| f).collect();
    Ok(autoreduce(ring, kept))
}

struct Engine<'a> {
    ring: &'a PolyRing,
    weights: &'a [u32],
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
    active: Vec<bool>,
    /// (weighted lcm degree, i, j) with i < j
    pairs: BTreeSet<(u32, usize, usize)>,
    created: usize,
    cap_pairs: usize,
}

impl Engine<'_> {
    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let idx: Vec<usize> = (0..self.basis.len()).filter(|&i| self.active[i]).collect();
        if idx.is_empty() {
            return f.clone();
        }
        let divisors: Vec<&Polynomial> = idx.iter().map(|&i| &self.basis[i]).collect();
        let leads: Vec<&Monomial> = idx.iter().map(|&i| &self.leads[i]).collect();
        self.ring.reduce_with(f, &divisors, &leads)
    }

    fn lcm(&self, i: usize, j: usize) -> Monomial {
        self.leads[i].lcm(&self.leads[j])
    }

    /// Gebauer–Möller update for a new element `h`.
    fn insert(&mut self, h: Polynomial) -> Result<()> {
        let hn = self.basis.len();
        let lh = h.leading_monomial().unwrap().clone();
        self.basis.push(h);
        self.leads.push(lh.clone());
        self.active.push(true);

        let candidates: Vec<usize> = (0..hn).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Monomial> = candidates.iter().map(|&g| self.lcm(g, hn)).collect();
        let coprime: Vec<bool> = candidates.iter().map(|&g| self.leads[g].is_coprime(&lh)).collect();
        // criteria M and F, processed sequentially: a pair survives if its
        // leading monomials are coprime or no other pair still pending or
        // already accepted has an lcm dividing its own
        #[derive(Clone, Copy, PartialEq)]
        enum State {
            Pending,
            Accepted,
            Dropped,
        }
        let mut state = vec![State::Pending; candidates.len()];
        for a in 0..candidates.len() {
            let dominated = !coprime[a]
                && (0..candidates.len())
                    .any(|b| b != a && state[b] != State::Dropped && lcms[b].divides(&lcms[a]));
            state[a] = if dominated { State::Dropped } else { State::Accepted };
        }
        let keep: Vec<bool> = state.iter().map(|&s| s == State::Accepted).collect();
        // criterion B on old pairs
        let old: Vec<(u32, usize, usize)> = self.pairs.iter().copied().collect();
        for (w, i, j) in old {
            let lij = self.lcm(i, j);
            if lh.divides(&lij) && self.lcm(i, hn) != lij && self.lcm(j, hn) != lij {
                self.pairs.remove(&(w, i, j));
            }
        }
        for (a, &g) in candidates.iter().enumerate() {
            // coprime leading monomials: the S-polynomial reduces to zero
            if keep[a] && !coprime[a] {
                self.created += 1;
                if self.created > self.cap_pairs {
                    return Err(Error::ResourceLimit { what: "Buchberger critical pairs", cap: self.cap_pairs });
                }
                self.pairs.insert((weighted_degree(&lcms[a], self.weights), g, hn));
            }
        }
        for g in candidates {
            if lh.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
        Ok(())
    }
}

/// Minimal basis (drop elements whose leading monomial is a multiple of
/// another's), then tail-reduce each element by the rest.
pub fn autoreduce(ring: &PolyRing, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut keep: Vec<Polynomial> = Vec::new();
    for (idx, f) in basis.iter().enumerate() {
        let lf = f.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(jdx, g)| {
            let lg = g.leading_monomial().unwrap();
            jdx != idx && lg.divides(lf) && (lg != lf || jdx < idx)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let f = &keep[i];
        let lead = ring.monomial(f.leading_monomial().unwrap().clone());
        let tail = ring.sub(&ring.monic(f), &lead);
        let tail = if others.is_empty() { tail } else { ring.reduce(&tail, &others) };
        reduced.push(ring.add(&lead, &tail));
    }
    reduced.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

/// Keeps the elements that only involve `t` variables and moves them into
/// the `t` ring. `full_basis` must be a Groebner basis under the block order
/// of [`VariableSpace::full_ring`].
pub fn eliminate(space: &VariableSpace, field: PrimeField, full_basis: &[Polynomial]) -> GroebnerBasis {
    let ring = space.t_ring(field);
    let range = space.t_offset()..space.nvars();
    let elements: Vec<Polynomial> = full_basis
        .iter()
        .filter(|f| f.supported_in(range.clone()))
        .map(|f| ring.resort(&f.restrict(range.clone())))
        .collect();
    let elements = if elements.is_empty() { elements } else { autoreduce(&ring, elements) };
    GroebnerBasis { ring, space: space.clone(), elements }
}

type CacheKey = (Vec<Edge>, u32, Vec<Edge>);

static CACHE: LazyLock<Mutex<HashMap<CacheKey, Arc<GroebnerBasis>>>> = LazyLock::new(Default::default);

/// Reduced Groebner basis of `I(X_G)` over `GF(p)`, grevlex on the `t`
/// variables in `t_order` (canonical edge order when `None`). Results are
/// cached per `(graph, p, t order)`.
pub fn ideal_of_graph(g: &Graph, p: u32, t_order: Option<&[Edge]>) -> Result<Arc<GroebnerBasis>> {
    ideal_of_graph_with_cap(g, p, t_order, DEFAULT_PAIR_CAP)
}

pub fn ideal_of_graph_with_cap(
    g: &Graph,
    p: u32,
    t_order: Option<&[Edge]>,
    cap_pairs: usize,
) -> Result<Arc<GroebnerBasis>> {
    let field = PrimeField::new(p)?;
    let space = VariableSpace::new(g, t_order)?;
    let key = (g.edges().to_vec(), p, space.t_edges.clone());
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let (ring, gens) = build_extended_generators(&space, field);
    let full = buchberger_weighted(&ring, &gens, &space.homogenizing_weights(), cap_pairs)?;
    let gb = Arc::new(eliminate(&space, field, &full));
    info!("I(X_G) for {} over GF({}): {} generators", g, p, gb.len());
    CACHE.lock().unwrap().insert(key, gb.clone());
    Ok(gb)
}
