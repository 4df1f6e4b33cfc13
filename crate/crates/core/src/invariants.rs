//! Initial ideals, Hilbert functions, degree and regularity of `I(X_G)`.
//!
//! The quotient `K[E_G]/I(X_G)` is one-dimensional and Cohen–Macaulay, and
//! every variable is a non-zero-divisor on it. Two consequences drive this
//! module:
//!
//! * the Hilbert function is non-decreasing and, once two consecutive
//!   values agree, constant; its eventual value is the degree;
//! * the regularity of the quotient equals its index of regularity, the
//!   first degree where the Hilbert function reaches the degree. The
//!   regularity of the ideal is one more.
//!
//! The regularity is also computed by an Artinian reduction: the quotient by
//! `(I(X_G), t_e)` vanishes in degree `k` exactly when `k >= reg I(X_G)`.

use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::groebner::{GroebnerBasis, DEFAULT_PAIR_CAP};

/// A monomial ideal given by its minimal generators, sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `gens` under divisibility.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        gens.sort_by_key(|m| m.degree());
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in gens {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        minimal.sort();
        MonomialIdeal { nvars, generators: minimal }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Standard monomials (outside the ideal) of each degree `0..=upto`.
    ///
    /// The standard monomials form an order ideal, so each one of degree
    /// `d + 1` arises from one of degree `d` by multiplying with a variable
    /// at or after its last variable; this visits each exactly once.
    pub fn standard_monomials(&self, upto: u32) -> Vec<Vec<Monomial>> {
        let mut layers = vec![if self.contains(&Monomial::one(self.nvars)) {
            Vec::new()
        } else {
            vec![Monomial::one(self.nvars)]
        }];
        for _ in 0..upto {
            let prev = layers.last().unwrap();
            let mut next = Vec::new();
            for m in prev {
                let last = m.support().last().unwrap_or(0);
                for i in last..self.nvars {
                    let candidate = m.mul(&Monomial::var(self.nvars, i));
                    if !self.contains(&candidate) {
                        next.push(candidate);
                    }
                }
            }
            layers.push(next);
        }
        layers
    }

    /// Hilbert function of the quotient at every degree `0..=upto`.
    pub fn hilbert_prefix(&self, upto: u32) -> Vec<u64> {
        self.standard_monomials(upto).iter().map(|l| l.len() as u64).collect()
    }

    pub fn hilbert_function(&self, d: u32) -> u64 {
        self.hilbert_prefix(d)[d as usize]
    }
}

/// Leading monomials of a Groebner basis, minimalized.
pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(gb.ring().nvars(), gb.leading_monomials())
}

/// `2^(|V| - b0)` for non-bipartite graphs, `2^(|V| - b0 - 1)` for bipartite.
pub fn degree_formula(g: &Graph) -> u64 {
    let exp = g.num_vertices() - g.num_components() - usize::from(g.is_bipartite());
    1u64 << exp
}

/// Largest degree examined when waiting for a Hilbert function to settle.
fn degree_limit(g: &Graph) -> u32 {
    g.num_vertices() as u32 + 2
}

/// Eventual value of the Hilbert function, found as the first `HF(d)` with
/// `HF(d) = HF(d + 1)`.
pub fn degree_from_hf(mi: &MonomialIdeal, g: &Graph) -> Result<u64> {
    let limit = degree_limit(g);
    let hf = mi.hilbert_prefix(limit);
    hf.windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
        .ok_or_else(|| Error::Inconsistency(format!("Hilbert function did not settle by degree {limit}: {hf:?}")))
}

/// Degree of `I(X_G)`, checked against the Hilbert function of `gb`.
pub fn degree(g: &Graph, gb: &GroebnerBasis) -> Result<u64> {
    let formula = degree_formula(g);
    let from_hf = degree_from_hf(&initial_ideal(gb), g)?;
    if formula != from_hf {
        return Err(Error::Inconsistency(format!(
            "degree formula gives {formula}, Hilbert function settles at {from_hf}"
        )));
    }
    Ok(formula)
}

/// Hilbert function values `HF(0), ..., HF(ir)` where `ir` is the first
/// degree at which the Hilbert function equals the degree.
pub fn hilbert_until_stable(gb: &GroebnerBasis, g: &Graph) -> Result<Vec<u64>> {
    let target = degree_formula(g);
    let limit = degree_limit(g);
    let hf = initial_ideal(gb).hilbert_prefix(limit);
    let mut out = Vec::new();
    for (d, &h) in hf.iter().enumerate() {
        if h > target {
            return Err(Error::Inconsistency(format!("HF({d}) = {h} exceeds the degree {target}")));
        }
        out.push(h);
        if h == target {
            return Ok(out);
        }
    }
    Err(Error::Inconsistency(format!("Hilbert function never reached {target} by degree {limit}: {hf:?}")))
}

/// `reg I(X_G) = ir + 1`, with `ir` the index of regularity of the quotient.
pub fn regularity(gb: &GroebnerBasis, g: &Graph) -> Result<u32> {
    let hf = hilbert_until_stable(gb, g)?;
    Ok(hf.len() as u32)
}

/// Smallest `k` such that every degree-`k` monomial lies in `(I(X_G), t_e)`,
/// computed from a Groebner basis of that ideal. Equals `reg I(X_G)`.
pub fn regularity_artinian(gb: &GroebnerBasis, e: Edge) -> Result<u32> {
    let var = gb
        .edge_var(e)
        .ok_or_else(|| Error::Precondition(format!("{}-{} is not an edge", e.0, e.1)))?;
    let ring = gb.ring();
    let aug = gb.augmented(&[ring.var(var)], DEFAULT_PAIR_CAP)?;
    let mi = initial_ideal(&aug);
    // the Artinian quotient vanishes by degree reg <= |V| + 1
    let limit = gb.space().num_x() as u32 + 1;
    let hf = mi.hilbert_prefix(limit);
    hf.iter()
        .position(|&h| h == 0)
        .map(|k| k as u32)
        .ok_or_else(|| Error::Inconsistency(format!("(I, t_e) nonzero through degree {limit}: {hf:?}")))
}

/// Whether `m` lies in `I(X_G)`, or in `(I(X_G), t^delta)` when `extra` is
/// given, decided by reduction modulo a Groebner basis.
pub fn monomial_membership(m: &Monomial, gb: &GroebnerBasis, extra: Option<&Monomial>) -> Result<bool> {
    let ring = gb.ring();
    let f = ring.monomial(m.clone());
    match extra {
        None => Ok(gb.contains(&f)),
        Some(delta) => {
            if delta.divides(m) {
                return Ok(true);
            }
            let aug = gb.augmented(&[ring.monomial(delta.clone())], DEFAULT_PAIR_CAP)?;
            Ok(aug.contains(&f))
        }
    }
}

/// A monomial `t^beta` of the same degree as `m` with `t^delta | t^beta`
/// and `m - t^beta` in `I(X_G)`, found by exhaustive search. Such a
/// monomial exists exactly when `m` lies in `(I(X_G), t^delta)`.
pub fn replacement_witness(m: &Monomial, gb: &GroebnerBasis, delta: &Monomial) -> Option<Monomial> {
    if delta.degree() > m.degree() {
        return None;
    }
    let ring = gb.ring();
    let n = ring.nvars();
    let k = m.degree() - delta.degree();
    let mut found = None;
    for_each_monomial(n, k, &mut |gamma| {
        let beta = delta.mul(gamma);
        if gb.contains(&ring.binomial(m.clone(), beta.clone())) {
            found = Some(beta);
            return false;
        }
        true
    });
    found
}

/// Calls `f` on every monomial of degree `d` in `n` variables until it
/// returns `false`.
pub fn for_each_monomial(n: usize, d: u32, f: &mut dyn FnMut(&Monomial) -> bool) {
    fn rec(exps: &mut Vec<u16>, i: usize, left: u32, f: &mut dyn FnMut(&Monomial) -> bool) -> bool {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            let keep_going = f(&Monomial::from_exponents(exps.clone()));
            exps[i] = 0;
            return keep_going;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            if !rec(exps, i + 1, left - e, f) {
                exps[i] = 0;
                return false;
            }
        }
        exps[i] = 0;
        true
    }
    if n == 0 {
        if d == 0 {
            f(&Monomial::one(0));
        }
        return;
    }
    rec(&mut vec![0; n], 0, d, f);
}

/// Decides `t^alpha - t^beta in I(X_G)` combinatorially: with `H` the edges
/// whose variable appears to an odd power, the binomial lies in the ideal
/// iff every vertex has even degree in `H`. `edges[i]` is the edge of
/// variable `i`. Requires equal degrees and coprime monomials.
pub fn binomial_in_ideal_oracle(g: &Graph, edges: &[Edge], alpha: &Monomial, beta: &Monomial) -> Result<bool> {
    if alpha.degree() != beta.degree() {
        return Err(Error::Precondition("binomial is not homogeneous".into()));
    }
    if !alpha.is_coprime(beta) {
        return Err(Error::Precondition("monomials are not coprime".into()));
    }
    if alpha.nvars() != edges.len() || beta.nvars() != edges.len() {
        return Err(Error::Precondition("monomials do not match the edge variables".into()));
    }
    let mut parity = std::collections::BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        if g.edge_index(e.0, e.1).is_none() {
            return Err(Error::Precondition(format!("{}-{} is not an edge", e.0, e.1)));
        }
        if (alpha.exponent(i) + beta.exponent(i)) % 2 == 1 {
            for v in [e.0, e.1] {
                *parity.entry(v).or_insert(0u32) ^= 1;
            }
        }
    }
    Ok(parity.values().all(|&p| p == 0))
}

/// `t^alpha - t^beta` as a polynomial of the basis' ring.
pub fn binomial(gb: &GroebnerBasis, alpha: &Monomial, beta: &Monomial) -> Polynomial {
    gb.ring().binomial(alpha.clone(), beta.clone())
}
