use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// A polynomial ring `GF(p)[v_0, ..., v_{n-1}]` with a fixed monomial order
/// and variable names. Polynomials do not carry their ring; every operation
/// that depends on the field or order takes the ring explicitly.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: PrimeField,
    order: MonomialOrder,
    names: Arc<[String]>,
    lookup: Arc<HashMap<String, usize>>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.order == other.order && self.names == other.names
    }
}

impl Eq for PolyRing {}

/// Terms sorted strictly descending by the ring's order, all coefficients
/// nonzero. The empty term list is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    terms: Vec<(u32, Monomial)>,
}

impl PolyRing {
    pub fn new(field: PrimeField, order: MonomialOrder, names: Vec<String>) -> PolyRing {
        let lookup = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        PolyRing { field, order, names: names.into(), lookup: Arc::new(lookup) }
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { order, ..self.clone() }
    }

    /// Registers an extra spelling for an existing variable.
    pub fn with_alias(mut self, alias: &str, var: usize) -> PolyRing {
        if !self.lookup.contains_key(alias) {
            Arc::make_mut(&mut self.lookup).insert(alias.to_string(), var);
        }
        self
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.monomial(Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var(self.nvars(), i))
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial { terms: vec![(1, m)] }
    }

    /// `a - b` for monomials, normalized (zero if `a == b`).
    pub fn binomial(&self, a: Monomial, b: Monomial) -> Polynomial {
        self.from_terms(vec![(1, a), (self.field.neg(1), b)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(&self, mut terms: Vec<(u32, Monomial)>) -> Polynomial {
        terms.sort_by(|a, b| self.compare(&b.1, &a.1));
        let mut out: Vec<(u32, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            let c = c % self.field.characteristic();
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = self.field.add(last.0, c),
                _ => out.push((c, m)),
            }
            if out.last().is_some_and(|t| t.0 == 0) {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, 1, &Monomial::one(self.nvars()), g)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, self.field.neg(1), &Monomial::one(self.nvars()), g)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, self.field.neg(1))
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial { terms: f.terms.iter().map(|(a, m)| (self.field.mul(*a, c), m.clone())).collect() }
    }

    pub fn mul_term(&self, f: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial { terms: f.terms.iter().map(|(a, n)| (self.field.mul(*a, c), n.mul(m))).collect() }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = self.zero();
        for (c, m) in &g.terms {
            acc = self.add_scaled(&acc, *c, m, f);
        }
        acc
    }

    /// `f + c * m * g` by a single merge pass.
    pub fn add_scaled(&self, f: &Polynomial, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        let field = self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut fi = f.terms.iter().peekable();
        let mut gi = g.terms.iter().map(|(a, n)| (field.mul(*a, c), n.mul(m))).peekable();
        loop {
            let ord = match (fi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => self.compare(&a.1, &b.1),
            };
            match ord {
                Ordering::Greater => out.push(fi.next().unwrap().clone()),
                Ordering::Less => {
                    let t = gi.next().unwrap();
                    if t.0 != 0 {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let (a, mono) = fi.next().unwrap();
                    let (b, _) = gi.next().unwrap();
                    let s = field.add(*a, b);
                    if s != 0 {
                        out.push((s, mono.clone()));
                    }
                }
            }
        }
        Polynomial { terms: out }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coefficient() {
            None | Some(1) => f.clone(),
            Some(c) => self.scale(f, self.field.inv(c).expect("leading coefficient is nonzero")),
        }
    }

    /// Re-sorts a polynomial's terms under this ring's order (used after
    /// moving a polynomial between orders on the same variables).
    pub fn resort(&self, f: &Polynomial) -> Polynomial {
        self.from_terms(f.terms.clone())
    }

    /// The S-polynomial `(L/lt f) f - (L/lt g) g` with `L = lcm(lm f, lm g)`.
    pub fn s_polynomial(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (cf, mf) = f.leading_term().expect("nonzero f");
        let (cg, mg) = g.leading_term().expect("nonzero g");
        let l = mf.lcm(mg);
        let field = self.field;
        let left = self.mul_term(f, field.inv(*cf).unwrap(), &mf.quotient_of(&l));
        let neg_inv_g = field.neg(field.inv(*cg).unwrap());
        self.add_scaled(&left, neg_inv_g, &mg.quotient_of(&l), g)
    }

    /// Multivariate division: `f = sum q_i d_i + r`, with no term of `r`
    /// divisible by any leading monomial of the divisors. Divisors are tried
    /// in the order given.
    pub fn divide(&self, f: &Polynomial, divisors: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
        let mut quotients = vec![self.zero(); divisors.len()];
        let mut remainder = Vec::new();
        let mut p = f.clone();
        let field = self.field;
        while let Some((c, m)) = p.leading_term().map(|(c, m)| (*c, m.clone())) {
            let hit = divisors.iter().position(|d| d.leading_monomial().is_some_and(|lm| lm.divides(&m)));
            match hit {
                Some(i) => {
                    let d = &divisors[i];
                    let (dc, dm) = d.leading_term().unwrap();
                    let q = field.mul(c, field.inv(*dc).unwrap());
                    let qm = dm.quotient_of(&m);
                    quotients[i] = self.add(&quotients[i], &Polynomial { terms: vec![(q, qm.clone())] });
                    p = self.add_scaled(&p, field.neg(q), &qm, d);
                }
                None => {
                    remainder.push((c, m));
                    p.terms.remove(0);
                }
            }
        }
        (quotients, Polynomial { terms: remainder })
    }

    /// Remainder of [`PolyRing::divide`] without tracking quotients.
    pub fn reduce(&self, f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
        let leads: Vec<&Monomial> = divisors.iter().map(|d| d.leading_monomial().expect("nonzero divisor")).collect();
        let divisors: Vec<&Polynomial> = divisors.iter().collect();
        self.reduce_with(f, &divisors, &leads)
    }

    pub(crate) fn reduce_with(&self, f: &Polynomial, divisors: &[&Polynomial], leads: &[&Monomial]) -> Polynomial {
        let field = self.field;
        let masks: Vec<u64> = leads.iter().map(|m| m.support_mask()).collect();
        let mut p = f.clone();
        let mut start = 0;
        // p.terms[..start] is already irreducible
        while start < p.terms.len() {
            let (c, m) = &p.terms[start];
            let mm = m.support_mask();
            let hit = (0..leads.len()).find(|&i| masks[i] & !mm == 0 && leads[i].divides(m));
            match hit {
                Some(i) => {
                    let d = divisors[i];
                    let q = field.mul(*c, field.inv(d.terms[0].0).unwrap());
                    let qm = leads[i].quotient_of(m);
                    let tail = Polynomial { terms: p.terms.split_off(start) };
                    let reduced = self.add_scaled(&tail, field.neg(q), &qm, d);
                    p.terms.extend(reduced.terms);
                }
                None => start += 1,
            }
        }
        p
    }

    /// Text form: terms in descending order, e.g. `2*t1_2^2*t2_3 - t3_4*t1_4`.
    /// Coefficients print as signed representatives.
    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (c, m)) in f.terms.iter().enumerate() {
            let s = self.field.signed(*c);
            let (neg, mag) = if s < 0 { (true, -s) } else { (false, s) };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = m.format_with(&self.names);
            match (mag, m.is_one()) {
                (1, _) => out.push_str(&body),
                (_, true) => out.push_str(&mag.to_string()),
                _ => out.push_str(&format!("{mag}*{body}")),
            }
        }
        out
    }

    /// Parses the text form produced by [`PolyRing::format`]. Accepts `+`/`-`
    /// separated terms of `*`-joined factors, each a variable, a variable
    /// power `v^k`, or an integer coefficient.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            terms.push(self.parse_term(term, sign)?);
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -1 } else { 1 };
            rest = &tail[1..];
        }
        Ok(self.from_terms(terms))
    }

    fn parse_term(&self, term: &str, sign: i64) -> Result<(u32, Monomial)> {
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut coeff = self.field.element(sign);
        let mut exps = vec![0u16; self.nvars()];
        for factor in term.split('*') {
            if let Ok(n) = factor.parse::<i64>() {
                coeff = self.field.mul(coeff, self.field.element(n));
                continue;
            }
            let (name, pow) = match factor.split_once('^') {
                Some((n, k)) => (n, k.parse::<u16>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                None => (factor, 1),
            };
            let i = self.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            exps[i] += pow;
        }
        Ok((coeff, Monomial::from_exponents(exps)))
    }
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u32, Monomial)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(u32, Monomial)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_binomial(&self) -> bool {
        self.terms.len() == 2
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.degree() == w[1].1.degree())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.1)
    }

    /// True if every monomial only uses variables in `range`.
    pub fn supported_in(&self, range: std::ops::Range<usize>) -> bool {
        self.terms.iter().all(|t| t.1.supported_in(range.clone()))
    }

    /// Restricts every monomial to `range` (callers check
    /// [`Polynomial::supported_in`] first). Term order is preserved, which
    /// is correct when the order on the restricted variables agrees with the
    /// original order on monomials supported there.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(c, m)| (*c, m.restrict(range.clone()))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u32, order: MonomialOrder, names: &[&str]) -> PolyRing {
        PolyRing::new(PrimeField::new(p).unwrap(), order, names.iter().map(|s| s.to_string()).collect())
    }

    fn c4_ring() -> PolyRing {
        ring(3, MonomialOrder::Grevlex, &["t12", "t23", "t34", "t14"])
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let r = c4_ring();
        let f = r.parse("2*t12^2*t23 - t34*t14").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(r.format(&f), "-t12^2*t23 - t34*t14");
        assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
        assert_eq!(r.format(&r.parse("t12 - t12").unwrap()), "0");
        assert!(r.parse("t99").is_err());
        assert!(r.parse("t12 +").is_err());
    }

    #[test]
    fn division_examples() {
        let r = c4_ring();
        let (q, rem) = r.divide(&r.parse("t12^2").unwrap(), &[r.parse("t12^2 - t14^2").unwrap()]);
        assert_eq!(rem, r.parse("t14^2").unwrap());
        assert_eq!(q[0], r.one());
        let f = r.parse("t12*t34 - t23*t14").unwrap();
        assert!(r.divide(&f, std::slice::from_ref(&f)).1.is_zero());
    }

    #[test]
    fn division_under_block_order() {
        // x1 > x2 > z | t12
        let r = ring(3, MonomialOrder::BlockElimination { split: 3 }, &["x1", "x2", "z", "t12"]);
        let f = r.parse("x1*x2*z - t12").unwrap();
        let d = r.parse("t12 - x1*x2*z").unwrap();
        assert_eq!(d.leading_monomial(), r.parse("x1*x2*z").unwrap().leading_monomial());
        let (q, rem) = r.divide(&f, std::slice::from_ref(&d));
        assert!(rem.is_zero());
        // over GF(3) the quotient is -1 = 2
        assert_eq!(q[0], r.scale(&r.one(), 2));
        assert_eq!(r.add(&r.mul(&q[0], &d), &rem), f);
    }

    #[test]
    fn s_polynomial_examples() {
        let r = ring(3, MonomialOrder::Grevlex, &["t12", "t23", "t14"]);
        let f = r.parse("t12^2 - t14^2").unwrap();
        let g = r.parse("t23^2 - t14^2").unwrap();
        let s = r.s_polynomial(&f, &g);
        assert_eq!(r.neg(&s), r.parse("t14^2*t23^2 - t14^2*t12^2").unwrap());
        assert!(r.s_polynomial(&f, &f).is_zero());
        let m = r.parse("t12*t23").unwrap();
        assert!(r.s_polynomial(&m, &f).is_monomial());
    }

    #[test]
    fn format_char_two_and_constants() {
        let r = ring(2, MonomialOrder::Grevlex, &["a", "b"]);
        assert_eq!(r.format(&r.parse("a - b").unwrap()), "a + b");
        let r7 = ring(7, MonomialOrder::Grevlex, &["a"]);
        assert_eq!(r7.format(&r7.parse("3*a + 5").unwrap()), "3*a - 2");
    }

    fn binomial_strategy(n: usize) -> impl Strategy<Value = (Vec<u16>, Vec<u16>)> {
        (proptest::collection::vec(0u16..3, n), proptest::collection::vec(0u16..3, n))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn binomial_closure((a, b) in binomial_strategy(4), (c, d) in binomial_strategy(4), homog in any::<bool>()) {
            let r = ring(3, MonomialOrder::Grevlex, &["a", "b", "c", "d"]);
            let mk = |x: Vec<u16>, y: Vec<u16>| {
                let (mut x, mut y) = (x, y);
                if homog {
                    // pad the lighter side on the last variable to equalize degree
                    let (dx, dy): (u16, u16) = (x.iter().sum(), y.iter().sum());
                    if dx < dy { x[3] += dy - dx } else { y[3] += dx - dy }
                }
                r.binomial(Monomial::from_exponents(x), Monomial::from_exponents(y))
            };
            let f = mk(a, b);
            let g = mk(c, d);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let s = r.s_polynomial(&f, &g);
            prop_assert!(s.num_terms() <= 2);
            let (q, rem) = r.divide(&f, std::slice::from_ref(&g));
            prop_assert!(rem.num_terms() <= 2);
            prop_assert_eq!(r.add(&r.mul(&q[0], &g), &rem), f.clone());
            let lg = g.leading_monomial().unwrap();
            prop_assert!(rem.monomials().all(|m| !lg.divides(m)));
            if homog {
                prop_assert!(rem.is_homogeneous() && q[0].is_homogeneous());
            }
            prop_assert_eq!(r.reduce(&f, std::slice::from_ref(&g)), rem);
        }
    }
}
