use std::fmt;

/// A monomial over a fixed number of variables, stored as a dense exponent
/// vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars].into_boxed_slice(), degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, k: u16) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = k;
        Monomial { exps: exps.into_boxed_slice(), degree: k as u32 }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Monomial {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: exps.into_boxed_slice(), degree }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Indices of variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Bit `i mod 64` set for every variable `i` in the support. If `a`
    /// divides `b` then `a.support_mask() & !b.support_mask() == 0`.
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps: exps.into_boxed_slice(), degree: self.degree + other.degree }
    }

    /// `self | other`
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Vec<u16> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { exps: exps.into_boxed_slice(), degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Self::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every variable with nonzero exponent lies in `range`.
    pub fn supported_in(&self, range: std::ops::Range<usize>) -> bool {
        self.exps.iter().enumerate().all(|(i, &e)| e == 0 || range.contains(&i))
    }

    /// Restricts to the variables in `range`, re-indexed from zero.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Monomial {
        Self::from_exponents(self.exps[range].to_vec())
    }

    /// Writes the monomial using the given variable names; `1` for the unit.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .support()
            .map(|i| match self.exps[i] {
                1 => names[i].clone(),
                k => format!("{}^{}", names[i], k),
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("v{i}")).collect();
        f.write_str(&self.format_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Monomial::from_exponents(vec![2, 0, 1]);
        let b = Monomial::from_exponents(vec![1, 1, 0]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.mul(&b).exponents(), &[3, 1, 1]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 1, 1]);
        assert_eq!(a.gcd(&b).exponents(), &[1, 0, 0]);
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(3, 0).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(Monomial::var(3, 0).quotient_of(&a).exponents(), &[1, 0, 1]);
        assert!(Monomial::var(3, 2).supported_in(1..3));
        assert!(!a.supported_in(1..3));
    }
}
