use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

/// A monomial order. Variable `0` is always the largest variable; the rest
/// decrease with their index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Variables `0..split` form a block that dominates the block
    /// `split..`; grevlex inside each block. Any monomial involving the
    /// first block is larger than every monomial in the second block alone.
    BlockElimination { split: usize },
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                let (ea, eb) = (a.exponents(), b.exponents());
                for i in (0..ea.len()).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::BlockElimination { split } => {
                let (ea, eb) = (a.exponents(), b.exponents());
                grevlex(&ea[..split], &eb[..split]).then_with(|| grevlex(&ea[split..], &eb[split..]))
            }
        }
    }

    /// The order induced on the last block of variables.
    pub fn tail_order(&self) -> MonomialOrder {
        match self {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::Grevlex,
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::BlockElimination { split } => format!("block-elimination({split})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn examples() {
        // variables t12 > t23
        assert_eq!(MonomialOrder::Grevlex.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // x1, z | t12
        let block = MonomialOrder::BlockElimination { split: 2 };
        assert_eq!(block.compare(&m(&[1, 0, 0]), &m(&[0, 0, 3])), Ordering::Greater);
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, block] {
            assert_eq!(o.compare(&m(&[1, 2, 0]), &m(&[1, 2, 0])), Ordering::Equal);
        }
        // grevlex vs lex differ on x1*x3 vs x2^2
        assert_eq!(MonomialOrder::Grevlex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..=4).prop_map(|split| MonomialOrder::BlockElimination { split }),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 4).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #[test]
        fn multiplicative_and_well_ordered(o in orders(), a in mono(), b in mono(), c in mono()) {
            let ab = o.compare(&a, &b);
            prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_eq!(o.compare(&b, &a), ab.reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_ne!(o.compare(&Monomial::one(4), &a), Ordering::Greater);
        }

        #[test]
        fn transitive(o in orders(), a in mono(), b in mono(), c in mono()) {
            if o.compare(&a, &b) != Ordering::Less && o.compare(&b, &c) != Ordering::Less {
                prop_assert_ne!(o.compare(&a, &c), Ordering::Less);
            }
        }
    }
}
