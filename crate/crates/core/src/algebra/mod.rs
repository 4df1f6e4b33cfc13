//! Prime fields, monomials, monomial orders and sparse polynomials.

mod field;
mod monomial;
mod order;
mod poly;

pub use field::{is_prime, PrimeField};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{PolyRing, Polynomial};
