//! Exact multivariate polynomial arithmetic over GF(p), monomial orders,
//! a Buchberger engine and the ideal operations the rest of the crate uses.

mod groebner;
mod ideal;
mod parse;
mod poly;
mod ring;

pub use groebner::{groebner, is_groebner_basis, s_polynomial, GroebnerBasis};
pub use ideal::{name_map, Ideal};
pub use parse::parse_poly;
pub use poly::Poly;
pub use ring::{Block, Monomial, MonomialOrder, PolyRing, Variable};
