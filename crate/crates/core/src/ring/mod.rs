//! Exact coefficient fields and multivariate polynomials.

mod coeff;
mod context;
mod field;
mod monomial;
mod parse;
mod poly;

pub use coeff::Coeff;
pub use context::{is_identifier, Context, FRESH_PREFIX};
pub use field::{is_prime, Field, MAX_PRIME};
pub use monomial::Monomial;
pub use parse::{parse_in, parse_poly};
pub use poly::Poly;
