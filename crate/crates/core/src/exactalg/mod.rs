//! Exact arithmetic kernel: integer and rational polynomials in one and two
//! variables, Laurent polynomials in λ, quadratic integers, gcds, resultants,
//! finite-field degree patterns and root finding.

pub mod bipoly;
pub mod laurent;
pub mod modp;
pub mod poly;
pub mod qpoly;
pub mod quad;
pub mod resultant;
pub mod roots;
pub mod text;

use thiserror::Error;

pub use bipoly::{resultant, BiPoly};
pub use laurent::LaurentPoly;
pub use modp::{irreducibility_analysis, is_prime, modp_degree_pattern, Irreducibility, IrreducibleWitness};
pub use poly::{poly_gcd, UniPoly, Var};
pub use qpoly::{QPoly, RatPoly};
pub use quad::{QuadElem, QuadRing};
pub use roots::{complex_roots, rational_roots};
pub use text::{parse_bi, parse_uni};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("undefined resultant: both inputs are zero")]
    UndefinedResultant,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial not allowed here")]
    ConstantInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("could not factor {0} for rational-root candidates")]
    FactorLimit(String),
    #[error("root iteration did not converge")]
    NoConvergence { best: Vec<(f64, f64)> },
    #[error("parse error: {0}")]
    Parse(String),
}
