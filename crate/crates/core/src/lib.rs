//! Character varieties of the double twist knots J(k,l): exact models,
//! smoothness certificates, genera and classical invariants.

pub mod exactalg;
pub mod geometry;
pub mod knotprops;
pub mod newton;
pub mod models;
pub mod polyseq;
pub mod report;
pub mod riley;
pub mod serial;
pub mod suites;

pub use exactalg::{BiPoly, LaurentPoly, QuadElem, QuadRing, UniPoly, Var};
