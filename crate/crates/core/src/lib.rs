//! Exact arithmetic and spectral theory of gcd-graphs `G_f(D)` over `F_q[x]`.

pub mod arith;
pub mod census;
pub mod charpoly;
pub mod cli;
pub mod clique;
pub mod config;
pub mod error;
pub mod field;
pub mod graph;
pub mod iso;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod prime_power;
pub mod ramanujan;
pub mod verify;

pub use charpoly::CharPoly;
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use graph::{build_graph, char_poly_spectral, GcdGraph, PlainGraph};
pub use poly::{divisors, Factorization, Poly};
pub use ramanujan::{ramanujan_sum, recover_divisor_set, spectral_vector, SpectralVector};
