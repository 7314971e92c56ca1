//! Exact commutative-algebra toolkit for plane polynomial maps.
//!
//! Given an endomorphism of `K[x,y]` with images `(P, Q)`, the toolkit builds
//! the intermediate ring `K[P,Q][x+λy] ≅ K[u,v,s]/(g)`, tests the sufficient
//! conditions for invertibility (smoothness, normality via the hypersurface
//! form of Serre's criterion, Krull dimension), computes explicit inverses by
//! elimination, and reduces finite free complexes modulo ideals.
//!
//! All arithmetic is exact over the rationals with arbitrary-precision
//! integer backing; every operation is a pure function and deterministic.

pub mod autgen;
pub mod complexes;
pub mod error;
pub mod groebner;
pub mod inversion;
pub mod keller;
pub mod polyring;
pub mod presentation;
pub mod ringchecks;
pub mod rng;

pub use error::{Error, Result};
pub use keller::PolyMap;
pub use polyring::{parse_poly, Monomial, Polynomial, Rational, VarSet};
