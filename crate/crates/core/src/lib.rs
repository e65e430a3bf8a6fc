//! Exact arithmetic for the inverse stability of binomials `φ(z) = z^d + c`.
//!
//! A polynomial `φ` is *inversely stable* over a field `K` when every
//! denominator `g_n` of the reduced iterates `Φ^(n) = f_n / g_n` of
//! `Φ = 1/φ` is irreducible over `K`. This crate provides:
//!
//! - [`scalars`]: integer/rational power predicates, Legendre symbols, primes.
//! - [`finite_field`]: `F_p` and `F_{p^k}` arithmetic, the `m`-free predicate, norms.
//! - [`polyring`]: dense polynomials over exact domains, gcd, Yun, `n_0`.
//! - [`irreducibility`]: binomial criteria, Rabin's test, certification over `Q`.
//! - [`dynamics`]: reduced iterates of `1/φ` and the orbit of `∞`.
//! - [`xseq`]: the `x_n` recurrence, its matrix form, and the pair-state cycle scanner.
//! - [`stability`]: verdict engines over `F_q`, `Z` and `Q[t]`, plus cross-validation.
//! - [`charsums`]: quadratic character sums and the Fermat-prime enumeration.
//! - [`galois_norm`]: norms of Möbius values in binomial extensions.
//! - [`selftest`]: the named verification suites exposed by the CLI.

pub mod charsums;
pub mod dynamics;
pub mod error;
pub mod finite_field;
pub mod galois_norm;
pub mod irreducibility;
pub mod parse;
pub mod polyring;
pub mod ring;
pub mod scalars;
pub mod selftest;
pub mod stability;
pub mod xseq;

pub use error::{Error, Result};
pub use finite_field::{FieldElem, FiniteField};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational as BigRat;
pub use polyring::{Poly, PolyRing};
pub use ring::{Field, Integers, Rationals, Ring};
pub use stability::Verdict;
