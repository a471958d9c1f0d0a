//! Spectra and spectral symmetries of periodic Feinberg-Zee hopping operators.
//!
//! A hopping operator is the doubly infinite tridiagonal matrix with 1 on the
//! superdiagonal and a ±1 sequence on the subdiagonal. For an `m`-periodic
//! subdiagonal `k` the spectrum is the preimage of a segment under a monic
//! integer polynomial `p_k` of degree `m`. This crate computes those
//! polynomials exactly, enumerates the set `S` of symmetry polynomials (the
//! `p_k` that are invariant under swapping the final `(-1, 1)` tail of `k`),
//! verifies the structural identities behind that symmetry on exact integer
//! truncations, and renders the resulting spectral subsets of the complex
//! plane (polynomial preimages of the unit disk, iterated preimages, filled
//! Julia sets, periodic spectra as point clouds).
//!
//! All polynomial arithmetic is exact over arbitrary-precision integers;
//! floating point enters only through complex evaluation, root finding and
//! rasterization, which are generic over the scalar type. The concrete
//! aliases below pin the instantiations used throughout the CLI.

pub mod band;
mod error;
pub mod hopping;
pub mod poly;
pub mod render;
pub mod roots;
pub mod symmetries;
pub mod theorems;

pub use error::{Error, Result};

/// Exact integer-coefficient polynomial; the coefficient ring used for every
/// `p_k`, `q`, `r` and their compositions.
pub type IntPoly = poly::Poly<num_bigint::BigInt>;

/// Double-precision complex scalar used by evaluation, spectra and rendering.
pub type C64 = num_complex::Complex<f64>;

/// Default window used by the renderers: origin-centered square of half-width
/// 1.8, which covers the spectral sets of interest.
pub const DEFAULT_HALF_WIDTH: f64 = 1.8;
