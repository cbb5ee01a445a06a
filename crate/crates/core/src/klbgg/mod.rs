//! Kazhdan–Lusztig polynomials and BGG category O multiplicities for
//! arbitrary rational weights over a root system or one of its subsystems.

mod bgg;
mod cache;
mod kl;

pub use bgg::{bgg_mult, decomposition_matrix, dot_orbit, integral_subsystem, DecompositionMatrix};
pub use cache::{GroupEntry, KlCache, KlKey, CACHE_HEADER};
pub use kl::{compute_kl_table, KLPolynomial, KlTable};

use crate::error::Result;
use crate::weyl::WeylElement;

/// `P_{x,w}` for elements of the Weyl group with Cartan matrix `cartan`.
pub fn kl_polynomial(
    cartan: &[Vec<i64>],
    x: &WeylElement,
    w: &WeylElement,
    cache: &KlCache,
) -> Result<KLPolynomial> {
    let entry = cache.group(cartan)?;
    let g = entry.group();
    let xi = g
        .index_of(x)
        .ok_or_else(|| crate::Error::InvalidWord(x.to_string()))?;
    let wi = g
        .index_of(w)
        .ok_or_else(|| crate::Error::InvalidWord(w.to_string()))?;
    Ok(cache.kl(&entry, xi, wi))
}
