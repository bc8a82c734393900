//! Exact quadratic-ring arithmetic and the group laws used throughout the crate.

mod affine;
mod bs;
mod elem;
pub mod heis;
mod quad;
mod sl2;

pub use affine::Affine;
pub use bs::{Bs, BsLetter, BS_MAX_BITS, BS_MAX_EXPONENT};
pub use elem::GroupElem;
pub use heis::HeisElem;
pub use quad::{is_squarefree, GaloisData, QuadInt};
pub use sl2::Sl2;

use crate::error::Result;

pub fn galois_data(x: &QuadInt) -> GaloisData {
    x.galois_data()
}

pub fn heis_mul(g: &HeisElem, h: &HeisElem) -> Result<HeisElem> {
    g.mul(h)
}

/// Cartan data `(s, t)` of an `SL2(R)` element.
pub fn cartan_t(g: &Sl2) -> Result<(f64, f64)> {
    g.cartan()
}

/// Product in the `ax+b` group together with the modular value `Δ` of the result.
pub fn aff_mul(g: &Affine, h: &Affine) -> Result<(Affine, f64)> {
    let p = g.mul(h)?;
    Ok((p, p.modular()))
}

pub fn bs_mul(g: &Bs, h: &Bs) -> Result<Bs> {
    g.mul(h)
}
