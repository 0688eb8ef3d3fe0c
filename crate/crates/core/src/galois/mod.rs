//! Prime-field arithmetic, dense polynomials over F_p and modular linear algebra.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, FieldModulus};
pub use matrix::{solve_linear, FpMatrix};
pub use poly::PrimePoly;

use crate::error::Result;

pub fn ff_inv(p: FieldModulus, a: u32) -> Result<u32> {
    p.inv(a)
}

pub fn ff_order(p: FieldModulus, a: u32) -> Result<u64> {
    p.order(a)
}

pub fn poly_mul(a: &PrimePoly, b: &PrimePoly) -> Result<PrimePoly> {
    a.mul(b)
}

pub fn poly_divmod(a: &PrimePoly, b: &PrimePoly) -> Result<(PrimePoly, PrimePoly)> {
    a.divmod(b)
}

pub fn poly_gcd(a: &PrimePoly, b: &PrimePoly) -> Result<PrimePoly> {
    a.gcd(b)
}
