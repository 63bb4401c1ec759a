//! Product expansions checked against the products they expand.

use crate::algebra::{
    euler_decomposition, expand_2x1, guo_xie_expand, literal_euler_decomposition, stuffle_13_term, MzvCombo,
    ProductCombo,
};
use crate::error::Result;

/// An expansion together with the product it is claimed to equal.
pub struct ProductClaim {
    pub expansion: MzvCombo,
    pub product: ProductCombo,
}

fn claim(expansion: MzvCombo, factors: &[&[u32]]) -> Result<ProductClaim> {
    Ok(ProductClaim { expansion, product: ProductCombo::product(factors)? })
}

pub fn euler_product(s1: u32, s2: u32) -> Result<ProductClaim> {
    claim(euler_decomposition(s1, s2)?, &[&[s1], &[s2]])
}

pub fn euler_product_literal(s1: u32, s2: u32) -> Result<ProductClaim> {
    claim(literal_euler_decomposition(s1, s2)?, &[&[s1], &[s2]])
}

pub fn double_single_product(s1: u32, s2: u32, s3: u32) -> Result<ProductClaim> {
    claim(expand_2x1(s1, s2, s3)?, &[&[s1, s2], &[s3]])
}

/// `zeta(s1, s2) zeta(s3, s4)` through the shuffle-side expansion, or
/// through the stuffle product when `stuffle` is set.
pub fn double_double_product(s: [u32; 4], stuffle: bool) -> Result<ProductClaim> {
    let [s1, s2, s3, s4] = s;
    let expansion = if stuffle { stuffle_13_term(s1, s2, s3, s4)?.algorithmic } else { guo_xie_expand(s1, s2, s3, s4)? };
    claim(expansion, &[&[s1, s2], &[s3, s4]])
}

/// The thirteen-term stuffle list exactly as printed.
pub fn double_double_literal(s: [u32; 4]) -> Result<ProductClaim> {
    let [s1, s2, s3, s4] = s;
    claim(stuffle_13_term(s1, s2, s3, s4)?.literal, &[&[s1, s2], &[s3, s4]])
}
