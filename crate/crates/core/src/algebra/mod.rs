//! Indices, words and the products between them.

mod combo;
mod composition;
mod expansions;
mod products;
mod word;

pub use combo::{binomial, MzvCombo, ProductCombo, ProductTerm, Rational};
pub use composition::{compositions_of, Composition};
pub use expansions::{
    euler_decomposition, expand_2x1, guo_xie_expand, literal_euler_decomposition, stuffle_13_term,
    StuffleThirteen,
};
pub use products::{shuffle, shuffle_mzv, stuffle, stuffle_combos, stuffle_expand};
pub use word::{dual, BinaryWord, Letter};
