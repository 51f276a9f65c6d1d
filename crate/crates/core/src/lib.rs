//! Exact computations on the Berkovich line over p-adic fields: Galois-fixed
//! points of the Bruhat–Tits tree of SL₂, apartments of the diagonal torus,
//! and the seminorm calculus of split tori and the additive group.

pub mod arith;
pub mod berkovich;
pub mod bt_tree;
pub mod cli;
pub mod error;
pub mod hopf_norms;
pub mod par;
pub mod parse;
pub mod poly;
pub mod render;
pub mod sweep;
pub mod valued_field;

pub use error::{Error, Result};
