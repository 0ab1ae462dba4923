//! Exact computational modular representation theory of finite groups.
//!
//! The crate builds, from the ground up: dense linear algebra over GF(p^m),
//! finite permutation groups, kG-modules with the standard functor calculus
//! (induction, restriction, conjugation, inflation, tensor), Krull-Schmidt
//! decomposition, block theory with covering and Fong-Reynolds data, support
//! tau-tilting pairs with mutation-driven poset enumeration, relative
//! projectivity and vertices, and a verification harness that checks the
//! whole stack of functor identities and poset isomorphisms on concrete
//! desk-scale groups.
//!
//! Everything is exact: assertions compare field elements, never tolerances.

pub mod algebra;
pub mod block;
pub mod error;
pub mod export;
pub mod field;
pub mod group;
pub mod matrix;
pub mod meataxe;
pub mod module;
pub mod perm;
pub mod poly;
pub mod props;
pub mod rng;
pub mod scenario;
pub mod stt;
pub mod twist;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result};
