//! Central values and central derivatives of quadratic twists of level-1
//! Hecke eigenform L-functions, mollified family sweeps, and the suite of
//! instance-checkable inequalities backing them.

pub mod arith;
pub mod config;
pub mod eigenform;
pub mod error;
pub mod lcentral;
pub mod mollifier;
pub mod ntt;
pub mod series;
pub mod smoothing;
pub mod special;
pub mod suite;
pub mod sweep;

pub use error::{Error, ErrorClass, Result};
