//! Exact computation of the probability `zp_k(R)` that `k` uniformly random
//! elements of a finite commutative ring `R` multiply to zero, together with
//! structural bounds on it and a catalog of small rings to check them against.
//!
//! Rings are materialized as dense tables ([`ring::TableRing`]) from a small
//! construction language ([`ring::RingExpr`]). All probabilities are exact
//! rationals.

pub mod arith;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod formulas;
pub mod rational;
pub mod ring;
pub mod zero;

pub use engine::{ann_k_count, product_count_vector, zp_bruteforce, zp_exact, zp_expr, ProductCountVector};
pub use error::{Error, Result};
pub use formulas::{BoundId, BoundPair, ZeroProfile};
pub use rational::ExactRational;
pub use ring::{materialize, parse_expr, RingExpr, TableRing};
