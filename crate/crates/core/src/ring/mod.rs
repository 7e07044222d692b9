//! Construction, materialization and validation of finite commutative rings.

mod expr;
mod parse;
mod poly;
mod table;
mod validate;

pub use expr::RingExpr;
pub use parse::{parse_expr, parse_poly};
pub use poly::{smallest_irreducible, Polynomial};
pub use table::{
    build_gf, build_idealization, build_product, build_quotient, build_zn, materialize, primary_components,
    PrimaryComponent, RingBuilder, TableRing, DEFAULT_MAX_ORDER,
};
pub use validate::{validate_ring, Axiom, ValidationReport, Violation};
