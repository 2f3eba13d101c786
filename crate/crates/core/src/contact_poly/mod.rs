//! Polynomials in `x_0..x_k, y_0..y_k, z`, the contact bracket on them and
//! the polynomial computation of the prolongation of the Heisenberg algebra
//! with a fixed degree-zero part.

mod bracket;
mod oracle;
mod poly;
mod space;

pub use bracket::{bracket_x, bracket_y, contact_bracket, to_field, ContactField};
pub use oracle::{bidegree_table, gns_component, oracle_full, s_component, GnsComponent, OracleResult};
pub use poly::{Grading, Monomial, PolyJson, PolyTermJson, Weight, WeightedPolynomial};
pub use space::{
    constrained_span, coordinates, echelon_basis, monomials_with_weights, same_span, second_weight_range, span_dim,
    MonomialIndex, PolyMap, PolySpan,
};
