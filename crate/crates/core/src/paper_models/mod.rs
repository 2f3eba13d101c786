//! Concrete algebras and matrices: the symbol `m(k)`, the first partial
//! prolongation `g'(k)`, the Heisenberg algebra, catalecticant matrices and
//! secant ideals, and `n ⊕ s` with its polynomial realization.

mod families;
mod hankel;
mod s_algebra;

pub use families::{make_gprime, make_heisenberg, make_m};
pub use hankel::{
    binomial, combinations, curve_point, factorial, hankel, max_secant_index, secant_ideal, secant_point, CurvePoint,
    HankelMatrix,
};
pub use s_algebra::{
    algebra_from_polynomials, center_sign, heisenberg_polynomials, irreducible_gl2, make_s, maximal_extension,
    s_polynomials, NsModel,
};
