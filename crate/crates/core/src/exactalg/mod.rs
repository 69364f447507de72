//! Exact arithmetic: rationals, quadratic fields, polynomials, rational functions.

mod field;
mod poly;
mod ratfun;
mod roots;

pub use field::{
    abs_rat, exact_div, floor_rat, fmt_rat, is_integer, parse_element, parse_rational, rat,
    rat_int, rat_to_f64, Field, FieldElement, Rational,
};
pub use poly::{
    multiplicity_profile, poly_gcd, root_multiplicities, squarefree_decomposition, Degree, Poly,
    SquarefreeDecomposition,
};
pub use ratfun::{EvalResult, RatFun};
pub use roots::rational_roots;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("operands live in different fields")]
    MixedField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial has no multiplicity profile")]
    ZeroPolynomial,
    #[error("inexact polynomial division")]
    NotDivisible,
    #[error("composition with a constant inner function")]
    ConstantInner,
    #[error("{0} is not a valid quadratic field discriminant")]
    BadField(i64),
    #[error("parse error: {0}")]
    Parse(String),
}
