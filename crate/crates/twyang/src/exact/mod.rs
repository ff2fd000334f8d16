//! Exact arithmetic: rationals, univariate polynomials and rational functions
//! in `u`, truncated series in `u⁻¹`, bivariate polynomials in `(u, v)`, and
//! dense rational linear algebra.

pub mod bipoly;
pub mod linsolve;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod series;

pub use bipoly::{BiPoly, BiRatFunc};
pub use linsolve::{poly_linear_solve, LinearSolution, Mat};
pub use poly::Poly;
pub use rat::{parse_rat, ri, rq, Rat};
pub use ratfunc::{ratfunc_substitute, series_expand, RatFunc};
pub use series::{factor_shifted_square, TruncSeries};

/// Minimal commutative-ring interface shared by every matrix entry type.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn rzero() -> Self;
    fn rone() -> Self;
    fn ris_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn from_rat(r: &Rat) -> Self;
}

impl Ring for Rat {
    fn rzero() -> Self {
        num::Zero::zero()
    }
    fn rone() -> Self {
        num::One::one()
    }
    fn ris_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}
