//! Exact scalars: Gaussian rationals, polynomials in one variable and
//! rational functions in the deformation parameter.

mod gaussian;
mod linalg;
mod poly;
mod ratfun;
mod roots;

pub use gaussian::{parse_rational, rational_to_string, GaussianRational, Q};
pub use linalg::{determinant, invert};
pub use poly::HbarPoly;
pub use ratfun::RationalFunction;
pub use roots::{gaussian_rational_roots, RootReport};

use std::fmt::Debug;

/// Commutative ring operations shared by every coefficient type in the crate.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_gr(c: &GaussianRational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.times(&Self::from_gr(c))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A [`Ring`] in which nonzero elements can be inverted.
pub trait Field: Ring {
    fn try_inv(&self) -> Option<Self>;
}

impl Field for GaussianRational {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Field for RationalFunction {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
