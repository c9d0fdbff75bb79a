//! Differentiation substrate: bivariate second-order jets, univariate
//! third-order Taylor numbers, and a finite-difference oracle.

mod fd;
mod jet2;
mod scalar;
mod taylor3;

pub use fd::{fd_partials, fd_partials_richardson, DEFAULT_STEP};
pub use jet2::Jet2;
pub use scalar::{Elementary, Field, Scalar, POLE_THRESHOLD};
pub use taylor3::Taylor3;

use crate::error::Result;

/// Composition of an elementary function with a jet.
pub fn jet2_apply<T: Scalar>(fun: Elementary, x: Jet2<T>) -> Result<Jet2<T>> {
    x.apply(fun)
}

pub fn taylor3_apply<T: Scalar>(fun: Elementary, x: Taylor3<T>) -> Result<Taylor3<T>> {
    x.apply(fun)
}

/// Types that elementary functions can be pushed through.
pub trait Compose: Field {
    fn compose(self, fun: Elementary) -> Result<Self>;
}

impl Compose for f64 {
    fn compose(self, fun: Elementary) -> Result<Self> {
        Ok(f64::derivatives(fun, self)?[0])
    }
}

impl Compose for num_complex::Complex64 {
    fn compose(self, fun: Elementary) -> Result<Self> {
        Ok(Self::derivatives(fun, self)?[0])
    }
}

impl<T: Scalar> Compose for Jet2<T> {
    fn compose(self, fun: Elementary) -> Result<Self> {
        self.apply(fun)
    }
}

impl<T: Scalar> Compose for Taylor3<T> {
    fn compose(self, fun: Elementary) -> Result<Self> {
        self.apply(fun)
    }
}
