use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::{Elementary, Field, Scalar};
use crate::error::Result;

/// Univariate Taylor expansion `c0 + c1 t + c2 t² + c3 t³` about a base point.
///
/// The coefficients are Taylor coefficients, not derivatives: the third
/// derivative of the represented function is `6 * c[3]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor3<T = f64> {
    pub c: [T; 4],
}

impl<T: Scalar> Taylor3<T> {
    pub fn new(c0: T, c1: T, c2: T, c3: T) -> Self {
        Taylor3 {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn constant(value: T) -> Self {
        let z = T::zero();
        Self::new(value, z, z, z)
    }

    /// The expansion variable itself at `value`.
    pub fn variable(value: T) -> Self {
        let z = T::zero();
        Self::new(value, T::one(), z, z)
    }

    /// `k`-th derivative of the represented function at the base point, `k ≤ 3`.
    pub fn derivative_at(&self, k: usize) -> T {
        let fact = [1.0, 1.0, 2.0, 6.0][k];
        self.c[k].scale(fact)
    }

    /// Term-by-term derivative. The cubic coefficient of the result is unknown
    /// at this truncation and is set to zero; only orders 0..=2 are meaningful.
    pub fn differentiate(&self) -> Self {
        Self::new(
            self.c[1],
            self.c[2].scale(2.0),
            self.c[3].scale(3.0),
            T::zero(),
        )
    }

    /// Compose with a function given its value and first three derivatives at `c0`.
    pub fn chain(&self, d: [T; 4]) -> Self {
        let [_, a1, a2, a3] = self.c;
        let half = T::constant(0.5);
        let sixth = T::constant(1.0 / 6.0);
        Self::new(
            d[0],
            d[1] * a1,
            d[1] * a2 + half * d[2] * a1 * a1,
            d[1] * a3 + d[2] * a1 * a2 + sixth * d[3] * a1 * a1 * a1,
        )
    }

    pub fn apply(&self, fun: Elementary) -> Result<Self> {
        Ok(self.chain(T::derivatives(fun, self.c[0])?))
    }

    fn recip(self) -> Self {
        let r = T::one() / self.c[0];
        let r2 = r * r;
        self.chain([
            r,
            -r2,
            T::constant(2.0) * r2 * r,
            T::constant(-6.0) * r2 * r2,
        ])
    }
}

impl<T: Scalar> Add for Taylor3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Taylor3 {
            c: std::array::from_fn(|i| self.c[i] + rhs.c[i]),
        }
    }
}

impl<T: Scalar> Sub for Taylor3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Taylor3 {
            c: std::array::from_fn(|i| self.c[i] - rhs.c[i]),
        }
    }
}

impl<T: Scalar> Neg for Taylor3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Taylor3 {
            c: self.c.map(|a| -a),
        }
    }
}

/// Cauchy product truncated at degree 3.
impl<T: Scalar> Mul for Taylor3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.c, rhs.c);
        Self::new(
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        )
    }
}

impl<T: Scalar> Div for Taylor3<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<T: Scalar> Field for Taylor3<T> {
    fn constant(c: f64) -> Self {
        Taylor3::constant(T::constant(c))
    }
}
