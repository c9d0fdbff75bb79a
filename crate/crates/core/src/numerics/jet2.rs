use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::scalar::{Elementary, Field, Scalar};
use crate::error::Result;

/// Bivariate Taylor value in `(f, g)` truncated after second order.
///
/// Carries the value together with `∂_f`, `∂_g`, `∂_ff`, `∂_fg` and `∂_gg`.
/// All arithmetic is exact in the truncated algebra, so residuals built from
/// these slots carry no discretisation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T = f64> {
    pub value: T,
    pub d_f: T,
    pub d_g: T,
    pub d_ff: T,
    pub d_fg: T,
    pub d_gg: T,
}

impl<T: Scalar> Jet2<T> {
    pub fn constant(value: T) -> Self {
        let z = T::zero();
        Jet2 {
            value,
            d_f: z,
            d_g: z,
            d_ff: z,
            d_fg: z,
            d_gg: z,
        }
    }

    /// The coordinate `f` at `value`.
    pub fn lift_f(value: T) -> Self {
        Jet2 {
            d_f: T::one(),
            ..Self::constant(value)
        }
    }

    /// The coordinate `g` at `value`.
    pub fn lift_g(value: T) -> Self {
        Jet2 {
            d_g: T::one(),
            ..Self::constant(value)
        }
    }

    /// Compose with a function whose value and first two derivatives at `self.value` are given.
    pub fn chain(&self, phi: T, d1: T, d2: T) -> Self {
        Jet2 {
            value: phi,
            d_f: d1 * self.d_f,
            d_g: d1 * self.d_g,
            d_ff: d2 * self.d_f * self.d_f + d1 * self.d_ff,
            d_fg: d2 * self.d_f * self.d_g + d1 * self.d_fg,
            d_gg: d2 * self.d_g * self.d_g + d1 * self.d_gg,
        }
    }

    pub fn apply(&self, fun: Elementary) -> Result<Self> {
        let [phi, d1, d2, _] = T::derivatives(fun, self.value)?;
        Ok(self.chain(phi, d1, d2))
    }

    pub fn map_slots<U>(&self, mut op: impl FnMut(T) -> U) -> Jet2<U> {
        Jet2 {
            value: op(self.value),
            d_f: op(self.d_f),
            d_g: op(self.d_g),
            d_ff: op(self.d_ff),
            d_fg: op(self.d_fg),
            d_gg: op(self.d_gg),
        }
    }

    pub fn slots(&self) -> [T; 6] {
        [
            self.value, self.d_f, self.d_g, self.d_ff, self.d_fg, self.d_gg,
        ]
    }

    pub fn from_slots(s: [T; 6]) -> Self {
        Jet2 {
            value: s[0],
            d_f: s[1],
            d_g: s[2],
            d_ff: s[3],
            d_fg: s[4],
            d_gg: s[5],
        }
    }

    fn zip(self, rhs: Self, op: impl Fn(T, T) -> T) -> Self {
        Jet2 {
            value: op(self.value, rhs.value),
            d_f: op(self.d_f, rhs.d_f),
            d_g: op(self.d_g, rhs.d_g),
            d_ff: op(self.d_ff, rhs.d_ff),
            d_fg: op(self.d_fg, rhs.d_fg),
            d_gg: op(self.d_gg, rhs.d_gg),
        }
    }

    fn recip(self) -> Self {
        let r = T::one() / self.value;
        self.chain(r, -r * r, T::constant(2.0) * r * r * r)
    }
}

impl Jet2<f64> {
    /// Combine real and imaginary parts into a complex jet.
    pub fn complexify(re: &Jet2<f64>, im: &Jet2<f64>) -> Jet2<Complex64> {
        let r = re.slots();
        let i = im.slots();
        Jet2::from_slots(std::array::from_fn(|n| Complex64::new(r[n], i[n])))
    }
}

impl Jet2<Complex64> {
    pub fn re(&self) -> Jet2<f64> {
        self.map_slots(|z| z.re)
    }

    pub fn im(&self) -> Jet2<f64> {
        self.map_slots(|z| z.im)
    }
}

impl<T: Scalar> Add for Jet2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for Jet2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Neg for Jet2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_slots(|a| -a)
    }
}

impl<T: Scalar> Mul for Jet2<T> {
    type Output = Self;
    fn mul(self, y: Self) -> Self {
        let x = self;
        Jet2 {
            value: x.value * y.value,
            d_f: x.d_f * y.value + x.value * y.d_f,
            d_g: x.d_g * y.value + x.value * y.d_g,
            d_ff: x.d_ff * y.value + T::constant(2.0) * x.d_f * y.d_f + x.value * y.d_ff,
            d_fg: x.d_fg * y.value + x.d_f * y.d_g + x.d_g * y.d_f + x.value * y.d_fg,
            d_gg: x.d_gg * y.value + T::constant(2.0) * x.d_g * y.d_g + x.value * y.d_gg,
        }
    }
}

/// Division does not check for a vanishing divisor; callers validate the value first.
impl<T: Scalar> Div for Jet2<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<T: Scalar> Field for Jet2<T> {
    fn constant(c: f64) -> Self {
        Jet2::constant(T::constant(c))
    }
}
