use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Threshold below which `sin` (for csc/cot) or `cosh` (for sech/tanh) counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-12;

/// Arithmetic shared by plain scalars and the truncated Taylor types.
pub trait Field:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;

    fn scale(self, c: f64) -> Self {
        self * Self::constant(c)
    }
}

impl Field for f64 {
    fn constant(c: f64) -> Self {
        c
    }
}

impl Field for Complex64 {
    fn constant(c: f64) -> Self {
        Complex64::new(c, 0.0)
    }
}

/// Elementary functions the jet types can be pushed through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Reciprocal,
    Sech,
    Tanh,
    Arctan,
    Csc,
    Cot,
    /// `x^p` on the principal branch.
    Power(f64),
}

impl Elementary {
    pub fn name(&self) -> String {
        match self {
            Elementary::Sin => "sin".into(),
            Elementary::Cos => "cos".into(),
            Elementary::Exp => "exp".into(),
            Elementary::Ln => "ln".into(),
            Elementary::Sqrt => "sqrt".into(),
            Elementary::Reciprocal => "reciprocal".into(),
            Elementary::Sech => "sech".into(),
            Elementary::Tanh => "tanh".into(),
            Elementary::Arctan => "arctan".into(),
            Elementary::Csc => "csc".into(),
            Elementary::Cot => "cot".into(),
            Elementary::Power(p) => format!("power({p})"),
        }
    }
}

/// A scalar type with the elementary functions and their first three derivatives.
pub trait Scalar: Field + PartialEq + Send + Sync + 'static {
    /// `[φ(x), φ'(x), φ''(x), φ'''(x)]`, or a domain error.
    fn derivatives(fun: Elementary, x: Self) -> Result<[Self; 4]>;

    fn zero() -> Self {
        Self::constant(0.0)
    }

    fn one() -> Self {
        Self::constant(1.0)
    }
}

/// Falling factorial p(p-1)...(p-n+1).
fn falling(p: f64, n: u32) -> f64 {
    (0..n).map(|i| p - i as f64).product()
}

/// Derivative rules written once for any field that has the primitive functions.
macro_rules! derivative_table {
    ($fun:expr, $x:expr, $T:ty, $cosh:expr, $sin:expr, $powf:expr) => {{
        let x: $T = $x;
        let c = |v: f64| <$T>::constant(v);
        match $fun {
            Elementary::Sin => {
                let (s, co) = (x.sin(), x.cos());
                [s, co, -s, -co]
            }
            Elementary::Cos => {
                let (s, co) = (x.sin(), x.cos());
                [co, -s, -co, s]
            }
            Elementary::Exp => {
                let e = x.exp();
                [e, e, e, e]
            }
            Elementary::Ln => {
                let r = c(1.0) / x;
                [x.ln(), r, -r * r, c(2.0) * r * r * r]
            }
            Elementary::Sqrt => {
                let s = x.sqrt();
                let r = c(1.0) / s;
                [
                    s,
                    c(0.5) * r,
                    c(-0.25) * r * r * r,
                    c(0.375) * r * r * r * r * r,
                ]
            }
            Elementary::Reciprocal => {
                let r = c(1.0) / x;
                [r, -r * r, c(2.0) * r * r * r, c(-6.0) * r * r * r * r]
            }
            Elementary::Sech => {
                let s = c(1.0) / $cosh;
                let t = x.tanh();
                let t2 = t * t;
                [
                    s,
                    -s * t,
                    s * (c(2.0) * t2 - c(1.0)),
                    s * t * (c(5.0) - c(6.0) * t2),
                ]
            }
            Elementary::Tanh => {
                let t = x.tanh();
                let u = c(1.0) - t * t;
                [t, u, c(-2.0) * t * u, u * (c(6.0) * t * t - c(2.0))]
            }
            Elementary::Arctan => {
                let q = c(1.0) / (c(1.0) + x * x);
                [
                    x.atan(),
                    q,
                    c(-2.0) * x * q * q,
                    (c(6.0) * x * x - c(2.0)) * q * q * q,
                ]
            }
            Elementary::Csc => {
                let k = c(1.0) / $sin;
                let ct = x.cos() * k;
                let (k2, ct2) = (k * k, ct * ct);
                [k, -k * ct, k * (ct2 + k2), -k * ct * (ct2 + c(5.0) * k2)]
            }
            Elementary::Cot => {
                let k = c(1.0) / $sin;
                let ct = x.cos() * k;
                let k2 = k * k;
                [
                    ct,
                    -k2,
                    c(2.0) * k2 * ct,
                    c(-4.0) * k2 * ct * ct - c(2.0) * k2 * k2,
                ]
            }
            Elementary::Power(p) => [
                $powf(x, p),
                power_term(x, p, 1, $powf),
                power_term(x, p, 2, $powf),
                power_term(x, p, 3, $powf),
            ],
        }
    }};
}

fn power_term<T: Field>(x: T, p: f64, n: u32, powf: fn(T, f64) -> T) -> T {
    let coeff = falling(p, n);
    if coeff == 0.0 {
        T::constant(0.0)
    } else {
        powf(x, p - n as f64).scale(coeff)
    }
}

impl Scalar for f64 {
    fn derivatives(fun: Elementary, x: f64) -> Result<[f64; 4]> {
        let bad = || Err(Error::domain(fun.name(), x));
        match fun {
            Elementary::Ln | Elementary::Sqrt if x <= 0.0 => return bad(),
            Elementary::Power(p) if p.fract() != 0.0 && x <= 0.0 => return bad(),
            Elementary::Power(p) if p.fract() == 0.0 && p < 0.0 && x == 0.0 => return bad(),
            Elementary::Reciprocal if x == 0.0 => return bad(),
            Elementary::Csc | Elementary::Cot if x.sin().abs() < POLE_THRESHOLD => return bad(),
            _ if !x.is_finite() => return bad(),
            _ => {}
        }
        let powf = |x: f64, p: f64| {
            if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
                x.powi(p as i32)
            } else {
                x.powf(p)
            }
        };
        Ok(derivative_table!(fun, x, f64, x.cosh(), x.sin(), powf))
    }
}

impl Scalar for Complex64 {
    fn derivatives(fun: Elementary, x: Complex64) -> Result<[Complex64; 4]> {
        let bad = || Err(Error::domain(fun.name(), x));
        let on_cut = x.im == 0.0 && x.re <= 0.0;
        match fun {
            Elementary::Ln | Elementary::Sqrt if on_cut => return bad(),
            Elementary::Power(p) if p.fract() != 0.0 && on_cut => return bad(),
            Elementary::Power(p) if p.fract() == 0.0 && p < 0.0 && x.norm() == 0.0 => return bad(),
            Elementary::Reciprocal if x.norm() == 0.0 => return bad(),
            Elementary::Arctan if x.re == 0.0 && x.im.abs() >= 1.0 => return bad(),
            Elementary::Csc | Elementary::Cot if x.sin().norm() < POLE_THRESHOLD => return bad(),
            Elementary::Sech | Elementary::Tanh if x.cosh().norm() < POLE_THRESHOLD => {
                return bad()
            }
            _ if !(x.re.is_finite() && x.im.is_finite()) => return bad(),
            _ => {}
        }
        let powf = |x: Complex64, p: f64| {
            if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
                x.powi(p as i32)
            } else {
                x.powf(p)
            }
        };
        Ok(derivative_table!(
            fun,
            x,
            Complex64,
            x.cosh(),
            x.sin(),
            powf
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const ALL: [Elementary; 12] = [
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Exp,
        Elementary::Ln,
        Elementary::Sqrt,
        Elementary::Reciprocal,
        Elementary::Sech,
        Elementary::Tanh,
        Elementary::Arctan,
        Elementary::Csc,
        Elementary::Cot,
        Elementary::Power(2.5),
    ];

    fn value(fun: Elementary, x: f64) -> f64 {
        f64::derivatives(fun, x).unwrap()[0]
    }

    #[test]
    fn derivative_table_matches_central_differences() {
        let x = 0.83;
        let h = 1e-3;
        for fun in ALL {
            let d = f64::derivatives(fun, x).unwrap();
            let d1 = (value(fun, x + h) - value(fun, x - h)) / (2.0 * h);
            let d2 =
                f64::derivatives(fun, x + h).unwrap()[1] - f64::derivatives(fun, x - h).unwrap()[1];
            let d3 =
                f64::derivatives(fun, x + h).unwrap()[2] - f64::derivatives(fun, x - h).unwrap()[2];
            assert_relative_eq!(d[1], d1, max_relative = 1e-5, epsilon = 1e-8);
            assert_relative_eq!(d[2], d2 / (2.0 * h), max_relative = 1e-5, epsilon = 1e-8);
            assert_relative_eq!(d[3], d3 / (2.0 * h), max_relative = 1e-5, epsilon = 1e-8);
        }
    }

    #[test]
    fn complex_table_agrees_with_real_on_the_real_axis() {
        let x = 0.61;
        for fun in ALL {
            let r = f64::derivatives(fun, x).unwrap();
            let c = Complex64::derivatives(fun, Complex64::new(x, 0.0)).unwrap();
            for i in 0..4 {
                assert_relative_eq!(r[i], c[i].re, max_relative = 1e-13, epsilon = 1e-14);
                assert!(c[i].im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn real_domain_violations_are_reported() {
        for (fun, x) in [
            (Elementary::Ln, 0.0),
            (Elementary::Ln, -1.0),
            (Elementary::Sqrt, -0.5),
            (Elementary::Power(0.5), -2.0),
            (Elementary::Reciprocal, 0.0),
            (Elementary::Csc, 0.0),
            (Elementary::Cot, std::f64::consts::PI),
        ] {
            let err = f64::derivatives(fun, x).unwrap_err();
            assert!(matches!(err, Error::Domain { .. }), "{fun:?} at {x}");
            assert!(err.to_string().contains(&fun.name()));
        }
        // integer powers are fine on the negative axis
        assert_eq!(
            f64::derivatives(Elementary::Power(2.0), -3.0).unwrap()[0],
            9.0
        );
        assert_eq!(
            f64::derivatives(Elementary::Power(2.0), 0.0).unwrap()[3],
            0.0
        );
    }

    #[test]
    fn complex_branch_cuts_are_reported() {
        let neg = Complex64::new(-1.0, 0.0);
        assert!(Complex64::derivatives(Elementary::Ln, neg).is_err());
        assert!(Complex64::derivatives(Elementary::Sqrt, neg).is_err());
        assert!(Complex64::derivatives(Elementary::Arctan, Complex64::new(0.0, 1.0)).is_err());
        let half_pi_i = Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
        assert!(Complex64::derivatives(Elementary::Sech, half_pi_i).is_err());
        // just off the cut is fine
        assert!(Complex64::derivatives(Elementary::Sqrt, Complex64::new(-1.0, 1e-3)).is_ok());
    }
}
