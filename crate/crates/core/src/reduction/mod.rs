//! First integrals of the third-order ODE satisfied by `K` along `X1`-invariant
//! solutions, with `g` as a parameter:
//!
//! ```text
//! K₃ = F(f, K, K₁, K₂)
//!    = −4K₁³/K² − 3K₂/(f+g) − K₁/(f+g)² + 5K₁K₂/K + 5K₁²/(K(f+g))
//! ```
//!
//! The integrating factors `Λ₁ = (f+g)²/K` and `Λ₂ = (f+g)²/K³` turn the
//! equation into total derivatives of the first integrals `ψ₁`, `ψ₂`. All
//! formulas are written once over [`Field`] so that the same code runs on
//! plain numbers, on [`Taylor3`] trajectories and on [`Jet2`] seeds.
//!
//! [`Jet2`]: crate::numerics::Jet2

mod determining;
mod line_integral;
mod quadrature;

pub use determining::{
    determining_system_relative_residuals, determining_system_residuals, AlphaAnsatz, AlphaTerm,
    MonomialAlpha,
};
pub use line_integral::{line_integral_first_integral, LINE_INTEGRAL_TOLERANCE};
pub use quadrature::{adaptive_simpson, MAX_SUBINTERVALS};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Field, Taylor3};

/// A point `(f, K, K₁, K₂[, K₃])` of the jet space, with the parameter `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JetPoint {
    pub f: f64,
    pub g: f64,
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: Option<f64>,
}

impl JetPoint {
    pub fn new(f: f64, g: f64, k: f64, k1: f64, k2: f64) -> Result<Self> {
        let p = JetPoint {
            f,
            g,
            k,
            k1,
            k2,
            k3: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_k3(mut self, k3: f64) -> Self {
        self.k3 = Some(k3);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0.0 {
            return Err(Error::domain("jet point (requires K != 0)", self));
        }
        if !(self.f + self.g > 0.0) {
            return Err(Error::domain("jet point (requires f+g > 0)", self));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegratingFactor {
    /// `(f+g)²/K`
    Lambda1,
    /// `(f+g)²/K³`
    Lambda2,
}

impl IntegratingFactor {
    pub const BOTH: [IntegratingFactor; 2] =
        [IntegratingFactor::Lambda1, IntegratingFactor::Lambda2];

    pub fn eval<T: Field>(&self, f: T, g: f64, k: T) -> T {
        let s = f + T::constant(g);
        match self {
            IntegratingFactor::Lambda1 => s * s / k,
            IntegratingFactor::Lambda2 => s * s / (k * k * k),
        }
    }

    /// The first integral generated by this factor.
    pub fn first_integral<T: Field>(&self, f: T, g: f64, k: T, k1: T, k2: T) -> T {
        let (psi1, psi2) = psi_generic(f, g, k, k1, k2);
        match self {
            IntegratingFactor::Lambda1 => psi1,
            IntegratingFactor::Lambda2 => psi2,
        }
    }
}

pub(crate) fn rhs_generic<T: Field>(f: T, g: f64, k: T, k1: T, k2: T) -> T {
    let s = f + T::constant(g);
    let c = T::constant;
    -(c(4.0) * k1 * k1 * k1 / (k * k)) - c(3.0) * k2 / s - k1 / (s * s)
        + c(5.0) * k1 * k2 / k
        + c(5.0) * k1 * k1 / (k * s)
}

pub(crate) fn psi_generic<T: Field>(f: T, g: f64, k: T, k1: T, k2: T) -> (T, T) {
    let s = f + T::constant(g);
    let two = T::constant(2.0);
    let k_sq = k * k;
    let psi1 = s / k_sq * (k1 * (k - two * s * k1) + s * k * k2);
    let psi2 = s / (k_sq * k_sq) * (k1 * (k - s * k1) + s * k * k2);
    (psi1, psi2)
}

/// `F(f, K, K₁, K₂)`, the right-hand side of the third-order ODE.
pub fn ode_rhs(p: &JetPoint) -> Result<f64> {
    p.validate()?;
    Ok(rhs_generic(p.f, p.g, p.k, p.k1, p.k2))
}

/// `(ψ₁, ψ₂)` at a jet point.
pub fn psi_values(p: &JetPoint) -> Result<(f64, f64)> {
    p.validate()?;
    Ok(psi_generic(p.f, p.g, p.k, p.k1, p.k2))
}

/// `(c₁K² + (f+g)²K₁²)/K⁴ − c₂`.
pub fn reduced_ode_residual(p: &JetPoint, c1: f64, c2: f64) -> Result<f64> {
    p.validate()?;
    let s = p.f + p.g;
    Ok((c1 * p.k * p.k + s * s * p.k1 * p.k1) / p.k.powi(4) - c2)
}

/// `ψ₂K⁴ − ψ₁K² − (f+g)²K₁²`, identically zero.
pub fn psi_algebraic_identity(p: &JetPoint) -> Result<f64> {
    let (psi1, psi2) = psi_values(p)?;
    let s = p.f + p.g;
    Ok(psi2 * p.k.powi(4) - psi1 * p.k * p.k - s * s * p.k1 * p.k1)
}

/// Scale of the terms in [`psi_algebraic_identity`], for relative comparisons.
pub fn psi_identity_scale(p: &JetPoint) -> Result<f64> {
    let (psi1, psi2) = psi_values(p)?;
    let s = p.f + p.g;
    Ok((psi2 * p.k.powi(4)).abs() + (psi1 * p.k * p.k).abs() + (s * s * p.k1 * p.k1).abs())
}

/// `dψ/df − Λ(K₃ − F)` along a trajectory `K(f)` given by its Taylor
/// expansion about `f`. Vanishes for every trajectory, solution or not.
pub fn first_integral_identity_check(
    trajectory: &Taylor3,
    f: f64,
    g: f64,
    factor: IntegratingFactor,
) -> Result<f64> {
    JetPoint::new(f, g, trajectory.c[0], 0.0, 0.0)?;
    let fs = Taylor3::variable(f);
    let k = *trajectory;
    let k1 = k.differentiate();
    let k2 = k1.differentiate();
    let dpsi = factor.first_integral(fs, g, k, k1, k2).c[1];
    let (kv, k1v, k2v) = (k.c[0], k1.c[0], k2.c[0]);
    let k3 = trajectory.derivative_at(3);
    let lambda = factor.eval(f, g, kv);
    Ok(dpsi - lambda * (k3 - rhs_generic(f, g, kv, k1v, k2v)))
}

/// `dψ/df` alone along a trajectory; zero on solutions of the ODE.
pub fn first_integral_derivative(
    trajectory: &Taylor3,
    f: f64,
    g: f64,
    factor: IntegratingFactor,
) -> Result<f64> {
    JetPoint::new(f, g, trajectory.c[0], 0.0, 0.0)?;
    let k = *trajectory;
    let k1 = k.differentiate();
    let k2 = k1.differentiate();
    Ok(factor.first_integral(Taylor3::variable(f), g, k, k1, k2).c[1])
}
