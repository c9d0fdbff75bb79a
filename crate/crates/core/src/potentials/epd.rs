use serde::{Deserialize, Serialize};

use super::{require_quadrant, require_sum_positive, ErnstField, PotentialSample};
use crate::error::{Error, Result};
use crate::numerics::{Elementary, Jet2};

/// Closed-form solutions of `2(f+g)F_fg + F_f + F_g = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpdBasis {
    /// `1`
    Const,
    /// `ln(f+g)`
    LogSum,
    /// `arctan √(f/g)`
    ArctanRatio,
    /// `f − g`
    Antisym,
}

pub fn epd_basis_eval(tag: EpdBasis, f: f64, g: f64) -> Result<Jet2> {
    match tag {
        EpdBasis::Const => Ok(Jet2::constant(1.0)),
        EpdBasis::LogSum => {
            require_sum_positive("log-sum", f, g)?;
            (Jet2::lift_f(f) + Jet2::lift_g(g)).apply(Elementary::Ln)
        }
        EpdBasis::ArctanRatio => {
            require_quadrant("arctan-ratio", f, g)?;
            (Jet2::lift_f(f) / Jet2::lift_g(g))
                .apply(Elementary::Sqrt)?
                .apply(Elementary::Arctan)
        }
        EpdBasis::Antisym => Ok(Jet2::lift_f(f) - Jet2::lift_g(g)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpdTerm {
    pub weight: f64,
    pub basis: EpdBasis,
}

/// A finite superposition of basis solutions; empty means `F ≡ 0`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EpdCombination {
    pub terms: Vec<EpdTerm>,
}

impl EpdCombination {
    pub fn new(terms: impl IntoIterator<Item = (f64, EpdBasis)>) -> Result<Self> {
        let c = EpdCombination {
            terms: terms
                .into_iter()
                .map(|(weight, basis)| EpdTerm { weight, basis })
                .collect(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        match self.terms.iter().find(|t| !t.weight.is_finite()) {
            Some(t) => Err(Error::InvalidParameter(format!(
                "non-finite weight for {:?}",
                t.basis
            ))),
            None => Ok(()),
        }
    }

    pub fn eval(&self, f: f64, g: f64) -> Result<Jet2> {
        self.terms.iter().try_fold(Jet2::constant(0.0), |acc, t| {
            let b = epd_basis_eval(t.basis, f, g)?;
            Ok(acc + b.map_slots(|v| v * t.weight))
        })
    }
}

impl ErnstField for EpdCombination {
    fn sample(&self, f: f64, g: f64) -> Result<PotentialSample> {
        epd_to_ernst(&self.eval(f, g)?)
    }
}

/// `2(f+g)F_fg + F_f + F_g`.
pub fn epd_residual(field: &Jet2, f: f64, g: f64) -> Result<f64> {
    require_sum_positive("epd residual", f, g)?;
    Ok(2.0 * (f + g) * field.d_fg + field.d_f + field.d_g)
}

/// `Z = sech F + i tanh F`.
///
/// With this sign of `L`, the printed `X1` family with `A = B = 1` is the image
/// of `F = −ln(f+g)`; `F = +ln(f+g)` yields the conjugate potential.
pub fn epd_to_ernst(field: &Jet2) -> Result<PotentialSample> {
    Ok(PotentialSample::new(
        field.apply(Elementary::Sech)?,
        field.apply(Elementary::Tanh)?,
    ))
}
