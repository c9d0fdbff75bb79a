//! The point-symmetry group acting on Ernst potentials.
//!
//! Coordinate actions (`X1`, `X2`) move the evaluation point; target-space
//! actions (`X3`, `X4`, `X5`) are unit-determinant Möbius maps applied
//! pointwise to `Z` and, through exact jet arithmetic, to its derivatives.

mod moebius;

pub use moebius::{
    apply_moebius, apply_x5_action, compose_moebius, ehlers_from_real, generator_derivative_check,
    moebius_from_params, shift_scale, x5_action_components, MoebiusMatrix, TargetGenerator,
    DETERMINANT_TOLERANCE, GENERATOR_CHECK_STEP,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potentials::{ErnstField, PotentialSample};

/// Parameters of the five one-parameter subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GroupParams {
    /// dilation `X2`
    pub alpha: f64,
    /// null translation `X1`
    pub beta: f64,
    /// `L` shift `X3`
    pub gamma: f64,
    /// `Z` scale `X4`
    pub delta: f64,
    /// `X5`
    pub epsilon: f64,
}

impl GroupParams {
    pub fn coordinate_action(&self) -> CoordinateAction {
        CoordinateAction::from_params(self.alpha, self.beta)
    }

    pub fn target_action(&self) -> MoebiusMatrix {
        MoebiusMatrix::from_params(self.gamma, self.delta, self.epsilon)
    }

    /// The full group element as a transform chain.
    pub fn chain(&self) -> Vec<Transform> {
        vec![
            Transform::CoordinateAction(self.coordinate_action()),
            Transform::Moebius(self.target_action()),
        ]
    }
}

/// `Z(f, g) ↦ Z(scale·f + shift, scale·g − shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinateAction {
    pub scale: f64,
    pub shift: f64,
}

impl CoordinateAction {
    pub const IDENTITY: CoordinateAction = CoordinateAction {
        scale: 1.0,
        shift: 0.0,
    };

    pub fn new(scale: f64, shift: f64) -> Result<Self> {
        let a = CoordinateAction { scale, shift };
        a.validate()?;
        Ok(a)
    }

    /// Dilation by `e^α` followed by the null translation `β`.
    pub fn from_params(alpha: f64, beta: f64) -> Self {
        CoordinateAction {
            scale: alpha.exp(),
            shift: beta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale > 0.0 && self.scale.is_finite() && self.shift.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "coordinate action needs finite scale > 0, got {self:?}"
            )))
        }
    }

    pub fn apply(&self, f: f64, g: f64) -> (f64, f64) {
        (self.scale * f + self.shift, self.scale * g - self.shift)
    }
}

pub fn apply_coordinate_action(act: &CoordinateAction, f: f64, g: f64) -> (f64, f64) {
    act.apply(f, g)
}

/// One link of a transform chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Transform {
    CoordinateAction(CoordinateAction),
    ShiftScale {
        gamma: f64,
        delta: f64,
    },
    X5 {
        epsilon: f64,
    },
    Moebius(MoebiusMatrix),
    MoebiusFromParams {
        gamma: f64,
        delta: f64,
        epsilon: f64,
    },
}

impl Transform {
    pub fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| {
            if xs.iter().all(|x| x.is_finite()) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "non-finite transform {self:?}"
                )))
            }
        };
        match self {
            Transform::CoordinateAction(a) => a.validate(),
            Transform::ShiftScale { gamma, delta } => finite(&[*gamma, *delta]),
            Transform::X5 { epsilon } => finite(&[*epsilon]),
            Transform::Moebius(_) => Ok(()),
            Transform::MoebiusFromParams {
                gamma,
                delta,
                epsilon,
            } => finite(&[*gamma, *delta, *epsilon]),
        }
    }

    /// The target-space matrix, or `None` for a coordinate action.
    pub fn matrix(&self) -> Option<MoebiusMatrix> {
        match *self {
            Transform::CoordinateAction(_) => None,
            Transform::ShiftScale { gamma, delta } => {
                Some(MoebiusMatrix::shift_scale(gamma, delta))
            }
            Transform::X5 { epsilon } => Some(MoebiusMatrix::x5(epsilon)),
            Transform::Moebius(m) => Some(m),
            Transform::MoebiusFromParams {
                gamma,
                delta,
                epsilon,
            } => Some(MoebiusMatrix::from_params(gamma, delta, epsilon)),
        }
    }
}

/// A field with a chain of symmetry transforms applied left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedField<F> {
    pub base: F,
    pub chain: Vec<Transform>,
}

impl<F: ErnstField> TransformedField<F> {
    pub fn new(base: F, chain: Vec<Transform>) -> Result<Self> {
        for t in &chain {
            t.validate()?;
        }
        Ok(TransformedField { base, chain })
    }
}

impl<F: ErnstField> ErnstField for TransformedField<F> {
    fn sample(&self, f: f64, g: f64) -> Result<PotentialSample> {
        // The last coordinate action is the outermost substitution, so the
        // evaluation point is pulled back through the chain in reverse.
        let (mut pf, mut pg) = (f, g);
        for t in self.chain.iter().rev() {
            if let Transform::CoordinateAction(a) = t {
                (pf, pg) = a.apply(pf, pg);
            }
        }
        let mut s = self.base.sample(pf, pg)?;
        for t in &self.chain {
            s = match t.matrix() {
                Some(m) => m.apply_sample(&s)?,
                None => {
                    let Transform::CoordinateAction(a) = t else {
                        unreachable!()
                    };
                    rescale_coordinates(&s, a.scale)
                }
            };
        }
        Ok(s)
    }
}

/// Chain rule for `Z(λf + β, λg − β)`: first derivatives scale by `λ`, second by `λ²`.
fn rescale_coordinates(s: &PotentialSample, scale: f64) -> PotentialSample {
    let rescale = |j: &crate::numerics::Jet2| {
        let mut out = *j;
        out.d_f *= scale;
        out.d_g *= scale;
        out.d_ff *= scale * scale;
        out.d_fg *= scale * scale;
        out.d_gg *= scale * scale;
        out
    };
    PotentialSample::new(rescale(&s.k), rescale(&s.l))
}
