//! Closed-form Ernst potentials and the residuals of the governing equations.
//!
//! A potential `Z = K + iL` is sampled as a pair of second-order jets in
//! `(f, g)`. The residuals of the real system
//!
//! ```text
//! K[2K_fg + (K_f + K_g)/(f+g)] = 2(K_f K_g − L_f L_g)
//! K[2L_fg + (L_f + L_g)/(f+g)] = 2(K_f L_g + K_g L_f)
//! ```
//!
//! are then exact up to floating-point rounding.

mod epd;
mod families;

pub use epd::{epd_basis_eval, epd_residual, epd_to_ernst, EpdBasis, EpdCombination, EpdTerm};
pub use families::{
    eval_trig_family, eval_x1_family, eval_x2_family, trig_family_sample, x1_components,
    x2_components, FamilyParams, Sign, SolutionFamily, TrigFamilyParams, TrigVariant,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{fd_partials, Jet2, Scalar};

/// Real and imaginary parts of an Ernst potential, each with its jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample<T = f64> {
    pub k: Jet2<T>,
    pub l: Jet2<T>,
}

impl<T: Scalar> PotentialSample<T> {
    pub fn new(k: Jet2<T>, l: Jet2<T>) -> Self {
        PotentialSample { k, l }
    }
}

impl PotentialSample<f64> {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.k.value, self.l.value)
    }

    /// `Z` with its jets as a single complex jet.
    pub fn z_jet(&self) -> Jet2<Complex64> {
        Jet2::complexify(&self.k, &self.l)
    }

    pub fn from_z_jet(z: &Jet2<Complex64>) -> Self {
        PotentialSample {
            k: z.re(),
            l: z.im(),
        }
    }

    /// `K > 0`, so that `Z + Z̄` does not vanish.
    pub fn is_admissible(&self) -> bool {
        self.k.value > 0.0
    }
}

/// Anything that can be sampled as an Ernst potential over the `(f, g)` plane.
pub trait ErnstField: Send + Sync {
    fn sample(&self, f: f64, g: f64) -> Result<PotentialSample>;
}

impl<F> ErnstField for F
where
    F: Fn(f64, f64) -> Result<PotentialSample> + Send + Sync,
{
    fn sample(&self, f: f64, g: f64) -> Result<PotentialSample> {
        self(f, g)
    }
}

pub(crate) fn require_sum_positive(what: &str, f: f64, g: f64) -> Result<()> {
    if f + g > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} (requires f+g>0)"), (f, g)))
    }
}

pub(crate) fn require_quadrant(what: &str, f: f64, g: f64) -> Result<()> {
    if f > 0.0 && g > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} (requires f>0, g>0)"), (f, g)))
    }
}

/// Residuals `(resK, resL)` of the real Ernst system at `(f, g)`, as
/// left-hand side minus right-hand side.
pub fn ernst_residual<T: Scalar>(s: &PotentialSample<T>, f: f64, g: f64) -> Result<(T, T)> {
    require_sum_positive("ernst residual", f, g)?;
    let (k, l) = (&s.k, &s.l);
    let inv = T::constant(1.0 / (f + g));
    let two = T::constant(2.0);
    let res_k =
        k.value * (two * k.d_fg + (k.d_f + k.d_g) * inv) - two * (k.d_f * k.d_g - l.d_f * l.d_g);
    let res_l =
        k.value * (two * l.d_fg + (l.d_f + l.d_g) * inv) - two * (k.d_f * l.d_g + k.d_g * l.d_f);
    Ok((res_k, res_l))
}

/// [`ernst_residual`] with every partial replaced by a central difference of
/// step `h` on the sampled values. Oracle only: the jets are exact, this is not.
pub fn fd_ernst_residual(field: &impl ErnstField, f: f64, g: f64, h: f64) -> Result<(f64, f64)> {
    let k = fd_partials(|f, g| Ok(field.sample(f, g)?.k.value), f, g, h)?;
    let l = fd_partials(|f, g| Ok(field.sample(f, g)?.l.value), f, g, h)?;
    ernst_residual(&PotentialSample::new(k, l), f, g)
}

/// Symmetry generator whose invariant surface condition is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceGenerator {
    /// `∂_f − ∂_g`: condition `u_g = u_f`.
    X1,
    /// `f∂_f + g∂_g`: condition `g u_g = −f u_f`.
    X2,
}

/// Residuals of the invariant surface conditions for `K` and `L`.
pub fn invariant_surface_residual(
    field: &impl ErnstField,
    generator: SurfaceGenerator,
    f: f64,
    g: f64,
) -> Result<(f64, f64)> {
    let s = field.sample(f, g)?;
    Ok(match generator {
        SurfaceGenerator::X1 => (s.k.d_g - s.k.d_f, s.l.d_g - s.l.d_f),
        SurfaceGenerator::X2 => (g * s.k.d_g + f * s.k.d_f, g * s.l.d_g + f * s.l.d_f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_potential_has_zero_residual() {
        let s = PotentialSample::new(Jet2::constant(1.0), Jet2::constant(0.0));
        assert_eq!(ernst_residual(&s, 0.3, 0.4).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn designated_non_solution() {
        let s = PotentialSample::new(Jet2::lift_f(1.0), Jet2::lift_g(1.0));
        let (rk, rl) = ernst_residual(&s, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(rk, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rl, -1.5, epsilon = 1e-12);
    }

    #[test]
    fn residual_requires_positive_sum() {
        let s = PotentialSample::new(Jet2::constant(1.0), Jet2::constant(0.0));
        assert!(ernst_residual(&s, -1.0, 0.5).is_err());
    }

    #[test]
    fn invariant_surface_of_families() {
        let x1 = SolutionFamily::X1(FamilyParams::new(1.3, 0.7, 0.2).unwrap());
        let x2 = SolutionFamily::X2(FamilyParams::new(1.3, 0.7, 0.2).unwrap());
        for (f, g) in [(0.3, 1.2), (1.0, 2.0), (1.7, 0.4)] {
            let (a, b) = invariant_surface_residual(&x1, SurfaceGenerator::X1, f, g).unwrap();
            assert!(a.abs() <= 1e-12 && b.abs() <= 1e-12);
            let (a, b) = invariant_surface_residual(&x2, SurfaceGenerator::X2, f, g).unwrap();
            assert!(a.abs() <= 1e-12 && b.abs() <= 1e-12);
        }
        let x2_unit = SolutionFamily::X2(FamilyParams::new(1.0, 1.0, 0.0).unwrap());
        let (rk, _) = invariant_surface_residual(&x2_unit, SurfaceGenerator::X1, 1.0, 2.0).unwrap();
        assert!(rk.abs() > 1e-3, "x2 family is not X1-invariant, got {rk}");
    }
}
