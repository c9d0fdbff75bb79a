use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{require_quadrant, require_sum_positive, ErnstField, PotentialSample};
use crate::error::{Error, Result};
use crate::numerics::{Compose, Elementary, Jet2};

/// Constants `A`, `B`, `C` of the two real group-invariant families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl FamilyParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let p = FamilyParams { a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite constants {self:?}"
            )));
        }
        if self.b == 0.0 {
            return Err(Error::InvalidParameter("B must be nonzero".into()));
        }
        if self.a == 0.0 {
            return Err(Error::InvalidParameter(
                "A must be nonzero (K would vanish)".into(),
            ));
        }
        Ok(())
    }

    /// Radius `A/B` of the circle `K² + (L − C)² = (A/B)²` traced by both families.
    pub fn amplitude(&self) -> f64 {
        self.a / self.b
    }
}

/// `(K, L)` of the `X1`-invariant family as functions of `s = f + g`:
///
/// `K = (2A/B) s^A / (1 + s^{2A})`, `L = (A/B)(1 − s^{2A})/(1 + s^{2A}) + C`.
pub fn x1_components<T: Compose>(p: &FamilyParams, sum: T) -> Result<(T, T)> {
    let sa = sum.compose(Elementary::Power(p.a))?;
    let s2a = sa * sa;
    let one = T::constant(1.0);
    let denom = one + s2a;
    let k = (sa / denom).scale(2.0 * p.amplitude());
    let l = ((one - s2a) / denom).scale(p.amplitude()) + T::constant(p.c);
    Ok((k, l))
}

/// `(K, L)` of the `X2`-invariant family:
///
/// `K = (A/B) sech[2A arctan √(f/g)]`, `L = (A/B) tanh[2A arctan √(f/g)] + C`.
pub fn x2_components<T: Compose>(p: &FamilyParams, f: T, g: T) -> Result<(T, T)> {
    let angle = (f / g)
        .compose(Elementary::Sqrt)?
        .compose(Elementary::Arctan)?
        .scale(2.0 * p.a);
    let k = angle.compose(Elementary::Sech)?.scale(p.amplitude());
    let l = angle.compose(Elementary::Tanh)?.scale(p.amplitude()) + T::constant(p.c);
    Ok((k, l))
}

pub fn eval_x1_family(p: &FamilyParams, f: f64, g: f64) -> Result<PotentialSample> {
    p.validate()?;
    require_sum_positive("x1 family", f, g)?;
    let (k, l) = x1_components(p, Jet2::lift_f(f) + Jet2::lift_g(g))?;
    Ok(PotentialSample::new(k, l))
}

pub fn eval_x2_family(p: &FamilyParams, f: f64, g: f64) -> Result<PotentialSample> {
    p.validate()?;
    require_quadrant("x2 family", f, g)?;
    let (k, l) = x2_components(p, Jet2::lift_f(f), Jet2::lift_g(g))?;
    Ok(PotentialSample::new(k, l))
}

/// The two real closed-form families, selected by the generator they are invariant under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SolutionFamily {
    X1(FamilyParams),
    X2(FamilyParams),
}

impl SolutionFamily {
    pub fn params(&self) -> &FamilyParams {
        match self {
            SolutionFamily::X1(p) | SolutionFamily::X2(p) => p,
        }
    }
}

impl ErnstField for SolutionFamily {
    fn sample(&self, f: f64, g: f64) -> Result<PotentialSample> {
        match self {
            SolutionFamily::X1(p) => eval_x1_family(p, f, g),
            SolutionFamily::X2(p) => eval_x2_family(p, f, g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Which logarithm sign enters the csc/cot argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigVariant {
    /// `c3 − ln(f+g)`
    I,
    /// `c3 + ln(f+g)`
    II,
}

/// Complex constants of the general csc/cot family with explicit branch choices.
///
/// All square roots are principal: `√(c1/c2)`, `√(−c1/c2)` and `√c1` are
/// each taken of the stated quotient or constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigFamilyParams {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
    pub k_branch: Sign,
    pub l_branch: Sign,
}

impl TrigFamilyParams {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64, c4: Complex64) -> Result<Self> {
        let p = TrigFamilyParams {
            c1,
            c2,
            c3,
            c4,
            k_branch: Sign::Plus,
            l_branch: Sign::Plus,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_branches(mut self, k_branch: Sign, l_branch: Sign) -> Self {
        self.k_branch = k_branch;
        self.l_branch = l_branch;
        self
    }

    /// Constants that turn variant I into the real `X1` family, with
    /// `√c1 = iA`, `√c2 = iB`, `c3 = (π/2)/√c1`, `c4 = C`.
    pub fn from_real_family(p: &FamilyParams) -> Result<Self> {
        p.validate()?;
        let i = Complex64::i();
        let root1 = i * p.a;
        let root2 = i * p.b;
        Self::new(
            root1 * root1,
            root2 * root2,
            Complex64::new(std::f64::consts::FRAC_PI_2, 0.0) / root1,
            Complex64::new(p.c, 0.0),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.c1.norm() == 0.0 || self.c2.norm() == 0.0 {
            return Err(Error::InvalidParameter("c1 and c2 must be nonzero".into()));
        }
        Ok(())
    }
}

/// Principal square root with a signed-zero imaginary part read as `+0`, so
/// the negative real axis is approached from above.
fn principal_sqrt(z: Complex64) -> Complex64 {
    Complex64::new(z.re, z.im + 0.0).sqrt()
}

fn trig_components(
    p: &TrigFamilyParams,
    variant: TrigVariant,
    sum: Jet2<Complex64>,
) -> Result<(Jet2<Complex64>, Jet2<Complex64>)> {
    p.validate()?;
    let cst = |z: Complex64| Jet2::constant(z);
    let log = sum.apply(Elementary::Ln)?;
    let inner = match variant {
        TrigVariant::I => cst(p.c3) - log,
        TrigVariant::II => cst(p.c3) + log,
    };
    let arg = cst(principal_sqrt(p.c1)) * inner;
    let ratio = p.c1 / p.c2;
    let k_amp = principal_sqrt(ratio) * p.k_branch.factor();
    let l_amp = principal_sqrt(-ratio) * p.l_branch.factor();
    let k = cst(k_amp) * arg.apply(Elementary::Csc)?;
    let l = cst(l_amp) * arg.apply(Elementary::Cot)? + cst(p.c4);
    Ok((k, l))
}

/// Complex-valued `(K, L)` of the general family at a point.
pub fn eval_trig_family(
    p: &TrigFamilyParams,
    variant: TrigVariant,
    f: f64,
    g: f64,
) -> Result<(Complex64, Complex64)> {
    let s = trig_family_sample(p, variant, f, g)?;
    Ok((s.k.value, s.l.value))
}

/// The general family with complex jets, suitable for [`super::ernst_residual`].
pub fn trig_family_sample(
    p: &TrigFamilyParams,
    variant: TrigVariant,
    f: f64,
    g: f64,
) -> Result<PotentialSample<Complex64>> {
    require_sum_positive("trig family", f, g)?;
    let c = |x: f64| Complex64::new(x, 0.0);
    let sum = Jet2::lift_f(c(f)) + Jet2::lift_g(c(g));
    let (k, l) = trig_components(p, variant, sum)?;
    Ok(PotentialSample::new(k, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::ernst_residual;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn unit() -> FamilyParams {
        FamilyParams::new(1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn x1_family_at_sum_two() {
        let s = eval_x1_family(&unit(), 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(s.k.value, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(s.l.value, -0.6, epsilon = 1e-15);
    }

    #[test]
    fn x1_family_is_one_on_unit_sum() {
        for (f, g) in [(0.5, 0.5), (2.0, -1.0), (0.1, 0.9)] {
            let s = eval_x1_family(&unit(), f, g).unwrap();
            assert_abs_diff_eq!(s.k.value, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(s.l.value, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn x2_family_on_diagonal() {
        let s = eval_x2_family(&unit(), 0.7, 0.7).unwrap();
        assert_abs_diff_eq!(s.k.value, 0.398536815338387, epsilon = 1e-12);
        assert_abs_diff_eq!(s.l.value, 0.917152335667274, epsilon = 1e-12);
        let p = FamilyParams::new(1.0, 2.0, 1.0).unwrap();
        let s = eval_x2_family(&p, 1.3, 1.3).unwrap();
        assert_abs_diff_eq!(s.k.value, 0.199268407669194, epsilon = 1e-12);
        assert_abs_diff_eq!(s.l.value, 1.458576167833637, epsilon = 1e-12);
    }

    #[test]
    fn x2_family_approaches_unit_as_f_vanishes() {
        let s = eval_x2_family(&unit(), 1e-14, 1.0).unwrap();
        assert_abs_diff_eq!(s.k.value, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(s.l.value, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn parameter_and_domain_errors() {
        assert!(FamilyParams::new(1.0, 0.0, 0.0).is_err());
        assert!(FamilyParams::new(0.0, 1.0, 0.0).is_err());
        assert!(eval_x1_family(&unit(), -1.0, 0.5).is_err());
        assert!(eval_x2_family(&unit(), 0.0, 0.5).is_err());
        assert!(eval_x2_family(&unit(), 1.0, -0.5).is_err());
        let bad = FamilyParams {
            a: 1.0,
            b: 0.0,
            c: 0.0,
        };
        assert!(eval_x1_family(&bad, 1.0, 1.0).is_err());
    }

    #[test]
    fn trig_family_reproduces_x1_family() {
        let t = TrigFamilyParams::from_real_family(&unit()).unwrap();
        let (k, l) = eval_trig_family(&t, TrigVariant::I, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(k.re, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(l.re, -0.6, epsilon = 1e-12);
        assert!(k.im.abs() <= 1e-12 && l.im.abs() <= 1e-12);

        let p = FamilyParams::new(1.5, 0.8, 0.3).unwrap();
        let t = TrigFamilyParams::from_real_family(&p).unwrap();
        for (f, g) in [(0.2, 0.5), (1.1, 0.7), (1.9, 1.4)] {
            let (k, l) = eval_trig_family(&t, TrigVariant::I, f, g).unwrap();
            let s = eval_x1_family(&p, f, g).unwrap();
            assert!((k - s.k.value).norm() <= 1e-12 && (l - s.l.value).norm() <= 1e-12);
        }
    }

    #[test]
    fn trig_family_with_unit_constants() {
        let one = Complex64::new(1.0, 0.0);
        let t =
            TrigFamilyParams::new(one, one, Complex64::new(FRAC_PI_2, 0.0), 0.0.into()).unwrap();
        let (k, l) = eval_trig_family(&t, TrigVariant::I, 0.25, 0.75).unwrap();
        assert_abs_diff_eq!(k.re, 1.0, epsilon = 1e-15);
        assert!(l.norm() < 1e-15);
        let (k, _) = eval_trig_family(
            &t.with_branches(Sign::Minus, Sign::Plus),
            TrigVariant::I,
            0.5,
            0.5,
        )
        .unwrap();
        assert_abs_diff_eq!(k.re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn trig_variants_agree_on_unit_sum() {
        let t = TrigFamilyParams::new(
            Complex64::new(0.3, 0.2),
            Complex64::new(-1.1, 0.4),
            Complex64::new(0.9, -0.1),
            Complex64::new(0.2, 0.5),
        )
        .unwrap();
        let a = eval_trig_family(&t, TrigVariant::I, 0.4, 0.6).unwrap();
        let b = eval_trig_family(&t, TrigVariant::II, 0.4, 0.6).unwrap();
        assert!((a.0 - b.0).norm() < 1e-14 && (a.1 - b.1).norm() < 1e-14);
    }

    #[test]
    fn trig_family_pole_is_a_domain_error() {
        let one = Complex64::new(1.0, 0.0);
        let t = TrigFamilyParams::new(one, one, Complex64::new(PI, 0.0), 0.0.into()).unwrap();
        assert!(eval_trig_family(&t, TrigVariant::I, 0.5, 0.5).is_err());
        assert!(TrigFamilyParams::new(0.0.into(), one, one, one).is_err());
    }

    #[test]
    fn complex_trig_family_solves_the_system() {
        let t = TrigFamilyParams::new(
            Complex64::new(0.3, 0.2),
            Complex64::new(-1.1, 0.4),
            Complex64::new(0.9, -0.1),
            Complex64::new(0.2, 0.5),
        )
        .unwrap();
        for variant in [TrigVariant::I, TrigVariant::II] {
            for branches in [
                (Sign::Plus, Sign::Plus),
                (Sign::Minus, Sign::Plus),
                (Sign::Plus, Sign::Minus),
            ] {
                let p = t.with_branches(branches.0, branches.1);
                for (f, g) in [(0.3, 0.5), (1.2, 0.4), (0.9, 1.9)] {
                    let s = trig_family_sample(&p, variant, f, g).unwrap();
                    let (rk, rl) = ernst_residual(&s, f, g).unwrap();
                    assert!(
                        rk.norm() < 1e-12 && rl.norm() < 1e-12,
                        "{variant:?} {rk} {rl}"
                    );
                }
            }
        }
    }
}
