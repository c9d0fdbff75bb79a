use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Jet2;
use crate::potentials::PotentialSample;

pub const DETERMINANT_TOLERANCE: f64 = 1e-12;

/// Unit-determinant real matrix acting on potentials by `Z ↦ i(aZ + ib)/(cZ + id)`.
///
/// `λ·M` and `M` give the same map; representatives with `a < 0` are
/// canonicalised by a global sign flip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct MoebiusMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TryFrom<RawMatrix> for MoebiusMatrix {
    type Error = Error;
    fn try_from(r: RawMatrix) -> Result<Self> {
        MoebiusMatrix::new(r.a, r.b, r.c, r.d)
    }
}

impl From<MoebiusMatrix> for RawMatrix {
    fn from(m: MoebiusMatrix) -> Self {
        RawMatrix {
            a: m.a,
            b: m.b,
            c: m.c,
            d: m.d,
        }
    }
}

impl MoebiusMatrix {
    pub const IDENTITY: MoebiusMatrix = MoebiusMatrix {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det - 1.0).abs().le(&DETERMINANT_TOLERANCE) {
            return Err(Error::InvalidParameter(format!(
                "Möbius matrix must have determinant 1, got {det}"
            )));
        }
        let m = MoebiusMatrix { a, b, c, d };
        Ok(if a < 0.0 { m.negated() } else { m })
    }

    fn negated(self) -> Self {
        MoebiusMatrix {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Adjugate, which is the inverse for unit determinant.
    pub fn inverse(&self) -> Self {
        MoebiusMatrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// The composite of `δ·X4`, then `γ·X3`, then `ε·X5`.
    pub fn from_params(gamma: f64, delta: f64, epsilon: f64) -> Self {
        let up = (delta / 2.0).exp();
        let down = (-delta / 2.0).exp();
        MoebiusMatrix {
            a: up,
            b: gamma * down,
            c: -epsilon * up,
            d: (1.0 - epsilon * gamma) * down,
        }
    }

    /// `Z ↦ e^δ Z + iγ`.
    pub fn shift_scale(gamma: f64, delta: f64) -> Self {
        Self::from_params(gamma, delta, 0.0)
    }

    /// `Z ↦ Z/(1 + iεZ)`.
    pub fn x5(epsilon: f64) -> Self {
        Self::from_params(0.0, 0.0, epsilon)
    }

    /// Matrix product `self · rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &MoebiusMatrix) -> Self {
        MoebiusMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let i = Complex64::i();
        let denom = self.c * z + i * self.d;
        if denom.norm() == 0.0 {
            return Err(Error::pole("Möbius map", z));
        }
        Ok(i * (self.a * z + i * self.b) / denom)
    }

    /// Push a complex jet through the map, propagating derivatives exactly.
    pub fn apply_jet(&self, z: &Jet2<Complex64>) -> Result<Jet2<Complex64>> {
        let i = Complex64::i();
        let cst = |w: Complex64| Jet2::constant(w);
        let denom = cst(self.c.into()) * *z + cst(i * self.d);
        if denom.value.norm() == 0.0 {
            return Err(Error::pole("Möbius map", z.value));
        }
        Ok(cst(i) * (cst(self.a.into()) * *z + cst(i * self.b)) / denom)
    }

    pub fn apply_sample(&self, s: &PotentialSample) -> Result<PotentialSample> {
        Ok(PotentialSample::from_z_jet(&self.apply_jet(&s.z_jet())?))
    }
}

pub fn moebius_from_params(gamma: f64, delta: f64, epsilon: f64) -> MoebiusMatrix {
    MoebiusMatrix::from_params(gamma, delta, epsilon)
}

pub fn apply_moebius(m: &MoebiusMatrix, z: Complex64) -> Result<Complex64> {
    m.apply(z)
}

/// `m2 · m1`, i.e. `m1` acts first.
pub fn compose_moebius(m2: &MoebiusMatrix, m1: &MoebiusMatrix) -> MoebiusMatrix {
    m2.compose(m1)
}

/// `Z/(1 + iεZ)`.
pub fn apply_x5_action(epsilon: f64, z: Complex64) -> Result<Complex64> {
    let denom = 1.0 + Complex64::i() * epsilon * z;
    if denom.norm() == 0.0 {
        return Err(Error::pole("X5 action", z));
    }
    Ok(z / denom)
}

/// Component form of the `X5` action on `(K, L)`.
pub fn x5_action_components(epsilon: f64, k: f64, l: f64) -> Result<(f64, f64)> {
    let m2 = k * k + l * l;
    let denom = 1.0 - 2.0 * l * epsilon + m2 * epsilon * epsilon;
    if denom == 0.0 {
        return Err(Error::pole("X5 action", (k, l)));
    }
    Ok((k / denom, (l - m2 * epsilon) / denom))
}

/// `e^δ Z + iγ`.
pub fn shift_scale(gamma: f64, delta: f64, z: Complex64) -> Complex64 {
    delta.exp() * z + Complex64::i() * gamma
}

/// `(1 + i Zo)/(i + Zo)` for a real potential `Zo > 0`.
///
/// The image is `sech(ln Zo) + i tanh(ln Zo)`: writing `Zo = e^F` gives the
/// sech/tanh potential of `F`. With `Zo = e^{2F}` one obtains the potential of
/// `2F` instead.
pub fn ehlers_from_real(zo: f64) -> Result<Complex64> {
    if !(zo > 0.0) {
        return Err(Error::domain("real-potential map (requires Zo>0)", zo));
    }
    let i = Complex64::i();
    Ok((1.0 + i * zo) / (i + zo))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetGenerator {
    X3,
    X4,
    X5,
}

impl TargetGenerator {
    /// `η_K + i η_L` of the generator at `Z = K + iL`.
    pub fn coefficients(&self, z: Complex64) -> Complex64 {
        let (k, l) = (z.re, z.im);
        match self {
            TargetGenerator::X3 => Complex64::new(0.0, 1.0),
            TargetGenerator::X4 => z,
            TargetGenerator::X5 => Complex64::new(2.0 * k * l, l * l - k * k),
        }
    }

    pub fn flow(&self, param: f64, z: Complex64) -> Result<Complex64> {
        match self {
            TargetGenerator::X3 => Ok(shift_scale(param, 0.0, z)),
            TargetGenerator::X4 => Ok(shift_scale(0.0, param, z)),
            TargetGenerator::X5 => apply_x5_action(param, z),
        }
    }
}

pub const GENERATOR_CHECK_STEP: f64 = 1e-6;

/// Central difference of the one-parameter action at zero minus the generator's
/// coefficients. Vanishes up to O(step²) when action and generator agree.
pub fn generator_derivative_check(generator: TargetGenerator, z: Complex64) -> Result<Complex64> {
    let h = GENERATOR_CHECK_STEP;
    let derivative = (generator.flow(h, z)? - generator.flow(-h, z)?) / (2.0 * h);
    Ok(derivative - generator.coefficients(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() <= tol, "{a} vs {b}");
    }

    #[test]
    fn params_to_matrix() {
        assert_eq!(moebius_from_params(0.0, 0.0, 0.0), MoebiusMatrix::IDENTITY);
        let m = moebius_from_params(-0.5, -LN_2, -1.0);
        for (x, y) in
            m.entries()
                .iter()
                .zip([FRAC_1_SQRT_2, -FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2])
        {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }
        let m = moebius_from_params(1.0, 0.0, 0.0);
        assert_eq!(m.entries(), [1.0, 1.0, 0.0, 1.0]);
        assert_eq!(m.determinant(), 1.0);
    }

    #[test]
    fn apply_examples() {
        let z = Complex64::new(0.3, -1.2);
        close(MoebiusMatrix::IDENTITY.apply(z).unwrap(), z, 1e-15);
        let m = moebius_from_params(-0.5, -LN_2, -1.0);
        close(m.apply(1.0.into()).unwrap(), 1.0.into(), 1e-15);
        let m = MoebiusMatrix::new(1.0, 1.0, 0.0, 1.0).unwrap();
        close(
            m.apply(1.0.into()).unwrap(),
            Complex64::new(1.0, 1.0),
            1e-15,
        );
    }

    #[test]
    fn pole_is_reported() {
        // c Z + i d = 0 at Z = -i d / c
        let m = MoebiusMatrix::new(1.0, 0.0, 1.0, 1.0).unwrap();
        let err = m.apply(Complex64::new(0.0, -1.0)).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }));
        assert!(apply_x5_action(1.0, Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn construction_checks_determinant_and_canonicalises() {
        assert!(MoebiusMatrix::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(MoebiusMatrix::new(2.0, 0.0, 0.0, 0.5 + 1e-9).is_err());
        let m = MoebiusMatrix::new(-2.0, 1.0, 0.0, -0.5).unwrap();
        assert_eq!(m.entries(), [2.0, -1.0, 0.0, 0.5]);
    }

    #[test]
    fn compose_with_identity_and_inverse() {
        let m = moebius_from_params(0.4, -0.3, 1.1);
        assert_eq!(m.compose(&MoebiusMatrix::IDENTITY), m);
        let id = compose_moebius(&m, &m.inverse());
        for (x, y) in id.entries().iter().zip([1.0, 0.0, 0.0, 1.0]) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-14);
        }
    }

    #[test]
    fn x5_examples() {
        let z = Complex64::new(0.7, 0.2);
        assert_eq!(apply_x5_action(0.0, z).unwrap(), z);
        close(
            apply_x5_action(1.0, 1.0.into()).unwrap(),
            Complex64::new(0.5, -0.5),
            1e-15,
        );
        let (k, l) = x5_action_components(0.37, z.re, z.im).unwrap();
        close(
            apply_x5_action(0.37, z).unwrap(),
            Complex64::new(k, l),
            1e-14,
        );
    }

    #[test]
    fn shift_scale_examples() {
        let z = Complex64::new(1.0, 1.0);
        assert_eq!(shift_scale(0.0, 0.0, z), z);
        close(
            shift_scale(2.0, 0.0, 1.0.into()),
            Complex64::new(1.0, 2.0),
            1e-15,
        );
        close(
            shift_scale(0.0, 3f64.ln(), z),
            Complex64::new(3.0, 3.0),
            1e-14,
        );
        close(
            MoebiusMatrix::shift_scale(0.8, -0.4).apply(z).unwrap(),
            shift_scale(0.8, -0.4, z),
            1e-14,
        );
    }

    #[test]
    fn real_potential_map() {
        close(ehlers_from_real(1.0).unwrap(), 1.0.into(), 1e-15);
        close(
            ehlers_from_real(4.0).unwrap(),
            Complex64::new(8.0 / 17.0, 15.0 / 17.0),
            1e-15,
        );
        close(
            ehlers_from_real(2.0).unwrap(),
            Complex64::new(0.8, 0.6),
            1e-15,
        );
        for field in [-1.3, -0.2, 0.0, 0.7, 2.1] {
            let z = ehlers_from_real(f64::exp(field)).unwrap();
            let expected = Complex64::new(1.0 / field.cosh(), field.tanh());
            close(z, expected, 1e-14);
        }
        assert!(ehlers_from_real(0.0).is_err());
    }

    #[test]
    fn generator_checks() {
        let d = generator_derivative_check(TargetGenerator::X5, Complex64::new(1.0, 1.0)).unwrap();
        assert!(d.norm() <= 1e-9, "{d}");
        assert_eq!(
            TargetGenerator::X5.coefficients(Complex64::new(1.0, 1.0)),
            Complex64::new(2.0, 0.0)
        );
        assert_eq!(
            TargetGenerator::X3.coefficients(Complex64::new(5.0, -2.0)),
            Complex64::new(0.0, 1.0)
        );
        let z = Complex64::new(2.0, 3.0);
        assert_eq!(TargetGenerator::X4.coefficients(z), z);
        for g in [
            TargetGenerator::X3,
            TargetGenerator::X4,
            TargetGenerator::X5,
        ] {
            assert!(generator_derivative_check(g, z).unwrap().norm() <= 1e-8);
        }
    }

    #[test]
    fn jet_map_agrees_with_pointwise_map() {
        let m = moebius_from_params(0.3, 0.2, -0.6);
        let z = Jet2::complexify(&(Jet2::lift_f(0.9) * Jet2::lift_g(1.1)), &Jet2::lift_f(0.4));
        let w = m.apply_jet(&z).unwrap();
        close(w.value, m.apply(z.value).unwrap(), 1e-15);
    }
}
