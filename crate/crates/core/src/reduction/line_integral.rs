//! Reconstruction of a first integral from its integrating factor alone, as
//! the line integral of a closed one-form on the jet space `(x, y, y₁, y₂) = (f, K, K₁, K₂)`:
//!
//! ```text
//! ψ = ∫ P (dy − y₁ dx) − Q (dy₁ − y₂ dx) + Λ (dy₂ − F dx)
//! ```
//!
//! with `P`, `Q` built from partial derivatives of `F·Λ` and `Λ`. The partials
//! are read off [`Jet2`] evaluations with two of the four coordinates seeded.

use super::quadrature::adaptive_simpson;
use super::{rhs_generic, IntegratingFactor, JetPoint};
use crate::error::{Error, Result};
use crate::numerics::Jet2;

/// Absolute quadrature tolerance per path leg.
pub const LINE_INTEGRAL_TOLERANCE: f64 = 1e-8;

type Point = [f64; 4];

struct OneForm {
    g: f64,
    factor: IntegratingFactor,
}

impl OneForm {
    fn seed(p: Point, i: usize, j: Option<usize>) -> [Jet2; 4] {
        let mut v = p.map(Jet2::constant);
        v[i] = Jet2::lift_f(p[i]);
        if let Some(j) = j {
            v[j] = Jet2::lift_g(p[j]);
        }
        v
    }

    fn lambda(&self, v: [Jet2; 4]) -> Jet2 {
        self.factor.eval(v[0], self.g, v[1])
    }

    fn f_lambda(&self, v: [Jet2; 4]) -> Jet2 {
        rhs_generic(v[0], self.g, v[1], v[2], v[3]) * self.lambda(v)
    }

    fn d1(p: Point, fun: impl Fn([Jet2; 4]) -> Jet2, i: usize) -> f64 {
        fun(Self::seed(p, i, None)).d_f
    }

    fn d2(p: Point, fun: impl Fn([Jet2; 4]) -> Jet2, i: usize, j: usize) -> f64 {
        if i == j {
            fun(Self::seed(p, i, None)).d_ff
        } else {
            fun(Self::seed(p, i, Some(j))).d_fg
        }
    }

    /// Coefficients of `dx, dy, dy₁, dy₂` at `p`.
    fn coefficients(&self, p: Point) -> Result<Point> {
        let [x, y, y1, y2] = p;
        if y == 0.0 || !(x + self.g > 0.0) {
            return Err(Error::domain(
                "line integral path (requires K != 0, f+g > 0)",
                p,
            ));
        }
        const X: usize = 0;
        const Y: usize = 1;
        const Y1: usize = 2;
        const Y2: usize = 3;
        let fl = |v| self.f_lambda(v);
        let la = |v| self.lambda(v);

        let p_coef = -Self::d1(p, fl, Y1)
            + Self::d2(p, fl, X, Y2)
            + y1 * Self::d2(p, fl, Y, Y2)
            + y2 * Self::d2(p, fl, Y1, Y2)
            + y2 * Self::d1(p, la, Y)
            + Self::d2(p, la, X, X)
            + y1 * y1 * Self::d2(p, la, Y, Y)
            + y2 * y2 * Self::d2(p, la, Y1, Y1)
            + 2.0 * y1 * Self::d2(p, la, X, Y)
            + 2.0 * y2 * Self::d2(p, la, X, Y1)
            + 2.0 * y1 * y2 * Self::d2(p, la, Y, Y1);
        let q_coef = Self::d1(p, fl, Y2)
            + Self::d1(p, la, X)
            + y1 * Self::d1(p, la, Y)
            + y2 * Self::d1(p, la, Y1);

        let lambda = self.factor.eval(x, self.g, y);
        let rhs = rhs_generic(x, self.g, y, y1, y2);
        Ok([
            -p_coef * y1 + q_coef * y2 - lambda * rhs,
            p_coef,
            -q_coef,
            lambda,
        ])
    }

    /// Integral along the straight segment that moves coordinate `axis` of `base` from `from` to `to`.
    fn leg(&self, base: Point, axis: usize, from: f64, to: f64) -> Result<f64> {
        adaptive_simpson(
            |t| {
                let mut p = base;
                p[axis] = t;
                Ok(self.coefficients(p)?[axis])
            },
            from,
            to,
            LINE_INTEGRAL_TOLERANCE,
        )
    }
}

/// The first integral for `factor` at `endpoint`, recovered by integrating along
///
/// ```text
/// (0, K̃, 0, 0) → (f, K̃, 0, 0) → (f, K, 0, 0) → (f, K, K₁, 0) → (f, K, K₁, K₂)
/// ```
///
/// `k_tilde` defaults to `±1` with the sign of `K`; the path may not cross
/// `K = 0` and its start needs `g > 0`.
pub fn line_integral_first_integral(
    endpoint: &JetPoint,
    factor: IntegratingFactor,
    k_tilde: Option<f64>,
) -> Result<f64> {
    endpoint.validate()?;
    let k_tilde = k_tilde.unwrap_or(endpoint.k.signum());
    if k_tilde == 0.0 || k_tilde.signum() != endpoint.k.signum() {
        return Err(Error::domain(
            "line integral (path from K̃ to K crosses K = 0)",
            (k_tilde, endpoint.k),
        ));
    }
    if !(endpoint.g > 0.0) {
        return Err(Error::domain(
            "line integral (path start requires g > 0)",
            endpoint,
        ));
    }
    let form = OneForm {
        g: endpoint.g,
        factor,
    };
    let JetPoint { f, k, k1, k2, .. } = *endpoint;
    Ok(form.leg([0.0, k_tilde, 0.0, 0.0], 0, 0.0, f)?
        + form.leg([f, k_tilde, 0.0, 0.0], 1, k_tilde, k)?
        + form.leg([f, k, 0.0, 0.0], 2, 0.0, k1)?
        + form.leg([f, k, k1, 0.0], 3, 0.0, k2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::psi_values;

    #[test]
    fn recovers_first_integrals() {
        for (f, g, k, k1, k2) in [
            (1.0, 1.0, 1.0, 1.0, 1.0),
            (0.4, 0.8, 2.3, -1.1, 0.6),
            (1.5, 0.3, -0.7, 0.4, -1.9),
        ] {
            let p = JetPoint::new(f, g, k, k1, k2).unwrap();
            let (psi1, psi2) = psi_values(&p).unwrap();
            let l1 = line_integral_first_integral(&p, IntegratingFactor::Lambda1, None).unwrap();
            let l2 = line_integral_first_integral(&p, IntegratingFactor::Lambda2, None).unwrap();
            assert!((l1 - psi1).abs() < 1e-6, "{l1} vs {psi1}");
            assert!((l2 - psi2).abs() < 1e-6, "{l2} vs {psi2}");
        }
    }

    #[test]
    fn vanishes_at_base_jet() {
        let p = JetPoint::new(0.9, 0.4, 1.0, 0.0, 0.0).unwrap();
        for factor in IntegratingFactor::BOTH {
            assert!(
                line_integral_first_integral(&p, factor, None)
                    .unwrap()
                    .abs()
                    < 1e-10
            );
        }
    }

    #[test]
    fn path_restrictions() {
        let p = JetPoint::new(0.9, 0.4, 1.0, 0.2, 0.1).unwrap();
        assert!(line_integral_first_integral(&p, IntegratingFactor::Lambda1, Some(-1.0)).is_err());
        let p = JetPoint::new(0.9, -0.4, 1.0, 0.2, 0.1).unwrap();
        assert!(line_integral_first_integral(&p, IntegratingFactor::Lambda1, None).is_err());
    }
}
