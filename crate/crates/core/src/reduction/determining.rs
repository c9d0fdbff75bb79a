use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term `coef · (f+g)^s_pow · K^k_pow`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaTerm {
    pub coef: f64,
    pub s_pow: i32,
    pub k_pow: i32,
}

impl AlphaTerm {
    pub fn new(coef: f64, s_pow: i32, k_pow: i32) -> Self {
        AlphaTerm { coef, s_pow, k_pow }
    }

    /// `∂_f^m ∂_K^n` of the term. Exact: falling factorials times a monomial.
    fn partial(&self, m: u32, n: u32, s: f64, k: f64) -> f64 {
        let falling =
            |p: i32, order: u32| (0..order as i32).map(|i| (p - i) as f64).product::<f64>();
        self.coef
            * falling(self.s_pow, m)
            * falling(self.k_pow, n)
            * s.powi(self.s_pow - m as i32)
            * k.powi(self.k_pow - n as i32)
    }
}

/// A candidate multiplier `α(f+g, K)` written as a sum of monomials.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MonomialAlpha {
    pub terms: Vec<AlphaTerm>,
}

impl MonomialAlpha {
    pub fn new(terms: impl IntoIterator<Item = AlphaTerm>) -> Self {
        MonomialAlpha {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn with_term(mut self, term: AlphaTerm) -> Self {
        self.terms.push(term);
        self
    }

    pub fn partial(&self, m: u32, n: u32, s: f64, k: f64) -> f64 {
        self.terms.iter().map(|t| t.partial(m, n, s, k)).sum()
    }
}

/// `α = c1·(f+g)²/K + c2·(f+g)²/K³`, the general solution of the determining system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaAnsatz {
    pub c1: f64,
    pub c2: f64,
}

impl From<AlphaAnsatz> for MonomialAlpha {
    fn from(a: AlphaAnsatz) -> Self {
        MonomialAlpha::new([AlphaTerm::new(a.c1, 2, -1), AlphaTerm::new(a.c2, 2, -3)])
    }
}

/// The individual terms of each of the six determining equations.
fn determining_terms(alpha: &MonomialAlpha, f: f64, g: f64, k: f64) -> Result<[Vec<f64>; 6]> {
    let s = f + g;
    if !(s > 0.0) || k == 0.0 || !k.is_finite() {
        return Err(Error::domain(
            "determining system (requires f+g > 0, K != 0)",
            (f, g, k),
        ));
    }
    let d = |m, n| alpha.partial(m, n, s, k);
    let a = d(0, 0);
    let (a_k, a_kk, a_kkk) = (d(0, 1), d(0, 2), d(0, 3));
    let (a_f, a_ff, a_fff) = (d(1, 0), d(2, 0), d(3, 0));
    let (a_fk, a_fkk, a_ffk) = (d(1, 1), d(1, 2), d(2, 1));
    Ok([
        vec![9.0 / (k * k) * a, 15.0 / k * a_k, 3.0 * a_kk],
        vec![
            -6.0 / k.powi(3) * a,
            -2.0 / (k * k) * a_k,
            5.0 / k * a_kk,
            a_kkk,
        ],
        vec![
            -10.0 / (s * k) * a,
            -6.0 / s * a_k,
            5.0 / k * a_f,
            3.0 * a_fk,
        ],
        vec![
            -8.0 / s.powi(3) * a,
            7.0 / (s * s) * a_f,
            -3.0 / s * a_ff,
            a_fff,
        ],
        vec![
            5.0 / (s * k * k) * a,
            -5.0 / (s * k) * a_k,
            -3.0 / s * a_kk,
            2.0 / (k * k) * a_f,
            10.0 / k * a_fk,
            3.0 * a_fkk,
        ],
        vec![
            10.0 / (s * s * k) * a,
            6.0 / (s * s) * a_k,
            -10.0 / (s * k) * a_f,
            -6.0 / s * a_fk,
            5.0 / k * a_ff,
            3.0 * a_ffk,
        ],
    ])
}

/// The six linear PDEs an integrating factor `α(f, K)` of the third-order ODE
/// must satisfy, evaluated at `(f, g, K)` with `s = f+g`.
pub fn determining_system_residuals(
    alpha: &MonomialAlpha,
    f: f64,
    g: f64,
    k: f64,
) -> Result<[f64; 6]> {
    let terms = determining_terms(alpha, f, g, k)?;
    Ok(terms.map(|t| t.iter().sum()))
}

/// Residuals divided by the sum of absolute term values (floored at 1), so
/// that rounding noise is comparable across points.
pub fn determining_system_relative_residuals(
    alpha: &MonomialAlpha,
    f: f64,
    g: f64,
    k: f64,
) -> Result<[f64; 6]> {
    let terms = determining_terms(alpha, f, g, k)?;
    Ok(terms.map(|t| t.iter().sum::<f64>() / t.iter().map(|x| x.abs()).sum::<f64>().max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_solves_system() {
        for (c1, c2) in [(1.0, 0.0), (0.0, 1.0), (-2.5, 0.7)] {
            let alpha = AlphaAnsatz { c1, c2 }.into();
            for (f, g, k) in [(1.0, 1.0, 2.0), (0.3, 0.2, -1.4), (2.0, 0.5, 0.6)] {
                let r = determining_system_residuals(&alpha, f, g, k).unwrap();
                assert!(r.iter().all(|x| x.abs() < 1e-11), "{r:?}");
            }
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let alpha = MonomialAlpha::from(AlphaAnsatz { c1: 1.0, c2: 1.0 })
            .with_term(AlphaTerm::new(1.0, 3, -1));
        let r = determining_system_residuals(&alpha, 1.0, 1.0, 2.0).unwrap();
        let expected = [0.0, 0.0, 2.0, 0.5, -1.0, 2.0];
        for (a, b) in r.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn exact_partials() {
        let t = AlphaTerm::new(2.0, 3, -2);
        // ∂_f ∂_K (2 s³ K⁻²) = 2·3·(−2) s² K⁻³
        assert_eq!(t.partial(1, 1, 2.0, 1.0), -48.0);
        assert_eq!(t.partial(4, 0, 2.0, 1.0), 0.0);
    }

    #[test]
    fn rejects_bad_points() {
        let alpha = AlphaAnsatz { c1: 1.0, c2: 0.0 }.into();
        assert!(determining_system_residuals(&alpha, 1.0, 1.0, 0.0).is_err());
        assert!(determining_system_residuals(&alpha, -1.0, 0.5, 1.0).is_err());
    }
}
