//! Central finite differences on a 5×5 stencil.
//!
//! Oracle only: these estimates exist to cross-check the jet arithmetic and are
//! never used to build production residuals.

use super::jet2::Jet2;
use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-4;

/// Values of `field` at `(f + i·h, g + j·h)` for `i, j ∈ -2..=2`.
struct Stencil([[f64; 5]; 5]);

impl Stencil {
    fn sample(field: &impl Fn(f64, f64) -> Result<f64>, f: f64, g: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "step must be positive, got {h}"
            )));
        }
        let mut v = [[0.0; 5]; 5];
        for (i, row) in v.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let (x, y) = (f + (i as f64 - 2.0) * h, g + (j as f64 - 2.0) * h);
                if x + y <= 0.0 {
                    return Err(Error::domain("finite-difference stencil (f+g<=0)", (x, y)));
                }
                *slot = field(x, y)?;
            }
        }
        Ok(Stencil(v))
    }

    fn at(&self, i: i32, j: i32) -> f64 {
        self.0[(i + 2) as usize][(j + 2) as usize]
    }

    /// Second-order estimates with node spacing `k·h`, `k ∈ {1, 2}`.
    fn estimate(&self, k: i32, h: f64) -> Jet2 {
        let s = k as f64 * h;
        let c = self.at(0, 0);
        Jet2 {
            value: c,
            d_f: (self.at(k, 0) - self.at(-k, 0)) / (2.0 * s),
            d_g: (self.at(0, k) - self.at(0, -k)) / (2.0 * s),
            d_ff: (self.at(k, 0) - 2.0 * c + self.at(-k, 0)) / (s * s),
            d_gg: (self.at(0, k) - 2.0 * c + self.at(0, -k)) / (s * s),
            d_fg: (self.at(k, k) - self.at(k, -k) - self.at(-k, k) + self.at(-k, -k))
                / (4.0 * s * s),
        }
    }
}

/// Central-difference estimate of the value and all partials through second
/// order. Truncation error is O(h²).
pub fn fd_partials(
    field: impl Fn(f64, f64) -> Result<f64>,
    f: f64,
    g: f64,
    h: f64,
) -> Result<Jet2> {
    Ok(Stencil::sample(&field, f, g, h)?.estimate(1, h))
}

/// One Richardson step on top of [`fd_partials`], combining spacings `h` and
/// `2h`. Truncation error is O(h⁴).
pub fn fd_partials_richardson(
    field: impl Fn(f64, f64) -> Result<f64>,
    f: f64,
    g: f64,
    h: f64,
) -> Result<Jet2> {
    let st = Stencil::sample(&field, f, g, h)?;
    let fine = st.estimate(1, h).slots();
    let coarse = st.estimate(2, h).slots();
    Ok(Jet2::from_slots(std::array::from_fn(|i| {
        (4.0 * fine[i] - coarse[i]) / 3.0
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn square_is_differentiated_exactly_enough() {
        let j = fd_partials(|f, _| Ok(f * f), 2.0, 1.0, DEFAULT_STEP).unwrap();
        assert_abs_diff_eq!(j.d_f, 4.0, epsilon = 1e-6);
        assert_abs_diff_eq!(j.d_ff, 2.0, epsilon = 1e-6);
    }

    #[test]
    fn log_sum_mixed_partial() {
        let j = fd_partials(|f, g| Ok((f + g).ln()), 1.0, 1.0, DEFAULT_STEP).unwrap();
        assert_abs_diff_eq!(j.d_fg, -0.25, epsilon = 1e-6);
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let j = fd_partials(|_, _| Ok(7.0), 0.5, 0.5, DEFAULT_STEP).unwrap();
        assert_eq!(j.slots(), [7.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn stencil_outside_domain_is_rejected() {
        let err = fd_partials(|f, g| Ok(f + g), 1e-4, 0.0, 1e-4).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
        assert!(fd_partials(|f, g| Ok(f + g), 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn richardson_improves_on_plain_estimate() {
        let field = |f: f64, g: f64| Ok((f * g).sin());
        let (f, g, h) = (0.7f64, 1.1f64, 1e-2);
        let exact_fg = (f * g).cos() - f * g * (f * g).sin();
        let plain = fd_partials(field, f, g, h).unwrap();
        let rich = fd_partials_richardson(field, f, g, h).unwrap();
        assert!((rich.d_fg - exact_fg).abs() < (plain.d_fg - exact_fg).abs() / 10.0);
    }
}
