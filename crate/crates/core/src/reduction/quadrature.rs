use crate::error::{Error, Result};

/// Upper bound on the number of accepted subintervals.
pub const MAX_SUBINTERVALS: usize = 1 << 20;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Intervals are refined until `|S(left) + S(right) − S(whole)| ≤ 15·tol_i`,
/// where `tol_i` is `tol` scaled by the interval's share of `[a, b]`; the
/// accepted value carries the Richardson correction. Processing is depth-first
/// from the left, so the result is reproducible bit for bit.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let width = b - a;
    let simpson = |fa: f64, fm: f64, fb: f64, h: f64| h / 6.0 * (fa + 4.0 * fm + fb);

    struct Segment {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
    }

    let (fa, fm, fb) = (f(a)?, f(0.5 * (a + b))?, f(b)?);
    let mut stack = vec![Segment {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(fa, fm, fb, width),
    }];
    let mut total = 0.0;
    let mut accepted = 0usize;
    while let Some(seg) = stack.pop() {
        let m = 0.5 * (seg.a + seg.b);
        let (lm, rm) = (0.5 * (seg.a + m), 0.5 * (m + seg.b));
        let (flm, frm) = (f(lm)?, f(rm)?);
        let h = seg.b - seg.a;
        let left = simpson(seg.fa, flm, seg.fm, 0.5 * h);
        let right = simpson(seg.fm, frm, seg.fb, 0.5 * h);
        let delta = left + right - seg.whole;
        let local_tol = tol * (h / width).abs();
        if delta.abs() <= 15.0 * local_tol || m == seg.a || m == seg.b {
            total += left + right + delta / 15.0;
            accepted += 1;
            if accepted > MAX_SUBINTERVALS {
                return Err(Error::Tolerance {
                    tolerance: tol,
                    max_intervals: MAX_SUBINTERVALS,
                });
            }
            continue;
        }
        if accepted + stack.len() + 2 > MAX_SUBINTERVALS {
            return Err(Error::Tolerance {
                tolerance: tol,
                max_intervals: MAX_SUBINTERVALS,
            });
        }
        // right pushed first so the left half is processed next
        stack.push(Segment {
            a: m,
            b: seg.b,
            fa: seg.fm,
            fm: frm,
            fb: seg.fb,
            whole: right,
        });
        stack.push(Segment {
            a: seg.a,
            b: m,
            fa: seg.fa,
            fm: flm,
            fb: seg.fm,
            whole: left,
        });
    }
    Ok(total)
}
