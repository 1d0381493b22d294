use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TatePoint;
use crate::error::{Error, Result};
use crate::special::{geometric_tail_terms, PrecisionContext, TWO_PI_I};

/// A point of `Y^2 = 4X^3 - g2 X - g3`, or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassPoint {
    pub x: Complex64,
    pub y: Complex64,
    pub at_infinity: bool,
}

impl WeierstrassPoint {
    pub fn infinity() -> Self {
        WeierstrassPoint {
            x: Complex64::new(0.0, 0.0),
            y: Complex64::new(0.0, 0.0),
            at_infinity: true,
        }
    }

    /// `|Y^2 - (4X^3 - g2 X - g3)|` relative to the size of the largest
    /// term (never below 1).
    pub fn curve_residual(&self, g2: Complex64, g3: Complex64) -> f64 {
        if self.at_infinity {
            return 0.0;
        }
        let y2 = self.y * self.y;
        let x3 = self.x * self.x * self.x * 4.0;
        let gx = g2 * self.x;
        let scale = 1.0f64.max(y2.norm()).max(x3.norm()).max(gx.norm()).max(g3.norm());
        (y2 - (x3 - gx - g3)).norm() / scale
    }
}

// x/(1-x)^2, invariant under x -> 1/x
fn x_kernel(x: Complex64) -> Complex64 {
    let d = Complex64::new(1.0, 0.0) - x;
    x / (d * d)
}

// x(1+x)/(1-x)^3, odd under x -> 1/x
fn y_kernel(x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let d = one - x;
    x * (one + x) / (d * d * d)
}

/// `(P, P')` at the point of `E_q` with multiplicative coordinate `w`, via
///
/// `X = (2 pi i)^2 [ sum_n q^n w/(1-q^n w)^2 + 1/12 - 2 sum_{n>=1} q^n/(1-q^n)^2 ]`
///
/// and `Y = (2 pi i)^3 sum_n q^n w (1+q^n w)/(1-q^n w)^3`. Terms with
/// negative `n` are evaluated at `q^|n|/w` to keep them bounded.
pub fn weierstrass_coords(p: &TatePoint, ctx: &PrecisionContext) -> Result<WeierstrassPoint> {
    ctx.validate()?;
    let curve = p.curve();
    if curve.is_nodal() {
        return Err(Error::Domain(
            "nodal fibre has no Weierstrass q-expansion; use nodal_coords".into(),
        ));
    }
    if p.is_identity(ctx.target_abs_tol) {
        return Ok(WeierstrassPoint::infinity());
    }
    let q = curve.q();
    let r = q.norm();
    let w = p.w();
    // |q^n/w| < |q|^(n-1); tail bound |q|^N/(1-|q|)^3 with the (2 pi)^3 scale
    let scale = (2.0 * std::f64::consts::PI).powi(3);
    let n_terms = geometric_tail_terms(r, 0, ctx.target_abs_tol * r * (1.0 - r).powi(3) / scale, ctx.series_term_cap)?;

    let mut xs = x_kernel(w);
    let mut ys = y_kernel(w);
    let mut constant = Complex64::new(1.0 / 12.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for _ in 1..=n_terms {
        qn *= q;
        let up = qn * w;
        let down = qn / w;
        xs += x_kernel(up) + x_kernel(down);
        ys += y_kernel(up) - y_kernel(down);
        constant -= x_kernel(qn) * 2.0;
    }
    let tpi2 = TWO_PI_I * TWO_PI_I;
    Ok(WeierstrassPoint {
        x: tpi2 * (xs + constant),
        y: tpi2 * TWO_PI_I * ys,
        at_infinity: false,
    })
}

/// The rational parametrisation of the nodal cubic (the `q -> 0` limit of
/// [`weierstrass_coords`]): `X = (2 pi i)^2 [w/(1-w)^2 + 1/12]`,
/// `Y = (2 pi i)^3 w(1+w)/(1-w)^3`.
pub fn nodal_coords(w: Complex64) -> Result<WeierstrassPoint> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::NodeNotRepresentable);
    }
    if w == Complex64::new(1.0, 0.0) {
        return Ok(WeierstrassPoint::infinity());
    }
    let tpi2 = TWO_PI_I * TWO_PI_I;
    Ok(WeierstrassPoint {
        x: tpi2 * (x_kernel(w) + 1.0 / 12.0),
        y: tpi2 * TWO_PI_I * y_kernel(w),
        at_infinity: false,
    })
}
