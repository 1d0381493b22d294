//! The universal Tate curve: the parameter disk, points of the fibres
//! `C*/q^Z` (and of the nodal fibre at `q = 0`), the group law, the chart
//! atlas of the total space and the Weierstrass bridge.

mod chart;
mod probe;
mod weierstrass;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chart::{ChartPoint, Direction};
pub use probe::{probe_algebraicity, ProbeSolution};
pub use weierstrass::{nodal_coords, weierstrass_coords, WeierstrassPoint};

/// Relative tolerance used when comparing canonical representatives.
pub const POINT_TOL: f64 = 1e-10;

/// A point `q` of the unit disk. `q = 0` is the nodal fibre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TateParameter {
    q: Complex64,
}

impl TateParameter {
    pub fn new(q: Complex64) -> Result<Self> {
        if !(q.re.is_finite() && q.im.is_finite()) || q.norm() >= 1.0 {
            return Err(Error::Domain(format!("Tate parameter needs |q| < 1, got {q}")));
        }
        Ok(TateParameter { q })
    }

    /// `q = exp(2 pi i tau)` for `tau` in the upper half plane.
    pub fn from_tau(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Domain(format!("tau must have positive imaginary part, got {tau}")));
        }
        TateParameter::new((Complex64::new(0.0, 2.0 * PI) * tau).exp())
    }

    pub fn nodal() -> Self {
        TateParameter {
            q: Complex64::new(0.0, 0.0),
        }
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn is_nodal(&self) -> bool {
        self.q == Complex64::new(0.0, 0.0)
    }

    pub fn identity(&self) -> TatePoint {
        TatePoint {
            curve: *self,
            w: Complex64::new(1.0, 0.0),
        }
    }

    /// `p_q(u)`: the class of `u` in `C*/q^Z`, or the smooth point with
    /// coordinate `u` on the nodal fibre.
    pub fn point(&self, u: Complex64) -> Result<TatePoint> {
        point_from_parameter(*self, u)
    }
}

impl fmt::Display for TateParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.q)
    }
}

/// Canonical representative in the fundamental annulus `|q| < |w| <= 1`.
pub fn reduce_to_annulus(w: Complex64, q: Complex64) -> Complex64 {
    let rq = q.norm();
    if rq == 0.0 {
        return w;
    }
    let lq = rq.ln();
    let lw = w.norm().ln();
    let m = (-lw / lq).ceil();
    let mut v = if m == 0.0 { w } else { w * q.powi(m as i32) };
    // rounding can leave v a hair outside the annulus
    for _ in 0..4 {
        if v.norm() > 1.0 {
            v *= q;
        } else if v.norm() <= rq {
            v /= q;
        } else {
            break;
        }
    }
    v
}

/// A point of a Tate curve fibre, stored by its canonical representative.
/// The node of `E_0` has no representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TatePoint {
    curve: TateParameter,
    w: Complex64,
}

pub fn point_from_parameter(curve: TateParameter, u: Complex64) -> Result<TatePoint> {
    if u == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("p(0) is undefined; u must be nonzero".into()));
    }
    if !(u.re.is_finite() && u.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite parameter {u}")));
    }
    Ok(TatePoint {
        curve,
        w: reduce_to_annulus(u, curve.q),
    })
}

impl TatePoint {
    pub fn curve(&self) -> TateParameter {
        self.curve
    }

    pub fn w(&self) -> Complex64 {
        self.w
    }

    /// Relative distance between the classes of two representatives.
    pub fn class_distance(&self, other: &TatePoint) -> f64 {
        class_distance(self.w, other.w, self.curve.q)
    }

    pub fn approx_eq(&self, other: &TatePoint, tol: f64) -> bool {
        self.curve == other.curve && self.class_distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        class_distance(self.w, Complex64::new(1.0, 0.0), self.curve.q) <= tol
    }

    fn check_same_curve(&self, other: &TatePoint) -> Result<()> {
        if self.curve != other.curve {
            return Err(Error::CurveMismatch {
                left: self.curve.q,
                right: other.curve.q,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TatePoint) -> Result<TatePoint> {
        self.check_same_curve(other)?;
        Ok(self.with_w(self.w * other.w))
    }

    pub fn negate(&self) -> TatePoint {
        self.with_w(self.w.inv())
    }

    pub fn sub(&self, other: &TatePoint) -> Result<TatePoint> {
        self.add(&other.negate())
    }

    /// `n * self`, by square-and-multiply on representatives.
    pub fn mul_int(&self, n: i64) -> TatePoint {
        let mut acc = Complex64::new(1.0, 0.0);
        let mut base = if n < 0 { self.w.inv() } else { self.w };
        let q = self.curve.q;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = reduce_to_annulus(acc * base, q);
            }
            base = reduce_to_annulus(base * base, q);
            k >>= 1;
        }
        self.with_w(acc)
    }

    fn with_w(&self, w: Complex64) -> TatePoint {
        TatePoint {
            curve: self.curve,
            w: reduce_to_annulus(w, self.curve.q),
        }
    }
}

impl fmt::Display for TatePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[w={} on {}]", self.w, self.curve)
    }
}

pub(crate) fn class_distance(a: Complex64, b: Complex64, q: Complex64) -> f64 {
    let scale = a.norm().max(f64::MIN_POSITIVE);
    if q == Complex64::new(0.0, 0.0) {
        return (a - b).norm() / scale;
    }
    [b, b * q, b / q]
        .iter()
        .map(|c| (a - c).norm() / scale)
        .fold(f64::INFINITY, f64::min)
}

/// JSON shape of a curve: either the parameter or a period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveSpec {
    Q { q_re: f64, q_im: f64 },
    Tau { tau_re: f64, tau_im: f64 },
}

impl CurveSpec {
    pub fn to_parameter(self) -> Result<TateParameter> {
        match self {
            CurveSpec::Q { q_re, q_im } => TateParameter::new(Complex64::new(q_re, q_im)),
            CurveSpec::Tau { tau_re, tau_im } => TateParameter::from_tau(Complex64::new(tau_re, tau_im)),
        }
    }
}

impl Serialize for TateParameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveSpec::Q {
            q_re: self.q.re,
            q_im: self.q.im,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TateParameter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CurveSpec::deserialize(d)?
            .to_parameter()
            .map_err(serde::de::Error::custom)
    }
}

/// JSON shape of a point, `{"w_re":..,"w_im":..}`; the curve comes from context.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSpec {
    pub w_re: f64,
    pub w_im: f64,
}

impl From<&TatePoint> for PointSpec {
    fn from(p: &TatePoint) -> Self {
        PointSpec {
            w_re: p.w.re,
            w_im: p.w.im,
        }
    }
}

impl PointSpec {
    pub fn on(self, curve: TateParameter) -> Result<TatePoint> {
        point_from_parameter(curve, Complex64::new(self.w_re, self.w_im))
    }
}
