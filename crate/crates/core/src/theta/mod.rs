//! Tate theta functions and the trivialising section of the local system
//! `L_u`: on `C*` the bundle is glued by `(w, l) ~ (q w, u l)` and the
//! section `F(w) = theta(w/u)/theta(w)` has divisor `(p(u)) - (0)`.

mod contour;
mod nodal;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::PrecisionContext;
use crate::tate::{class_distance, PointSpec, TateParameter, TatePoint};

pub use contour::{annulus_winding, divisor_of_section, AnnulusWinding, ContourTrace, DivisorReport, RegionCount};
pub use nodal::{nodal_section, NodalSection, RationalFunction};

/// Distance, in canonical-representative units, below which evaluation of
/// a section counts as hitting its divisor.
pub fn near_singularity_threshold(ctx: &PrecisionContext) -> f64 {
    10.0 * ctx.target_abs_tol
}

fn product_terms(w: Complex64, r: f64, ctx: &PrecisionContext) -> Result<usize> {
    // relative tail of the product is below sum_{n>N} r^n (|w| + 1/|w|) / (1 - r)
    let spread = w.norm() + w.norm().recip();
    let target = ctx.target_abs_tol * 1e-2;
    let mut n = 1usize;
    let mut rn = r;
    loop {
        if rn * spread / (1.0 - r) < target {
            return Ok(n);
        }
        n += 1;
        rn *= r;
        if n > ctx.series_term_cap {
            let needed = ((target * (1.0 - r) / spread).ln() / r.ln()).ceil() as usize;
            return Err(Error::PrecisionUnreachable {
                needed,
                cap: ctx.series_term_cap,
            });
        }
    }
}

/// `theta(w) = (1 - w) prod_{n>=1} (1 - q^n w)(1 - q^n / w)`, with
/// `theta(q w) = -w^{-1} theta(w)`. At `q = 0` this is `1 - w`.
pub fn tate_theta(w: Complex64, curve: TateParameter, ctx: &PrecisionContext) -> Result<Complex64> {
    ctx.validate()?;
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("theta is not defined at w = 0".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut acc = one - w;
    if curve.is_nodal() {
        return Ok(acc);
    }
    let q = curve.q();
    let n_terms = product_terms(w, q.norm(), ctx)?;
    let mut qn = one;
    for _ in 0..n_terms {
        qn *= q;
        acc *= (one - qn * w) * (one - qn / w);
    }
    Ok(acc)
}

/// Logarithmic derivative `theta'(w) / theta(w)`.
pub fn tate_theta_log_derivative(w: Complex64, curve: TateParameter, ctx: &PrecisionContext) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("theta is not defined at w = 0".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut acc = -(one - w).inv();
    if curve.is_nodal() {
        return Ok(acc);
    }
    let q = curve.q();
    let n_terms = product_terms(w, q.norm(), ctx)?;
    let mut qn = one;
    for _ in 0..n_terms {
        qn *= q;
        acc += -qn / (one - qn * w) + qn / (w * (w - qn));
    }
    Ok(acc)
}

/// The local system `L_u` on `E_q`: `(w, l) ~ (q w, u l)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AutomorphyBundle {
    pub curve: TateParameter,
    pub monodromy_u: Complex64,
}

impl AutomorphyBundle {
    pub fn new(curve: TateParameter, monodromy_u: Complex64) -> Result<Self> {
        if monodromy_u == Complex64::new(0.0, 0.0) || !monodromy_u.norm().is_finite() {
            return Err(Error::Domain(format!("monodromy must be a nonzero number, got {monodromy_u}")));
        }
        Ok(AutomorphyBundle { curve, monodromy_u })
    }

    /// True when `u` is (within `tol`) a power of `q`, i.e. `L_u` is trivial.
    pub fn is_trivial(&self, tol: f64) -> bool {
        if self.curve.is_nodal() {
            return (self.monodromy_u - Complex64::new(1.0, 0.0)).norm() <= tol;
        }
        self.curve.point(self.monodromy_u).map(|p| p.is_identity(tol)).unwrap_or(false)
    }
}

/// `F(w) = theta(w/u) / theta(w)`, meromorphic on `C*` with
/// `F(q w) = u F(w)`, a simple zero on `u q^Z` and a simple pole on `q^Z`.
pub fn section_f(w: Complex64, bundle: &AutomorphyBundle, ctx: &PrecisionContext) -> Result<Complex64> {
    ctx.validate()?;
    let u = bundle.monodromy_u;
    let q = bundle.curve.q();
    let thr = near_singularity_threshold(ctx);
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("section is not defined at w = 0".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    if class_distance(w, one, q) <= thr {
        return Err(Error::NearSingularity { point: one });
    }
    if class_distance(w, u, q) <= thr {
        let point = bundle.curve.point(u)?.w();
        return Err(Error::NearSingularity { point });
    }
    let num = tate_theta(w / u, bundle.curve, ctx)?;
    let den = tate_theta(w, bundle.curve, ctx)?;
    Ok(num / den)
}

/// `F'(w) / F(w)`.
pub fn section_log_derivative(w: Complex64, bundle: &AutomorphyBundle, ctx: &PrecisionContext) -> Result<Complex64> {
    let u = bundle.monodromy_u;
    Ok(tate_theta_log_derivative(w / u, bundle.curve, ctx)? / u - tate_theta_log_derivative(w, bundle.curve, ctx)?)
}

/// Residual `|F(q w) - u F(w)| / |u F(w)|`.
pub fn automorphy_residual(w: Complex64, bundle: &AutomorphyBundle, ctx: &PrecisionContext) -> Result<f64> {
    let q = bundle.curve.q();
    let fw = section_f(w, bundle, ctx)?;
    let fqw = section_f(q * w, bundle, ctx)?;
    let expect = bundle.monodromy_u * fw;
    Ok((fqw - expect).norm() / expect.norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisorTerm {
    pub point: TatePoint,
    pub multiplicity: i64,
}

/// A divisor on one fibre, normalised: canonical points, merged, no zero
/// multiplicities, sorted by representative.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorOnCurve {
    curve: TateParameter,
    terms: Vec<DivisorTerm>,
}

impl DivisorOnCurve {
    pub fn new(curve: TateParameter, terms: impl IntoIterator<Item = (TatePoint, i64)>, tol: f64) -> Result<Self> {
        let mut merged: Vec<DivisorTerm> = Vec::new();
        for (point, m) in terms {
            if point.curve() != curve {
                return Err(Error::CurveMismatch {
                    left: curve.q(),
                    right: point.curve().q(),
                });
            }
            match merged.iter_mut().find(|t| t.point.approx_eq(&point, tol)) {
                Some(t) => t.multiplicity += m,
                None => merged.push(DivisorTerm { point, multiplicity: m }),
            }
        }
        merged.retain(|t| t.multiplicity != 0);
        merged.sort_by(|a, b| {
            let (x, y) = (a.point.w(), b.point.w());
            x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
        });
        Ok(DivisorOnCurve { curve, terms: merged })
    }

    pub fn curve(&self) -> TateParameter {
        self.curve
    }

    pub fn terms(&self) -> &[DivisorTerm] {
        &self.terms
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }

    /// Same points (up to `tol`) with the same multiplicities.
    pub fn approx_eq(&self, other: &DivisorOnCurve, tol: f64) -> bool {
        self.curve == other.curve
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|t| {
                other
                    .terms
                    .iter()
                    .any(|o| o.multiplicity == t.multiplicity && o.point.approx_eq(&t.point, tol))
            })
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorTermJson {
    point: PointSpec,
    multiplicity: i64,
}

impl Serialize for DivisorOnCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<DivisorTermJson> = self
            .terms
            .iter()
            .map(|t| DivisorTermJson {
                point: PointSpec::from(&t.point),
                multiplicity: t.multiplicity,
            })
            .collect();
        terms.serialize(s)
    }
}

impl DivisorOnCurve {
    /// Reads the JSON array form; points are placed on `curve`.
    pub fn from_json(curve: TateParameter, json: &str, tol: f64) -> Result<Self> {
        let raw: Vec<DivisorTermJson> = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = raw
            .into_iter()
            .map(|t| Ok((t.point.on(curve)?, t.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        DivisorOnCurve::new(curve, terms, tol)
    }
}
