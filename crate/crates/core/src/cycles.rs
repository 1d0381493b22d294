//! Zero-cycles on products of Tate curves, the Steinberg map `p * p'`, the
//! degree/Albanese filtration and the symbol group `H^1(E, K_2)` with its
//! norm and the map `gamma` to cycles on `E x E_0`.

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tate::{PointSpec, TateParameter, TatePoint, POINT_TOL};

/// Distinct points closer than this multiple of the merge tolerance get a
/// proximity warning.
const PROXIMITY_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleTerm {
    pub p: TatePoint,
    pub q: TatePoint,
    pub m: i64,
}

/// A formal sum of points of `E x E'`, kept normalised: canonical points,
/// equal points merged, zero terms dropped, sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCycle {
    surface: (TateParameter, TateParameter),
    terms: Vec<CycleTerm>,
}

fn cmp_point(a: &TatePoint, b: &TatePoint) -> std::cmp::Ordering {
    let (x, y) = (a.w(), b.w());
    x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
}

fn warn_if_close(a: &TatePoint, b: &TatePoint, tol: f64) {
    let d = a.class_distance(b);
    if d > tol && d <= PROXIMITY_FACTOR * tol {
        warn!("points {a} and {b} are {d:e} apart; kept distinct but within {PROXIMITY_FACTOR}x the merge tolerance");
    }
}

impl ZeroCycle {
    pub fn empty(surface: (TateParameter, TateParameter)) -> Self {
        ZeroCycle {
            surface,
            terms: Vec::new(),
        }
    }

    pub fn new(
        surface: (TateParameter, TateParameter),
        terms: impl IntoIterator<Item = (TatePoint, TatePoint, i64)>,
    ) -> Result<Self> {
        Self::with_tol(surface, terms, POINT_TOL)
    }

    pub fn with_tol(
        surface: (TateParameter, TateParameter),
        terms: impl IntoIterator<Item = (TatePoint, TatePoint, i64)>,
        tol: f64,
    ) -> Result<Self> {
        let mut merged: Vec<CycleTerm> = Vec::new();
        for (p, q, m) in terms {
            for (pt, curve) in [(&p, surface.0), (&q, surface.1)] {
                if pt.curve() != curve {
                    return Err(Error::CurveMismatch {
                        left: curve.q(),
                        right: pt.curve().q(),
                    });
                }
            }
            match merged.iter_mut().find(|t| t.p.approx_eq(&p, tol) && t.q.approx_eq(&q, tol)) {
                Some(t) => t.m += m,
                None => {
                    for t in &merged {
                        warn_if_close(&t.p, &p, tol);
                        warn_if_close(&t.q, &q, tol);
                    }
                    merged.push(CycleTerm { p, q, m })
                }
            }
        }
        merged.retain(|t| t.m != 0);
        merged.sort_by(|a, b| cmp_point(&a.p, &b.p).then(cmp_point(&a.q, &b.q)));
        Ok(ZeroCycle { surface, terms: merged })
    }

    pub fn surface(&self) -> (TateParameter, TateParameter) {
        self.surface
    }

    pub fn terms(&self) -> &[CycleTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn raw(&self) -> impl Iterator<Item = (TatePoint, TatePoint, i64)> + '_ {
        self.terms.iter().map(|t| (t.p, t.q, t.m))
    }

    pub fn add(&self, other: &ZeroCycle) -> Result<ZeroCycle> {
        if self.surface != other.surface {
            return Err(Error::CurveMismatch {
                left: self.surface.0.q(),
                right: other.surface.0.q(),
            });
        }
        ZeroCycle::new(self.surface, self.raw().chain(other.raw()))
    }

    pub fn scale(&self, n: i64) -> ZeroCycle {
        let mut out = self.clone();
        if n == 0 {
            out.terms.clear();
        }
        for t in &mut out.terms {
            t.m *= n;
        }
        out
    }

    pub fn sub(&self, other: &ZeroCycle) -> Result<ZeroCycle> {
        self.add(&other.scale(-1))
    }

    /// Sum of multiplicities; the cycle lies in `F^1` iff this is 0.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.m).sum()
    }

    /// Component-wise group-law sum. Only defined on `F^1`.
    pub fn albanese(&self) -> Result<(TatePoint, TatePoint)> {
        let d = self.degree();
        if d != 0 {
            return Err(Error::Filtration { degree: d });
        }
        let mut a = self.surface.0.identity();
        let mut b = self.surface.1.identity();
        for t in &self.terms {
            a = a.add(&t.p.mul_int(t.m))?;
            b = b.add(&t.q.mul_int(t.m))?;
        }
        Ok((a, b))
    }

    /// Degree zero and trivial Albanese image.
    pub fn in_f2(&self, tol: f64) -> bool {
        match self.albanese() {
            Ok((a, b)) => a.is_identity(tol) && b.is_identity(tol),
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cycle serialisation is infallible")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let raw: CycleJson = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let (c0, c1) = (raw.surface[0], raw.surface[1]);
        let terms = raw
            .terms
            .into_iter()
            .map(|t| Ok((t.p.on(c0)?, t.q.on(c1)?, t.m)))
            .collect::<Result<Vec<_>>>()?;
        ZeroCycle::new((c0, c1), terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    p: PointSpec,
    q: PointSpec,
    m: i64,
}

#[derive(Serialize, Deserialize)]
struct CycleJson {
    surface: [TateParameter; 2],
    terms: Vec<TermJson>,
}

impl Serialize for ZeroCycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycleJson {
            surface: [self.surface.0, self.surface.1],
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    p: PointSpec::from(&t.p),
                    q: PointSpec::from(&t.q),
                    m: t.m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// `p(u) * p'(v) = (p(u), p'(v)) - (p(u), 0) - (0, p'(v)) + (0, 0)`.
pub fn steinberg_cycle(q: TateParameter, q2: TateParameter, u: Complex64, v: Complex64) -> Result<ZeroCycle> {
    let x = q.point(u)?;
    let y = q2.point(v)?;
    let (o, o2) = (q.identity(), q2.identity());
    ZeroCycle::new((q, q2), [(x, y, 1), (x, o2, -1), (o, y, -1), (o, o2, 1)])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolTerm {
    #[serde(serialize_with = "ser_point")]
    pub x: TatePoint,
    pub lambda: Complex64,
    pub m: i64,
}

fn ser_point<S: serde::Serializer>(p: &TatePoint, s: S) -> std::result::Result<S::Ok, S::Error> {
    PointSpec::from(p).serialize(s)
}

/// `sum m_i x_i (x) lambda_i`: symbol generators of `H^1(E, K_2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct H1K2Element {
    pub curve: TateParameter,
    terms: Vec<SymbolTerm>,
}

impl H1K2Element {
    pub fn new(curve: TateParameter, terms: impl IntoIterator<Item = (TatePoint, Complex64, i64)>) -> Result<Self> {
        let mut merged: Vec<SymbolTerm> = Vec::new();
        for (x, lambda, m) in terms {
            if x.curve() != curve {
                return Err(Error::CurveMismatch {
                    left: curve.q(),
                    right: x.curve().q(),
                });
            }
            if lambda == Complex64::new(0.0, 0.0) || !lambda.norm().is_finite() {
                return Err(Error::Domain(format!("symbol entry must be a nonzero number, got {lambda}")));
            }
            let same = |t: &SymbolTerm| {
                t.x.approx_eq(&x, POINT_TOL) && (t.lambda - lambda).norm() <= POINT_TOL * lambda.norm()
            };
            match merged.iter_mut().find(|t| same(t)) {
                Some(t) => t.m += m,
                None => merged.push(SymbolTerm { x, lambda, m }),
            }
        }
        merged.retain(|t| t.m != 0);
        Ok(H1K2Element { curve, terms: merged })
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    pub fn add(&self, other: &H1K2Element) -> Result<H1K2Element> {
        let raw = |e: &H1K2Element| e.terms.iter().map(|t| (t.x, t.lambda, t.m)).collect::<Vec<_>>();
        H1K2Element::new(self.curve, raw(self).into_iter().chain(raw(other)))
    }

    /// `Nm = prod lambda_x^{m_x}`.
    pub fn norm(&self) -> Complex64 {
        // collect exponents per entry first so x (x) l - y (x) l gives exactly 1
        let mut by_entry: Vec<(Complex64, i64)> = Vec::new();
        for t in &self.terms {
            match by_entry.iter_mut().find(|(l, _)| *l == t.lambda) {
                Some((_, m)) => *m += t.m,
                None => by_entry.push((t.lambda, t.m)),
            }
        }
        by_entry
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &(l, m)| acc * l.powi(m as i32))
    }

    /// Membership in `V(E) = Ker Nm`.
    pub fn in_v(&self, tol: f64) -> bool {
        (self.norm() - 1.0).norm() < tol
    }

    /// `gamma(x (x) lambda) = (x, p_0(lambda)) - (x, 0)` on `E x E_0`.
    pub fn gamma(&self) -> Result<ZeroCycle> {
        let nodal = TateParameter::nodal();
        let o = nodal.identity();
        let mut raw = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            raw.push((t.x, nodal.point(t.lambda)?, t.m));
            raw.push((t.x, o, -t.m));
        }
        ZeroCycle::new((self.curve, nodal), raw)
    }
}

/// The generator `x (x) lambda - 0 (x) lambda` of `V(E)`.
pub fn v_generator(x: TatePoint, lambda: Complex64) -> Result<H1K2Element> {
    let curve = x.curve();
    H1K2Element::new(curve, [(x, lambda, 1), (curve.identity(), lambda, -1)])
}
