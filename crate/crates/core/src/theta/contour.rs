//! Divisor extraction for `F = theta(w/u)/theta(w)` by the argument
//! principle. Zeros of the numerator and of the denominator are counted
//! separately, so a zero and a pole sharing a cell never cancel.

use std::f64::consts::PI;

use log::{debug, warn};
use num_complex::Complex64;
use serde::Serialize;

use super::{section_log_derivative, tate_theta_log_derivative, AutomorphyBundle, DivisorOnCurve};
use crate::error::{Error, Result};
use crate::special::PrecisionContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Zero,
    Pole,
}

// Gauss-Kronrod 7/15 on [-1, 1]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const SEGMENT_TOL: f64 = 1e-7;
const MAX_PANELS: usize = 20_000;
const COUNT_SLACK: f64 = 0.05;
const SPLIT_OFFSETS: [f64; 6] = [0.0, 0.13, -0.11, 0.21, -0.17, 0.07];
const RADIUS_RETRIES: usize = 5;

/// `int g(e^s) e^s ds` along the straight segment `s0 -> s1` in log
/// coordinates, by adaptive Gauss-Kronrod.
fn segment_integral<G>(g: &G, s0: Complex64, s1: Complex64, initial_panels: usize) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let h = s1 - s0;
    let gk = |a: f64, b: f64| -> Result<(Complex64, f64)> {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut k = Complex64::new(0.0, 0.0);
        let mut gauss = Complex64::new(0.0, 0.0);
        for (j, &x) in XGK.iter().enumerate() {
            let nodes: &[f64] = if x == 0.0 { &[0.0] } else { &[-x, x] };
            for &t in nodes {
                let s = s0 + h * (mid + half * t);
                let w = s.exp();
                let v = g(w)? * w;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::ContourDegeneracy(format!("integrand not finite at w = {w}")));
                }
                k += v * WGK[j];
                if j % 2 == 1 {
                    gauss += v * WG[j / 2];
                }
            }
        }
        let scale = h * half;
        Ok((k * scale, ((k - gauss) * scale).norm()))
    };

    let n0 = initial_panels.max(1);
    let mut stack: Vec<(f64, f64)> = (0..n0)
        .map(|i| (i as f64 / n0 as f64, (i + 1) as f64 / n0 as f64))
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut panels = 0usize;
    while let Some((a, b)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(Error::ContourDegeneracy(
                "quadrature did not converge; contour runs too close to a singularity".into(),
            ));
        }
        let (val, err) = gk(a, b)?;
        if err <= SEGMENT_TOL * (b - a) || b - a < 1e-13 {
            total += val;
        } else {
            let m = 0.5 * (a + b);
            stack.push((a, m));
            stack.push((m, b));
        }
    }
    Ok(total)
}

/// A rectangle in `s = log w`: log radius in `[r0, r1]`, angle in `[a0, a1]`.
#[derive(Debug, Clone, Copy)]
struct Cell {
    r0: f64,
    r1: f64,
    a0: f64,
    a1: f64,
    full: bool,
}

impl Cell {
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.r0, self.a0),
            Complex64::new(self.r1, self.a0),
            Complex64::new(self.r1, self.a1),
            Complex64::new(self.r0, self.a1),
        ]
    }

    fn split(&self, frac: f64) -> (Cell, Cell) {
        let along_angle = self.full || (self.a1 - self.a0) >= (self.r1 - self.r0);
        if along_angle {
            let m = self.a0 + frac * (self.a1 - self.a0);
            (
                Cell { a1: m, full: false, ..*self },
                Cell { a0: m, full: false, ..*self },
            )
        } else {
            let m = self.r0 + frac * (self.r1 - self.r0);
            (Cell { r1: m, ..*self }, Cell { r0: m, ..*self })
        }
    }

    fn centre(&self) -> Complex64 {
        Complex64::new(0.5 * (self.r0 + self.r1), 0.5 * (self.a0 + self.a1)).exp()
    }

    fn size(&self) -> f64 {
        (self.r1 - self.r0).max(self.a1 - self.a0)
    }
}

/// One argument-principle count recorded for `--trace`.
#[derive(Debug, Clone, Serialize)]
pub struct RegionCount {
    pub kind: &'static str,
    pub log_radius: [f64; 2],
    pub angle: [f64; 2],
    pub winding: f64,
    pub count: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContourTrace {
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub radius_retries: usize,
    pub regions: Vec<RegionCount>,
    pub newton_steps: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisorReport {
    pub divisor: DivisorOnCurve,
    pub trace: ContourTrace,
}

struct Counter<'a> {
    bundle: &'a AutomorphyBundle,
    ctx: &'a PrecisionContext,
    panels: usize,
    regions: Vec<RegionCount>,
}

impl Counter<'_> {
    fn log_derivative(&self, kind: Kind, w: Complex64) -> Result<Complex64> {
        let u = self.bundle.monodromy_u;
        match kind {
            Kind::Zero => Ok(tate_theta_log_derivative(w / u, self.bundle.curve, self.ctx)? / u),
            Kind::Pole => tate_theta_log_derivative(w, self.bundle.curve, self.ctx),
        }
    }

    fn count(&mut self, kind: Kind, cell: &Cell) -> Result<i64> {
        let g = |w: Complex64| self.log_derivative(kind, w);
        let c = cell.corners();
        let mut integral = segment_integral(&g, c[1], c[2], self.panels)?;
        integral += segment_integral(&g, c[3], c[0], self.panels)?;
        if !cell.full {
            integral += segment_integral(&g, c[0], c[1], self.panels)?;
            integral += segment_integral(&g, c[2], c[3], self.panels)?;
        }
        let winding = integral / Complex64::new(0.0, 2.0 * PI);
        let count = winding.re.round();
        self.regions.push(RegionCount {
            kind: match kind {
                Kind::Zero => "zero",
                Kind::Pole => "pole",
            },
            log_radius: [cell.r0, cell.r1],
            angle: [cell.a0, cell.a1],
            winding: winding.re,
            count: count as i64,
        });
        if (winding - count).norm() > COUNT_SLACK {
            return Err(Error::ContourDegeneracy(format!(
                "non-integral winding {winding} on cell {cell:?}"
            )));
        }
        Ok(count as i64)
    }

    /// Bisect down to a cell of width `sqrt(tol)` holding the single
    /// singularity of `kind` in `cell`.
    fn localise(&mut self, kind: Kind, mut cell: Cell) -> Result<Cell> {
        let target = self.ctx.target_abs_tol.sqrt();
        while cell.size() > target {
            let mut next = None;
            for off in SPLIT_OFFSETS {
                let (a, b) = cell.split(0.5 + off);
                match self.count(kind, &a) {
                    Ok(1) => {
                        next = Some(a);
                        break;
                    }
                    Ok(0) => {}
                    Ok(_) | Err(Error::ContourDegeneracy(_)) => continue,
                    Err(e) => return Err(e),
                }
                match self.count(kind, &b) {
                    Ok(1) => {
                        next = Some(b);
                        break;
                    }
                    Ok(_) | Err(Error::ContourDegeneracy(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            cell = next.ok_or_else(|| {
                Error::ContourDegeneracy(format!("could not isolate the {kind:?} inside {cell:?}"))
            })?;
        }
        Ok(cell)
    }

    fn polish(&self, kind: Kind, cell: &Cell, steps: &mut usize) -> Result<Complex64> {
        let start = cell.centre();
        let mut w = start;
        for _ in 0..30 {
            let ld = self.log_derivative(kind, w)?;
            let step = if ld.norm().is_finite() { ld.inv() } else { Complex64::new(0.0, 0.0) };
            w -= step;
            *steps += 1;
            if step.norm() <= 1e-15 * w.norm() {
                break;
            }
        }
        let drift = ((w - start) / start).norm();
        if !(drift <= 10.0 * cell.size() + 1e-12) {
            return Err(Error::ContourDegeneracy(format!(
                "Newton polish left the localising cell ({drift:e})"
            )));
        }
        Ok(w)
    }
}

/// Log radius of the outer circle: the middle of the widest gap between
/// the radii of the pole class `q^Z` and the zero class `u q^Z`.
fn outer_log_radius(bundle: &AutomorphyBundle, attempt: usize) -> f64 {
    let period = -bundle.curve.q().norm().ln();
    let depth = (-bundle.monodromy_u.norm().ln()).rem_euclid(period);
    let (start, gap) = if depth >= period - depth {
        (0.0, depth)
    } else {
        (depth, period - depth)
    };
    let shift = [0.0, 0.1, -0.1, 0.2, -0.2, 0.3][attempt % 6];
    -(start + gap * (0.5 + shift))
}

fn check_bundle(bundle: &AutomorphyBundle, ctx: &PrecisionContext) -> Result<()> {
    ctx.validate()?;
    if bundle.curve.is_nodal() {
        return Err(Error::Domain("the nodal fibre has no theta section; use nodal_section".into()));
    }
    if bundle.is_trivial(ctx.target_abs_tol) {
        return Err(Error::TrivialBundle { u: bundle.monodromy_u });
    }
    Ok(())
}

/// The divisor of `F` on `E_q`, located by argument-principle counts over a
/// fundamental annulus, bisection in radius and angle, and a Newton
/// polish.
pub fn divisor_of_section(bundle: &AutomorphyBundle, ctx: &PrecisionContext) -> Result<DivisorReport> {
    check_bundle(bundle, ctx)?;
    let period = bundle.curve.q().norm().ln();
    let mut last_err = None;
    for attempt in 0..=RADIUS_RETRIES {
        let outer = outer_log_radius(bundle, attempt);
        // a cut angle unlikely to meet a singular point
        let a0 = -PI + 0.318_309_886 * (attempt as f64 + 1.0);
        let annulus = Cell {
            r0: outer + period,
            r1: outer,
            a0,
            a1: a0 + 2.0 * PI,
            full: true,
        };
        let mut counter = Counter {
            bundle,
            ctx,
            panels: (ctx.quadrature_nodes / 15).max(1),
            regions: Vec::new(),
        };
        match extract(&mut counter, &annulus) {
            Ok((zero, pole, newton_steps)) => {
                let curve = bundle.curve;
                let divisor = DivisorOnCurve::new(
                    curve,
                    vec![(curve.point(zero)?, 1), (curve.point(pole)?, -1)],
                    ctx.target_abs_tol,
                )?;
                return Ok(DivisorReport {
                    divisor,
                    trace: ContourTrace {
                        outer_radius: outer.exp(),
                        inner_radius: (outer + period).exp(),
                        radius_retries: attempt,
                        regions: counter.regions,
                        newton_steps,
                    },
                });
            }
            Err(Error::ContourDegeneracy(msg)) => {
                warn!("contour attempt {attempt} failed: {msg}; perturbing the radius");
                last_err = Some(msg);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::ContourDegeneracy(format!(
        "no clean contour after {RADIUS_RETRIES} radius perturbations: {}",
        last_err.unwrap_or_default()
    )))
}

fn extract(counter: &mut Counter<'_>, annulus: &Cell) -> Result<(Complex64, Complex64, usize)> {
    let zeros = counter.count(Kind::Zero, annulus)?;
    let poles = counter.count(Kind::Pole, annulus)?;
    if zeros != 1 || poles != 1 {
        return Err(Error::ContourDegeneracy(format!(
            "fundamental annulus holds {zeros} zeros and {poles} poles"
        )));
    }
    let mut steps = 0;
    let zc = counter.localise(Kind::Zero, *annulus)?;
    let zero = counter.polish(Kind::Zero, &zc, &mut steps)?;
    let pc = counter.localise(Kind::Pole, *annulus)?;
    let pole = counter.polish(Kind::Pole, &pc, &mut steps)?;
    debug!("zero at {zero}, pole at {pole}, {} counts", counter.regions.len());
    Ok((zero, pole, steps))
}

/// `(1/2 pi i) oint F'/F` over the two boundary circles of the fundamental
/// annulus, both counterclockwise.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AnnulusWinding {
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub outer: Complex64,
    pub inner: Complex64,
    /// `outer - inner`: the degree of the divisor of `F` on `E_q`.
    pub total: Complex64,
}

pub fn annulus_winding(bundle: &AutomorphyBundle, ctx: &PrecisionContext) -> Result<AnnulusWinding> {
    check_bundle(bundle, ctx)?;
    let period = bundle.curve.q().norm().ln();
    let panels = (ctx.quadrature_nodes / 15).max(1);
    let g = |w: Complex64| section_log_derivative(w, bundle, ctx);
    let circle = |r: f64| -> Result<Complex64> {
        let v = segment_integral(&g, Complex64::new(r, -PI), Complex64::new(r, PI), panels)?;
        Ok(v / Complex64::new(0.0, 2.0 * PI))
    };
    let outer_log = outer_log_radius(bundle, 0);
    let outer = circle(outer_log)?;
    let inner = circle(outer_log + period)?;
    Ok(AnnulusWinding {
        outer_radius: outer_log.exp(),
        inner_radius: (outer_log + period).exp(),
        outer,
        inner,
        total: outer - inner,
    })
}
