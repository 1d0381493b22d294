//! Branch-disciplined complex elementary functions, the dilogarithm and the
//! Eisenstein q-series behind the Weierstrass model of a Tate curve.
//!
//! All logarithms use the principal branch with `arg` in `(-pi, pi]`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Numeric tolerances shared by every evaluator in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub target_abs_tol: f64,
    pub series_term_cap: usize,
    pub quadrature_nodes: usize,
}

pub const DEFAULT_TOL: f64 = 1e-10;

static PROCESS_DEFAULT: OnceLock<PrecisionContext> = OnceLock::new();

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            target_abs_tol: DEFAULT_TOL,
            series_term_cap: 20_000,
            quadrature_nodes: 64,
        }
    }
}

impl PrecisionContext {
    pub fn new(target_abs_tol: f64, series_term_cap: usize, quadrature_nodes: usize) -> Result<Self> {
        let ctx = PrecisionContext {
            target_abs_tol,
            series_term_cap,
            quadrature_nodes,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        PrecisionContext {
            target_abs_tol: tol,
            ..PrecisionContext::default()
        }
        .validated()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0 && self.target_abs_tol.is_finite()) {
            return Err(Error::InvalidPrecision(format!(
                "target_abs_tol must be positive, got {}",
                self.target_abs_tol
            )));
        }
        if self.series_term_cap < 8 {
            return Err(Error::InvalidPrecision(format!(
                "series_term_cap must be >= 8, got {}",
                self.series_term_cap
            )));
        }
        if self.quadrature_nodes < 16 {
            return Err(Error::InvalidPrecision(format!(
                "quadrature_nodes must be >= 16, got {}",
                self.quadrature_nodes
            )));
        }
        Ok(())
    }

    fn validated(self) -> Result<Self> {
        self.validate().map(|_| self)
    }

    /// Installs the process-wide default. Only the first call wins.
    pub fn set_process_default(ctx: PrecisionContext) -> Result<bool> {
        ctx.validate()?;
        Ok(PROCESS_DEFAULT.set(ctx).is_ok())
    }

    pub fn process_default() -> PrecisionContext {
        PROCESS_DEFAULT.get().copied().unwrap_or_default()
    }
}

/// Principal logarithm, `arg` in `(-pi, pi]`.
pub fn log_principal(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("log of zero".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log of non-finite value {z}")));
    }
    Ok(Complex64::new(z.norm().ln(), arg_principal(z)))
}

/// `arg` in `(-pi, pi]`; the negative real axis (including `-0.0` imaginary
/// part) maps to `+pi`.
pub fn arg_principal(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

fn ln_unchecked(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), arg_principal(z))
}

/// Side of the cut `[1, inf)` from which a real argument is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutSide {
    Upper,
    Lower,
}

const ZETA2: f64 = PI * PI / 6.0;

/// `B_n / (n+1)!` for even `n = 2k`, `k >= 1`, through
/// `B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2 pi)^(2k)`.
fn bernoulli_li2_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let two_pi = 2.0 * PI;
        (1..=30)
            .map(|k: i32| {
                let s = 2 * k;
                let zeta = match s {
                    2 => ZETA2,
                    4 => PI.powi(4) / 90.0,
                    6 => PI.powi(6) / 945.0,
                    8 => PI.powi(8) / 9450.0,
                    _ => {
                        let mut acc = 0.0;
                        for n in (1..=60).rev() {
                            acc += (n as f64).powi(-s);
                        }
                        acc
                    }
                };
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta / ((s + 1) as f64 * two_pi.powi(s))
            })
            .collect()
    })
}

fn li2_power_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = z;
    for k in 1..200 {
        let term = zk / (k * k) as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        zk *= z;
    }
    sum
}

/// Series in `w = -log(1 - z)`; converges for `|w| < 2 pi`.
fn li2_bernoulli_series(z: Complex64) -> Complex64 {
    let w = -ln_unchecked(Complex64::new(1.0, 0.0) - z);
    let w2 = w * w;
    let mut sum = w - w2 / 4.0;
    let mut wp = w * w2;
    for &c in bernoulli_li2_coefficients() {
        let term = wp * c;
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        wp *= w2;
    }
    sum
}

/// `|z| <= 1`, `Re z <= 1/2`.
fn li2_core(z: Complex64) -> Complex64 {
    if z.norm() <= 0.5 {
        li2_power_series(z)
    } else {
        li2_bernoulli_series(z)
    }
}

/// `|z| <= 1`.
fn li2_unit_disk(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if z == one {
        return Complex64::new(ZETA2, 0.0);
    }
    if z.re > 0.5 {
        // Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        Complex64::new(ZETA2, 0.0) - ln_unchecked(z) * ln_unchecked(one - z) - li2_core(one - z)
    } else {
        li2_core(z)
    }
}

/// Dilogarithm `Li2(z) = -int_0^z log(1-t) dt/t` on the principal sheet.
///
/// Real arguments above 1 sit on the cut and are rejected; use
/// [`li2_with_side`] for those.
pub fn li2(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("li2 of non-finite value {z}")));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::AmbiguousBranch { value: z });
    }
    Ok(li2_unchecked(z))
}

fn li2_unchecked(z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        li2_unit_disk(z)
    } else {
        // Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z), off [1, inf)
        let l = ln_unchecked(-z);
        Complex64::new(-ZETA2, 0.0) - l * l / 2.0 - li2_unit_disk(z.inv())
    }
}

/// Boundary values of `Li2` on the cut, `x > 1`:
/// `Li2(x +- i0) = pi^2/3 - log^2(x)/2 - Li2(1/x) +- i pi log x`.
pub fn li2_with_side(z: Complex64, side: CutSide) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 1.0 {
        let x = z.re;
        let lx = x.ln();
        let re = 2.0 * ZETA2 - lx * lx / 2.0 - li2_unit_disk(Complex64::new(1.0 / x, 0.0)).re;
        let im = match side {
            CutSide::Upper => PI * lx,
            CutSide::Lower => -PI * lx,
        };
        Ok(Complex64::new(re, im))
    } else {
        li2(z)
    }
}

/// Bloch-Wigner function `D(z) = Im Li2(z) + arg(1-z) log|z|`.
pub fn bloch_wigner(z: Complex64) -> Result<f64> {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain(format!("D is singular at {z}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("D of non-finite value {z}")));
    }
    if z.im == 0.0 {
        return Ok(0.0);
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(li2_unchecked(z).im + arg_principal(one - z) * z.norm().ln())
}

/// Divisor power sum `sigma_k(n)` by direct enumeration.
pub fn divisor_sigma(k: u32, n: u64) -> f64 {
    let mut acc = 0.0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += (d as f64).powi(k as i32);
            let e = n / d;
            if e != d {
                acc += (e as f64).powi(k as i32);
            }
        }
        d += 1;
    }
    acc
}

/// Number of terms after which `C n^p r^n` summed over the tail stays below
/// `tol`. `r < 1`.
pub(crate) fn geometric_tail_terms(r: f64, power: i32, tol: f64, cap: usize) -> Result<usize> {
    if r == 0.0 {
        return Ok(1);
    }
    let mut n: usize = 1;
    loop {
        let nf = n as f64;
        // ratio of consecutive terms from n on is at most r ((n+1)/n)^p
        let ratio = r * ((nf + 1.0) / nf).powi(power);
        if ratio < 1.0 {
            let term = nf.powi(power) * r.powf(nf);
            if term / (1.0 - ratio) < tol {
                return Ok(n);
            }
        }
        n += 1;
        if n > cap {
            // report how far the bound actually needs to go
            let mut needed = n;
            while needed < 100 * cap {
                let nf = needed as f64;
                if nf.powi(power) * r.powf(nf) < tol {
                    break;
                }
                needed += 1;
            }
            return Err(Error::PrecisionUnreachable { needed, cap });
        }
    }
}

/// `(g2, g3)` of the model `Y^2 = 4X^3 - g2 X - g3` for `E_q` in the
/// `2 pi i`-normalised uniformisation.
pub fn eisenstein_invariants(q: Complex64, ctx: &PrecisionContext) -> Result<(Complex64, Complex64)> {
    ctx.validate()?;
    let r = q.norm();
    if r >= 1.0 || !r.is_finite() {
        return Err(Error::Domain(format!("|q| = {r} is not < 1")));
    }
    let tpi = TWO_PI_I;
    let pre2 = tpi.powi(4) / 12.0;
    let pre3 = tpi.powi(6) / 216.0;
    if r == 0.0 {
        return Ok((pre2, -pre3));
    }
    // sigma_5(n) <= n^6 * zeta(5); 504 * that bounds the E6 tail
    let n_terms = geometric_tail_terms(r, 6, ctx.target_abs_tol / (504.0 * 1.04), ctx.series_term_cap)?;
    let mut s3 = Complex64::new(0.0, 0.0);
    let mut s5 = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=n_terms as u64 {
        qn *= q;
        s3 += qn * divisor_sigma(3, n);
        s5 += qn * divisor_sigma(5, n);
    }
    let e4 = Complex64::new(1.0, 0.0) + s3 * 240.0;
    let e6m = Complex64::new(-1.0, 0.0) + s5 * 504.0;
    Ok((pre2 * e4, pre3 * e6m))
}

pub fn discriminant(g2: Complex64, g3: Complex64) -> Complex64 {
    g2 * g2 * g2 - g3 * g3 * 27.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_branch_conventions() {
        assert_eq!(log_principal(c(1.0, 0.0)).unwrap(), c(0.0, 0.0));
        let l = log_principal(c(-1.0, 0.0)).unwrap();
        assert!((l - c(0.0, PI)).norm() < 1e-15);
        let l = log_principal(c(-1.0, -0.0)).unwrap();
        assert_eq!(l.im, PI);
        let l = log_principal(c(2f64.exp(), 0.0)).unwrap();
        assert!((l - c(2.0, 0.0)).norm() < 1e-15);
        assert!(matches!(log_principal(c(0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn li2_special_values() {
        assert_eq!(li2(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let half = li2(c(0.5, 0.0)).unwrap();
        let expect = PI * PI / 12.0 - 2f64.ln().powi(2) / 2.0;
        assert!((half - c(expect, 0.0)).norm() < 1e-14);
        let one = li2(c(1.0, 0.0)).unwrap();
        assert!((one.re - ZETA2).abs() < 1e-15);
        // Li2(-1) = -pi^2/12
        assert!((li2(c(-1.0, 0.0)).unwrap() - c(-PI * PI / 12.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn li2_cut_requires_side() {
        assert!(matches!(li2(c(2.0, 0.0)), Err(Error::AmbiguousBranch { .. })));
        let up = li2_with_side(c(2.0, 0.0), CutSide::Upper).unwrap();
        let down = li2_with_side(c(2.0, 0.0), CutSide::Lower).unwrap();
        // Li2(2 + i0) = pi^2/4 + i pi log 2
        assert!((up - c(PI * PI / 4.0, PI * 2f64.ln())).norm() < 1e-13);
        assert_eq!(up.conj(), down);
        let near = li2(c(2.0, 1e-12)).unwrap();
        assert!((near - up).norm() < 1e-9);
    }

    #[test]
    fn bloch_wigner_basics() {
        assert_eq!(bloch_wigner(c(0.4, 0.0)).unwrap(), 0.0);
        let z = c(0.3, 0.4);
        let d = bloch_wigner(z).unwrap();
        assert!((bloch_wigner(z.conj()).unwrap() + d).abs() < 1e-14);
        assert!(d > 0.0);
        assert!(bloch_wigner(c(1.0, 0.0)).is_err());
        assert!(bloch_wigner(c(0.0, 0.0)).is_err());
        // maximum of D is at exp(i pi / 3): D = 1.0149416064096536...
        let m = bloch_wigner(Complex64::from_polar(1.0, PI / 3.0)).unwrap();
        assert!((m - 1.014_941_606_409_653_6).abs() < 1e-13);
    }

    #[test]
    fn bloch_wigner_continuous_across_cut() {
        for x in [1.5, 2.0, 7.0] {
            let above = bloch_wigner(c(x, 1e-9)).unwrap();
            let below = bloch_wigner(c(x, -1e-9)).unwrap();
            assert!(above.abs() < 1e-8 && below.abs() < 1e-8, "{above} {below}");
        }
    }

    #[test]
    fn sigma_by_enumeration() {
        assert_eq!(divisor_sigma(3, 1), 1.0);
        assert_eq!(divisor_sigma(3, 6), 1.0 + 8.0 + 27.0 + 216.0);
        assert_eq!(divisor_sigma(5, 4), 1.0 + 32.0 + 1024.0);
    }

    #[test]
    fn eisenstein_at_zero() {
        let ctx = PrecisionContext::default();
        let (g2, g3) = eisenstein_invariants(c(0.0, 0.0), &ctx).unwrap();
        assert!((g2 - TWO_PI_I.powi(4) / 12.0).norm() < 1e-12);
        assert!((g3 + TWO_PI_I.powi(6) / 216.0).norm() < 1e-12);
        // the nodal cubic is singular
        assert!(discriminant(g2, g3).norm() < 1e-6 * g2.norm().powi(3));
    }

    #[test]
    fn eisenstein_smooth_and_errors() {
        let ctx = PrecisionContext::default();
        let (g2, g3) = eisenstein_invariants(c(0.1, 0.0), &ctx).unwrap();
        assert!(discriminant(g2, g3).norm() > 1.0);
        assert!(eisenstein_invariants(c(1.0, 0.0), &ctx).is_err());
        let tight = PrecisionContext::new(1e-10, 8, 16).unwrap();
        assert!(matches!(
            eisenstein_invariants(c(0.99, 0.0), &tight),
            Err(Error::PrecisionUnreachable { .. })
        ));
    }

    #[test]
    fn precision_context_invariants() {
        assert!(PrecisionContext::new(0.0, 100, 64).is_err());
        assert!(PrecisionContext::new(1e-10, 7, 64).is_err());
        assert!(PrecisionContext::new(1e-10, 8, 15).is_err());
        assert!(PrecisionContext::new(1e-10, 8, 16).is_ok());
    }
}
