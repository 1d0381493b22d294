//! Cohomology of `Y = C/(Z + tau1 Z) x C/(Z + tau2 Z)`: integral
//! `(1,1)`-classes (Neron-Severi), the map `NS(Y) (x) C* -> H^2(Y, C/Z(2))/F^2`
//! and the root-of-unity torsion test.
//!
//! `H^2` is written in the basis `dx_ij` (`i < j`, lexicographic:
//! 12, 13, 14, 23, 24, 34) dual to the real lattice basis
//! `(1, tau1, 1', tau2')`, so `z1 = x1 + tau1 x2`, `z2 = x3 + tau2 x4` and
//! `Omega = dz1 ^ dz2 = dx13 + tau2 dx14 + tau1 dx23 + tau1 tau2 dx24`.

use std::f64::consts::PI;

use log::warn;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin::{self, IntVec};
use crate::special::{log_principal, TWO_PI_I};

pub const BASIS_LABELS: [&str; 6] = ["dx12", "dx13", "dx14", "dx23", "dx24", "dx34"];
const I12: usize = 0;
const I13: usize = 1;
const I14: usize = 2;
const I23: usize = 3;
const I24: usize = 4;
const I34: usize = 5;

/// Default box `[-H, H]` searched for Hodge classes.
pub const DEFAULT_HEIGHT_BOUND: i64 = 16;
/// Precision of the Gaussian-rational approximation of `tau`.
pub const RATIONALIZATION_TOL: f64 = 1e-12;
/// Default largest order tried by [`is_torsion`].
pub const DEFAULT_ORDER_BOUND: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductTorus {
    pub tau1: Complex64,
    pub tau2: Complex64,
}

impl ProductTorus {
    pub fn new(tau1: Complex64, tau2: Complex64) -> Result<Self> {
        for t in [tau1, tau2] {
            if !(t.im > 0.0) || !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::Domain(format!("tau must lie in the upper half plane, got {t}")));
            }
        }
        Ok(ProductTorus { tau1, tau2 })
    }

    /// `Omega = dz1 ^ dz2` in the `dx_ij` basis; spans `F^2`.
    pub fn omega(&self) -> [Complex64; 6] {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        [zero, one, self.tau2, self.tau1, self.tau1 * self.tau2, zero]
    }

    /// Coefficient of `dx1234` in `a ^ Omega`; zero exactly for `(1,1)`-classes.
    pub fn hodge_residual(&self, a: &[i64; 6]) -> Complex64 {
        let f = |k: usize| a[k] as f64;
        self.tau1 * f(I14) + self.tau2 * f(I23) - self.tau1 * self.tau2 * f(I13) - f(I24)
    }
}

/// Best rational approximation by continued fractions with error below
/// `tol * max(1, |x|)`.
pub fn rationalize(x: f64, tol: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("cannot rationalise {x}")));
    }
    let target = tol * x.abs().max(1.0);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let approx = p1.to_f64().unwrap() / q1.to_f64().unwrap();
        let frac = r - a;
        if (approx - x).abs() <= target || frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    Ok(BigRational::new(p1, q1))
}

#[derive(Debug, Clone, PartialEq)]
struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    fn mul(&self, o: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

fn rationalize_complex(z: Complex64) -> Result<GaussRational> {
    Ok(GaussRational {
        re: rationalize(z.re, RATIONALIZATION_TOL)?,
        im: rationalize(z.im, RATIONALIZATION_TOL)?,
    })
}

/// The Neron-Severi computation for one torus.
#[derive(Debug, Clone, Serialize)]
pub struct NsReport {
    pub torus: ProductTorus,
    pub height_bound: i64,
    pub rank: usize,
    /// Hermite basis of the integral `(1,1)`-classes found, rows in the
    /// `dx_ij` basis.
    pub basis: Vec<[i64; 6]>,
    /// `max |tau - rationalised tau|`.
    pub approximation_radius: f64,
    /// Vectors that satisfy the Hodge condition to within the
    /// rationalisation error but not exactly.
    pub borderline: Vec<[i64; 6]>,
}

fn to_i64_row(v: &IntVec) -> [i64; 6] {
    let mut out = [0i64; 6];
    for (o, x) in out.iter_mut().zip(v) {
        *o = x.to_i64().expect("height-bounded entries fit in i64");
    }
    out
}

/// Integral classes of type `(1,1)` in the box `[-height_bound, height_bound]^6`,
/// reduced to a basis.
///
/// `dx12` and `dx34` (the fibre classes) always qualify; the remaining
/// coordinates must satisfy `a14 tau1 + a23 tau2 - a13 tau1 tau2 - a24 = 0`,
/// decided exactly on Gaussian-rational approximations of `tau1`, `tau2`.
/// Any `tau` in `Q(i)` has complex multiplication, so the exact kernel is
/// the full rank-4 one; the height bound is what separates the generic
/// (rank 2) and diagonal (rank 3) answers from relations of large height.
pub fn ns_group_with_bound(t: &ProductTorus, height_bound: i64) -> Result<NsReport> {
    if height_bound < 1 {
        return Err(Error::Domain("height bound must be at least 1".into()));
    }
    let r1 = rationalize_complex(t.tau1)?;
    let r2 = rationalize_complex(t.tau2)?;
    let r12 = r1.mul(&r2);
    let radius = (r1.to_complex() - t.tau1).norm().max((r2.to_complex() - t.tau2).norm());

    // common denominator so the search runs in integers
    let den = [&r1.re, &r1.im, &r2.re, &r2.im, &r12.re, &r12.im]
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scaled = |r: &BigRational| -> BigInt { r.numer() * (&den / r.denom()) };
    let (re1, im1, re2, im2, re12, im12) =
        (scaled(&r1.re), scaled(&r1.im), scaled(&r2.re), scaled(&r2.im), scaled(&r12.re), scaled(&r12.im));

    let h = height_bound;
    let mut found: Vec<IntVec> = vec![intlin::ints(&[1, 0, 0, 0, 0, 0]), intlin::ints(&[0, 0, 0, 0, 0, 1])];
    let mut borderline = Vec::new();
    let scale = 1.0 + t.tau1.norm() + t.tau2.norm() + (t.tau1 * t.tau2).norm();
    let noise = 10.0 * (h as f64) * scale * (radius + RATIONALIZATION_TOL);
    for a13 in -h..=h {
        for a14 in -h..=h {
            for a23 in -h..=h {
                if a13 == 0 && a14 == 0 && a23 == 0 {
                    continue;
                }
                let (b13, b14, b23) = (BigInt::from(a13), BigInt::from(a14), BigInt::from(a23));
                let im = &b14 * &im1 + &b23 * &im2 - &b13 * &im12;
                let re = &b14 * &re1 + &b23 * &re2 - &b13 * &re12;
                if im.is_zero() && re.is_multiple_of(&den) {
                    let a24 = &re / &den;
                    if a24.abs() <= BigInt::from(h) {
                        found.push(vec![BigInt::zero(), b13, b14, b23, a24, BigInt::zero()]);
                    }
                    continue;
                }
                // near misses at the scale of the rationalisation error
                let resid_im = (im.to_f64().unwrap() / den.to_f64().unwrap()).abs();
                let re_f = re.to_f64().unwrap() / den.to_f64().unwrap();
                let a24 = re_f.round();
                if a24.abs() <= h as f64 && resid_im + (re_f - a24).abs() <= noise {
                    let v = [0, a13, a14, a23, a24 as i64, 0];
                    warn!("rank ambiguity: {v:?} meets the Hodge condition only to {:e}", resid_im + (re_f - a24).abs());
                    borderline.push(v);
                }
            }
        }
    }
    let hnf = intlin::hermite_normal_form(&found, 6);
    let basis: Vec<[i64; 6]> = hnf.iter().map(to_i64_row).collect();
    Ok(NsReport {
        torus: *t,
        height_bound,
        rank: basis.len(),
        basis,
        approximation_radius: radius,
        borderline,
    })
}

pub fn ns_group(t: &ProductTorus) -> Result<NsReport> {
    ns_group_with_bound(t, DEFAULT_HEIGHT_BOUND)
}

/// True when no nonzero real combination of the basis lies on the line
/// `C Omega`, i.e. `NS(Y) ∩ F^2 = 0`; checked by the rank of
/// `[basis; Re Omega; Im Omega]` in `R^6`.
pub fn ns_meets_f2_trivially(report: &NsReport) -> bool {
    let omega = report.torus.omega();
    let mut rows: Vec<Vec<f64>> = report
        .basis
        .iter()
        .map(|r| r.iter().map(|&x| x as f64).collect())
        .collect();
    rows.push(omega.iter().map(|z| z.re).collect());
    rows.push(omega.iter().map(|z| z.im).collect());
    real_rank(rows, 1e-9) == report.rank + 2
}

fn real_rank(mut a: Vec<Vec<f64>>, tol: f64) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else {
            break;
        };
        if a[p][c].abs() <= tol {
            continue;
        }
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank {
                let f = a[i][c] / a[rank][c];
                for k in 0..cols {
                    a[i][k] -= f * a[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// An element of `NS(Y)`, kept both as coordinates in the report basis and
/// as a vector in the `dx_ij` basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NSClass {
    pub torus: ProductTorus,
    pub coords: Vec<i64>,
    pub vector: [i64; 6],
}

impl NsReport {
    pub fn class(&self, coords: &[i64]) -> Result<NSClass> {
        if coords.len() != self.rank {
            return Err(Error::Shape(format!("NS has rank {}, got {} coordinates", self.rank, coords.len())));
        }
        let mut vector = [0i64; 6];
        for (c, row) in coords.iter().zip(&self.basis) {
            for k in 0..6 {
                vector[k] += c * row[k];
            }
        }
        Ok(NSClass {
            torus: self.torus,
            coords: coords.to_vec(),
            vector,
        })
    }

    /// Expresses a `dx_ij` vector in the basis; an error if it is not in
    /// the span found.
    pub fn class_from_vector(&self, v: [i64; 6]) -> Result<NSClass> {
        let mut rest = v;
        let mut coords = vec![0i64; self.rank];
        for (k, row) in self.basis.iter().enumerate() {
            let pc = row.iter().position(|&x| x != 0).expect("basis rows are nonzero");
            if rest[pc] % row[pc] != 0 {
                break;
            }
            let c = rest[pc] / row[pc];
            coords[k] = c;
            for j in 0..6 {
                rest[j] -= c * row[j];
            }
        }
        if rest.iter().any(|&x| x != 0) {
            return Err(Error::Domain(format!("{v:?} is not an integral (1,1)-class in the computed span")));
        }
        Ok(NSClass {
            torus: self.torus,
            coords,
            vector: v,
        })
    }

    /// `[E x 0] = dx34`.
    pub fn e_times_zero(&self) -> Result<NSClass> {
        self.class_from_vector([0, 0, 0, 0, 0, 1])
    }

    /// `[0 x E'] = dx12`.
    pub fn zero_times_e(&self) -> Result<NSClass> {
        self.class_from_vector([1, 0, 0, 0, 0, 0])
    }

    /// `[Delta] = dx12 + dx34 - dx14 + dx23`; a class only when `tau1 = tau2`.
    pub fn diagonal(&self) -> Result<NSClass> {
        self.class_from_vector([1, 0, -1, 1, 0, 1])
    }
}

impl NSClass {
    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&x| x == 0)
    }

    /// A multiple of `[E x 0]`: its Deligne image is the boundary part
    /// `[E x 0] (x) C*`.
    pub fn is_boundary(&self) -> bool {
        self.vector[..5].iter().all(|&x| x == 0) && self.vector[I34] != 0
    }
}

/// A point of `H^2(Y, C) / (F^2 + H^2(Y, Z(2)))`.
///
/// `projected` drops the `dx13` coordinate after subtracting the matching
/// multiple of `Omega` (coordinates 12, 14, 23, 24, 34). `lattice_frac` are
/// the coordinates along the projected lattice `(2 pi i)^2 Z^6`, reduced to
/// `[-1/2, 1/2)`; `residual` is the part orthogonal to the lattice span.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeligneClass {
    pub torus: ProductTorus,
    pub projected: [Complex64; 5],
    pub lattice_frac: [f64; 6],
    pub residual: [Complex64; 5],
    pub boundary: bool,
}

impl DeligneClass {
    /// Size of the reduced class: lattice offset plus orthogonal part,
    /// relative to the lattice scale `4 pi^2`.
    pub fn magnitude(&self) -> f64 {
        let frac: f64 = self.lattice_frac.iter().map(|x| x * x).sum::<f64>().sqrt();
        let res: f64 = self.residual.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / (4.0 * PI * PI);
        frac + res
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.magnitude() <= tol
    }
}

fn project(omega: &[Complex64; 6], x: &[Complex64; 6]) -> [Complex64; 5] {
    let c = x[I13];
    let keep = [I12, I14, I23, I24, I34];
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for (o, &k) in out.iter_mut().zip(&keep) {
        *o = x[k] - c * omega[k];
    }
    out
}

fn as_real(v: &[Complex64; 5]) -> [f64; 10] {
    let mut out = [0.0; 10];
    for (k, z) in v.iter().enumerate() {
        out[2 * k] = z.re;
        out[2 * k + 1] = z.im;
    }
    out
}

/// Solves the 6x6 system `m x = b` by Gaussian elimination with pivoting.
fn solve6(mut m: [[f64; 6]; 6], mut b: [f64; 6]) -> Result<[f64; 6]> {
    for c in 0..6 {
        let p = (c..6).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[p][c].abs() < 1e-300 {
            return Err(Error::Domain("projected lattice is degenerate".into()));
        }
        m.swap(c, p);
        b.swap(c, p);
        for i in c + 1..6 {
            let f = m[i][c] / m[c][c];
            for k in c..6 {
                m[i][k] -= f * m[c][k];
            }
            b[i] -= f * b[c];
        }
    }
    let mut x = [0.0; 6];
    for c in (0..6).rev() {
        let s: f64 = (c + 1..6).map(|k| m[c][k] * x[k]).sum();
        x[c] = (b[c] - s) / m[c][c];
    }
    Ok(x)
}

/// `iota(cls (x) v)`: the class of `2 pi i log(v) . cls` in
/// `H^2(Y, C/Z(2)) / F^2`.
pub fn deligne_image(cls: &NSClass, v: Complex64) -> Result<DeligneClass> {
    let lv = log_principal(v)?;
    let omega = cls.torus.omega();
    let mut x = [Complex64::new(0.0, 0.0); 6];
    for k in 0..6 {
        x[k] = TWO_PI_I * lv * cls.vector[k] as f64;
    }
    let px = project(&omega, &x);
    let lattice_scale = TWO_PI_I * TWO_PI_I;
    let cols: Vec<[f64; 10]> = (0..6)
        .map(|k| {
            let mut e = [Complex64::new(0.0, 0.0); 6];
            e[k] = lattice_scale;
            as_real(&project(&omega, &e))
        })
        .collect();
    let xr = as_real(&px);
    let mut gram = [[0.0; 6]; 6];
    let mut rhs = [0.0; 6];
    for i in 0..6 {
        for j in 0..6 {
            gram[i][j] = (0..10).map(|r| cols[i][r] * cols[j][r]).sum();
        }
        rhs[i] = (0..10).map(|r| cols[i][r] * xr[r]).sum();
    }
    let n = solve6(gram, rhs)?;
    let mut fitted = [0.0; 10];
    for (k, col) in cols.iter().enumerate() {
        for r in 0..10 {
            fitted[r] += n[k] * col[r];
        }
    }
    let mut residual = [Complex64::new(0.0, 0.0); 5];
    for k in 0..5 {
        residual[k] = Complex64::new(xr[2 * k] - fitted[2 * k], xr[2 * k + 1] - fitted[2 * k + 1]);
    }
    let mut frac = [0.0; 6];
    for k in 0..6 {
        let f = n[k] - n[k].round();
        frac[k] = if f >= 0.5 { f - 1.0 } else { f };
    }
    let mut reduced = residual;
    for k in 0..5 {
        // representative: residual plus the fractional lattice part
        let mut shift = Complex64::new(0.0, 0.0);
        for (j, col) in cols.iter().enumerate() {
            shift += Complex64::new(col[2 * k], col[2 * k + 1]) * frac[j];
        }
        reduced[k] += shift;
    }
    Ok(DeligneClass {
        torus: cls.torus,
        projected: reduced,
        lattice_frac: frac,
        residual,
        boundary: cls.is_boundary(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TorsionVerdict {
    /// `n iota(cls (x) v) = 0` for this smallest `n`.
    Torsion { order: u64 },
    NonTorsion,
    /// `|v| = 1` and `arg(v)/2 pi` sits closer to a fraction with
    /// denominator within the bound than the test can resolve.
    Indeterminate { denominator: u64, distance: f64 },
}

/// Whether `iota(cls (x) v)` is torsion of order at most `order_bound`.
///
/// Off the unit circle `v^n` never becomes trivial. On it, the convergents
/// of `arg(v)/2 pi` with denominator at most `order_bound` are checked: a
/// match within `tol` is torsion (confirmed on the Deligne class of
/// `v^n`), a best distance above `10 tol` is non-torsion, anything between
/// is indeterminate.
pub fn is_torsion(cls: &NSClass, v: Complex64, order_bound: u64, tol: f64) -> Result<TorsionVerdict> {
    if cls.is_zero() {
        return Err(Error::Domain("torsion test needs a nonzero class".into()));
    }
    if order_bound < 1 {
        return Err(Error::Domain("order bound must be at least 1".into()));
    }
    if v == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("v must be nonzero".into()));
    }
    if (v.norm() - 1.0).abs() > tol {
        return Ok(TorsionVerdict::NonTorsion);
    }
    let theta = (v.im.atan2(v.re) / (2.0 * PI)).rem_euclid(1.0);
    let (mut best_q, mut best_d) = (1u64, f64::INFINITY);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = theta;
    for _ in 0..64 {
        let a = r.floor();
        let (p2, q2) = (a as i128 * p1 + p0, a as i128 * q1 + q0);
        if q2 as u64 > order_bound || q2 <= 0 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let d = (theta - p1 as f64 / q1 as f64).abs().min((theta - 1.0 - p1 as f64 / q1 as f64).abs());
        if d < best_d {
            best_d = d;
            best_q = q1 as u64;
        }
        let frac = r - a;
        if frac <= 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    // theta itself near 0 or 1
    let d0 = theta.min(1.0 - theta);
    if d0 <= best_d {
        best_d = d0;
        best_q = 1;
    }
    if best_d <= tol {
        let image = deligne_image(cls, v.powu(best_q as u32))?;
        if image.is_zero(1e-6) {
            return Ok(TorsionVerdict::Torsion { order: best_q });
        }
        return Ok(TorsionVerdict::Indeterminate {
            denominator: best_q,
            distance: best_d,
        });
    }
    if best_d <= 10.0 * tol {
        return Ok(TorsionVerdict::Indeterminate {
            denominator: best_q,
            distance: best_d,
        });
    }
    Ok(TorsionVerdict::NonTorsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(0.3, 1e-12).unwrap(), BigRational::new(3.into(), 10.into()));
        assert_eq!(rationalize(-2.0, 1e-12).unwrap(), BigRational::from_integer((-2).into()));
        let r = rationalize(PI, 1e-12).unwrap();
        assert!((r.to_f64().unwrap() - PI).abs() <= 1e-12 * PI);
    }

    #[test]
    fn ns_ranks() {
        let generic = ProductTorus::new(c(0.3, 1.7), c(-0.2, 2.1)).unwrap();
        let rep = ns_group(&generic).unwrap();
        assert_eq!(rep.rank, 2, "{:?}", rep.basis);
        assert_eq!(rep.basis, vec![[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]]);
        let equal = ProductTorus::new(c(0.3, 1.7), c(0.3, 1.7)).unwrap();
        let rep = ns_group(&equal).unwrap();
        assert_eq!(rep.rank, 3);
        assert!(rep.diagonal().is_ok());
        let cm = ProductTorus::new(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
        assert_eq!(ns_group(&cm).unwrap().rank, 4);
    }

    #[test]
    fn basis_meets_hodge_condition() {
        for (t1, t2) in [(c(0.0, 1.0), c(0.0, 1.0)), (c(0.3, 1.7), c(0.3, 1.7)), (c(0.5, 0.5 * 3f64.sqrt()), c(0.0, 1.0))] {
            let t = ProductTorus::new(t1, t2).unwrap();
            let rep = ns_group(&t).unwrap();
            for row in &rep.basis {
                assert!(t.hodge_residual(row).norm() < 1e-9, "{row:?}");
            }
            assert!(ns_meets_f2_trivially(&rep));
        }
    }

    #[test]
    fn deligne_examples() {
        let t = ProductTorus::new(c(0.3, 1.7), c(-0.2, 2.1)).unwrap();
        let rep = ns_group(&t).unwrap();
        let e0 = rep.e_times_zero().unwrap();
        assert!(deligne_image(&e0, c(1.0, 0.0)).unwrap().is_zero(1e-12));
        let img = deligne_image(&e0, c(std::f64::consts::E, 0.0)).unwrap();
        assert!(!img.is_zero(1e-3));
        assert!(img.boundary);
        let (v1, v2) = (c(-0.7, 0.9), c(0.2, -1.4));
        let a = deligne_image(&rep.zero_times_e().unwrap(), v1 * v2).unwrap();
        let b1 = deligne_image(&rep.zero_times_e().unwrap(), v1).unwrap();
        let b2 = deligne_image(&rep.zero_times_e().unwrap(), v2).unwrap();
        for k in 0..6 {
            let d = a.lattice_frac[k] - b1.lattice_frac[k] - b2.lattice_frac[k];
            assert!((d - d.round()).abs() < 1e-9);
        }
        for k in 0..5 {
            assert!((a.residual[k] - b1.residual[k] - b2.residual[k]).norm() < 1e-9);
        }
    }

    #[test]
    fn torsion_examples() {
        let t = ProductTorus::new(c(0.3, 1.7), c(0.3, 1.7)).unwrap();
        let rep = ns_group(&t).unwrap();
        let cls = rep.class_from_vector([0, 0, -1, 1, 0, 1]).unwrap();
        assert_eq!(
            is_torsion(&cls, c(-1.0, 0.0), 2, 1e-10).unwrap(),
            TorsionVerdict::Torsion { order: 2 }
        );
        assert_eq!(is_torsion(&cls, c(2.0, 0.0), 10_000, 1e-10).unwrap(), TorsionVerdict::NonTorsion);
        let root = Complex64::from_polar(1.0, 2.0 * PI * 3.0 / 7.0);
        assert_eq!(is_torsion(&cls, root, 7, 1e-10).unwrap(), TorsionVerdict::Torsion { order: 7 });
        assert_eq!(is_torsion(&cls, root, 6, 1e-10).unwrap(), TorsionVerdict::NonTorsion);
        let golden = Complex64::from_polar(1.0, 2.0 * PI * (5f64.sqrt() - 1.0) / 2.0);
        assert_eq!(is_torsion(&cls, golden, 10_000, 1e-10).unwrap(), TorsionVerdict::NonTorsion);
        let near = Complex64::from_polar(1.0, 2.0 * PI * (0.25 + 5e-10));
        assert!(matches!(
            is_torsion(&cls, near, 10_000, 1e-10).unwrap(),
            TorsionVerdict::Indeterminate { denominator: 4, .. }
        ));
    }
}
