//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
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

/// Kronrod value, error estimate and `int |f|` on `[a, b]`.
fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = half * XGK[j];
        let (lo, hi) = (f(mid - x), f(mid + x));
        kron += (lo + hi) * WGK[j];
        abs += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    (kron * half, ((kron - gauss) * half).norm(), abs * half.abs())
}

/// Adaptive Gauss-Kronrod on `[a, b]` to absolute error `tol`.
pub fn integrate(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let mut stack = vec![(a, b, tol)];
    let mut total = Complex64::new(0.0, 0.0);
    while let Some((lo, hi, t)) = stack.pop() {
        let (v, err, abs) = gk15(f, lo, hi);
        // stop at the rounding floor as well as at the requested error
        if err <= t || err <= 50.0 * f64::EPSILON * abs || hi - lo < 1e-12 {
            total += v;
        } else {
            let m = 0.5 * (lo + hi);
            stack.push((lo, m, 0.5 * t));
            stack.push((m, hi, 0.5 * t));
        }
    }
    total
}

/// `Li2(a) = -int_0^1 log(1 - a s) / s ds` along the segment `[0, a]`.
pub fn li2_quadrature(a: Complex64) -> Complex64 {
    let f = |s: f64| {
        if s == 0.0 {
            return a;
        }
        -(Complex64::new(1.0, 0.0) - a * s).ln() / s
    };
    // split where 1 - a s is smallest so a near-singularity sits at an endpoint
    let s0 = (a.conj() / a.norm_sqr()).re.clamp(0.0, 1.0);
    let tol = 1e-13 * a.norm().max(1.0);
    if s0 > 1e-3 && s0 < 1.0 - 1e-3 {
        integrate(&f, 0.0, s0, tol) + integrate(&f, s0, 1.0, tol)
    } else {
        integrate(&f, 0.0, 1.0, tol)
    }
}

/// Triple-product series
/// `(1 - w) prod (1 - q^n w)(1 - q^n / w) = sum_n (-1)^n q^(n(n-1)/2) w^n / prod (1 - q^m)`.
pub fn theta_series(w: Complex64, q: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in -200i64..=200 {
        let e = n * (n - 1) / 2;
        let term = q.powi(e as i32) * w.powi(n as i32);
        if !term.re.is_finite() || !term.im.is_finite() {
            continue;
        }
        sum += if n % 2 == 0 { term } else { -term };
    }
    let mut euler = Complex64::new(1.0, 0.0);
    let mut qm = Complex64::new(1.0, 0.0);
    for _ in 0..2000 {
        qm *= q;
        euler *= Complex64::new(1.0, 0.0) - qm;
        if qm.norm() < 1e-18 {
            break;
        }
    }
    sum / euler
}

/// Sum of two finite points of `Y^2 = 4X^3 - g2 X - g3` by the chord
/// through them (distinct `X`).
pub fn chord_add(p: (Complex64, Complex64), q: (Complex64, Complex64)) -> (Complex64, Complex64) {
    let lambda = (q.1 - p.1) / (q.0 - p.0);
    let x3 = lambda * lambda / 4.0 - p.0 - q.0;
    let y3 = -(p.1 + lambda * (x3 - p.0));
    (x3, y3)
}

/// Doubling by the tangent line.
pub fn tangent_double(p: (Complex64, Complex64), g2: Complex64) -> (Complex64, Complex64) {
    let lambda = (p.0 * p.0 * 12.0 - g2) / (p.1 * 2.0);
    let x3 = lambda * lambda / 4.0 - p.0 * 2.0;
    let y3 = -(p.1 + lambda * (x3 - p.0));
    (x3, y3)
}

/// Distance of `z` from the subgroup `q^Z`, relative to `|z|`.
pub fn distance_to_q_powers(z: Complex64, q: Complex64) -> f64 {
    if q.norm() == 0.0 {
        return (z - 1.0).norm();
    }
    let k = (z.norm().ln() / q.norm().ln()).round() as i32;
    (0..3)
        .map(|d| (z - q.powi(k + d - 1)).norm() / z.norm())
        .fold(f64::INFINITY, f64::min)
}

/// Uniform in log-modulus on `[lo, hi]` and in angle.
pub fn annulus(rng: &mut impl Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..hi).exp(), rng.gen_range(-PI..PI))
}

/// Arguments of the five-term relation `sum D(.) = 0`.
pub fn five_term_points(x: Complex64, y: Complex64) -> [Complex64; 5] {
    let one = Complex64::new(1.0, 0.0);
    let xy = one - x * y;
    [x, y, (one - x) / xy, xy, (one - y) / xy]
}
