//! wasm-bindgen front end for the static demo page in `www/`.

use num_complex::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

use steinberg_lab::hodge::{self, ProductTorus};
use steinberg_lab::special::{CutSide, PrecisionContext};
use steinberg_lab::symbols::{
    cup_cocycle, epsilon, epsilon_with_side, h2_class, is_coboundary, verify_certificate, CoboundaryOutcome,
    K2Presentation,
};
use steinberg_lab::tate::TateParameter;
use steinberg_lab::theta::{divisor_of_section, nodal_section, section_f, AutomorphyBundle};

/// Phase of `F(w) = theta(w/u)/theta(w)` on a `size x size` grid over the
/// fundamental annulus: row `i` is log-radius from `log|q|` to `0`, column
/// `j` is angle from `-pi` to `pi`. Undefined cells are `NaN`. The divisor
/// points follow as `(log|w|, arg w, multiplicity)` triples after the grid.
pub fn phase_grid(q: Complex64, u: Complex64, size: usize) -> Result<Vec<f64>, String> {
    if !(2..=400).contains(&size) {
        return Err("grid size must be between 2 and 400".into());
    }
    let ctx = PrecisionContext::default();
    let curve = TateParameter::new(q).map_err(|e| e.to_string())?;
    if curve.is_nodal() {
        return Err("pick 0 < |q| < 1".into());
    }
    let bundle = AutomorphyBundle::new(curve, u).map_err(|e| e.to_string())?;
    let lo = q.norm().ln();
    let mut out = Vec::with_capacity(size * size + 6);
    for i in 0..size {
        let lr = lo + (0.0 - lo) * (i as f64 + 0.5) / size as f64;
        for j in 0..size {
            let a = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / size as f64;
            let w = Complex64::from_polar(lr.exp(), a);
            out.push(section_f(w, &bundle, &ctx).map(|f| f.arg()).unwrap_or(f64::NAN));
        }
    }
    let report = divisor_of_section(&bundle, &ctx).map_err(|e| e.to_string())?;
    for t in report.divisor.terms() {
        let w = t.point.w();
        out.extend([w.norm().ln(), w.arg(), t.multiplicity as f64]);
    }
    Ok(out)
}

/// Nodal certificate, cup-product class in the free and Steinberg
/// coefficients, and `epsilon(u)`.
pub fn steinberg_summary(u: Complex64) -> Result<serde_json::Value, String> {
    let one = Complex64::new(1.0, 0.0);
    if u == one || u == Complex64::new(0.0, 0.0) {
        return Err("u must avoid 0 and 1".into());
    }
    let err = |e: steinberg_lab::Error| e.to_string();
    let nodal = nodal_section(u).map_err(err)?;
    let cup = cup_cocycle(u).map_err(err)?;
    let free = h2_class(&cup, cup.tensor_module()).map_err(err)?;
    let k2 = K2Presentation::new(cup.lattice().clone(), vec![(0, 1)], 1e-9).map_err(err)?;
    let quotient = h2_class(&cup, &k2).map_err(err)?;
    let checked = match is_coboundary(&cup, &k2).map_err(err)? {
        CoboundaryOutcome::Coboundary { certificate } => Some(verify_certificate(&certificate, &cup, &k2).map_err(err)?),
        CoboundaryOutcome::Obstructed { .. } => None,
    };
    let eps = if u.im == 0.0 && u.re > 1.0 {
        epsilon_with_side(u, CutSide::Upper)
    } else {
        epsilon(u)
    }
    .map_err(err)?;
    let (offset, residual) = eps.lattice_offset().map_err(err)?;
    Ok(json!({
        "u": [u.re, u.im],
        "nodal_divisor": nodal.divisor.iter().map(|(p, m)| json!({"point": [p.re, p.im], "multiplicity": m})).collect::<Vec<_>>(),
        "gluing_ratio": [nodal.gluing_ratio.re, nodal.gluing_ratio.im],
        "free_class": free.class.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "free_class_zero": free.is_zero(),
        "quotient_class_zero": quotient.is_zero(),
        "certificate_pairs": checked,
        "epsilon_offset": offset,
        "epsilon_residual": residual,
    }))
}

pub fn ns_summary(tau1: Complex64, tau2: Complex64, height: i64) -> Result<serde_json::Value, String> {
    if !(1..=24).contains(&height) {
        return Err("height bound must be between 1 and 24".into());
    }
    let torus = ProductTorus::new(tau1, tau2).map_err(|e| e.to_string())?;
    let report = hodge::ns_group_with_bound(&torus, height).map_err(|e| e.to_string())?;
    Ok(json!({
        "rank": report.rank,
        "basis": report.basis,
        "labels": hodge::BASIS_LABELS,
        "borderline": report.borderline,
        "f2_intersection_trivial": hodge::ns_meets_f2_trivially(&report),
    }))
}

#[wasm_bindgen]
pub fn section_phase(q_re: f64, q_im: f64, u_re: f64, u_im: f64, size: usize) -> Result<Vec<f64>, JsError> {
    phase_grid(Complex64::new(q_re, q_im), Complex64::new(u_re, u_im), size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn steinberg_report(u_re: f64, u_im: f64) -> Result<String, JsError> {
    steinberg_summary(Complex64::new(u_re, u_im))
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ns_rank(t1_re: f64, t1_im: f64, t2_re: f64, t2_im: f64, height: i32) -> Result<String, JsError> {
    ns_summary(Complex64::new(t1_re, t1_im), Complex64::new(t2_re, t2_im), height.into())
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e))
}
