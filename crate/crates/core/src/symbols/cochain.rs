//! Inhomogeneous (bar) cochains on `Z^2` with trivial coefficients in a
//! finitely presented module, the cup cocycle, `H^2` classes, coboundary
//! certificates and the Koszul model.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{CoefficientModule, MultiplicativeLattice, TensorModule};
use crate::error::{Error, Result};
use crate::intlin::{self, IntVec, PresentedModule};

pub type Z2 = [i64; 2];

const E1: Z2 = [1, 0];
const E2: Z2 = [0, 1];
const ORIGIN: Z2 = [0, 0];

fn zadd(a: Z2, b: Z2) -> Z2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn zneg(a: Z2) -> Z2 {
    [-a[0], -a[1]]
}

/// A function `Z^2 -> M`.
pub trait Cochain1 {
    fn dim(&self) -> usize;
    fn eval(&self, g: Z2) -> IntVec;
}

/// A function `Z^2 x Z^2 -> M`.
pub trait Cochain2 {
    fn dim(&self) -> usize;
    fn eval(&self, x: Z2, y: Z2) -> IntVec;
    /// `Some` when the cochain is `(x, y) -> sum x_i y_j a_ij`.
    fn as_bilinear(&self) -> Option<&BilinearCochain> {
        None
    }
}

pub struct FnCochain1<F: Fn(Z2) -> IntVec> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(Z2) -> IntVec> Cochain1 for FnCochain1<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, g: Z2) -> IntVec {
        (self.f)(g)
    }
}

pub struct FnCochain2<F: Fn(Z2, Z2) -> IntVec> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(Z2, Z2) -> IntVec> Cochain2 for FnCochain2<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: Z2, y: Z2) -> IntVec {
        (self.f)(x, y)
    }
}

/// `(delta b)(x, y) = b(x) + b(y) - b(x + y)`.
pub fn coboundary<'a>(b: &'a dyn Cochain1) -> impl Cochain2 + 'a {
    FnCochain2 {
        dim: b.dim(),
        f: move |x, y| intlin::sub(&intlin::add(&b.eval(x), &b.eval(y)), &b.eval(zadd(x, y))),
    }
}

/// `(delta c)(x, y, z) = c(y, z) - c(x + y, z) + c(x, y + z) - c(x, y)`.
pub fn bar_differential(c: &dyn Cochain2, x: Z2, y: Z2, z: Z2) -> IntVec {
    let a = intlin::sub(&c.eval(y, z), &c.eval(zadd(x, y), z));
    let b = intlin::sub(&c.eval(x, zadd(y, z)), &c.eval(x, y));
    intlin::add(&a, &b)
}

/// `c(x, y) = sum_{i,j} x_i y_j a_ij`; always a cocycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilinearCochain {
    pub dim: usize,
    #[serde(serialize_with = "ser_entries", deserialize_with = "de_entries")]
    pub a: [[IntVec; 2]; 2],
}

fn ser_entries<S: serde::Serializer>(a: &[[IntVec; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let flat: Vec<IntVec> = a.iter().flatten().cloned().collect();
    intlin::json::ser_mat(&flat, s)
}

fn de_entries<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<[[IntVec; 2]; 2], D::Error> {
    let flat = intlin::json::de_mat(d)?;
    match <[IntVec; 4]>::try_from(flat) {
        Ok([a, b, c, e]) => Ok([[a, b], [c, e]]),
        Err(_) => Err(serde::de::Error::custom("expected four entries a11, a12, a21, a22")),
    }
}

impl BilinearCochain {
    pub fn zero(dim: usize) -> Self {
        let z = vec![BigInt::zero(); dim];
        BilinearCochain {
            dim,
            a: [[z.clone(), z.clone()], [z.clone(), z]],
        }
    }
}

impl Cochain2 for BilinearCochain {
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, x: Z2, y: Z2) -> IntVec {
        let mut out = vec![BigInt::zero(); self.dim];
        for i in 0..2 {
            for j in 0..2 {
                let k = BigInt::from(x[i]) * BigInt::from(y[j]);
                if !k.is_zero() {
                    out = intlin::add(&out, &intlin::scale(&self.a[i][j], &k));
                }
            }
        }
        out
    }
    fn as_bilinear(&self) -> Option<&BilinearCochain> {
        Some(self)
    }
}

/// The cup-product cocycle attached to `u`. As a homogeneous cochain,
/// `C(0, (a, b), (c, d)) = u^a (x) (1 - u)^(d - b)`; in bar form this is
/// `c(x, y) = C(0, x, x + y) = x_1 y_2 . u (x) (1 - u)`.
#[derive(Debug, Clone)]
pub struct CupCocycle {
    pub u: Complex64,
    tensor: TensorModule,
    bilinear: BilinearCochain,
}

pub fn cup_cocycle(u: Complex64) -> Result<CupCocycle> {
    let one = Complex64::new(1.0, 0.0);
    if u == Complex64::new(0.0, 0.0) || u == one {
        return Err(Error::DegenerateSymbol(format!("cup cocycle needs u outside {{0, 1}}, got {u}")));
    }
    let lattice = MultiplicativeLattice::free(vec![u, one - u])?;
    lattice.probe_relations(4, 1e-10);
    let tensor = TensorModule::new(lattice);
    let mut bilinear = BilinearCochain::zero(4);
    bilinear.a[0][1] = tensor.basic(0, 1);
    Ok(CupCocycle { u, tensor, bilinear })
}

impl CupCocycle {
    /// Coefficients live in `<u> (x) <1 - u>`, basis `g_i (x) g_j` with
    /// `g_0 = u`, `g_1 = 1 - u`.
    pub fn tensor_module(&self) -> &TensorModule {
        &self.tensor
    }

    pub fn lattice(&self) -> &MultiplicativeLattice {
        self.tensor.lattice()
    }

    /// `C(0, g1, g2) = u^a (x) (1 - u)^(d - b)` for `g1 = (a, b)`, `g2 = (c, d)`.
    pub fn eval_homogeneous(&self, g1: Z2, g2: Z2) -> IntVec {
        self.tensor
            .tensor(&[g1[0], 0], &[0, g2[1] - g1[1]])
            .expect("two generators")
    }

    pub fn bilinear(&self) -> &BilinearCochain {
        &self.bilinear
    }
}

impl Cochain2 for CupCocycle {
    fn dim(&self) -> usize {
        4
    }
    fn eval(&self, x: Z2, y: Z2) -> IntVec {
        self.bilinear.eval(x, y)
    }
    fn as_bilinear(&self) -> Option<&BilinearCochain> {
        Some(&self.bilinear)
    }
}

fn check_dim(c: &dyn Cochain2, m: &PresentedModule) -> Result<()> {
    if c.dim() != m.rank() {
        return Err(Error::Shape(format!(
            "cochain takes values in Z^{} but the module has rank {}",
            c.dim(),
            m.rank()
        )));
    }
    Ok(())
}

/// Checks `delta c = 0` in `M` at the given triples.
pub fn check_cocycle_at(
    c: &dyn Cochain2,
    m: &dyn CoefficientModule,
    triples: impl IntoIterator<Item = (Z2, Z2, Z2)>,
) -> Result<()> {
    let module = m.module();
    check_dim(c, module)?;
    for (x, y, z) in triples {
        if !module.is_zero(&bar_differential(c, x, y, z))? {
            return Err(Error::NotACocycle { x, y, z });
        }
    }
    Ok(())
}

fn box_points(radius: i64) -> Vec<Z2> {
    let mut out = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            out.push([a, b]);
        }
    }
    out
}

/// Checks `delta c = 0` at every triple in `[-radius, radius]^6`; for
/// bilinear cochains closedness holds identically and nothing is evaluated.
pub fn check_cocycle(c: &dyn Cochain2, m: &dyn CoefficientModule, radius: i64) -> Result<()> {
    check_dim(c, m.module())?;
    if c.as_bilinear().is_some() {
        return Ok(());
    }
    let pts = box_points(radius);
    let mut triples = Vec::with_capacity(pts.len().pow(3));
    for &x in &pts {
        for &y in &pts {
            for &z in &pts {
                triples.push((x, y, z));
            }
        }
    }
    check_cocycle_at(c, m, triples)
}

/// The class of a 2-cocycle under `H^2(Z^2, M) = M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct H2Class {
    /// `c(e1, e2) - c(e2, e1)` in the ambient free module.
    #[serde(serialize_with = "intlin::json::ser_vec", deserialize_with = "intlin::json::de_vec")]
    pub representative: IntVec,
    /// Canonical coordinates of its image in `M`.
    #[serde(serialize_with = "intlin::json::ser_vec", deserialize_with = "intlin::json::de_vec")]
    pub class: IntVec,
}

impl H2Class {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|x| x.is_zero())
    }
}

/// Radius of the box on which closedness of non-bilinear input is checked.
const CLOSEDNESS_RADIUS: i64 = 1;

/// Antisymmetrisation `c(e1, e2) - c(e2, e1)`, the Koszul top component.
pub fn h2_class(c: &dyn Cochain2, m: &dyn CoefficientModule) -> Result<H2Class> {
    check_cocycle(c, m, CLOSEDNESS_RADIUS)?;
    let representative = intlin::sub(&c.eval(E1, E2), &c.eval(E2, E1));
    let class = m.module().class_of(&representative)?;
    Ok(H2Class { representative, class })
}

/// `b(x) = sum_i q_ii binom(x_i, 2) + q_12 x_1 x_2 + sum_i l_i x_i + k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCochain {
    #[serde(serialize_with = "intlin::json::ser_mat", deserialize_with = "intlin::json::de_mat")]
    pub coefficients: Vec<IntVec>,
}

impl QuadraticCochain {
    fn term(&self, k: usize) -> &IntVec {
        &self.coefficients[k]
    }
}

impl Cochain1 for QuadraticCochain {
    fn dim(&self) -> usize {
        self.coefficients[0].len()
    }
    fn eval(&self, g: Z2) -> IntVec {
        let (x1, x2) = (BigInt::from(g[0]), BigInt::from(g[1]));
        let two = BigInt::from(2);
        let monomials = [
            &x1 * (&x1 - 1) / &two,
            &x1 * &x2,
            &x2 * (&x2 - 1) / &two,
            x1.clone(),
            x2.clone(),
            BigInt::from(1),
        ];
        let mut out = vec![BigInt::zero(); self.dim()];
        for (k, mono) in monomials.iter().enumerate() {
            out = intlin::add(&out, &intlin::scale(self.term(k), mono));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainValue {
    pub g: Z2,
    #[serde(serialize_with = "intlin::json::ser_vec", deserialize_with = "intlin::json::de_vec")]
    pub value: IntVec,
}

/// A 1-cochain `b` with `delta b = c` in `M`.
///
/// `values` tabulates `b` on `[-window, window]^2`; every pair `(x, y)` with
/// `x`, `y`, `x + y` in the window is checked by re-substitution. When `c`
/// is bilinear, `closed_form` is a quadratic `b` and `residual_witnesses`
/// prove that each coefficient of the bilinear form `delta b - c` lies in
/// the relation span, which settles `delta b = c` on all of `Z^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoboundaryCertificate {
    pub window: i64,
    pub values: Vec<CochainValue>,
    pub closed_form: Option<QuadraticCochain>,
    #[serde(serialize_with = "intlin::json::ser_mat", deserialize_with = "intlin::json::de_mat")]
    pub residual_witnesses: Vec<IntVec>,
    pub checked_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CoboundaryOutcome {
    Coboundary { certificate: CoboundaryCertificate },
    Obstructed { obstruction: H2Class },
}

impl CoboundaryOutcome {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryOutcome::Coboundary { .. })
    }
}

/// Default half-width of the verification window.
pub const CERTIFICATE_WINDOW: i64 = 2;

/// Decides whether `c` is a coboundary in `M`. The answer is governed by
/// the class `c(e1, e2) - c(e2, e1)`; when it vanishes a certificate `b` is
/// built and verified, otherwise the class is returned as the obstruction.
pub fn is_coboundary(c: &dyn Cochain2, m: &dyn CoefficientModule) -> Result<CoboundaryOutcome> {
    let class = h2_class(c, m)?;
    if !class.is_zero() {
        return Ok(CoboundaryOutcome::Obstructed { obstruction: class });
    }
    let module = m.module();
    let (closed_form, residual_witnesses, table): (Option<QuadraticCochain>, Vec<IntVec>, Box<dyn Fn(Z2) -> IntVec + '_>) =
        match c.as_bilinear() {
            Some(bl) => {
                // b = -a11 binom(x1,2) - a12 x1 x2 - a22 binom(x2,2);
                // delta b - c = (a12 - a21) x2 y1
                let neg = |v: &IntVec| intlin::scale(v, &BigInt::from(-1));
                let zero = module.zero();
                let q = QuadraticCochain {
                    coefficients: vec![neg(&bl.a[0][0]), neg(&bl.a[0][1]), neg(&bl.a[1][1]), zero.clone(), zero.clone(), zero],
                };
                let residual = intlin::sub(&bl.a[0][1], &bl.a[1][0]);
                let mut witnesses = Vec::new();
                if residual.iter().any(|x| !x.is_zero()) {
                    witnesses.push(module.membership(&residual)?.ok_or_else(|| {
                        Error::DegenerateSymbol("vanishing class without a membership witness".into())
                    })?);
                }
                let q2 = q.clone();
                (Some(q), witnesses, Box::new(move |g| q2.eval(g)))
            }
            None => (None, Vec::new(), Box::new(|g| extension_section(c, g))),
        };
    let window = CERTIFICATE_WINDOW;
    let values: Vec<CochainValue> = box_points(window)
        .into_iter()
        .map(|g| CochainValue { g, value: table(g) })
        .collect();
    let certificate = CoboundaryCertificate {
        window,
        values,
        closed_form,
        residual_witnesses,
        checked_pairs: 0,
    };
    let checked_pairs = verify_certificate(&certificate, c, m)?;
    Ok(CoboundaryOutcome::Coboundary {
        certificate: CoboundaryCertificate {
            checked_pairs,
            ..certificate
        },
    })
}

/// `b = k - beta`, where `s(g) = (beta(g), g) = (0, e1)^{g1} (0, e2)^{g2}`
/// in the central extension `M x_c' Z^2` of the normalised cocycle
/// `c' = c - c(0, 0)` and `k = c(0, 0)`. When the extension is abelian in
/// `M`, `s` is a homomorphism and `delta b = c` there.
fn extension_section(c: &dyn Cochain2, g: Z2) -> IntVec {
    let k = c.eval(ORIGIN, ORIGIN);
    let cn = |x: Z2, y: Z2| intlin::sub(&c.eval(x, y), &k);
    let mul = |a: &(IntVec, Z2), b: &(IntVec, Z2)| -> (IntVec, Z2) {
        (intlin::add(&intlin::add(&a.0, &b.0), &cn(a.1, b.1)), zadd(a.1, b.1))
    };
    let zero = vec![BigInt::zero(); c.dim()];
    let power = |e: Z2, n: i64| -> (IntVec, Z2) {
        let step = if n >= 0 {
            (zero.clone(), e)
        } else {
            // (m, g)^{-1} = (-m - c'(g, -g), -g)
            (intlin::scale(&cn(e, zneg(e)), &BigInt::from(-1)), zneg(e))
        };
        let mut acc = (zero.clone(), ORIGIN);
        for _ in 0..n.unsigned_abs() {
            acc = mul(&acc, &step);
        }
        acc
    };
    let s = mul(&power(E1, g[0]), &power(E2, g[1]));
    intlin::sub(&k, &s.0)
}

/// Re-substitutes a certificate: `delta b - c` must lie in the relation
/// span at every checked pair, and the closed form (if any) must match the
/// table and its residual witnesses must be valid. Returns the number of
/// pairs checked.
pub fn verify_certificate(cert: &CoboundaryCertificate, c: &dyn Cochain2, m: &dyn CoefficientModule) -> Result<usize> {
    let module = m.module();
    check_dim(c, module)?;
    let lookup = |g: Z2| -> Option<&IntVec> { cert.values.iter().find(|v| v.g == g).map(|v| &v.value) };
    if let Some(q) = &cert.closed_form {
        let bl = c
            .as_bilinear()
            .ok_or_else(|| Error::Shape("closed-form certificate for a non-bilinear cochain".into()))?;
        for v in &cert.values {
            if q.eval(v.g) != v.value {
                return Err(Error::DegenerateSymbol(format!("certificate table disagrees with its closed form at {:?}", v.g)));
            }
        }
        // delta b = -(q11 x1 y1 + q12 (x1 y2 + x2 y1) + q22 x2 y2)
        let neg = |v: &IntVec| intlin::scale(v, &BigInt::from(-1));
        let db = [[neg(q.term(0)), neg(q.term(1))], [neg(q.term(1)), neg(q.term(2))]];
        let mut witnesses = cert.residual_witnesses.iter();
        for i in 0..2 {
            for j in 0..2 {
                let r = intlin::sub(&db[i][j], &bl.a[i][j]);
                if r.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let ok = witnesses.next().map(|w| module.verify_membership(&r, w)).unwrap_or(false);
                if !ok {
                    return Err(Error::DegenerateSymbol(format!("coefficient ({i}, {j}) of delta b - c has no valid witness")));
                }
            }
        }
    }
    let mut checked = 0;
    for x in &cert.values {
        for y in &cert.values {
            let Some(bxy) = lookup(zadd(x.g, y.g)) else { continue };
            let db = intlin::sub(&intlin::add(&x.value, &y.value), bxy);
            let r = intlin::sub(&db, &c.eval(x.g, y.g));
            if !module.is_zero(&r)? {
                return Err(Error::DegenerateSymbol(format!("delta b != c at ({:?}, {:?})", x.g, y.g)));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn binomial(n: usize, p: usize) -> u64 {
    if p > n {
        return 0;
    }
    let p = p.min(n - p);
    (0..p).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// A Koszul `p`-cochain for `Z^n`: one module element per `p`-subset of
/// `{1..n}`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KoszulCochain {
    pub degree: usize,
    pub rank: usize,
    #[serde(serialize_with = "intlin::json::ser_mat", deserialize_with = "intlin::json::de_mat")]
    pub components: Vec<IntVec>,
}

impl KoszulCochain {
    pub fn new(degree: usize, rank: usize, components: Vec<IntVec>) -> Result<Self> {
        let expect = binomial(rank, degree) as usize;
        if components.len() != expect {
            return Err(Error::Shape(format!(
                "a degree-{degree} Koszul cochain on Z^{rank} has {expect} components, got {}",
                components.len()
            )));
        }
        Ok(KoszulCochain {
            degree,
            rank,
            components,
        })
    }

    /// The top component of a bar 2-cocycle on `Z^2`.
    pub fn from_bar(c: &dyn Cochain2) -> Self {
        KoszulCochain {
            degree: 2,
            rank: 2,
            components: vec![intlin::sub(&c.eval(E1, E2), &c.eval(E2, E1))],
        }
    }
}

/// The Koszul differential for the trivial action: every term carries a
/// factor `t_i - 1 = 0`, so the result is the zero `(p+1)`-cochain.
pub fn koszul_differential(c: &KoszulCochain, dim: usize) -> KoszulCochain {
    let n = binomial(c.rank, c.degree + 1) as usize;
    KoszulCochain {
        degree: c.degree + 1,
        rank: c.rank,
        components: vec![vec![BigInt::zero(); dim]; n],
    }
}

/// `H^p(Z^n, M) = M^binom(n, p)` for the trivial action; true when this
/// vanishes.
pub fn cohomology_dimension_check(n: usize, p: usize, m: &PresentedModule) -> bool {
    binomial(n, p) == 0 || m.invariants().is_empty()
}

/// Terms `E_2^{p,q} = H^p(Z^n, H^q)` of total degree `total` that can be
/// nonzero, given the degrees `q` where the coefficient complex has
/// cohomology and the cohomological dimension `cd = n`.
pub fn e2_surviving_terms(total: usize, coefficient_degrees: &[usize], cd: usize) -> Vec<(usize, usize)> {
    coefficient_degrees
        .iter()
        .filter(|&&q| q <= total && total - q <= cd)
        .map(|&q| (total - q, q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::K2Presentation;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cup_values() {
        let cup = cup_cocycle(c(0.3, 0.4)).unwrap();
        let t = cup.tensor_module().basic(0, 1);
        assert_eq!(cup.eval(E1, E2), t);
        assert_eq!(cup.eval(E2, E1), cup.tensor_module().module().zero());
        assert_eq!(cup.eval_homogeneous(E1, E2), t);
        assert!(cup.eval_homogeneous(E2, E1).iter().all(|x| x.is_zero()));
        for (x, y) in [([2, -1], [3, 5]), ([-4, 7], [1, 1])] {
            assert_eq!(cup.eval(x, y), cup.eval_homogeneous(x, zadd(x, y)));
        }
        assert!(cup_cocycle(c(1.0, 0.0)).is_err());
        assert!(cup_cocycle(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn literal_bar_reading_is_not_closed() {
        let cup = cup_cocycle(c(0.3, 0.4)).unwrap();
        let t = cup.tensor_module().basic(0, 1);
        let literal = FnCochain2 {
            dim: 4,
            f: |x: Z2, y: Z2| intlin::scale(&t, &BigInt::from(x[0] * (y[1] - x[1]))),
        };
        let err = check_cocycle(&literal, cup.tensor_module(), 1).unwrap_err();
        assert!(matches!(err, Error::NotACocycle { .. }));
        assert!(matches!(h2_class(&literal, cup.tensor_module()), Err(Error::NotACocycle { .. })));
    }

    #[test]
    fn classes_free_and_steinberg() {
        let u = c(0.3, 0.4);
        let cup = cup_cocycle(u).unwrap();
        let free = h2_class(&cup, cup.tensor_module()).unwrap();
        assert_eq!(free.representative, cup.tensor_module().basic(0, 1));
        assert!(!free.is_zero());
        let k2 = K2Presentation::new(cup.lattice().clone(), vec![(0, 1)], 1e-12).unwrap();
        assert!(h2_class(&cup, &k2).unwrap().is_zero());
        assert!(h2_class(&BilinearCochain::zero(4), &k2).unwrap().is_zero());
    }

    #[test]
    fn coboundary_outcomes() {
        let cup = cup_cocycle(c(-0.6, 1.1)).unwrap();
        match is_coboundary(&cup, cup.tensor_module()).unwrap() {
            CoboundaryOutcome::Obstructed { obstruction } => {
                assert_eq!(obstruction.representative, cup.tensor_module().basic(0, 1))
            }
            other => panic!("{other:?}"),
        }
        let k2 = K2Presentation::new(cup.lattice().clone(), vec![(0, 1)], 1e-12).unwrap();
        match is_coboundary(&cup, &k2).unwrap() {
            CoboundaryOutcome::Coboundary { certificate } => {
                assert!(certificate.closed_form.is_some());
                assert!(certificate.checked_pairs > 100);
                let json = serde_json::to_string(&certificate).unwrap();
                let back: CoboundaryCertificate = serde_json::from_str(&json).unwrap();
                assert_eq!(back, certificate);
                assert_eq!(serde_json::to_string(&back).unwrap(), json);
                assert!(verify_certificate(&back, &cup, &k2).is_ok());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coboundary_of_arbitrary_function() {
        let m = PresentedModule::free(2);
        let b = FnCochain1 {
            dim: 2,
            f: |g: Z2| intlin::ints(&[g[0] * g[0] * g[1] - 3 * g[1] + 7, (g[0] ^ (g[1] * 5)) % 11]),
        };
        let db = coboundary(&b);
        assert!(h2_class(&db, &m).unwrap().is_zero());
        match is_coboundary(&db, &m).unwrap() {
            CoboundaryOutcome::Coboundary { certificate } => {
                assert!(certificate.closed_form.is_none());
                assert!(certificate.checked_pairs > 100);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symmetric_bilinear_is_coboundary_with_global_certificate() {
        let m = PresentedModule::free(1);
        let mut bl = BilinearCochain::zero(1);
        bl.a[0][0] = intlin::ints(&[3]);
        bl.a[0][1] = intlin::ints(&[-2]);
        bl.a[1][0] = intlin::ints(&[-2]);
        bl.a[1][1] = intlin::ints(&[5]);
        let out = is_coboundary(&bl, &m).unwrap();
        assert!(out.is_coboundary());
    }

    #[test]
    fn koszul_model() {
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(4, 2), 6);
        let z = PresentedModule::free(1);
        assert!(cohomology_dimension_check(2, 3, &z));
        assert!(cohomology_dimension_check(2, 4, &z));
        assert!(!cohomology_dimension_check(3, 3, &z));
        assert!(!cohomology_dimension_check(2, 2, &z));
        let trivial = PresentedModule::new(1, vec![intlin::ints(&[1])]).unwrap();
        assert!(cohomology_dimension_check(2, 1, &trivial));
        assert!(KoszulCochain::new(2, 3, vec![vec![]; 2]).is_err());
        let k = KoszulCochain::new(1, 3, vec![intlin::ints(&[1]); 3]).unwrap();
        let d = koszul_differential(&k, 1);
        assert_eq!(d.components.len(), 3);
        assert!(d.components.iter().flatten().all(|x| x.is_zero()));
        // total degree 4, coefficient cohomology in degrees 1 and 2, cd 2
        assert_eq!(e2_surviving_terms(4, &[1, 2], 2), vec![(2, 2)]);
    }
}
