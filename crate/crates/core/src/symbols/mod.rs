//! Exact symbol algebra: finitely generated subgroups of `C*`, their tensor
//! squares, Steinberg quotients, the cohomology of `Z^2` with coefficients
//! in them, and the dilogarithm map `epsilon`.

mod cochain;
mod epsilon;

use log::warn;
use num_bigint::BigInt;
use num_integer::Integer;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::intlin::{self, IntMat, IntVec, PresentedModule};
use crate::special::log_principal;

pub use cochain::{
    bar_differential, binomial, check_cocycle, check_cocycle_at, coboundary, cohomology_dimension_check,
    cup_cocycle, e2_surviving_terms, h2_class, is_coboundary, koszul_differential, verify_certificate,
    BilinearCochain, CoboundaryCertificate, CoboundaryOutcome, Cochain1, Cochain2, CochainValue, CupCocycle,
    FnCochain1, FnCochain2, H2Class, KoszulCochain, QuadraticCochain, Z2,
};
pub use epsilon::{epsilon, epsilon_with_side, EpsilonElement, EpsilonPair};

/// A subgroup of `C*` given by generators and the exponent relations
/// `prod g_i^{e_i} = 1` the caller declares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson")]
pub struct MultiplicativeLattice {
    generators: Vec<Complex64>,
    relations: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct LatticeJson {
    generators: Vec<Complex64>,
    #[serde(default)]
    relations: Vec<Vec<i64>>,
}

impl TryFrom<LatticeJson> for MultiplicativeLattice {
    type Error = Error;

    fn try_from(j: LatticeJson) -> Result<Self> {
        MultiplicativeLattice::new(j.generators, j.relations, crate::special::DEFAULT_TOL)
    }
}

/// Distance of `sum e_i log g_i` from `2 pi i Z`, relative to the size of
/// the sum.
fn relation_residual(logs: &[Complex64], e: &[i64]) -> f64 {
    let mut s = Complex64::new(0.0, 0.0);
    let mut scale = 1.0f64;
    for (l, &k) in logs.iter().zip(e) {
        s += l * k as f64;
        scale += (l * k as f64).norm();
    }
    let turns = s.im / (2.0 * PI);
    let dist = (s.re.powi(2) + ((turns - turns.round()) * 2.0 * PI).powi(2)).sqrt();
    dist / scale
}

impl MultiplicativeLattice {
    pub fn new(generators: Vec<Complex64>, relations: Vec<Vec<i64>>, tol: f64) -> Result<Self> {
        let logs = generators
            .iter()
            .map(|&g| {
                if g == Complex64::new(0.0, 0.0) || !g.norm().is_finite() {
                    Err(Error::DegenerateSymbol(format!("lattice generator {g} must be a nonzero number")))
                } else {
                    log_principal(g)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for (index, e) in relations.iter().enumerate() {
            if e.len() != generators.len() {
                return Err(Error::Shape(format!(
                    "relation {index} has {} exponents for {} generators",
                    e.len(),
                    generators.len()
                )));
            }
            let residual = relation_residual(&logs, e);
            if residual > tol {
                return Err(Error::RelationViolated { index, residual });
            }
        }
        Ok(MultiplicativeLattice { generators, relations })
    }

    pub fn free(generators: Vec<Complex64>) -> Result<Self> {
        Self::new(generators, Vec::new(), 0.0)
    }

    pub fn generators(&self) -> &[Complex64] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `Z^k / relations`: the lattice as an abstract group.
    pub fn exponent_module(&self) -> PresentedModule {
        let rows = self.relations.iter().map(|r| intlin::ints(r)).collect();
        PresentedModule::new(self.len(), rows).expect("relation lengths are checked on construction")
    }

    /// Searches `|e_i| <= bound` for exponent vectors with
    /// `prod g_i^{e_i} = 1` up to `tol` that the declared relations do not
    /// already imply; only primitive vectors are reported. Each hit is logged as a warning; nothing is added.
    pub fn probe_relations(&self, bound: u32, tol: f64) -> Vec<Vec<i64>> {
        let k = self.len();
        let logs: Vec<Complex64> = self
            .generators
            .iter()
            .map(|&g| log_principal(g).expect("generators are nonzero"))
            .collect();
        let declared = self.exponent_module();
        let b = bound as i64;
        let mut hits = Vec::new();
        let mut e = vec![-b; k];
        if k == 0 {
            return hits;
        }
        loop {
            // first nonzero entry positive: one representative per +-e
            if let Some(first) = e.iter().find(|&&x| x != 0) {
                if *first > 0
                    && e.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
                    && relation_residual(&logs, &e) <= tol
                    && !declared.is_zero(&intlin::ints(&e)).unwrap_or(true)
                {
                    warn!("generators {:?} look multiplicatively dependent: exponents {e:?}", self.generators);
                    hits.push(e.clone());
                }
            }
            let mut i = 0;
            while i < k {
                if e[i] < b {
                    e[i] += 1;
                    break;
                }
                e[i] = -b;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        hits
    }
}

/// Anything that presents a finitely generated abelian group.
pub trait CoefficientModule {
    fn module(&self) -> &PresentedModule;
}

impl CoefficientModule for PresentedModule {
    fn module(&self) -> &PresentedModule {
        self
    }
}

/// `L (x) L` for a lattice `L`, with basis `g_i (x) g_j` (index `i k + j`)
/// and the relations induced bilinearly from those of `L`.
#[derive(Debug, Clone)]
pub struct TensorModule {
    lattice: MultiplicativeLattice,
    module: PresentedModule,
}

impl TensorModule {
    pub fn new(lattice: MultiplicativeLattice) -> Self {
        let k = lattice.len();
        let mut rows: IntMat = Vec::new();
        for e in lattice.relations() {
            for j in 0..k {
                let mut left = vec![BigInt::zero(); k * k];
                let mut right = vec![BigInt::zero(); k * k];
                for (i, &ei) in e.iter().enumerate() {
                    left[i * k + j] = BigInt::from(ei);
                    right[j * k + i] = BigInt::from(ei);
                }
                rows.push(left);
                rows.push(right);
            }
        }
        let module = PresentedModule::new(k * k, rows).expect("rows have length k^2");
        TensorModule { lattice, module }
    }

    pub fn lattice(&self) -> &MultiplicativeLattice {
        &self.lattice
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.lattice.len() + j
    }

    /// The basis element `g_i (x) g_j`.
    pub fn basic(&self, i: usize, j: usize) -> IntVec {
        let mut v = self.module.zero();
        v[self.index(i, j)] = BigInt::one();
        v
    }

    /// `(prod g^a) (x) (prod g^b)`.
    pub fn tensor(&self, a: &[i64], b: &[i64]) -> Result<IntVec> {
        let k = self.lattice.len();
        if a.len() != k || b.len() != k {
            return Err(Error::Shape(format!("exponent vectors must have length {k}")));
        }
        let mut v = self.module.zero();
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                v[i * k + j] = BigInt::from(ai) * BigInt::from(bj);
            }
        }
        Ok(v)
    }

    pub fn to_symbol(&self, v: &[BigInt]) -> SymbolTensor {
        let k = self.lattice.len();
        SymbolTensor {
            coeffs: v.chunks(k.max(1)).map(|r| r.to_vec()).collect(),
        }
    }
}

impl CoefficientModule for TensorModule {
    fn module(&self) -> &PresentedModule {
        &self.module
    }
}

/// `sum c_ij g_i (x) g_j` as its coefficient matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTensor {
    #[serde(serialize_with = "intlin::json::ser_mat", deserialize_with = "intlin::json::de_mat")]
    pub coeffs: IntMat,
}

impl SymbolTensor {
    pub fn flatten(&self) -> IntVec {
        self.coeffs.iter().flatten().cloned().collect()
    }
}

/// `L (x) L` modulo the Steinberg symbols `g_i (x) g_j` for declared pairs
/// with `g_j = 1 - g_i`: a finitely presented stand-in for `K_2(C)`.
#[derive(Debug, Clone)]
pub struct K2Presentation {
    tensor: TensorModule,
    steinberg_pairs: Vec<(usize, usize)>,
    module: PresentedModule,
}

impl K2Presentation {
    pub fn new(lattice: MultiplicativeLattice, steinberg_pairs: Vec<(usize, usize)>, tol: f64) -> Result<Self> {
        let k = lattice.len();
        for &(i, j) in &steinberg_pairs {
            if i >= k || j >= k {
                return Err(Error::Shape(format!("Steinberg pair ({i}, {j}) out of range for {k} generators")));
            }
            let g = lattice.generators();
            let residual = (g[i] + g[j] - 1.0).norm();
            if residual >= tol {
                return Err(Error::DegenerateSymbol(format!(
                    "generators {} and {} do not sum to 1 (residual {residual:e})",
                    g[i], g[j]
                )));
            }
        }
        let tensor = TensorModule::new(lattice);
        let mut rows = tensor.module.relations().clone();
        for &(i, j) in &steinberg_pairs {
            rows.push(tensor.basic(i, j));
        }
        let module = PresentedModule::new(k * k, rows)?;
        Ok(K2Presentation {
            tensor,
            steinberg_pairs,
            module,
        })
    }

    pub fn tensor(&self) -> &TensorModule {
        &self.tensor
    }

    pub fn steinberg_pairs(&self) -> &[(usize, usize)] {
        &self.steinberg_pairs
    }
}

impl CoefficientModule for K2Presentation {
    fn module(&self) -> &PresentedModule {
        &self.module
    }
}
