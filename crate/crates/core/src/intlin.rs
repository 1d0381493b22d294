//! Exact integer linear algebra: Smith and Hermite normal forms over
//! `BigInt`, and finitely presented abelian groups `Z^r / rowspan(R)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type IntVec = Vec<BigInt>;
pub type IntMat = Vec<Vec<BigInt>>;

pub fn ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(x: &[BigInt], m: &IntMat, cols: usize) -> IntVec {
    let mut out = vec![BigInt::zero(); cols];
    for (xi, row) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o += xi * r;
        }
    }
    out
}

pub fn mat_mul(a: &IntMat, b: &IntMat, cols: usize) -> IntMat {
    a.iter().map(|row| vec_mat(row, b, cols)).collect()
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_0 | d_1 | ...`, all `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: IntVec,
    pub u: IntMat,
    pub v: IntMat,
}

pub fn smith_normal_form(a: &IntMat, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut a = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let steps = m.min(n);
    let mut diagonal = Vec::with_capacity(steps);

    for t in 0..steps {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &p;
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &p;
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue 'pivot;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &p).is_zero()));
            if let Some(i) = offending {
                row_axpy(&mut a, t, i, &-BigInt::one());
                row_axpy(&mut u, t, i, &-BigInt::one());
                continue 'pivot;
            }
            break 'pivot;
        }
        if a[t][t].is_negative() {
            a[t].iter_mut().for_each(|x| *x = -&*x);
            u[t].iter_mut().for_each(|x| *x = -&*x);
        }
        diagonal.push(a[t][t].clone());
    }
    Smith { diagonal, u, v }
}

// row_i -= q * row_k
fn row_axpy(a: &mut IntMat, i: usize, k: usize, q: &BigInt) {
    let src = a[k].clone();
    for (x, s) in a[i].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

// col_j -= q * col_k
fn col_axpy(a: &mut IntMat, j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[k].clone();
        row[j] -= q * s;
    }
}

/// Row-style Hermite normal form: a basis of the row span, echelon, with
/// positive pivots and reduced entries above them. Zero rows are dropped.
pub fn hermite_normal_form(rows: &IntMat, cols: usize) -> IntMat {
    let mut a: IntMat = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: IntMat = Vec::new();
    let mut col = 0;
    while col < cols && !a.is_empty() {
        // Euclid down the column until one row holds the gcd
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&i| !a[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let q = a[i][col].div_floor(&a[piv][col]);
                    row_axpy(&mut a, i, piv, &q);
                }
            }
        }
        if let Some(i) = (0..a.len()).find(|&i| !a[i][col].is_zero()) {
            let mut row = a.remove(i);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(row);
        }
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    // reduce above pivots
    for k in 0..out.len() {
        let pc = out[k].iter().position(|x| !x.is_zero()).unwrap();
        for i in 0..k {
            let q = out[i][pc].div_floor(&out[k][pc]);
            if !q.is_zero() {
                row_axpy(&mut out, i, k, &q);
            }
        }
    }
    out
}

/// The abelian group `Z^r / rowspan(R)`.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    rank: usize,
    relations: IntMat,
    smith: Smith,
}

impl PresentedModule {
    pub fn new(rank: usize, relations: IntMat) -> Result<Self> {
        if let Some(bad) = relations.iter().find(|r| r.len() != rank) {
            return Err(Error::Shape(format!("relation of length {} in a rank-{rank} module", bad.len())));
        }
        let smith = smith_normal_form(&relations, rank);
        Ok(PresentedModule {
            rank,
            relations,
            smith,
        })
    }

    pub fn free(rank: usize) -> Self {
        PresentedModule::new(rank, Vec::new()).expect("no relations")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMat {
        &self.relations
    }

    /// Invariant factors of the nontrivial summands; `0` stands for `Z`.
    pub fn invariants(&self) -> IntVec {
        let mut out: IntVec = self.smith.diagonal.iter().filter(|d| !d.is_one()).cloned().collect();
        out.extend(std::iter::repeat(BigInt::zero()).take(self.rank - self.smith.diagonal.len()));
        out
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.rank {
            return Err(Error::Shape(format!("element of length {} in a rank-{} module", x.len(), self.rank)));
        }
        Ok(())
    }

    /// Canonical coordinates of the class of `x`, one per entry of
    /// [`invariants`](Self::invariants): residues mod `d` for torsion
    /// summands, integers for free ones.
    pub fn class_of(&self, x: &[BigInt]) -> Result<IntVec> {
        self.check_len(x)?;
        let y = vec_mat(x, &self.smith.v, self.rank);
        let mut out = Vec::new();
        for (k, yk) in y.into_iter().enumerate() {
            match self.smith.diagonal.get(k) {
                Some(d) if d.is_one() => {}
                Some(d) if !d.is_zero() => out.push(yk.mod_floor(d)),
                _ => out.push(yk),
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.class_of(x)?.iter().all(|c| c.is_zero()))
    }

    /// Coefficients `z` with `z R = x`, if `x` lies in the relation span.
    pub fn membership(&self, x: &[BigInt]) -> Result<Option<IntVec>> {
        self.check_len(x)?;
        let y = vec_mat(x, &self.smith.v, self.rank);
        let s = self.relations.len();
        let mut zp = vec![BigInt::zero(); s];
        for (k, yk) in y.iter().enumerate() {
            match self.smith.diagonal.get(k) {
                Some(d) if !d.is_zero() => {
                    if !(yk % d).is_zero() {
                        return Ok(None);
                    }
                    zp[k] = yk / d;
                }
                _ => {
                    if !yk.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        let z = vec_mat(&zp, &self.smith.u, s);
        debug_assert_eq!(vec_mat(&z, &self.relations, self.rank), x);
        Ok(Some(z))
    }

    /// Checks a membership certificate by re-substitution.
    pub fn verify_membership(&self, x: &[BigInt], z: &[BigInt]) -> bool {
        z.len() == self.relations.len() && vec_mat(z, &self.relations, self.rank) == x
    }

    pub fn zero(&self) -> IntVec {
        vec![BigInt::zero(); self.rank]
    }
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[BigInt], k: &BigInt) -> IntVec {
    a.iter().map(|x| x * k).collect()
}

/// Serde helpers writing integers as JSON numbers (strings beyond `i64`).
pub mod json {
    use super::*;
    use num_traits::ToPrimitive;

    fn to_value(x: &BigInt) -> serde_json::Value {
        match x.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(x.to_string()),
        }
    }

    fn from_value(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("not an integer: {n}")),
            serde_json::Value::String(s) => s.parse().map_err(|e| format!("{e}")),
            other => Err(format!("expected an integer, got {other}")),
        }
    }

    pub fn ser_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn de_vec<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntVec, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter().map(from_value).collect::<std::result::Result<_, _>>().map_err(serde::de::Error::custom)
    }

    pub fn ser_mat<S: Serializer>(m: &IntMat, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter()
            .map(|r| r.iter().map(to_value).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn de_mat<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntMat, D::Error> {
        let raw: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|r| r.iter().map(from_value).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMat {
        rows.iter().map(|r| ints(r)).collect()
    }

    fn check_smith(a: &IntMat, cols: usize) -> Smith {
        let s = smith_normal_form(a, cols);
        let uav = mat_mul(&mat_mul(&s.u, a, cols), &s.v, cols);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(*x, expect, "UAV[{i}][{j}]");
            }
        }
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{:?}", s.diagonal);
            }
        }
        s
    }

    #[test]
    fn smith_examples() {
        let s = check_smith(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(s.diagonal, ints(&[2, 6, 12]));
        let s = check_smith(&mat(&[&[0, 0], &[0, 3], &[0, 0]]), 2);
        assert_eq!(s.diagonal, ints(&[3, 0]));
        let s = check_smith(&mat(&[&[4, 6]]), 2);
        assert_eq!(s.diagonal, ints(&[2]));
    }

    #[test]
    fn hnf_example() {
        let h = hermite_normal_form(&mat(&[&[2, 4], &[3, 5], &[0, 0]]), 2);
        assert_eq!(h, mat(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn presented_module_classes() {
        // Z^3 / <(2,0,0), (0,3,3)>  ~  Z/6 + Z
        let m = PresentedModule::new(3, mat(&[&[2, 0, 0], &[0, 3, 3]])).unwrap();
        let mut inv = m.invariants();
        inv.sort();
        assert_eq!(inv, ints(&[0, 6]));
        assert!(m.is_zero(&ints(&[4, 6, 6])).unwrap());
        assert!(!m.is_zero(&ints(&[1, 0, 0])).unwrap());
        assert!(!m.is_zero(&ints(&[0, 1, 1])).unwrap());
        assert!(!m.is_zero(&ints(&[0, 0, 1])).unwrap());
        let z = m.membership(&ints(&[-2, 9, 9])).unwrap().unwrap();
        assert!(m.verify_membership(&ints(&[-2, 9, 9]), &z));
        assert_eq!(m.membership(&ints(&[0, 3, 0])).unwrap(), None);
        assert!(m.class_of(&ints(&[1])).is_err());
    }

    #[test]
    fn json_ints() {
        #[derive(Serialize, Deserialize, PartialEq, Debug)]
        struct W {
            #[serde(serialize_with = "json::ser_mat", deserialize_with = "json::de_mat")]
            m: IntMat,
        }
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let w = W {
            m: vec![vec![BigInt::from(-3), big]],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"m":[[-3,"123456789012345678901234567890"]]}"#);
        assert_eq!(serde_json::from_str::<W>(&s).unwrap(), w);
    }
}
