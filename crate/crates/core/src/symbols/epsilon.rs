use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{li2, li2_with_side, log_principal, CutSide, TWO_PI_I};

/// `x (x) y` in `C (x) C*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonPair {
    pub x: Complex64,
    pub y: Complex64,
}

/// `epsilon(a) = log(1 - a) (x) a + 2 pi i (x) exp(Li2(a) / 2 pi i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonElement {
    pub a: Complex64,
    pub pairs: Vec<EpsilonPair>,
    /// `Li2(a)` as used for the second slot.
    pub li2: Complex64,
}

fn build(a: Complex64, li: Complex64) -> Result<EpsilonElement> {
    let one = Complex64::new(1.0, 0.0);
    Ok(EpsilonElement {
        a,
        pairs: vec![
            EpsilonPair {
                x: log_principal(one - a)?,
                y: a,
            },
            EpsilonPair {
                x: TWO_PI_I,
                y: (li / TWO_PI_I).exp(),
            },
        ],
        li2: li,
    })
}

fn check(a: Complex64) -> Result<()> {
    if a == Complex64::new(0.0, 0.0) || a == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain(format!("epsilon needs a outside {{0, 1}}, got {a}")));
    }
    Ok(())
}

pub fn epsilon(a: Complex64) -> Result<EpsilonElement> {
    check(a)?;
    build(a, li2(a)?)
}

/// As [`epsilon`], taking `Li2` from the given side of its cut for real
/// `a > 1`.
pub fn epsilon_with_side(a: Complex64, side: CutSide) -> Result<EpsilonElement> {
    check(a)?;
    build(a, li2_with_side(a, side)?)
}

impl EpsilonElement {
    /// `sum x log(y)` with the principal logarithm in the second slot.
    pub fn contraction(&self) -> Result<Complex64> {
        self.pairs
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, p| Ok(acc + p.x * log_principal(p.y)?))
    }

    /// `log(1 - a) log(a) + Li2(a)`.
    pub fn reference_value(&self) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        Ok(log_principal(one - self.a)? * log_principal(self.a)? + self.li2)
    }

    /// `(contraction - reference) / (2 pi i)^2`, split into its nearest
    /// integer and the distance from it.
    pub fn lattice_offset(&self) -> Result<(i64, f64)> {
        let k = (self.contraction()? - self.reference_value()?) / (TWO_PI_I * TWO_PI_I);
        let n = k.re.round();
        Ok((n as i64, (k - n).norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half() {
        let e = epsilon(Complex64::new(0.5, 0.0)).unwrap();
        assert_eq!(e.pairs.len(), 2);
        assert!((e.pairs[0].x.re - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(e.pairs[1].x, TWO_PI_I);
        let (k, resid) = e.lattice_offset().unwrap();
        assert_eq!(k, 0);
        assert!(resid < 1e-12);
    }

    #[test]
    fn large_imaginary_li2_wraps() {
        // Li2 with |Im| > pi^2 leaves the principal strip of the second slot
        let e = epsilon(Complex64::new(-40.0, 35.0)).unwrap();
        let (_, resid) = e.lattice_offset().unwrap();
        assert!(resid < 1e-10);
    }

    #[test]
    fn cut_and_domain() {
        assert!(epsilon(Complex64::new(1.0, 0.0)).is_err());
        assert!(epsilon(Complex64::new(0.0, 0.0)).is_err());
        assert!(matches!(epsilon(Complex64::new(2.0, 0.0)), Err(Error::AmbiguousBranch { .. })));
        let up = epsilon_with_side(Complex64::new(2.0, 0.0), CutSide::Upper).unwrap();
        let (_, resid) = up.lattice_offset().unwrap();
        assert!(resid < 1e-12);
    }

    #[test]
    fn conjugation() {
        let a = Complex64::new(0.3, 0.7);
        let e = epsilon(a).unwrap();
        let f = epsilon(a.conj()).unwrap();
        assert!((e.pairs[0].x.conj() - f.pairs[0].x).norm() < 1e-14);
        assert!((e.li2.conj() - f.li2).norm() < 1e-14);
    }
}
