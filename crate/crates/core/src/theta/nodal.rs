use num_traits::Num;
use serde::Serialize;

use crate::error::{Error, Result};

/// A ratio of polynomials, coefficients listed from the constant term up.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalFunction<T> {
    pub numerator: Vec<T>,
    pub denominator: Vec<T>,
}

fn horner<T: Clone + Num>(coeffs: &[T], x: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

fn leading<T: Clone + Num>(coeffs: &[T]) -> Option<(usize, T)> {
    coeffs
        .iter()
        .enumerate()
        .rev()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
}

impl<T: Clone + Num> RationalFunction<T> {
    /// `None` at a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = horner(&self.denominator, x);
        if d.is_zero() {
            return None;
        }
        Some(horner(&self.numerator, x) / d)
    }

    /// Value at the point at infinity of `P^1`; `None` at a pole.
    pub fn value_at_infinity(&self) -> Option<T> {
        let (dn, ln) = leading(&self.numerator).unwrap_or((0, T::zero()));
        let (dd, ld) = leading(&self.denominator)?;
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Some(T::zero()),
            std::cmp::Ordering::Equal => Some(ln / ld),
            std::cmp::Ordering::Greater => None,
        }
    }
}

/// The section of `L_u` over the nodal fibre: the normalisation `P^1` of
/// `E_0` with `0` and `infinity` glued, and the function
/// `f = (X - u)/(X - 1)`. Its divisor is `(u) - (1)` and the gluing ratio
/// `f(0)/f(infinity)` is the monodromy `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodalSection<T> {
    pub u: T,
    pub function: RationalFunction<T>,
    pub numerator_root: T,
    pub denominator_root: T,
    /// Points of `P^1` with multiplicities.
    pub divisor: Vec<(T, i64)>,
    pub gluing_ratio: T,
}

pub fn nodal_section<T: Clone + Num>(u: T) -> Result<NodalSection<T>> {
    if u.is_zero() || u.is_one() {
        return Err(Error::DegenerateDivisor(
            "nodal section needs u outside {0, 1}: the divisor would meet the node or cancel".into(),
        ));
    }
    let one = T::one();
    let function = RationalFunction {
        numerator: vec![T::zero() - u.clone(), one.clone()],
        denominator: vec![T::zero() - one.clone(), one.clone()],
    };
    let at_zero = function
        .eval(&T::zero())
        .ok_or_else(|| Error::DegenerateDivisor("pole at 0".into()))?;
    let at_inf = function
        .value_at_infinity()
        .ok_or_else(|| Error::DegenerateDivisor("pole at infinity".into()))?;
    Ok(NodalSection {
        gluing_ratio: at_zero / at_inf,
        numerator_root: u.clone(),
        denominator_root: one.clone(),
        divisor: vec![(u.clone(), 1), (one, -1)],
        function,
        u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_complex::Complex;
    use num_rational::BigRational;

    #[test]
    fn gluing_ratio_is_u() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let s = nodal_section(r(3, 1)).unwrap();
        assert_eq!(s.divisor, vec![(r(3, 1), 1), (r(1, 1), -1)]);
        assert_eq!(s.gluing_ratio, r(3, 1));
        let u = Complex::new(r(-2, 7), r(5, 3));
        assert_eq!(nodal_section(u.clone()).unwrap().gluing_ratio, u);
        assert!(nodal_section(r(1, 1)).is_err());
        assert!(nodal_section(r(0, 1)).is_err());
    }

    #[test]
    fn float_section() {
        let s = nodal_section(3.0f64).unwrap();
        assert_eq!(s.function.eval(&1.0), None);
        assert_eq!(s.function.eval(&3.0), Some(0.0));
        assert_eq!(s.function.value_at_infinity(), Some(1.0));
    }
}
