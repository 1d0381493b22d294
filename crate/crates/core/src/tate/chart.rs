use num_complex::{Complex, Complex64};
use num_traits::{Num, One, Zero};

use super::{point_from_parameter, TateParameter, TatePoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> i8 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

impl TryFrom<i8> for Direction {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Direction::Forward),
            -1 => Ok(Direction::Backward),
            _ => Err(Error::Domain(format!("direction must be +1 or -1, got {v}"))),
        }
    }
}

/// A point `(x, y)` of the chart `U_i = C^2` of the total space. The scalar
/// type is generic so that the gluing identities can be checked in exact
/// arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint<T = f64> {
    pub chart: i64,
    pub x: Complex<T>,
    pub y: Complex<T>,
}

impl<T: Clone + Num> ChartPoint<T> {
    pub fn new(chart: i64, x: Complex<T>, y: Complex<T>) -> Self {
        ChartPoint { chart, x, y }
    }

    /// The zero section `z -> (z, 1)` in `U_0`.
    pub fn section(z: Complex<T>) -> Self {
        ChartPoint {
            chart: 0,
            x: z,
            y: Complex::<T>::one(),
        }
    }

    /// The projection to the disk, `x * y`; invariant under gluing.
    pub fn fiber_coordinate(&self) -> Complex<T> {
        self.x.clone() * self.y.clone()
    }

    /// Gluing `U_i \ {Y=0} -> U_{i+1} \ {X=0}`, `(x, y) -> (1/y, x y^2)`,
    /// and its inverse `(x, y) -> (x^2 y, 1/x)`.
    pub fn transition(&self, direction: Direction) -> Result<Self> {
        match direction {
            Direction::Forward => {
                if self.y.is_zero() {
                    return Err(Error::SingularTransition {
                        chart: self.chart,
                        direction: 1,
                    });
                }
                let y = self.y.clone();
                Ok(ChartPoint {
                    chart: self.chart + 1,
                    x: Complex::<T>::one() / y.clone(),
                    y: self.x.clone() * y.clone() * y,
                })
            }
            Direction::Backward => {
                if self.x.is_zero() {
                    return Err(Error::SingularTransition {
                        chart: self.chart,
                        direction: -1,
                    });
                }
                let x = self.x.clone();
                Ok(ChartPoint {
                    chart: self.chart - 1,
                    x: x.clone() * x.clone() * self.y.clone(),
                    y: Complex::<T>::one() / x,
                })
            }
        }
    }

    /// The deck transformation `phi`: same coordinates, one chart down.
    pub fn shift_phi(&self) -> Self {
        ChartPoint {
            chart: self.chart - 1,
            x: self.x.clone(),
            y: self.y.clone(),
        }
    }

    pub fn shift_phi_n(&self, n: i64) -> Self {
        ChartPoint {
            chart: self.chart - n,
            x: self.x.clone(),
            y: self.y.clone(),
        }
    }
}

impl ChartPoint<f64> {
    /// The point of the fibre `E_q`, `q = x y`, this chart point maps to.
    ///
    /// Over `q != 0` the global fibre coordinate is `y q^{-i}` on `U_i`. Over
    /// `q = 0`, `(0, a)` in `U_i` is the point `a` of the component `C_i` and
    /// `(x, 0)` is the point `1/x` of `C_{i-1}`; all components become the
    /// same nodal curve, and `(0, 0)` is the node.
    pub fn to_tate_point(&self) -> Result<TatePoint> {
        let q = self.fiber_coordinate();
        let curve = TateParameter::new(q)?;
        if curve.is_nodal() {
            let zero = Complex64::new(0.0, 0.0);
            return match (self.x == zero, self.y == zero) {
                (true, true) => Err(Error::NodeNotRepresentable),
                (true, false) => point_from_parameter(curve, self.y),
                (false, true) => point_from_parameter(curve, self.x.inv()),
                (false, false) => unreachable!("x y = 0 with both factors nonzero"),
            };
        }
        let shift = i32::try_from(self.chart)
            .map_err(|_| Error::Domain(format!("chart index {} out of range", self.chart)))?;
        point_from_parameter(curve, self.y * q.powi(-shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transition_example() {
        let p = ChartPoint::new(0, c(2.0, 0.0), c(3.0, 0.0));
        let t = p.transition(Direction::Forward).unwrap();
        assert_eq!(t.chart, 1);
        assert!((t.x - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert_eq!(t.y, c(18.0, 0.0));
        assert!((t.fiber_coordinate() - c(6.0, 0.0)).norm() < 1e-14);
        let back = t.transition(Direction::Backward).unwrap();
        assert_eq!(back.chart, 0);
        assert!((back.x - p.x).norm() < 1e-14 && (back.y - p.y).norm() < 1e-14);
    }

    #[test]
    fn transition_domain_errors() {
        let p = ChartPoint::new(3, c(2.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            p.transition(Direction::Forward),
            Err(Error::SingularTransition { chart: 3, direction: 1 })
        ));
        let p = ChartPoint::new(3, c(0.0, 0.0), c(2.0, 0.0));
        assert!(p.transition(Direction::Backward).is_err());
        assert!(Direction::try_from(0).is_err());
    }

    #[test]
    fn exact_gluing_identities() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let p = ChartPoint::new(
            -2,
            Complex::new(r(3, 7), r(-5, 11)),
            Complex::new(r(2, 3), r(1, 9)),
        );
        let f = p.transition(Direction::Forward).unwrap();
        assert_eq!(f.fiber_coordinate(), p.fiber_coordinate());
        assert_eq!(f.transition(Direction::Backward).unwrap(), p);
        let b = p.transition(Direction::Backward).unwrap();
        assert_eq!(b.fiber_coordinate(), p.fiber_coordinate());
        assert_eq!(b.transition(Direction::Forward).unwrap(), p);
    }

    #[test]
    fn section_and_phi() {
        let z = c(0.3, 0.1);
        let s = ChartPoint::section(z);
        assert_eq!(s.fiber_coordinate(), z);
        assert!(s.to_tate_point().unwrap().is_identity(1e-15));
        let p = ChartPoint::new(2, c(0.5, 0.0), c(0.4, 0.0));
        assert_eq!(p.shift_phi().chart, 1);
        assert_eq!(p.shift_phi_n(0), p);
    }

    #[test]
    fn phi_acts_by_q_on_fibres() {
        // fibre over q = 0.2
        let p = ChartPoint::new(1, c(0.5, 0.1), c(0.2, 0.0) / c(0.5, 0.1));
        let q = p.fiber_coordinate();
        let before = p.to_tate_point().unwrap();
        let after = p.shift_phi().to_tate_point().unwrap();
        let moved = TateParameter::new(q).unwrap().point(before.w() * q).unwrap();
        assert!(after.approx_eq(&moved, 1e-12));
        // gluing does not move the underlying point
        let glued = p.transition(Direction::Forward).unwrap().to_tate_point().unwrap();
        assert!(glued.approx_eq(&before, 1e-12));
    }

    #[test]
    fn nodal_fibre_points() {
        let p = ChartPoint::new(4, c(0.0, 0.0), c(3.0, 0.0));
        assert_eq!(p.to_tate_point().unwrap().w(), c(3.0, 0.0));
        let glued = p.transition(Direction::Forward).unwrap();
        assert_eq!(glued.to_tate_point().unwrap().w(), c(3.0, 0.0));
        let node = ChartPoint::new(0, c(0.0, 0.0), c(0.0, 0.0));
        assert!(matches!(node.to_tate_point(), Err(Error::NodeNotRepresentable)));
    }
}
