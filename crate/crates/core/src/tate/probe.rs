use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::TateParameter;
use crate::error::{Error, Result};

/// A solution `(n, m, p)` of `1 - t^m u = t'^p (1 - t^n u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProbeSolution {
    pub n: i64,
    pub m: i64,
    pub p: i64,
}

/// Exhaustive search over `|n|, |m|, |p| <= bound`, `n != m`, for integer
/// triples with `1 - t^m u = t'^p (1 - t^n u)` up to a relative residual
/// `tol`. Over generic `(t, t', u)` the list is empty; a solution pins
/// `u = (1 - t'^p) / (t^m - t'^p t^n)`. Solutions come in mirror pairs:
/// `(n, m, p)` solves the equation iff `(m, n, -p)` does.
pub fn probe_algebraicity(
    t: TateParameter,
    t2: TateParameter,
    u: Complex64,
    bound: u32,
    tol: f64,
) -> Result<Vec<ProbeSolution>> {
    if t.is_nodal() || t2.is_nodal() {
        return Err(Error::Domain("probe needs 0 < |t|, |t'| < 1".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    if u == Complex64::new(0.0, 0.0) || u == one {
        return Err(Error::Domain("probe needs u outside {0, 1}".into()));
    }
    let b = bound as i32;
    let pow_table = |base: Complex64| -> Vec<Complex64> { (-b..=b).map(|k| base.powi(k)).collect() };
    let tp = pow_table(t.q());
    let t2p = pow_table(t2.q());
    let idx = |k: i32| (k + b) as usize;

    let mut out = Vec::new();
    for m in -b..=b {
        let lhs = one - tp[idx(m)] * u;
        for n in -b..=b {
            if n == m {
                continue;
            }
            let inner = one - tp[idx(n)] * u;
            for p in -b..=b {
                let rhs = t2p[idx(p)] * inner;
                let scale = 1.0f64.max(lhs.norm()).max(rhs.norm());
                if (lhs - rhs).norm() <= tol * scale {
                    out.push(ProbeSolution {
                        n: n as i64,
                        m: m as i64,
                        p: p as i64,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generic_input_has_no_solution() {
        let t = TateParameter::new(c(0.31, 0.12)).unwrap();
        let t2 = TateParameter::new(c(-0.22, 0.4)).unwrap();
        let sols = probe_algebraicity(t, t2, c(0.37, -1.3), 6, 1e-10).unwrap();
        assert!(sols.is_empty(), "{sols:?}");
    }

    #[test]
    fn planted_solution_is_recovered() {
        let t = TateParameter::new(c(0.31, 0.12)).unwrap();
        let t2 = TateParameter::new(c(-0.22, 0.4)).unwrap();
        let (n, m, p) = (2, -1, 3);
        let t2p = t2.q().powi(p);
        let u = (c(1.0, 0.0) - t2p) / (t.q().powi(m) - t2p * t.q().powi(n));
        let sols = probe_algebraicity(t, t2, u, 6, 1e-10).unwrap();
        assert_eq!(
            sols,
            vec![
                ProbeSolution { n: 2, m: -1, p: 3 },
                ProbeSolution { n: -1, m: 2, p: -3 },
            ]
        );
    }

    #[test]
    fn degenerate_family_is_never_reported() {
        // with n == m, p == 0 every u solves the equation
        let t = TateParameter::new(c(0.5, 0.0)).unwrap();
        let sols = probe_algebraicity(t, t, c(0.3, 0.3), 3, 1e-10).unwrap();
        assert!(sols.iter().all(|s| s.n != s.m));
        assert!(!sols.contains(&ProbeSolution { n: 1, m: 1, p: 0 }));
    }

    #[test]
    fn probe_domain() {
        let t = TateParameter::new(c(0.5, 0.0)).unwrap();
        assert!(probe_algebraicity(t, TateParameter::nodal(), c(0.3, 0.0), 2, 1e-10).is_err());
        assert!(probe_algebraicity(t, t, c(1.0, 0.0), 2, 1e-10).is_err());
    }
}
