mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use steinberg_lab::cli::parse_complex;
use steinberg_lab::hodge::{deligne_image, ns_group, ProductTorus};
use steinberg_lab::cycles::steinberg_cycle;
use steinberg_lab::intlin::{self, smith_normal_form};
use steinberg_lab::special::{bloch_wigner, li2, PrecisionContext};
use steinberg_lab::tate::{reduce_to_annulus, TateParameter};
use steinberg_lab::theta::{nodal_section, tate_theta};

fn modulus() -> impl Strategy<Value = f64> {
    0.05f64..0.85
}

fn angle() -> impl Strategy<Value = f64> {
    -3.14f64..3.14
}

fn curve() -> impl Strategy<Value = TateParameter> {
    (modulus(), angle()).prop_map(|(r, a)| TateParameter::new(Complex64::from_polar(r, a)).unwrap())
}

fn unit_annulus() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, angle()).prop_map(|(l, a)| Complex64::from_polar(l.exp(), a))
}

proptest! {
    #[test]
    fn reduction_lands_in_annulus_and_is_idempotent(q in curve(), w in unit_annulus()) {
        let r = reduce_to_annulus(w, q.q());
        prop_assert!(r.norm() <= 1.0 + 1e-12 && r.norm() > q.q().norm() * (1.0 - 1e-12));
        prop_assert!((reduce_to_annulus(r, q.q()) - r).norm() <= 1e-12);
        prop_assert!(distance_to_q_powers(w / r, q.q()) < 1e-9);
    }

    #[test]
    fn group_law_is_abelian(q in curve(), a in unit_annulus(), b in unit_annulus(), c in unit_annulus()) {
        let (pa, pb, pc) = (q.point(a).unwrap(), q.point(b).unwrap(), q.point(c).unwrap());
        let tol = 1e-9;
        prop_assert!(pa.add(&pb).unwrap().approx_eq(&pb.add(&pa).unwrap(), tol));
        let left = pa.add(&pb).unwrap().add(&pc).unwrap();
        let right = pa.add(&pb.add(&pc).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, tol));
        prop_assert!(pa.add(&pa.negate()).unwrap().is_identity(tol));
        prop_assert!(pa.mul_int(3).approx_eq(&pa.add(&pa).unwrap().add(&pa).unwrap(), tol));
    }

    #[test]
    fn theta_quasi_periodicity(q in curve(), w in unit_annulus()) {
        let ctx = PrecisionContext::default();
        prop_assume!(distance_to_q_powers(w, q.q()) > 1e-3);
        let t = tate_theta(w, q, &ctx).unwrap();
        let tq = tate_theta(q.q() * w, q, &ctx).unwrap();
        // theta(q w) = -theta(w) / w
        prop_assert!((tq + t / w).norm() <= 1e-9 * (t / w).norm().max(1e-300));
        // theta(1/w) = -theta(w) / w
        let ti = tate_theta(Complex64::new(1.0, 0.0) / w, q, &ctx).unwrap();
        prop_assert!((ti + t / w).norm() <= 1e-9 * (t / w).norm().max(1e-300));
    }

    #[test]
    fn steinberg_cycles_are_degree_zero_and_albanese_trivial(
        q in curve(), nodal in any::<bool>(), u in unit_annulus(), v in unit_annulus()
    ) {
        let q2 = if nodal { TateParameter::nodal() } else { TateParameter::new(q.q() * 0.7).unwrap() };
        let z = steinberg_cycle(q, q2, u, v).unwrap();
        prop_assert_eq!(z.degree(), 0);
        prop_assert!(z.in_f2(1e-10));
        prop_assert!(z.add(&z.scale(-1)).unwrap().is_empty());
    }

    #[test]
    fn nodal_section_gluing(num in -10_000i64..10_000, den in 1i64..10_000) {
        let u = BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assume!(u != BigRational::from_integer(0.into()) && u != BigRational::from_integer(1.into()));
        let s = nodal_section(u.clone()).unwrap();
        prop_assert_eq!(s.gluing_ratio, u);
    }

    #[test]
    fn smith_form_factorises(entries in prop::collection::vec(-20i64..20, 12)) {
        let a: Vec<_> = entries.chunks(4).map(intlin::ints).collect();
        let s = smith_normal_form(&a, 4);
        let uav = intlin::mat_mul(&intlin::mat_mul(&s.u, &a, 4), &s.v, 4);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { s.diagonal.get(i).cloned().unwrap_or_default() } else { BigInt::from(0) };
                prop_assert_eq!(x, &want);
            }
        }
        for w in s.diagonal.windows(2) {
            if w[1] != BigInt::from(0) {
                prop_assert_eq!(&w[1] % &w[0], BigInt::from(0));
            }
        }
    }

    #[test]
    fn li2_reflection(z in unit_annulus()) {
        prop_assume!((z - 1.0).norm() > 1e-2 && !(z.im.abs() < 1e-9 && z.re > 1.0));
        let one = Complex64::new(1.0, 0.0);
        let lhs = li2(z).unwrap() + li2(one - z).unwrap();
        let rhs = std::f64::consts::PI.powi(2) / 6.0 - z.ln() * (one - z).ln();
        prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn bloch_wigner_symmetries(z in unit_annulus()) {
        prop_assume!((z - 1.0).norm() > 1e-3);
        let d = bloch_wigner(z).unwrap();
        let one = Complex64::new(1.0, 0.0);
        prop_assert!((bloch_wigner(one / z).unwrap() + d).abs() < 1e-10);
        prop_assert!((bloch_wigner(one - z).unwrap() + d).abs() < 1e-10);
        prop_assert!((bloch_wigner(z.conj()).unwrap() + d).abs() < 1e-10);
    }

    #[test]
    fn complex_literals_round_trip(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let text = format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs());
        prop_assert_eq!(parse_complex(&text).unwrap(), Complex64::new(re, im));
        let exp = format!("{re:e}{}{:e}i", if im < 0.0 { "-" } else { "+" }, im.abs());
        prop_assert_eq!(parse_complex(&exp).unwrap(), Complex64::new(re, im));
    }

    #[test]
    fn deligne_image_is_additive(v1 in unit_annulus(), v2 in unit_annulus(), pick in 0usize..3) {
        let torus = ProductTorus::new(Complex64::new(0.3, 1.7), Complex64::new(0.3, 1.7)).unwrap();
        let ns = ns_group(&torus).unwrap();
        let cls = [ns.zero_times_e(), ns.diagonal(), ns.e_times_zero()][pick].clone().unwrap();
        let (a, b, ab) = (
            deligne_image(&cls, v1).unwrap(),
            deligne_image(&cls, v2).unwrap(),
            deligne_image(&cls, v1 * v2).unwrap(),
        );
        for k in 0..6 {
            let d = ab.lattice_frac[k] - a.lattice_frac[k] - b.lattice_frac[k];
            prop_assert!((d - d.round()).abs() < 1e-9);
        }
        for k in 0..5 {
            prop_assert!((ab.residual[k] - a.residual[k] - b.residual[k]).norm() < 1e-8);
        }
    }
}
