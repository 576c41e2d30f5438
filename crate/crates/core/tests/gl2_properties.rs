use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use quandle_lab::gl2::{
    classify, conj_op, conjugator_space, residual, to_exact, two_step_path, witness_in_class, witness_residual, Arithmetic,
    ClassLabel, Gq, Mat2, WitnessStatus, CLASS_TOL, DEFAULT_TOL,
};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0xC0FFEE), failure_persistence: None, ..Config::default() }
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im)).prop_filter("away from zero", |z| z.norm() > 0.2)
}

fn invertible() -> impl Strategy<Value = Mat2> {
    (complex(), complex(), complex(), complex())
        .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
        .prop_filter("well conditioned", |m| m.det().norm() > 0.2)
}

fn gaussian_integer(bound: i32) -> impl Strategy<Value = Complex64> {
    (-bound..=bound, -bound..=bound).prop_map(|(re, im)| Complex64::new(re.into(), im.into()))
}

/// Distinct nonzero Gaussian-integer eigenvalue pair.
fn integer_pair() -> impl Strategy<Value = (Complex64, Complex64)> {
    (gaussian_integer(3), gaussian_integer(3)).prop_filter("distinct and nonzero", |(x, y)| !x.is_zero() && !y.is_zero() && x != y)
}

/// Product of two elementary matrices with Gaussian-integer entries; its inverse is integral too.
fn unimodular() -> impl Strategy<Value = Mat2> {
    (gaussian_integer(2), gaussian_integer(2)).prop_map(|(k, m)| {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::zero();
        let p = Mat2::new(one, k, zero, one);
        let q = Mat2::new(one, zero, m, one);
        p * q
    })
}

fn diag_class() -> impl Strategy<Value = ClassLabel> {
    (complex(), complex())
        .prop_filter("separated eigenvalues", |(x, y)| (x - y).norm() > 0.3)
        .prop_map(|(x, y)| ClassLabel::diag_pair(x, y).unwrap())
}

fn exact(z: Complex64) -> Gq {
    to_exact(z).expect("Gaussian-rational entry")
}

fn exact_mat(m: &Mat2) -> [Gq; 4] {
    m.entries().map(exact)
}

fn det(m: &[Gq; 4]) -> Gq {
    m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone()
}

fn tr(m: &[Gq; 4]) -> Gq {
    m[0].clone() + m[3].clone()
}

/// Whether some `X` in the span of `basis` has trace `s` and determinant `p`, decided exactly.
fn span_meets(basis: &[[Gq; 4]], s: &Gq, p: &Gq) -> bool {
    match basis {
        [] => false,
        [b] => {
            let (t, d) = (tr(b), det(b));
            if t.is_zero() {
                s.is_zero() && !d.is_zero()
            } else {
                s.clone() * s.clone() * d == p.clone() * t.clone() * t
            }
        }
        [b1, b2] => {
            let (t1, t2) = (tr(b1), tr(b2));
            let (d1, d2) = (det(b1), det(b2));
            let sum: [Gq; 4] = std::array::from_fn(|i| b1[i].clone() + b2[i].clone());
            let m = det(&sum) - d1.clone() - d2.clone();
            if t1.is_zero() && t2.is_zero() {
                return s.is_zero() && !(d1.is_zero() && d2.is_zero() && m.is_zero());
            }
            // Solve the trace equation for one coordinate, leaving det as a quadratic in the other.
            let (t1, t2, d1, d2) = if t2.is_zero() { (t2, t1, d2, d1) } else { (t1, t2, d1, d2) };
            // β = (s − α t1)/t2 substituted into α² d1 + αβ m + β² d2.
            let u = s.clone() / t2.clone();
            let v = -(t1 / t2);
            let c2 = d1 + m.clone() * v.clone() + d2.clone() * v.clone() * v.clone();
            let c1 = m * u.clone() + d2.clone() * u.clone() * v * exact(Complex64::new(2.0, 0.0));
            let c0 = d2 * u.clone() * u;
            !(c2.is_zero() && c1.is_zero() && c0 != *p)
        }
        _ => unreachable!("distinct eigenvalues give at most a two-dimensional space"),
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn dual_operation_inverts(a in invertible(), b in invertible(), n in -3i64..=3) {
        let back = conj_op(&conj_op(&a, &b, n).unwrap(), &b, -n).unwrap();
        prop_assert!(residual(&back, &a) <= 1e-9, "{}", residual(&back, &a));
    }

    #[test]
    fn classify_scales(a in invertible(), k in complex()) {
        let base = classify(&a, DEFAULT_TOL).unwrap();
        let scaled = classify(&a.scale(k), DEFAULT_TOL).unwrap();
        prop_assert!(scaled.same_class(&base.scaled(k), CLASS_TOL), "{scaled} vs {base}");
    }

    #[test]
    fn self_distributive(a in invertible(), b in invertible(), c in invertible()) {
        let op = |x: &Mat2, y: &Mat2| conj_op(x, y, 1).unwrap();
        let lhs = op(&op(&a, &b), &c);
        let rhs = op(&op(&a, &c), &op(&b, &c));
        prop_assert!(residual(&lhs, &rhs) <= 1e-9, "{}", residual(&lhs, &rhs));
    }

    #[test]
    fn conjugator_basis_solves_the_system(cls in diag_class(), p in invertible(), q in invertible()) {
        let a = conj_op(&cls.base_point(), &p, 1).unwrap();
        let b = conj_op(&cls.base_point(), &q, 1).unwrap();
        let unit = Complex64::from(1.0 / a.max_norm().max(b.max_norm()));
        let (a, b) = (a.scale(unit), b.scale(unit));
        let space = conjugator_space(&a, &b, DEFAULT_TOL, Arithmetic::Float);
        prop_assert_eq!(space.dimension, 2);
        for x in &space.basis {
            let r = (a * *x - *x * b).max_norm();
            prop_assert!(r <= 1e-10, "{r}");
        }
    }

    #[test]
    fn witnesses_verify_and_refutations_are_exact(
        (l1, l2) in integer_pair(),
        (m1, m2) in integer_pair(),
        p in unimodular(),
        q in unimodular(),
        swap in any::<bool>(),
    ) {
        let base = Mat2::diag(l1, l2);
        let a = conj_op(&base, &p, 1).unwrap();
        // Swapping the eigenlines forces every intertwiner to have trace zero.
        let q = if swap { Mat2::real(0.0, 1.0, 1.0, 0.0) * p } else { q };
        let target = conj_op(&base, &q, 1).unwrap();
        let cls = ClassLabel::diag_pair(m1, m2).unwrap();
        let report = witness_in_class(&a, &target, &cls, DEFAULT_TOL).unwrap();

        let space = conjugator_space(&a, &target, DEFAULT_TOL, Arithmetic::Exact);
        prop_assert!(space.exact);
        let basis: Vec<[Gq; 4]> = space.basis.iter().map(exact_mat).collect();
        let (s, d) = cls.trace_det();
        let exists = span_meets(&basis, &exact(s), &exact(d));

        match report.status {
            WitnessStatus::Witness => {
                prop_assert!(exists);
                let x = report.matrices[0];
                prop_assert!(witness_residual(&a, &target, &x, &cls, DEFAULT_TOL) <= DEFAULT_TOL * 10.0);
            }
            WitnessStatus::NoWitness | WitnessStatus::Refuted => {
                prop_assert!(!exists, "{:?}", report.refutation);
                prop_assert!(report.refutation.as_deref().is_some_and(|r| !r.is_empty()));
                prop_assert!(report.exact);
            }
            WitnessStatus::Inconclusive => prop_assert!(false, "inconclusive on exact input"),
        }
    }

    #[test]
    fn path_lengths_survive_scaling(cls in diag_class(), p in invertible(), k in complex()) {
        let a = conj_op(&cls.base_point(), &p, 1).unwrap();
        let before = two_step_path(&cls, &a, DEFAULT_TOL).unwrap();
        let after = two_step_path(&cls.scaled(k), &a.scale(k), DEFAULT_TOL).unwrap();
        prop_assert_eq!(before.status, after.status);
        prop_assert_eq!(before.matrices.len(), after.matrices.len());
    }
}
