//! Numeric and exact checks of the constructive statements about
//! conjugation quandles of 2×2 matrices.

use num_complex::Complex64;
use serde::Serialize;

use super::class::{classify, quadratic_roots, ClassLabel};
use super::exact::{is_gaussian_rational, to_exact, Gq};
use super::mat::{conj_op, pgl_normalize, residual, root_of_unity, serialize_complex, Mat2, ONE, ZERO};
use super::sample::{random_complex, random_conjugator, random_member, sample_rng};
use super::space::{conjugator_space, Arithmetic};
use super::witness::{WitnessReport, WitnessStatus};
use super::{GlError, CLASS_TOL};

fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub a: Mat2,
    pub b: Mat2,
    pub image: Mat2,
    #[serde(serialize_with = "serialize_complex")]
    pub alpha: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    pub alpha_image: Complex64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubquandleReport {
    pub n: u32,
    /// Whether `(λ1/λ2)ⁿ = 1`, i.e. the class is an `n`-quandle.
    pub predicted: bool,
    pub samples: usize,
    /// Samples where `A ∗ⁿ B = A` held exactly when predicted.
    pub agreements: usize,
    /// Largest deviation when predicted, smallest otherwise.
    pub worst_deviation: f64,
    pub counterexample: Option<Counterexample>,
    pub passed: bool,
}

/// Tests `A ∗ⁿ B = A` on sampled pairs of the class against the root-of-unity criterion.
pub fn subquandle_order_test(cls: &ClassLabel, n: u32, samples: usize, seed: u64, tol: f64) -> Result<SubquandleReport, GlError> {
    if n == 0 {
        return Err(GlError::InvalidParameter("n must be positive".into()));
    }
    let (l1, l2) = match *cls {
        ClassLabel::Scalar { .. } => {
            return Ok(SubquandleReport { n, predicted: true, samples, agreements: samples, worst_deviation: 0.0, counterexample: None, passed: true })
        }
        ClassLabel::Jordan { .. } => return Err(GlError::Precondition("the criterion concerns diagonalizable classes".into())),
        ClassLabel::DiagPair { lambda1, lambda2 } => (lambda1, lambda2),
    };
    let ratio_power = (l1 / l2).powi(n as i32);
    let predicted = (ratio_power - ONE).norm() <= tol;
    let ni = i64::from(n);
    let mut agreements = 0;
    let mut worst = if predicted { 0.0 } else { f64::INFINITY };
    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, i);
        let a = random_member(cls, &mut rng);
        let b = random_member(cls, &mut rng);
        let dev = residual(&conj_op(&a, &b, ni)?, &a);
        if (dev <= tol) == predicted {
            agreements += 1;
        }
        worst = if predicted { worst.max(dev) } else { worst.min(dev) };
    }
    let counterexample = if predicted {
        None
    } else {
        // the upper-right entry of [[λ1, α], [0, λ2]] picks up (λ2/λ1)ⁿ under ∗ⁿ D(λ1, λ2)
        let a = Mat2::new(l1, ONE, ZERO, l2);
        let b = Mat2::diag(l1, l2);
        let image = conj_op(&a, &b, ni)?;
        Some(Counterexample { a, b, image, alpha: a.b, alpha_image: image.b, deviation: residual(&image, &a) })
    };
    let passed = agreements == samples && counterexample.as_ref().is_none_or(|c| c.deviation > tol);
    Ok(SubquandleReport { n, predicted, samples, agreements, worst_deviation: if samples == 0 { 0.0 } else { worst }, counterexample, passed })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanProbe {
    #[serde(serialize_with = "serialize_complex")]
    pub lambda: Complex64,
    pub n: u32,
    pub m: u32,
    pub result: Mat2,
    pub closed_form: Mat2,
    pub residual: f64,
    pub differs_from_base: bool,
}

impl JordanProbe {
    pub fn passed(&self, tol: f64) -> bool {
        self.residual <= tol && self.differs_from_base
    }
}

/// Applies `∗ₙ [[λ,0],[1,λ]]` to the Jordan base point `m` times and compares with the closed form.
pub fn jordan_type_probe(lambda: Complex64, n: u32, m: u32, tol: f64) -> Result<JordanProbe, GlError> {
    if m == 0 {
        return Err(GlError::Precondition("m must be positive".into()));
    }
    if n == 0 {
        return Err(GlError::InvalidParameter("n must be positive".into()));
    }
    if lambda.norm() == 0.0 {
        return Err(GlError::InvalidParameter("eigenvalue must be nonzero".into()));
    }
    let base = Mat2::jordan(lambda);
    let p = Mat2::new(lambda, ZERO, ONE, lambda);
    let mut x = base;
    for _ in 0..m {
        x = conj_op(&x, &p, i64::from(n))?;
    }
    let t = Complex64::from(f64::from(n) * f64::from(m)) / lambda;
    let closed_form = Mat2::new(lambda + t, ONE, -(t * t), lambda - t);
    Ok(JordanProbe {
        lambda,
        n,
        m,
        result: x,
        closed_form,
        residual: residual(&x, &closed_form),
        differs_from_base: residual(&x, &base) > tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootCheck {
    pub k: u32,
    #[serde(serialize_with = "serialize_complex")]
    pub omega: Complex64,
    pub samples: usize,
    pub max_deviation: f64,
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PglCountReport {
    pub n: u32,
    /// Enumerated roots `ω` whose class `[D(1, ω)]` verified trivial under `∗ₙ`.
    pub count: usize,
    /// Number of distinct projective classes among them, since `[D(1, ω)] = [D(1, ω⁻¹)]`.
    pub distinct_classes: usize,
    pub roots: Vec<RootCheck>,
    pub control_ratio: f64,
    pub control_deviation: f64,
    pub control_failed: bool,
    pub passed: bool,
}

/// Enumerates the `n`-th roots of unity and samples `A ∗ₙ B = A` in PGL for each class `[D(1, ω)]`.
pub fn count_trivial_components_pgl(n: u32, samples: usize, seed: u64, tol: f64) -> Result<PglCountReport, GlError> {
    if n == 0 {
        return Err(GlError::InvalidParameter("n must be positive".into()));
    }
    let ni = i64::from(n);
    let projective_deviation = |cls: &ClassLabel, salt: u64| -> Result<f64, GlError> {
        let mut worst: f64 = 0.0;
        for i in 0..samples as u64 {
            let mut rng = sample_rng(seed.wrapping_add(salt), i);
            // representatives of a projective class may be rescaled freely
            let a = random_member(cls, &mut rng).scale(random_complex(&mut rng) + 0.5);
            let b = random_member(cls, &mut rng).scale(random_complex(&mut rng) + 0.5);
            let image = conj_op(&a, &b, ni)?;
            worst = worst.max(residual(&pgl_normalize(&image)?, &pgl_normalize(&a)?));
        }
        Ok(worst)
    };
    let mut roots = Vec::new();
    for k in 0..n {
        let omega = root_of_unity(i64::from(k), ni);
        let cls = if k == 0 { ClassLabel::scalar(ONE)? } else { ClassLabel::diag_pair(ONE, omega)? };
        let max_deviation = projective_deviation(&cls, 1_000 * u64::from(k + 1))?;
        roots.push(RootCheck { k, omega, samples, max_deviation, trivial: max_deviation <= tol });
    }
    let control_ratio = 2.0;
    let control_deviation = projective_deviation(&ClassLabel::diag_pair(ONE, Complex64::from(control_ratio))?, 999)?;
    let control_failed = control_deviation > 1e-3;
    let count = roots.iter().filter(|r| r.trivial).count();
    Ok(PglCountReport {
        n,
        count,
        distinct_classes: n as usize / 2 + 1,
        roots,
        control_ratio,
        control_deviation,
        control_failed,
        passed: count == n as usize && control_failed,
    })
}

pub const FORCES_EQUAL_SQUARES: &str = "forces λ₁² = λ₂²";
pub const FORCES_UPPER_UNIPOTENT: &str = "forces c = 0 and a = d";

fn r3_witness(lambda: Complex64, tol: f64) -> Result<WitnessReport, GlError> {
    let half = Complex64::from(0.5);
    let bc = Complex64::from(3f64.sqrt() / 2.0);
    let triple = [
        Mat2::diag(lambda, -lambda),
        Mat2::new(-half, bc, bc, half).scale(lambda),
        Mat2::new(-half, -bc, -bc, half).scale(lambda),
    ];
    // R₃: i ∗ j = 2j − i (mod 3)
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let product = conj_op(&triple[i], &triple[j], 1)?;
            worst = worst.max(residual(&product, &triple[(2 * j + 3 - i) % 3]));
        }
    }
    let mut report = WitnessReport::witness(triple.to_vec(), worst).with_values(&[("b", bc), ("c", bc), ("lambda", lambda)]);
    if worst > tol {
        report.status = WitnessStatus::Inconclusive;
        report.refutation = Some("triple does not close under conjugation".into());
    }
    Ok(report)
}

/// Exact when both eigenvalues are Gaussian rationals.
fn zero_test(values: [Complex64; 2], expr: impl Fn(Gq, Gq) -> Gq, float: impl Fn(Complex64, Complex64) -> Complex64, tol: f64) -> (bool, bool) {
    if is_gaussian_rational(&values) {
        let (x, y) = (to_exact(values[0]).unwrap(), to_exact(values[1]).unwrap());
        let v = expr(x, y);
        (v.re == num_rational::BigRational::from_integer(0.into()) && v.im == num_rational::BigRational::from_integer(0.into()), true)
    } else {
        let v = float(values[0], values[1]);
        (v.norm() <= tol * values[0].norm().max(values[1].norm()).powi(2).max(1.0), false)
    }
}

/// Builds the R₃ triple in `M_{λ,−λ}`, or refutes an R₃ subquandle through its forced equations.
pub fn r3_probe(cls: &ClassLabel, tol: f64) -> Result<WitnessReport, GlError> {
    match *cls {
        ClassLabel::Scalar { .. } => Err(GlError::Precondition("a scalar class has a single element".into())),
        ClassLabel::DiagPair { lambda1, lambda2 } if close(lambda1, -lambda2, CLASS_TOL) => r3_witness(lambda1, tol),
        ClassLabel::DiagPair { lambda1, lambda2 } => {
            let vals = [lambda1, lambda2];
            // bc ≠ 0: a λ2 + d λ1 equals both λ2² and λ1²
            let (squares_equal, exact) = zero_test(vals, |x, y| x.clone() * x - y.clone() * y, |x, y| x * x - y * y, tol);
            // bc = 0 leaves [[λ1, b], [0, λ2]] or [[λ1, 0], [c, λ2]], needing λ1 = 2λ2 (resp. λ2 = 2λ1) and λ1² − λ1λ2 + λ2² = 0
            let quad = |x: Gq, y: Gq| x.clone() * x.clone() - x * y.clone() + y.clone() * y;
            let quadf = |x: Complex64, y: Complex64| x * x - x * y + y * y;
            let (q_zero, _) = zero_test(vals, quad, quadf, tol);
            let two = Gq::new(num_rational::BigRational::from_integer(2.into()), num_rational::BigRational::from_integer(0.into()));
            let (upper, _) = zero_test(vals, |x, y| x - two.clone() * y, |x, y| x - y * 2.0, tol);
            let (lower, _) = zero_test(vals, |x, y| y - two.clone() * x, |x, y| y - x * 2.0, tol);
            let triangular = q_zero && (upper || lower);
            let diff = lambda1 * lambda1 - lambda2 * lambda2;
            Ok(if !squares_equal && !triangular {
                WitnessReport::refuted(FORCES_EQUAL_SQUARES, exact).with_values(&[("lambda1^2 - lambda2^2", diff)])
            } else {
                WitnessReport::inconclusive("forced equations are consistent")
            })
        }
        ClassLabel::Jordan { lambda } => {
            // with base J: (X ∗ J) ∗ J = X means X commutes with J², whose commutant is span(I, E12)
            let j2 = Mat2::jordan(lambda) * Mat2::jordan(lambda);
            let space = conjugator_space(&j2, &j2, tol, Arithmetic::Auto);
            let forced = space.basis.iter().all(|x| x.c.norm() <= tol && (x.a - x.d).norm() <= tol);
            // such X equals λI + bE12, which commutes with J, so the triple collapses
            let collapses = forced && {
                let x = Mat2::new(lambda, ONE, ZERO, lambda);
                residual(&conj_op(&x, &Mat2::jordan(lambda), 1)?, &x) <= tol
            };
            Ok(if collapses {
                WitnessReport::refuted(FORCES_UPPER_UNIPOTENT, space.exact).with_values(&[("dimension", Complex64::from(space.dimension as f64))])
            } else {
                WitnessReport::inconclusive("commutant of J² is larger than expected")
            })
        }
    }
}

/// Whether the closed-form construction applies without rescaling.
pub fn is_admissible_pair(l1: Complex64, l2: Complex64) -> bool {
    let margin = 1e-3;
    let far = |x: Complex64, y: Complex64| (x - y).norm() > margin * x.norm().max(y.norm()).max(1.0);
    far(l2, ONE) && far(l2, -ONE) && far(l1, l2 * l2) && far(l1, ONE) && far(l1, l2) && far(l1, -l2) && l1.norm() > margin && l2.norm() > margin
}

/// `A, B ∈ M_{λ1,λ2}` with `AB` diagonal, built from `f = 1`.
fn return_pair_formula(l1: Complex64, l2: Complex64) -> (Mat2, Mat2, [(&'static str, Complex64); 3]) {
    let s = l1 + l2;
    let one_plus = ONE + l2;
    let e = s * l2 / one_plus;
    let h = s / one_plus;
    let fg = -l2 * (-(s * s) + l1 * one_plus * one_plus) / (one_plus * one_plus);
    let (f, g) = (ONE, fg);
    let a = Mat2::new(e, -f * l2, -g / l2, h);
    let b = Mat2::new(e, f, g, h);
    (a, b, [("e", e), ("h", h), ("fg", fg)])
}

const SCALE_CANDIDATES: [f64; 6] = [2.0, 3.0, 5.0, 7.0, 0.5, 11.0];

/// Non-commuting `A, B ∈ M_{λ1,λ2}` with `D(λ1, λ2) ∗ A ∗ B = D(λ1, λ2)`, rescaling the excluded cases.
pub fn noncommuting_return_pair(l1: Complex64, l2: Complex64, tol: f64) -> Result<WitnessReport, GlError> {
    if l1.norm() == 0.0 || l2.norm() == 0.0 {
        return Err(GlError::InvalidParameter("eigenvalues must be nonzero".into()));
    }
    if close(l1, l2, CLASS_TOL) || close(l1, -l2, CLASS_TOL) {
        return Err(GlError::Precondition("needs λ₁ ≠ ±λ₂".into()));
    }
    let k = if is_admissible_pair(l1, l2) {
        ONE
    } else {
        SCALE_CANDIDATES
            .iter()
            .map(|&k| Complex64::from(k))
            .find(|&k| is_admissible_pair(k * l1, k * l2))
            .ok_or_else(|| GlError::Precondition("no admissible rescaling found".into()))?
    };
    let (a, b, values) = return_pair_formula(k * l1, k * l2);
    // the scaling isomorphism X ↦ X/k transports the pair back
    let (a, b) = (a.scale(k.inv()), b.scale(k.inv()));
    let cls = ClassLabel::diag_pair(l1, l2)?;
    let d = cls.base_point();
    let back = conj_op(&conj_op(&d, &a, 1)?, &b, 1)?;
    let membership = [a, b].iter().map(|x| super::witness::membership_residual(x, &cls, tol)).fold(0.0, f64::max);
    let r = residual(&back, &d).max(membership);
    let commutator = (a * b - b * a).max_norm();
    let mut report = WitnessReport::witness(vec![a, b], r).with_values(&values).with_values(&[("k", k)]);
    if k != ONE {
        report.refutation = Some(format!("excluded case, solved in M_{{kλ₁,kλ₂}} with k = {}", k.re));
    }
    if r > tol || commutator <= tol {
        report.status = WitnessStatus::Inconclusive;
    }
    Ok(report)
}

/// Principal `n`-th root: spectral formula for distinct eigenvalues, first-order Taylor form otherwise.
pub fn nth_root_matrix(p: &Mat2, n: u32) -> Result<Mat2, GlError> {
    if n == 0 {
        return Err(GlError::InvalidParameter("n must be positive".into()));
    }
    classify(p, super::DEFAULT_TOL)?;
    let root = |z: Complex64| z.powf(1.0 / f64::from(n));
    let (mu1, mu2) = quadratic_roots(p.trace(), p.det());
    if close(mu1, mu2, 1e-6) {
        let mu = p.trace() / 2.0;
        let f = root(mu);
        let df = f / (mu * f64::from(n));
        return Ok(Mat2::scalar(f) + (*p - Mat2::scalar(mu)).scale(df));
    }
    let slope = (root(mu1) - root(mu2)) / (mu1 - mu2);
    Ok(Mat2::scalar(root(mu2)) + (*p - Mat2::scalar(mu2)).scale(slope))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransportReport {
    pub n: u32,
    pub samples: usize,
    /// Largest residual of `P⁻¹AP = P'⁻ⁿ A P'ⁿ` with `P' = P^{1/n}`.
    pub max_residual: f64,
    pub max_root_residual: f64,
}

/// Conjugation by `P` is the `n`-fold conjugation by an `n`-th root of `P`.
pub fn root_transport_probe(n: u32, samples: usize, seed: u64) -> Result<TransportReport, GlError> {
    let mut max_residual: f64 = 0.0;
    let mut max_root_residual: f64 = 0.0;
    for i in 0..samples as u64 {
        let mut rng = sample_rng(seed, i);
        let p = random_conjugator(&mut rng);
        let a = random_conjugator(&mut rng);
        let q = nth_root_matrix(&p, n)?;
        max_root_residual = max_root_residual.max(residual(&q.pow(i64::from(n))?, &p));
        max_residual = max_residual.max(residual(&conj_op(&a, &q, i64::from(n))?, &conj_op(&a, &p, 1)?));
    }
    Ok(TransportReport { n, samples, max_residual, max_root_residual })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxTrivialReport {
    /// `D(λ1,λ2)` and `D(λ2,λ1)` fix each other.
    pub pair_trivial: bool,
    /// Members of the class commuting with `D(λ1, λ2)`.
    pub commuting_members: Vec<Mat2>,
    pub samples: usize,
    /// Sampled members commuting with `D(λ1, λ2)` that are not one of the two diagonals.
    pub stray_commuting: usize,
    pub passed: bool,
}

/// Largest trivial subquandle of `M_{λ1,λ2}` has two elements.
pub fn max_trivial_pair_check(l1: Complex64, l2: Complex64, samples: usize, seed: u64, tol: f64) -> Result<MaxTrivialReport, GlError> {
    let cls = ClassLabel::diag_pair(l1, l2)?;
    let (d, swapped) = (Mat2::diag(l1, l2), Mat2::diag(l2, l1));
    let pair_trivial = residual(&conj_op(&d, &swapped, 1)?, &d) <= tol && residual(&conj_op(&swapped, &d, 1)?, &swapped) <= tol;
    // the commutant of D is diagonal; inside the class, diag(x, s − x) with x(s − x) = p
    let space = conjugator_space(&d, &d, tol, Arithmetic::Auto);
    let diagonal_commutant = space.dimension == 2 && space.basis.iter().all(|x| x.is_diagonal(tol));
    let (s, p) = cls.trace_det();
    let (x1, x2) = quadratic_roots(s, p);
    let mut commuting_members: Vec<Mat2> = vec![Mat2::diag(x1, s - x1), Mat2::diag(x2, s - x2)];
    commuting_members.sort_by(|x, y| y.a.re.total_cmp(&x.a.re).then(y.a.im.total_cmp(&x.a.im)));
    let is_diagonal_member = |x: &Mat2| residual(x, &d) <= tol || residual(x, &swapped) <= tol;
    let members_ok = commuting_members.iter().all(is_diagonal_member);
    let mut stray_commuting = 0;
    for i in 0..samples as u64 {
        let x = random_member(&cls, &mut sample_rng(seed, i));
        let commutes = (d * x - x * d).max_norm() <= tol * x.max_norm().max(1.0);
        if commutes && !is_diagonal_member(&x) {
            stray_commuting += 1;
        }
    }
    Ok(MaxTrivialReport {
        pair_trivial,
        passed: pair_trivial && diagonal_commutant && members_ok && stray_commuting == 0,
        commuting_members,
        samples,
        stray_commuting,
    })
}
