//! Conjugators inside a prescribed class, and short paths from a class base point.

use num_complex::Complex64;
use serde::Serialize;

use super::class::{classify, ClassLabel};
use super::exact::{to_exact, Field};
use super::mat::{conj_op, residual, serialize_complex, Mat2, ONE};
use super::space::{basis_exact, basis_float, impose_trace, to_float_affine, to_float_quadratic, DetQuadratic};
use super::{GlError, CLASS_TOL};

pub const TRACE_MUST_BE_ZERO: &str = "trace must be zero";
pub const ALL_SOLUTIONS_SINGULAR: &str = "all solutions singular";
pub const DETERMINANT_INCONSISTENT: &str = "determinant constraint inconsistent";
pub const ONLY_SCALAR_SOLUTIONS: &str = "only scalar solutions";
pub const SCALAR_CONJUGATION: &str = "scalar conjugators fix every element";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessStatus {
    Witness,
    NoWitness,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverValue {
    pub name: String,
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub status: WitnessStatus,
    pub matrices: Vec<Mat2>,
    pub residual: f64,
    /// For `NoWitness`/`Refuted`, the violated necessary condition.
    pub refutation: Option<String>,
    pub solver_values: Vec<SolverValue>,
    /// Whether the decisive computation used exact Gaussian-rational arithmetic.
    pub exact: bool,
}

impl WitnessReport {
    pub fn witness(matrices: Vec<Mat2>, residual: f64) -> Self {
        Self { status: WitnessStatus::Witness, matrices, residual, refutation: None, solver_values: Vec::new(), exact: false }
    }

    pub fn no_witness(tag: impl Into<String>, exact: bool) -> Self {
        Self { status: WitnessStatus::NoWitness, matrices: Vec::new(), residual: 0.0, refutation: Some(tag.into()), solver_values: Vec::new(), exact }
    }

    pub fn refuted(tag: impl Into<String>, exact: bool) -> Self {
        Self { status: WitnessStatus::Refuted, ..Self::no_witness(tag, exact) }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        Self { status: WitnessStatus::Inconclusive, ..Self::no_witness(note, false) }
    }

    pub fn with_values(mut self, values: &[(&str, Complex64)]) -> Self {
        self.solver_values.extend(values.iter().map(|&(name, value)| SolverValue { name: name.to_string(), value }));
        self
    }

    pub fn is_witness(&self) -> bool {
        self.status == WitnessStatus::Witness
    }

    pub fn value(&self, name: &str) -> Option<Complex64> {
        self.solver_values.iter().find(|v| v.name == name).map(|v| v.value)
    }
}

fn relative(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

/// How far `X` is from lying in `cls`; infinite for a scalar `X` in a Jordan class.
pub fn membership_residual(x: &Mat2, cls: &ClassLabel, tol: f64) -> f64 {
    if !x.is_finite() {
        return f64::INFINITY;
    }
    if let ClassLabel::Jordan { lambda } = *cls {
        if residual(x, &Mat2::scalar(lambda)) <= tol {
            return f64::INFINITY;
        }
    }
    let (s, p) = cls.trace_det();
    relative(x.trace(), s).max(relative(x.det(), p))
}

/// Residual of `X ∈ cls` together with `X⁻¹ a X = target`.
pub fn witness_residual(a: &Mat2, target: &Mat2, x: &Mat2, cls: &ClassLabel, tol: f64) -> f64 {
    let member = membership_residual(x, cls, tol);
    match conj_op(a, x, 1) {
        Ok(image) if member.is_finite() => residual(&image, target).max(member),
        _ => f64::INFINITY,
    }
}

/// Residual of `base * X_1 * ... * X_k = target` with every `X_i ∈ cls`.
pub fn path_residual(base: &Mat2, steps: &[Mat2], target: &Mat2, cls: &ClassLabel, tol: f64) -> f64 {
    let mut current = *base;
    let mut worst: f64 = 0.0;
    for x in steps {
        worst = worst.max(membership_residual(x, cls, tol));
        match conj_op(&current, x, 1) {
            Ok(next) => current = next,
            Err(_) => return f64::INFINITY,
        }
    }
    worst.max(residual(&current, target))
}

/// Roots of `q2 x² + q1 x + q0`, larger real part first; a single root when `q2` vanishes.
pub fn ordered_roots(q2: Complex64, q1: Complex64, q0: Complex64, tol: f64) -> Vec<Complex64> {
    let mut roots = if q2.norm() <= tol {
        if q1.norm() <= tol {
            return Vec::new();
        }
        vec![-q0 / q1]
    } else {
        let disc = (q1 * q1 - q2 * q0 * 4.0).sqrt();
        let big = if (q1 + disc).norm() >= (q1 - disc).norm() { q1 + disc } else { q1 - disc };
        let q = big * -0.5;
        if q.norm() == 0.0 {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            vec![q / q2, q0 / q]
        }
    };
    roots.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    roots
}

/// Matrices whose columns are eigenvectors of `m` for `mu1`, `mu2`, scaled to trace `s` and determinant `p`.
fn eigenvector_conjugators(m: &Mat2, mu1: Complex64, mu2: Complex64, s: Complex64, p: Complex64, tol: f64) -> Vec<(Mat2, Complex64, Complex64)> {
    let scale = m.max_norm().max(1.0);
    let coeff_tol = tol * scale * scale.max(p.norm()).max(s.norm());
    if m.c.norm() >= m.b.norm() && m.c.norm() > tol * scale {
        // columns (u(μ1 − d)/c, u) and (v(μ2 − d)/c, v)
        let alpha = (mu1 - m.d) / m.c;
        let beta = (mu1 - mu2) / m.c;
        ordered_roots(alpha * beta, -s * beta, p, coeff_tol)
            .into_iter()
            .map(|u| {
                let v = s - u * alpha;
                (Mat2::new(u * alpha, v * (mu2 - m.d) / m.c, u, v), u, v)
            })
            .collect()
    } else if m.b.norm() > tol * scale {
        // columns (u, u(μ1 − a)/b) and (v, v(μ2 − a)/b)
        let gamma = (mu2 - m.a) / m.b;
        let delta = (mu2 - mu1) / m.b;
        ordered_roots(gamma * delta, -s * delta, p, coeff_tol)
            .into_iter()
            .map(|v| {
                let u = s - v * gamma;
                (Mat2::new(u, v, u * (mu1 - m.a) / m.b, v * gamma), u, v)
            })
            .collect()
    } else {
        Vec::new()
    }
}

/// Eigenvector construction for a diagonal endpoint with distinct entries.
fn closed_form(a: &Mat2, target: &Mat2, cls: &ClassLabel, tol: f64) -> Option<WitnessReport> {
    if !matches!(cls, ClassLabel::DiagPair { .. }) {
        return None;
    }
    let (s, p) = cls.trace_det();
    let (diag, general, forward) = if target.is_diagonal(tol) && !a.is_diagonal(tol) {
        (target, a, true)
    } else if a.is_diagonal(tol) && !target.is_diagonal(tol) {
        (a, target, false)
    } else {
        return None;
    };
    let (mu1, mu2) = (diag.a, diag.d);
    if relative(mu1, mu2) <= CLASS_TOL {
        return None;
    }
    // forward: a X = X D, so X holds eigenvectors of a; otherwise Xᵀ holds eigenvectors of targetᵀ
    let m = if forward { *general } else { general.transpose() };
    eigenvector_conjugators(&m, mu1, mu2, s, p, tol).into_iter().find_map(|(v, u_val, v_val)| {
        let x = if forward { v } else { v.transpose() };
        let r = witness_residual(a, target, &x, cls, tol);
        (r <= tol).then(|| WitnessReport::witness(vec![x], r).with_values(&[("u", u_val), ("v", v_val)]))
    })
}

fn directions(k: usize) -> Vec<Vec<Complex64>> {
    let unit = |j: usize| -> Vec<Complex64> { (0..k).map(|i| if i == j { ONE } else { Complex64::new(0.0, 0.0) }).collect() };
    let mut out: Vec<Vec<Complex64>> = (0..k).map(unit).collect();
    for weight in [1.0, -1.0, 2.0] {
        for j in 0..k {
            for l in (j + 1)..k {
                let mut v = unit(j);
                v[l] = Complex64::new(weight, 0.0);
                out.push(v);
            }
        }
    }
    out
}

/// Solves the trace (linear) and determinant (quadratic) constraints over the conjugator space.
fn general_route<T: Field>(
    basis: &[[T; 4]],
    s: &T,
    p: &T,
    zero_tol: f64,
    problem: (&Mat2, &Mat2, &ClassLabel, f64),
    exact: bool,
) -> WitnessReport {
    let (a, target, cls, tol) = problem;
    let Some(aff) = impose_trace(basis, s, zero_tol) else {
        return WitnessReport::no_witness(TRACE_MUST_BE_ZERO, exact);
    };
    let quad = DetQuadratic::new(&aff, p);
    let fa = to_float_affine(&aff);
    let point = |t: &[Complex64]| -> Mat2 {
        let mut x = fa.x0;
        for (w, &tj) in fa.dirs.iter().zip(t) {
            for i in 0..4 {
                x[i] += tj * w[i];
            }
        }
        Mat2::from_entries(x)
    };
    let k = fa.dirs.len();
    if quad.is_constant(zero_tol) {
        if !quad.c0.negligible(zero_tol) {
            let singular = (quad.c0.clone() + p.clone()).negligible(zero_tol);
            return WitnessReport::no_witness(if singular { ALL_SOLUTIONS_SINGULAR } else { DETERMINANT_INCONSISTENT }, exact);
        }
        let mut candidates = vec![vec![Complex64::new(0.0, 0.0); k]];
        candidates.extend(directions(k).into_iter().take(k));
        for t in candidates {
            let x = point(&t);
            let r = witness_residual(a, target, &x, cls, tol);
            if r <= tol {
                return WitnessReport::witness(vec![x], r);
            }
        }
        return WitnessReport::no_witness(ONLY_SCALAR_SOLUTIONS, exact);
    }
    let fq = to_float_quadratic(&quad);
    let coeff_tol = zero_tol.max(tol);
    for v in directions(k) {
        let lin: Complex64 = fq.lin.iter().zip(&v).map(|(l, x)| l * x).sum();
        let mut q2 = Complex64::new(0.0, 0.0);
        for j in 0..k {
            for l in j..k {
                q2 += fq.quad[j][l] * v[j] * v[l];
            }
        }
        for tau in ordered_roots(q2, lin, fq.c0, coeff_tol) {
            let t: Vec<Complex64> = v.iter().map(|x| x * tau).collect();
            let x = point(&t);
            let r = witness_residual(a, target, &x, cls, tol);
            if r <= tol {
                return WitnessReport::witness(vec![x], r).with_values(&[("t", tau)]);
            }
        }
    }
    WitnessReport::inconclusive("no root of the determinant constraint verified")
}

/// Finds `X ∈ cls` with `X⁻¹ a X = target`, or names the necessary condition that fails.
pub fn witness_in_class(a: &Mat2, target: &Mat2, cls: &ClassLabel, tol: f64) -> Result<WitnessReport, GlError> {
    let (ca, ct) = (classify(a, tol)?, classify(target, tol)?);
    if !ca.same_class(&ct, CLASS_TOL) {
        return Err(GlError::Precondition(format!("{a} and {target} lie in different conjugacy classes")));
    }
    if let ClassLabel::Scalar { lambda } = *cls {
        let x = Mat2::scalar(lambda);
        let r = residual(a, target);
        return Ok(if r <= tol { WitnessReport::witness(vec![x], r) } else { WitnessReport::no_witness(SCALAR_CONJUGATION, false) });
    }
    if let Some(report) = closed_form(a, target, cls, tol) {
        return Ok(report);
    }
    let (s, p) = cls.trace_det();
    let problem = (a, target, cls, tol);
    if let (Some(basis), Some(se), Some(pe)) = (basis_exact(a, target), to_exact(s), to_exact(p)) {
        return Ok(general_route(&basis, &se, &pe, 0.0, problem, true));
    }
    let basis = basis_float(a, target, tol);
    let scale = basis
        .iter()
        .flat_map(|m| m.iter().map(|z| z.norm()))
        .chain([1.0, s.norm(), p.norm().sqrt()])
        .fold(0.0, f64::max);
    Ok(general_route(&basis, &s, &p, tol * scale * scale, problem, false))
}

const JORDAN_PIVOT_MIN: f64 = 1e-6;

/// Unit-eigenvalue conjugator `X` with `X⁻¹ [[1,1],[0,1]] X = m`, for `m` with lower-left entry away from zero.
fn upper_jordan_step(m: &Mat2) -> Option<(Mat2, [Complex64; 4])> {
    if m.c.norm() <= JORDAN_PIVOT_MIN {
        return None;
    }
    let z = (-m.c).sqrt();
    let w = (m.a - ONE) / z;
    let x = ONE * 2.0 - w;
    let y = (x * w - ONE) / z;
    Some((Mat2::new(x, y, z, w), [x, y, z, w]))
}

/// Conjugators `X` with `X⁻¹ [[1,0],[1,1]] X = m`, for `m` with upper-right entry away from zero:
/// `x = √c`, `y = ±ι√b`, `z = (2√c − c − 1)/y`, `w = 2 − √c`.
fn lower_jordan_steps(m: &Mat2) -> Vec<(Mat2, [Complex64; 4])> {
    if m.b.norm() <= JORDAN_PIVOT_MIN {
        return Vec::new();
    }
    let i = Complex64::new(0.0, 1.0);
    let x = m.c.sqrt();
    let w = ONE * 2.0 - x;
    [ONE, -ONE]
        .into_iter()
        .map(|sign| {
            let y = sign * i * m.b.sqrt();
            let z = (x * 2.0 - m.c - ONE) / y;
            (Mat2::new(x, y, z, w), [x, y, z, w])
        })
        .collect()
}

fn jordan_path(lambda: Complex64, cls: &ClassLabel, a: &Mat2, tol: f64) -> Result<WitnessReport, GlError> {
    let base = cls.base_point();
    // M_λ ≅ M_1 through m ↦ S⁻¹(m/λ)S with S = D(1, λ)
    let s = Mat2::diag(ONE, lambda);
    let s_inv = Mat2::diag(ONE, lambda.inv());
    let unit = s_inv * a.scale(lambda.inv()) * s;
    let lift = |x: &Mat2| (s * *x * s_inv).scale(lambda);
    let names = ["x", "y", "z", "w"];
    let tagged = |v: &[Complex64; 4], prefix: &str| -> Vec<(String, Complex64)> {
        names.iter().zip(v).map(|(n, &z)| (format!("{prefix}{n}"), z)).collect()
    };
    let report = |steps: Vec<Mat2>, values: Vec<(String, Complex64)>, note: Option<String>| -> Option<WitnessReport> {
        let r = path_residual(&base, &steps, a, cls, tol);
        (r <= tol).then(|| {
            let refs: Vec<(&str, Complex64)> = values.iter().map(|(n, z)| (n.as_str(), *z)).collect();
            let mut rep = WitnessReport::witness(steps, r).with_values(&refs);
            rep.refutation = note;
            rep
        })
    };

    if let Some((x, v)) = upper_jordan_step(&unit) {
        if let Some(rep) = report(vec![lift(&x)], tagged(&v, ""), None) {
            return Ok(rep);
        }
    }
    let direct = witness_in_class(&base, a, cls, tol)?;
    if direct.is_witness() {
        return Ok(direct);
    }
    let note = direct.refutation.as_ref().map(|r| format!("length 1: {r}"));
    let lower = Mat2::real(1.0, 0.0, 1.0, 1.0);
    if let Some((x1, v1)) = upper_jordan_step(&lower) {
        for (x2, v2) in lower_jordan_steps(&unit) {
            let mut values = tagged(&v1, "1.");
            values.extend(tagged(&v2, "2."));
            if let Some(rep) = report(vec![lift(&x1), lift(&x2)], values, note.clone()) {
                return Ok(rep);
            }
        }
    }
    Ok(WitnessReport::inconclusive("no two-step path verified"))
}

fn diag_path(cls: &ClassLabel, a: &Mat2, tol: f64) -> Result<WitnessReport, GlError> {
    let base = cls.base_point();
    let direct = witness_in_class(&base, a, cls, tol)?;
    if direct.is_witness() {
        return Ok(direct);
    }
    let note = direct.refutation.as_ref().map(|r| format!("length 1: {r}"));
    let (l1, l2) = cls.eigenvalues();
    let mut mids = vec![Mat2::diag(l2, l1)];
    for p in [Mat2::real(1.0, 1.0, 1.0, 2.0), Mat2::real(2.0, 1.0, 1.0, 1.0)] {
        mids.push(conj_op(&base, &p, 1)?);
    }
    mids.push(Mat2::new(l1, ONE, Complex64::new(0.0, 0.0), l2));
    mids.push(Mat2::new(l1, Complex64::new(0.0, 0.0), ONE, l2));
    for mid in mids {
        let first = witness_in_class(&base, &mid, cls, tol)?;
        if !first.is_witness() {
            continue;
        }
        let second = witness_in_class(&mid, a, cls, tol)?;
        if !second.is_witness() {
            continue;
        }
        let steps = vec![first.matrices[0], second.matrices[0]];
        let r = path_residual(&base, &steps, a, cls, tol);
        if r <= tol {
            let mut rep = WitnessReport::witness(steps, r);
            rep.refutation = note;
            return Ok(rep);
        }
    }
    Ok(WitnessReport::inconclusive("no two-step path verified"))
}

/// Path `base * X (* Y) = a` of minimal length 1 or 2 inside a non-scalar class.
pub fn two_step_path(cls: &ClassLabel, a: &Mat2, tol: f64) -> Result<WitnessReport, GlError> {
    if cls.is_scalar() {
        return Err(GlError::Precondition("a scalar class has a single element".into()));
    }
    if !cls.contains(a, CLASS_TOL) {
        return Err(GlError::Precondition(format!("{a} is not in {cls}")));
    }
    match *cls {
        ClassLabel::Jordan { lambda } => jordan_path(lambda, cls, a, tol),
        _ => diag_path(cls, a, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::sample::{random_member, sample_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dp(l1: f64, l2: f64) -> ClassLabel {
        ClassLabel::diag_pair(c(l1, 0.0), c(l2, 0.0)).unwrap()
    }

    #[test]
    fn swap_joins_opposite_diagonals() {
        let r = witness_in_class(&Mat2::real(-1.0, 0.0, 0.0, 1.0), &Mat2::real(1.0, 0.0, 0.0, -1.0), &dp(1.0, -1.0), 1e-9).unwrap();
        assert!(r.is_witness());
        assert_eq!(r.matrices, vec![Mat2::real(0.0, 1.0, 1.0, 0.0)]);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn trace_obstruction() {
        let r = witness_in_class(&Mat2::real(3.0, 0.0, 0.0, 2.0), &Mat2::real(2.0, 0.0, 0.0, 3.0), &dp(2.0, 3.0), 1e-9).unwrap();
        assert_eq!(r.status, WitnessStatus::NoWitness);
        assert_eq!(r.refutation.as_deref(), Some(TRACE_MUST_BE_ZERO));
        assert!(r.exact);
    }

    #[test]
    fn singular_obstruction() {
        let a = Mat2::real(1.0, 0.0, 0.0, -1.0);
        let t = Mat2::real(-1.0, 0.0, 1.0, 1.0);
        let r = witness_in_class(&a, &t, &dp(1.0, -1.0), 1e-9).unwrap();
        assert_eq!(r.refutation.as_deref(), Some(ALL_SOLUTIONS_SINGULAR));
        assert!(r.exact);
    }

    #[test]
    fn unipotent_obstruction() {
        let a = Mat2::real(1.0, 2.0, 0.0, 1.0);
        let t = Mat2::real(1.0, 1.0, 0.0, 1.0);
        let cls = ClassLabel::jordan(ONE).unwrap();
        let r = witness_in_class(&a, &t, &cls, 1e-9).unwrap();
        assert_eq!(r.refutation.as_deref(), Some(DETERMINANT_INCONSISTENT));
        assert!(r.exact);
    }

    #[test]
    fn different_classes_are_rejected() {
        let r = witness_in_class(&Mat2::real(1.0, 0.0, 0.0, 2.0), &Mat2::real(1.0, 0.0, 0.0, 3.0), &dp(1.0, 2.0), 1e-9);
        assert!(matches!(r, Err(GlError::Precondition(_))));
    }

    #[test]
    fn half_beta_witness() {
        let r = two_step_path(&dp(1.0, -1.0), &Mat2::real(1.0, 5.0, 0.0, -1.0), 1e-9).unwrap();
        assert!(r.is_witness());
        assert_eq!(r.matrices.len(), 1);
        assert!(residual(&r.matrices[0], &Mat2::real(1.0, 2.5, 0.0, -1.0)) < 1e-12);
        assert!((r.value("u").unwrap() - c(2.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn swapped_diagonal_needs_two_steps() {
        let cls = dp(2.0, 3.0);
        let r = two_step_path(&cls, &Mat2::real(3.0, 0.0, 0.0, 2.0), 1e-9).unwrap();
        assert!(r.is_witness());
        assert_eq!(r.matrices.len(), 2);
        assert_eq!(r.refutation.as_deref(), Some("length 1: trace must be zero"));
        assert!(path_residual(&cls.base_point(), &r.matrices, &Mat2::real(3.0, 0.0, 0.0, 2.0), &cls, 1e-9) <= 1e-9);
    }

    #[test]
    fn eigenvector_route_in_both_directions() {
        let cls = dp(2.0, 3.0);
        let a = Mat2::real(2.0, 0.0, 4.0, 3.0);
        let d = cls.base_point();
        for (from, to) in [(a, d), (d, a)] {
            let r = witness_in_class(&from, &to, &cls, 1e-9).unwrap();
            assert!(r.is_witness(), "{from} -> {to}");
            assert!(r.value("u").is_some() && r.value("v").is_some());
        }
    }

    #[test]
    fn jordan_paths() {
        let cls = ClassLabel::jordan(ONE).unwrap();
        let one = two_step_path(&cls, &Mat2::real(3.0, -1.0, 4.0, -1.0), 1e-9).unwrap();
        assert!(one.is_witness());
        assert_eq!(one.matrices.len(), 1);
        let two = two_step_path(&cls, &Mat2::real(1.0, 2.0, 0.0, 1.0), 1e-9).unwrap();
        assert!(two.is_witness());
        assert_eq!(two.matrices.len(), 2);
        assert_eq!(two.refutation.as_deref(), Some("length 1: determinant constraint inconsistent"));
        let base = two_step_path(&cls, &cls.base_point(), 1e-9).unwrap();
        assert_eq!(base.matrices.len(), 1);
    }

    #[test]
    fn sampled_paths_in_every_class() {
        let classes = [dp(2.0, 3.0), dp(1.0, -1.0), ClassLabel::jordan(ONE).unwrap(), ClassLabel::jordan(c(2.0, -1.0)).unwrap(), dp(0.5, 7.0)];
        for cls in classes {
            for i in 0..40 {
                let a = random_member(&cls, &mut sample_rng(11, i));
                let r = two_step_path(&cls, &a, 1e-9).unwrap();
                assert!(r.is_witness(), "{cls} sample {i}: {r:?}");
                assert!(path_residual(&cls.base_point(), &r.matrices, &a, &cls, 1e-9) <= 1e-8);
            }
        }
    }

    #[test]
    fn root_ordering() {
        let roots = ordered_roots(c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), 1e-12);
        assert_eq!(roots, vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(ordered_roots(c(0.0, 0.0), c(2.0, 0.0), c(4.0, 0.0), 1e-12), vec![c(-2.0, 0.0)]);
        assert!(ordered_roots(c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0), 1e-12).is_empty());
    }
}
