use num_complex::Complex64;
use serde::Serialize;

use super::mat::{format_complex, serialize_complex, Mat2};
use super::GlError;

/// Conjugacy class of an invertible 2×2 complex matrix.
///
/// Labels built from explicit parameters keep the caller's eigenvalue order,
/// which fixes the base point `D(λ1, λ2)`; `classify` returns the ordered form.
/// Use [`ClassLabel::same_class`] for comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassLabel {
    DiagPair {
        #[serde(serialize_with = "serialize_complex")]
        lambda1: Complex64,
        #[serde(serialize_with = "serialize_complex")]
        lambda2: Complex64,
    },
    Jordan {
        #[serde(serialize_with = "serialize_complex")]
        lambda: Complex64,
    },
    Scalar {
        #[serde(serialize_with = "serialize_complex")]
        lambda: Complex64,
    },
}

fn close(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0)
}

/// `(re, im)` order with ties inside `tol` on the real part.
fn precedes(x: Complex64, y: Complex64, tol: f64) -> bool {
    if (x.re - y.re).abs() > tol * x.norm().max(y.norm()).max(1.0) {
        x.re < y.re
    } else {
        x.im < y.im
    }
}

impl ClassLabel {
    /// `M_{λ1, λ2}` with base point `D(λ1, λ2)`.
    pub fn diag_pair(lambda1: Complex64, lambda2: Complex64) -> Result<Self, GlError> {
        if lambda1 == Complex64::new(0.0, 0.0) || lambda2 == Complex64::new(0.0, 0.0) {
            return Err(GlError::InvalidParameter("eigenvalues must be nonzero".into()));
        }
        if close(lambda1, lambda2, super::DEFAULT_TOL) {
            return Err(GlError::InvalidParameter("a diagonalizable pair needs distinct eigenvalues".into()));
        }
        Ok(Self::DiagPair { lambda1, lambda2 })
    }

    /// `M_λ` with base point `[[λ, 1], [0, λ]]`.
    pub fn jordan(lambda: Complex64) -> Result<Self, GlError> {
        if lambda == Complex64::new(0.0, 0.0) {
            return Err(GlError::InvalidParameter("eigenvalue must be nonzero".into()));
        }
        Ok(Self::Jordan { lambda })
    }

    pub fn scalar(lambda: Complex64) -> Result<Self, GlError> {
        if lambda == Complex64::new(0.0, 0.0) {
            return Err(GlError::InvalidParameter("eigenvalue must be nonzero".into()));
        }
        Ok(Self::Scalar { lambda })
    }

    pub fn base_point(&self) -> Mat2 {
        match *self {
            Self::DiagPair { lambda1, lambda2 } => Mat2::diag(lambda1, lambda2),
            Self::Jordan { lambda } => Mat2::jordan(lambda),
            Self::Scalar { lambda } => Mat2::scalar(lambda),
        }
    }

    /// Trace and determinant shared by every member.
    pub fn trace_det(&self) -> (Complex64, Complex64) {
        match *self {
            Self::DiagPair { lambda1, lambda2 } => (lambda1 + lambda2, lambda1 * lambda2),
            Self::Jordan { lambda } | Self::Scalar { lambda } => (lambda + lambda, lambda * lambda),
        }
    }

    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        match *self {
            Self::DiagPair { lambda1, lambda2 } => (lambda1, lambda2),
            Self::Jordan { lambda } | Self::Scalar { lambda } => (lambda, lambda),
        }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Self::Scalar { .. })
    }

    /// Membership by trace, determinant and (non-)scalarity.
    pub fn contains(&self, m: &Mat2, tol: f64) -> bool {
        let (s, p) = self.trace_det();
        match *self {
            Self::Scalar { lambda } => super::mat::residual(m, &Mat2::scalar(lambda)) <= tol,
            Self::Jordan { lambda } => {
                close(m.trace(), s, tol) && close(m.det(), p, tol) && super::mat::residual(m, &Mat2::scalar(lambda)) > tol
            }
            Self::DiagPair { .. } => close(m.trace(), s, tol) && close(m.det(), p, tol) && !is_scalar_matrix(m, tol),
        }
    }

    /// The class of `k·A` for `A` in this class.
    pub fn scaled(&self, k: Complex64) -> Self {
        match *self {
            Self::DiagPair { lambda1, lambda2 } => Self::DiagPair { lambda1: k * lambda1, lambda2: k * lambda2 },
            Self::Jordan { lambda } => Self::Jordan { lambda: k * lambda },
            Self::Scalar { lambda } => Self::Scalar { lambda: k * lambda },
        }
    }

    /// Order-insensitive comparison within `tol`.
    pub fn same_class(&self, other: &Self, tol: f64) -> bool {
        match (*self, *other) {
            (Self::DiagPair { lambda1: a1, lambda2: a2 }, Self::DiagPair { lambda1: b1, lambda2: b2 }) => {
                (close(a1, b1, tol) && close(a2, b2, tol)) || (close(a1, b2, tol) && close(a2, b1, tol))
            }
            (Self::Jordan { lambda: a }, Self::Jordan { lambda: b }) | (Self::Scalar { lambda: a }, Self::Scalar { lambda: b }) => {
                close(a, b, tol)
            }
            _ => false,
        }
    }

    /// Same label with eigenvalues in `(re, im)` order.
    pub fn normalized(&self) -> Self {
        match *self {
            Self::DiagPair { lambda1, lambda2 } if precedes(lambda2, lambda1, super::DEFAULT_TOL) => {
                Self::DiagPair { lambda1: lambda2, lambda2: lambda1 }
            }
            other => other,
        }
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Self::DiagPair { lambda1, lambda2 } => write!(f, "M_{{{}, {}}}", format_complex(lambda1), format_complex(lambda2)),
            Self::Jordan { lambda } => write!(f, "M_{{{}}}", format_complex(lambda)),
            Self::Scalar { lambda } => write!(f, "{{{}·I}}", format_complex(lambda)),
        }
    }
}

fn is_scalar_matrix(m: &Mat2, tol: f64) -> bool {
    let scale = m.max_norm().max(1.0);
    m.b.norm() <= tol * scale && m.c.norm() <= tol * scale && (m.a - m.d).norm() <= tol * scale
}

/// Eigenvalue roots of `x² − s x + p`, computed without cancellation.
pub fn quadratic_roots(s: Complex64, p: Complex64) -> (Complex64, Complex64) {
    let disc = (s * s - p * 4.0).sqrt();
    let big = if (s + disc).norm() >= (s - disc).norm() { s + disc } else { s - disc };
    if big.norm() == 0.0 {
        return (big, big);
    }
    let r1 = big / 2.0;
    (r1, p / r1)
}

pub fn classify(m: &Mat2, tol: f64) -> Result<ClassLabel, GlError> {
    if m.is_singular(tol) {
        return Err(GlError::Singular { det: m.det().norm() });
    }
    let (s, p) = (m.trace(), m.det());
    if is_scalar_matrix(m, tol) {
        return Ok(ClassLabel::Scalar { lambda: s / 2.0 });
    }
    let scale = m.max_norm().max(1.0);
    let disc = s * s - p * 4.0;
    if disc.norm() <= tol * scale * scale {
        return Ok(ClassLabel::Jordan { lambda: s / 2.0 });
    }
    let (r1, r2) = quadratic_roots(s, p);
    Ok(ClassLabel::DiagPair { lambda1: r1, lambda2: r2 }.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Mat2::real(1.0, 1.0, 0.0, 1.0), 1e-9).unwrap(), ClassLabel::Jordan { lambda: c(1.0, 0.0) });
        assert_eq!(
            classify(&Mat2::real(0.0, 1.0, 1.0, 0.0), 1e-9).unwrap(),
            ClassLabel::DiagPair { lambda1: c(-1.0, 0.0), lambda2: c(1.0, 0.0) }
        );
        assert_eq!(classify(&Mat2::real(2.0, 0.0, 0.0, 2.0), 1e-9).unwrap(), ClassLabel::Scalar { lambda: c(2.0, 0.0) });
        assert!(classify(&Mat2::real(1.0, 2.0, 2.0, 4.0), 1e-9).is_err());
    }

    #[test]
    fn classify_is_scale_consistent() {
        let m = Mat2::new(c(1.0, 1.0), c(2.0, 0.0), c(0.5, -1.0), c(3.0, 0.0));
        let k = c(-2.0, 0.5);
        let base = classify(&m, 1e-9).unwrap();
        let scaled = classify(&m.scale(k), 1e-9).unwrap();
        assert!(scaled.same_class(&base.scaled(k), 1e-9));
    }

    #[test]
    fn membership() {
        let cls = ClassLabel::diag_pair(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(cls.contains(&Mat2::real(2.0, 7.0, 0.0, 3.0), 1e-9));
        assert!(!cls.contains(&Mat2::real(2.0, 0.0, 0.0, 2.0), 1e-9));
        let j = ClassLabel::jordan(c(1.0, 0.0)).unwrap();
        assert!(j.contains(&Mat2::real(1.0, 0.0, 5.0, 1.0), 1e-9));
        assert!(!j.contains(&Mat2::identity(), 1e-9));
        assert!(ClassLabel::diag_pair(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(ClassLabel::jordan(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn labels_keep_caller_order() {
        let cls = ClassLabel::diag_pair(c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert_eq!(cls.base_point(), Mat2::real(1.0, 0.0, 0.0, -1.0));
        assert!(cls.same_class(&cls.normalized(), 1e-12));
        assert_eq!(cls.normalized().base_point(), Mat2::real(-1.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn ordering_ignores_rounding_in_real_part() {
        let cls = classify(&Mat2::real(0.0, -1.0, 1.0, 0.0), 1e-9).unwrap();
        let ClassLabel::DiagPair { lambda1, lambda2 } = cls else { panic!() };
        assert!(lambda1.im < 0.0 && lambda2.im > 0.0);
    }
}
