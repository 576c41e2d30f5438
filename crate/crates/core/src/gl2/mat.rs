use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::GlError;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major 2×2 complex matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn from_entries(e: [Complex64; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn identity() -> Self {
        Self::scalar(ONE)
    }

    pub fn zero() -> Self {
        Self::scalar(ZERO)
    }

    pub fn scalar(l: Complex64) -> Self {
        Self::diag(l, l)
    }

    /// `D(l1, l2)`.
    pub fn diag(l1: Complex64, l2: Complex64) -> Self {
        Self::new(l1, ZERO, ZERO, l2)
    }

    /// `[[l, 1], [0, l]]`.
    pub fn jordan(l: Complex64) -> Self {
        Self::new(l, ONE, ZERO, l)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(k * self.a, k * self.b, k * self.c, k * self.d)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Whether `|det| <= tol · ‖m‖∞²`.
    pub fn is_singular(&self, tol: f64) -> bool {
        self.det().norm() <= tol * self.max_norm().powi(2)
    }

    pub fn inv(&self) -> Result<Self, GlError> {
        if self.is_singular(super::DEFAULT_TOL) {
            return Err(GlError::Singular { det: self.det().norm() });
        }
        let k = self.det().inv();
        Ok(Self::new(self.d * k, -self.b * k, -self.c * k, self.a * k))
    }

    pub fn pow(&self, n: i64) -> Result<Self, GlError> {
        let mut base = if n < 0 { self.inv()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.b.norm() <= tol * self.max_norm().max(1.0) && self.c.norm() <= tol * self.max_norm().max(1.0)
    }

    /// Commutator norm `‖self·other − other·self‖∞`.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        (*self * *other - *other * *self).max_norm()
    }
}

impl Mul for Mat2 {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Add for Mat2 {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries().iter().map(|z| format_complex(*z)).collect();
        write!(f, "[[{}, {}], [{}, {}]]", e[0], e[1], e[2], e[3])
    }
}

/// JSON form: four `[re, im]` pairs in row-major order.
impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for z in self.entries() {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

pub fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// `b⁻ⁿ a bⁿ`; negative `n` gives the dual operation.
pub fn conj_op(a: &Mat2, b: &Mat2, n: i64) -> Result<Mat2, GlError> {
    let bn = b.pow(n)?;
    Ok(bn.inv()? * *a * bn)
}

/// Relative max-norm distance `‖x − y‖∞ / max(1, ‖y‖∞)`.
pub fn residual(x: &Mat2, y: &Mat2) -> f64 {
    (*x - *y).max_norm() / y.max_norm().max(1.0)
}

pub fn scale_map(a: &Mat2, k: Complex64) -> Result<Mat2, GlError> {
    if k == ZERO {
        return Err(GlError::InvalidParameter("scaling factor must be nonzero".into()));
    }
    Ok(a.scale(k))
}

/// Moduli within this relative gap of the largest count as tied.
pub const PGL_TIE_TOL: f64 = 1e-9;

/// Representative of the projective class: divide by the first entry of largest modulus,
/// with near-ties resolved in row-major order.
pub fn pgl_normalize(a: &Mat2) -> Result<Mat2, GlError> {
    if a.is_singular(super::DEFAULT_TOL) {
        return Err(GlError::Singular { det: a.det().norm() });
    }
    let e = a.entries();
    let m = a.max_norm();
    let pivot = e.iter().find(|z| z.norm() >= m * (1.0 - PGL_TIE_TOL)).copied().unwrap();
    Ok(a.scale(pivot.inv()))
}

pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    match (re, im) {
        (_, 0.0) => format!("{re}"),
        (0.0, _) => format!("{im}i"),
        _ if im < 0.0 => format!("{re}-{}i", -im),
        _ => format!("{re}+{im}i"),
    }
}

/// Parses `3`, `-1.5`, `i`, `-2i`, `1+2i`, `0.5-i`, `1e-3+2e1i`, or
/// `root(k/n)` for `exp(2πik/n)`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse `{text}` as a complex number");
    if let Some(inner) = s.strip_prefix("root(").and_then(|r| r.strip_suffix(')')) {
        let (k, n) = inner.split_once('/').ok_or_else(bad)?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        let n: i64 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(root_of_unity(k, n));
    }
    if s.is_empty() {
        return Err(bad());
    }
    let imaginary_unit = |body: &str| -> Result<f64, String> {
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => body.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent and not leading
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let z = match split {
        Some(i) => Complex64::new(body[..i].parse::<f64>().map_err(|_| bad())?, imaginary_unit(&body[i..])?),
        None => Complex64::new(0.0, imaginary_unit(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// `exp(2πik/n)`, snapped to exact values at multiples of a quarter turn.
pub fn root_of_unity(k: i64, n: i64) -> Complex64 {
    let r = k.rem_euclid(n);
    if (4 * r) % n == 0 {
        return [ONE, Complex64::new(0.0, 1.0), -ONE, Complex64::new(0.0, -1.0)][(4 * r / n) as usize];
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conj_op_examples() {
        let swap = Mat2::real(0.0, 1.0, 1.0, 0.0);
        let d = Mat2::real(1.0, 0.0, 0.0, -1.0);
        assert_eq!(conj_op(&d, &swap, 1).unwrap(), Mat2::real(-1.0, 0.0, 0.0, 1.0));
        let a = Mat2::real(2.0, 3.0, -1.0, 5.0);
        assert_eq!(conj_op(&a, &Mat2::identity(), 1).unwrap(), a);
        let got = conj_op(&Mat2::real(1.0, 0.0, 0.0, 2.0), &Mat2::real(1.0, 1.0, 0.0, 2.0), 1).unwrap();
        assert!(residual(&got, &Mat2::real(1.0, -1.0, 0.0, 2.0)) < 1e-15);
    }

    #[test]
    fn conj_op_rejects_singular() {
        let s = Mat2::real(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(conj_op(&Mat2::identity(), &s, 1), Err(GlError::Singular { .. })));
    }

    #[test]
    fn dual_undoes_op() {
        let a = Mat2::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(3.0, 0.0));
        let b = Mat2::new(c(2.0, 0.0), c(1.0, 1.0), c(0.0, -1.0), c(1.0, 0.0));
        for n in [1, 2, -3] {
            let back = conj_op(&conj_op(&a, &b, n).unwrap(), &b, -n).unwrap();
            assert!(residual(&back, &a) < 1e-12);
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(pgl_normalize(&Mat2::real(2.0, 0.0, 0.0, 4.0)).unwrap(), Mat2::real(0.5, 0.0, 0.0, 1.0));
        assert_eq!(pgl_normalize(&Mat2::identity()).unwrap(), Mat2::identity());
        assert_eq!(scale_map(&Mat2::real(1.0, 0.0, 0.0, -1.0), c(2.0, 0.0)).unwrap(), Mat2::real(2.0, 0.0, 0.0, -2.0));
        assert!(scale_map(&Mat2::identity(), ZERO).is_err());
    }

    #[test]
    fn normalize_breaks_rounding_ties_by_position() {
        let x = pgl_normalize(&Mat2::real(3.0, 1.0, 1.0, -3.0 - 1e-12)).unwrap();
        let y = pgl_normalize(&Mat2::real(3.0, 1.0, 1.0, -3.0)).unwrap();
        assert_eq!(x.a, ONE);
        assert!(residual(&x, &y) < 1e-12);
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-1").unwrap(), c(-1.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2+3i").unwrap(), c(2.0, 3.0));
        assert_eq!(parse_complex("0.5-i").unwrap(), c(0.5, -1.0));
        assert_eq!(parse_complex("1e-3+2e1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("-2.5i").unwrap(), c(0.0, -2.5));
        assert_eq!(parse_complex("root(1/4)").unwrap(), c(0.0, 1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("root(1/0)").is_err());
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(c(1.0, 0.0)), "1");
        assert_eq!(format_complex(c(0.0, -2.0)), "-2i");
        assert_eq!(format_complex(c(1.5, -0.5)), "1.5-0.5i");
        assert_eq!(format_complex(c(-0.0, 0.0)), "0");
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&Mat2::real(0.0, 1.0, 1.0, 0.0)).unwrap();
        assert_eq!(json, "[[0.0,0.0],[1.0,0.0],[1.0,0.0],[0.0,0.0]]");
    }
}
