//! Scalars for the shared linear-algebra routines: floating complex numbers
//! with a tolerance, and exact Gaussian rationals.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use super::mat::Mat2;

/// Gaussian rational `p + q i` with `p, q ∈ ℚ`.
pub type Gq = Complex<BigRational>;

/// Largest denominator accepted when recovering a rational from a float.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

pub trait Field:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn to_c64(&self) -> Complex64;
    /// Zero test: exact for rationals, `|x| <= tol` for floats.
    fn negligible(&self, tol: f64) -> bool;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

impl Field for Gq {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(1)), BigRational::zero())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    fn negligible(&self, _tol: f64) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

fn rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(BigRational::zero());
    }
    let r = Ratio::<i64>::approximate_float(x)?;
    if r.denom().abs() > MAX_DENOMINATOR || (*r.numer() as f64) / (*r.denom() as f64) != x {
        return None;
    }
    Some(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
}

/// The Gaussian rational a float represents, if it has a small denominator and round-trips exactly.
pub fn to_exact(z: Complex64) -> Option<Gq> {
    Some(Complex::new(rational(z.re)?, rational(z.im)?))
}

pub fn mat_to_exact(m: &Mat2) -> Option<[Gq; 4]> {
    let e = m.entries();
    Some([to_exact(e[0])?, to_exact(e[1])?, to_exact(e[2])?, to_exact(e[3])?])
}

pub fn is_gaussian_rational(values: &[Complex64]) -> bool {
    values.iter().all(|&z| to_exact(z).is_some())
}

/// In-place reduced row echelon form with largest-magnitude pivoting; returns pivot columns.
pub fn rref<T: Field>(rows: &mut [Vec<T>], tol: f64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len())
            .filter(|&i| !rows[i][c].negligible(tol))
            .max_by(|&i, &j| rows[i][c].magnitude().total_cmp(&rows[j][c].magnitude()).then(j.cmp(&i)));
        let Some(p) = best else {
            for row in rows[r..].iter_mut() {
                row[c] = T::zero();
            }
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - factor.clone() * p.clone();
                }
                row[c] = T::zero();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of `rows`, one vector per free column.
pub fn null_space<T: Field>(mut rows: Vec<Vec<T>>, tol: f64) -> Vec<Vec<T>> {
    let cols = rows.first().map_or(0, Vec::len);
    let pivots = rref(&mut rows, tol);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_rationals() {
        let z = to_exact(Complex64::new(1.0 / 3.0, -2.5)).unwrap();
        assert_eq!(z.re, BigRational::new(1.into(), 3.into()));
        assert_eq!(z.im, BigRational::new((-5).into(), 2.into()));
        assert!(to_exact(Complex64::new(3f64.sqrt() / 2.0, 0.0)).is_none());
        assert!(to_exact(Complex64::new(f64::NAN, 0.0)).is_none());
        assert!(to_exact(Complex64::new(std::f64::consts::PI, 0.0)).is_none());
    }

    #[test]
    fn exact_and_float_kernels_agree() {
        let m = [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]];
        let float: Vec<Vec<Complex64>> = m.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        let exact: Vec<Vec<Gq>> = float.iter().map(|r| r.iter().map(|&z| to_exact(z).unwrap()).collect()).collect();
        let kf = null_space(float, 1e-12);
        let ke = null_space(exact, 0.0);
        assert_eq!(kf.len(), 2);
        for (vf, ve) in kf.iter().zip(&ke) {
            for (x, y) in vf.iter().zip(ve) {
                assert!((*x - y.to_c64()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rref_of_full_rank() {
        let mut rows: Vec<Vec<Gq>> = vec![
            vec![to_exact(Complex64::new(0.0, 1.0)).unwrap(), <Gq as Field>::one()],
            vec![<Gq as Field>::one(), <Gq as Field>::zero()],
        ];
        assert_eq!(rref(&mut rows, 0.0), vec![0, 1]);
        assert!(null_space(rows, 0.0).is_empty());
    }
}
