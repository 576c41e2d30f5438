//! The linear space `{X : aX = Xb}` and the trace/determinant constraints on it.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use super::exact::{mat_to_exact, null_space, rref, Field, Gq};
use super::mat::Mat2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact when every input is a small Gaussian rational, floating otherwise.
    Auto,
    Float,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugatorSpace {
    pub dimension: usize,
    /// Reduced row echelon basis of the solution space, as matrices.
    pub basis: Vec<Mat2>,
    pub exact: bool,
}

/// Rows of the 4×4 map `vec(X) ↦ vec(aX − Xb)`, with row-major `vec`.
fn system<T: Field>(a: &[T; 4], b: &[T; 4]) -> Vec<Vec<T>> {
    let at = |i: usize, j: usize| a[2 * i + j].clone();
    let bt = |i: usize, j: usize| b[2 * i + j].clone();
    let mut rows = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let mut row = vec![T::zero(); 4];
            for k in 0..2 {
                for l in 0..2 {
                    let mut v = T::zero();
                    if j == l {
                        v = v + at(i, k);
                    }
                    if i == k {
                        v = v - bt(l, j);
                    }
                    row[2 * k + l] = v;
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn canonical<T: Field>(mut vectors: Vec<Vec<T>>, tol: f64) -> Vec<[T; 4]> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rank = rref(&mut vectors, tol).len();
    vectors.truncate(rank);
    vectors.into_iter().map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]).collect()
}

pub(crate) fn basis_exact(a: &Mat2, b: &Mat2) -> Option<Vec<[Gq; 4]>> {
    let (a, b) = (mat_to_exact(a)?, mat_to_exact(b)?);
    Some(canonical(null_space(system(&a, &b), 0.0), 0.0))
}

/// Rounds values within `1e-14` of an integer.
fn snap(x: f64) -> f64 {
    if (x - x.round()).abs() <= 1e-14 {
        x.round()
    } else {
        x
    }
}

/// Kernel from the singular value decomposition, then put in reduced echelon form.
pub(crate) fn basis_float(a: &Mat2, b: &Mat2, tol: f64) -> Vec<[Complex64; 4]> {
    let scale = a.max_norm().max(b.max_norm());
    if scale == 0.0 {
        return canonical(
            (0..4).map(|i| (0..4).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }).collect()).collect(),
            tol,
        );
    }
    let rows = system(&a.scale((1.0 / scale).into()).entries(), &b.scale((1.0 / scale).into()).entries());
    let k = Matrix4::from_fn(|i, j| rows[i][j]);
    let svd = k.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors were requested");
    let kernel: Vec<Vec<Complex64>> = (0..4)
        .filter(|&i| svd.singular_values[i] <= tol)
        .map(|i| (0..4).map(|j| v_t[(i, j)].conj()).collect())
        .collect();
    canonical(kernel, tol)
        .into_iter()
        .map(|v| v.map(|z| Complex64::new(snap(z.re), snap(z.im))))
        .collect()
}

pub fn conjugator_space(a: &Mat2, b: &Mat2, tol: f64, arithmetic: Arithmetic) -> ConjugatorSpace {
    let exact = match arithmetic {
        Arithmetic::Float => None,
        Arithmetic::Exact | Arithmetic::Auto => basis_exact(a, b),
    };
    match exact {
        Some(basis) => ConjugatorSpace {
            dimension: basis.len(),
            basis: basis.iter().map(|v| Mat2::from_entries(v.clone().map(|z| z.to_c64()))).collect(),
            exact: true,
        },
        None => {
            let basis = basis_float(a, b, tol);
            ConjugatorSpace { dimension: basis.len(), basis: basis.into_iter().map(Mat2::from_entries).collect(), exact: false }
        }
    }
}

fn trace<T: Field>(m: &[T; 4]) -> T {
    m[0].clone() + m[3].clone()
}

/// `det(P + Q) − det(P) − det(Q)`.
fn polar_det<T: Field>(p: &[T; 4], q: &[T; 4]) -> T {
    p[0].clone() * q[3].clone() + q[0].clone() * p[3].clone() - p[1].clone() * q[2].clone() - q[1].clone() * p[2].clone()
}

fn det<T: Field>(m: &[T; 4]) -> T {
    m[0].clone() * m[3].clone() - m[1].clone() * m[2].clone()
}

fn axpy<T: Field>(k: &T, x: &[T; 4], y: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|i| k.clone() * x[i].clone() + y[i].clone())
}

/// `x0 + Σ t_j dirs[j]`.
#[derive(Debug, Clone)]
pub(crate) struct Affine<T> {
    pub x0: [T; 4],
    pub dirs: Vec<[T; 4]>,
}

/// Restricts the span of `basis` to trace `s`; `None` when every member has trace zero but `s` is not zero.
pub(crate) fn impose_trace<T: Field>(basis: &[[T; 4]], s: &T, tol: f64) -> Option<Affine<T>> {
    let zero: [T; 4] = std::array::from_fn(|_| T::zero());
    let traces: Vec<T> = basis.iter().map(trace).collect();
    let pivot = (0..basis.len())
        .filter(|&j| !traces[j].negligible(tol))
        .max_by(|&i, &j| traces[i].magnitude().total_cmp(&traces[j].magnitude()).then(j.cmp(&i)));
    let Some(j0) = pivot else {
        return if s.negligible(tol) { Some(Affine { x0: zero, dirs: basis.to_vec() }) } else { None };
    };
    let x0 = axpy(&(s.clone() / traces[j0].clone()), &basis[j0], &zero);
    let dirs = (0..basis.len())
        .filter(|&j| j != j0)
        .map(|j| axpy(&(-(traces[j].clone() / traces[j0].clone())), &basis[j0], &basis[j]))
        .collect();
    Some(Affine { x0, dirs })
}

/// `det(x0 + Σ t_j W_j) − p = c0 + Σ lin_j t_j + Σ_{j<=k} quad[j][k] t_j t_k`.
#[derive(Debug, Clone)]
pub(crate) struct DetQuadratic<T> {
    pub c0: T,
    pub lin: Vec<T>,
    pub quad: Vec<Vec<T>>,
}

impl<T: Field> DetQuadratic<T> {
    pub fn new(aff: &Affine<T>, p: &T) -> Self {
        let k = aff.dirs.len();
        let quad = (0..k)
            .map(|j| {
                (0..k)
                    .map(|l| match l.cmp(&j) {
                        std::cmp::Ordering::Less => T::zero(),
                        std::cmp::Ordering::Equal => det(&aff.dirs[j]),
                        std::cmp::Ordering::Greater => polar_det(&aff.dirs[j], &aff.dirs[l]),
                    })
                    .collect()
            })
            .collect();
        Self {
            c0: det(&aff.x0) - p.clone(),
            lin: aff.dirs.iter().map(|w| polar_det(&aff.x0, w)).collect(),
            quad,
        }
    }

    pub fn is_constant(&self, tol: f64) -> bool {
        self.lin.iter().all(|x| x.negligible(tol)) && self.quad.iter().flatten().all(|x| x.negligible(tol))
    }
}

pub(crate) fn to_float_affine<T: Field>(aff: &Affine<T>) -> Affine<Complex64> {
    Affine { x0: aff.x0.clone().map(|z| z.to_c64()), dirs: aff.dirs.iter().map(|w| w.clone().map(|z| z.to_c64())).collect() }
}

pub(crate) fn to_float_quadratic<T: Field>(q: &DetQuadratic<T>) -> DetQuadratic<Complex64> {
    DetQuadratic {
        c0: q.c0.to_c64(),
        lin: q.lin.iter().map(Field::to_c64).collect(),
        quad: q.quad.iter().map(|r| r.iter().map(Field::to_c64).collect()).collect(),
    }
}
