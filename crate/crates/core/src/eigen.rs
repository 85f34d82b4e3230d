//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! Dimensions of interest stay small (≤ ~64 directly, a few hundred for
//! marginals of purifications), where Jacobi is simple, backward stable, and
//! accurate enough that reconstruction error sits at machine scale.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns the real eigenvalues sorted descending and a matrix whose columns
/// are the matching orthonormal eigenvectors, so `m = V Λ V†`. Inside
/// degenerate eigenspaces any orthonormal basis may come back; no
/// canonicalization is attempted. The input must be Hermitian with asymmetry
/// at most `herm_tol` in max-entry norm (the computation then proceeds on the
/// Hermitian part `(m + m†)/2`).
pub fn hermitian_eig<T: Scalar>(
    m: &ComplexMatrix<T>,
    herm_tol: T,
) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermiticity_defect();
    if !(defect <= herm_tol) {
        return Err(Error::NotHermitian {
            defect: defect.to_f64().unwrap_or(f64::NAN),
            tol: herm_tol.to_f64().unwrap_or(f64::NAN),
        });
    }

    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::<T>::identity(n);
    let scale = a.frobenius_norm();
    let tiny = T::epsilon() * scale;

    if scale > T::zero() {
        for _ in 0..MAX_SWEEPS {
            if off_norm(&a) <= tiny {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let lambdas: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| lambdas[j].partial_cmp(&lambdas[i]).unwrap());

    let eigenvalues: Vec<T> = order.iter().map(|&i| lambdas[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((eigenvalues, eigenvectors))
}

/// Frobenius norm of the off-diagonal part.
fn off_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc = acc + a[(p, q)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing the (p,q) entry of the Hermitian matrix `a`,
/// accumulated into `v`.
fn rotate<T: Scalar>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm_sqr().sqrt();
    if mag == T::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    // Negligible against both diagonal entries: flush to zero.
    let g = T::from(100.0).unwrap() * mag;
    if app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
        let zero = Complex::new(T::zero(), T::zero());
        a[(p, q)] = zero;
        a[(q, p)] = zero;
        return;
    }

    // Phase factor u = a_pq / |a_pq| reduces the 2x2 block to the real
    // symmetric case, solved by the classical rotation.
    let u = apq / mag;
    let tau = (aqq - app) / (mag + mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let cs = Complex::new(c, T::zero());
    let su_conj = u.conj() * s;
    let su = u * s;

    let n = a.rows();
    // Columns p and q of a: right-multiply by the rotation
    // [[c, s], [-s·ū, c·ū]] embedded at (p, q).
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cs - akq * su_conj;
        a[(k, q)] = akp.scale(s) + akq * (cs * u.conj());
    }
    // Rows p and q: left-multiply by its adjoint [[c, -s·u], [s, c·u]].
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cs - aqk * su;
        a[(q, k)] = apk.scale(s) + aqk * (cs * u);
    }
    // The rotation annihilates (p,q) analytically; pin it there.
    let zero = Complex::new(T::zero(), T::zero());
    a[(p, q)] = zero;
    a[(q, p)] = zero;
    a[(p, p)] = Complex::new(app - t * mag, T::zero());
    a[(q, q)] = Complex::new(aqq + t * mag, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cs - vkq * su_conj;
        v[(k, q)] = vkp.scale(s) + vkq * (cs * u.conj());
    }
}
