//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq`, then applies a
//! real plane rotation that annihilates it:
//!
//! ```text
//! U = diag(1, e^{-iφ}) · [[c, s], [-s, c]]      (acting on rows/cols p, q)
//! A ← U† A U,   V ← V U
//! ```
//!
//! Sweeps stop once the off-diagonal Frobenius norm drops below
//! `OFF_DIAGONAL_TOL · max(1, ‖A‖_F)`.

use crate::error::{Error, Result};

use super::matrix::{CMatrix, C64};

pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues (unsorted, in diagonal order) and the matrix whose columns are
/// the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct JacobiEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix. The input is not checked for
/// Hermiticity; only its upper triangle and real diagonal matter in practice.
pub fn jacobi_eigen(input: &CMatrix) -> Result<JacobiEigen> {
    let n = input.dim();
    let mut a = input.clone();
    let mut v = CMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * input.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    let mut residual = off_diagonal_norm(&a);
    while residual >= threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        residual = off_diagonal_norm(&a);
    }

    let values = (0..n).map(|i| a.get(i, i).re).collect();
    Ok(JacobiEigen {
        values,
        vectors: v,
        sweeps,
    })
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // skip pivots already negligible next to the diagonal
    if g < f64::EPSILON * 1e-2 * (app.abs() + aqq.abs()) {
        a.set(p, q, C64::new(0.0, 0.0));
        a.set(q, p, C64::new(0.0, 0.0));
        return;
    }
    let phase = apq / g; // e^{iφ}
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let e = phase.conj(); // e^{-iφ}
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = e * -s;
    let u_qq = e * c;

    let n = a.dim();
    // A ← A U
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * u_pp + akq * u_qp);
        a.set(k, q, akp * u_pq + akq * u_qq);
    }
    // A ← U† A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, u_pp.conj() * apk + u_qp.conj() * aqk);
        a.set(q, k, u_pq.conj() * apk + u_qq.conj() * aqk);
    }
    a.set(p, q, C64::new(0.0, 0.0));
    a.set(q, p, C64::new(0.0, 0.0));
    a.set(p, p, C64::new(a.get(p, p).re, 0.0));
    a.set(q, q, C64::new(a.get(q, q).re, 0.0));
    // V ← V U
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * u_pp + vkq * u_qp);
        v.set(k, q, vkp * u_pq + vkq * u_qq);
    }
}
