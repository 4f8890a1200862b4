//! Minimal dense symmetric solvers for the small normal-equation systems
//! used by the regression kernels (p is a handful of parameters at most).

/// In-place lower Cholesky factorization of a symmetric positive-definite
/// matrix stored row-major in `a` (only the lower triangle is read).
/// Fails when a pivot is not strictly positive.
pub(crate) fn cholesky_in_place(a: &mut [f64], p: usize) -> Result<(), ()> {
    for i in 0..p {
        for j in 0..=i {
            let mut s = a[i * p + j];
            for k in 0..j {
                s -= a[i * p + k] * a[j * p + k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return Err(());
                }
                a[i * p + i] = s.sqrt();
            } else {
                a[i * p + j] = s / a[j * p + j];
            }
        }
    }
    Ok(())
}

/// Solves `A x = b` in place given the Cholesky factor from
/// [`cholesky_in_place`].
pub(crate) fn cholesky_solve_in_place(l: &[f64], p: usize, b: &mut [f64]) {
    for i in 0..p {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * p + k] * b[k];
        }
        b[i] = s / l[i * p + i];
    }
    for i in (0..p).rev() {
        let mut s = b[i];
        for k in i + 1..p {
            s -= l[k * p + i] * b[k];
        }
        b[i] = s / l[i * p + i];
    }
}

/// Full inverse of the factored matrix; used for coefficient covariances.
pub(crate) fn cholesky_inverse(l: &[f64], p: usize) -> Vec<f64> {
    let mut inv = vec![0.0; p * p];
    for col in 0..p {
        let mut e = vec![0.0; p];
        e[col] = 1.0;
        cholesky_solve_in_place(l, p, &mut e);
        for row in 0..p {
            inv[row * p + col] = e[row];
        }
    }
    // symmetrize against rounding drift
    for i in 0..p {
        for j in 0..i {
            let v = 0.5 * (inv[i * p + j] + inv[j * p + i]);
            inv[i * p + j] = v;
            inv[j * p + i] = v;
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_solve_and_invert() {
        // A = [[4,2,0.6],[2,5,1],[0.6,1,3]]
        let a = [4.0, 2.0, 0.6, 2.0, 5.0, 1.0, 0.6, 1.0, 3.0];
        let mut l = a;
        cholesky_in_place(&mut l, 3).unwrap();
        let mut x = [1.0, 2.0, 3.0];
        cholesky_solve_in_place(&l, 3, &mut x);
        // verify A x = b
        let b = [
            4.0 * x[0] + 2.0 * x[1] + 0.6 * x[2],
            2.0 * x[0] + 5.0 * x[1] + 1.0 * x[2],
            0.6 * x[0] + 1.0 * x[1] + 3.0 * x[2],
        ];
        for (got, want) in b.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let inv = cholesky_inverse(&l, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += a[i * 3 + k] * inv[k * 3 + j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_indefinite_matrices() {
        let mut a = [1.0, 2.0, 2.0, 1.0];
        assert!(cholesky_in_place(&mut a, 2).is_err());
    }
}
