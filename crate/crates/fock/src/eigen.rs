//! Cyclic Jacobi eigendecomposition for real symmetric matrices.
//!
//! The number-basis states handled by this crate are exactly rank-deficient
//! and full of structural zeros, a regime where shifted-QR implementations
//! can emit NaNs. Jacobi rotations never divide by a vanishing pivot, skip
//! entries that are already negligible, and converge unconditionally, which
//! makes them the right tool for a validation layer; the O(n³)-per-sweep
//! cost is irrelevant at these sizes because the sweeps only do work where
//! off-diagonal mass actually sits.

use nalgebra::DMatrix;

pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    /// Orthogonal; column `j` pairs with `eigenvalues[j]`.
    pub eigenvectors: DMatrix<f64>,
}

const MAX_SWEEPS: usize = 64;

pub fn decompose(matrix: &DMatrix<f64>) -> SymmetricEigen {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    let mut a = matrix.clone();
    let mut v = DMatrix::<f64>::identity(n, n);

    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off == 0.0 {
            break;
        }
        // first sweeps rotate only the dominant entries
        let threshold = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = 100.0 * apq.abs();
                // entry negligible against both diagonals: zero it for good
                if sweep > 3
                    && a[(p, p)].abs() + g == a[(p, p)].abs()
                    && a[(q, q)].abs() + g == a[(q, q)].abs()
                {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                if apq * apq <= threshold {
                    continue;
                }
                let h = a[(q, q)] - a[(p, p)];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp - s * (akq + tau * akp);
                        a[(p, k)] = a[(k, p)];
                        a[(k, q)] = akq + s * (akp - tau * akq);
                        a[(q, k)] = a[(k, q)];
                    }
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp - s * (vkq + tau * vkp);
                    v[(k, q)] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    SymmetricEigen {
        eigenvalues: (0..n).map(|i| a[(i, i)]).collect(),
        eigenvectors: v,
    }
}
