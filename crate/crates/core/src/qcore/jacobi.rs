//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)`. The element
//! `a_pq = |a_pq| e^{iφ}` is first made real by the phase `diag(1, e^{-iφ})`
//! on the `(p, q)` plane, after which an ordinary real Jacobi rotation
//! diagonalizes the 2×2 block. Sweeps run until the off-diagonal Frobenius
//! norm drops below `OFF_DIAGONAL_TOLERANCE` (scaled by the matrix norm).

use nalgebra::{Complex, DMatrix};

type C64 = Complex<f64>;

pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `A = V diag(values) V†` with ascending `values`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are the orthonormal eigenvectors, in the order of `values`.
    pub vectors: DMatrix<C64>,
}

fn off_diagonal_norm(a: &DMatrix<C64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalizes a Hermitian matrix. Only the Hermitian part of `m` is used.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> HermitianEigen {
    assert!(m.is_square(), "hermitian_eigen needs a square matrix");
    let n = m.nrows();
    let mut a = (m + m.adjoint()).scale(0.5);
    let mut v = DMatrix::<C64>::identity(n, n);
    let scale = a.norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOLERANCE * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / g;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // G = P·R on the (p, q) plane, P = diag(1, conj(phase)),
                // R = [[c, s], [-s, c]].
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;

                // A <- A G (columns p, q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                // A <- G† A (rows p, q)
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                // V <- V G
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// `exp(i t H)` for Hermitian `H`, via its eigen-decomposition.
pub fn hermitian_exp_i(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let eig = hermitian_eigen(h);
    let n = h.nrows();
    let phases = DMatrix::from_fn(n, n, |r, c| {
        if r == c {
            C64::from_polar(1.0, t * eig.values[r])
        } else {
            C64::new(0.0, 0.0)
        }
    });
    &eig.vectors * phases * eig.vectors.adjoint()
}
