//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's numerics: matrices are plain 2×2
//! arrays and every closed form is evaluated directly.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};

pub type C = Complex<f64>;
pub type M2 = [[C; 2]; 2];

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn identity() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// `i (v·σ)` written out by hand.
fn i_pauli_dot(v: [f64; 3]) -> M2 {
    let i = c(0.0, 1.0);
    [
        [i * v[2], i * c(v[0], -v[1])],
        [i * c(v[0], v[1]), i * -v[2]],
    ]
}

/// `exp(i λ c·σ)` by scaling and squaring a 30-term Taylor series.
///
/// The argument is halved until its norm is at most 1/2, where 30 terms
/// leave a remainder far below 1e-15, then squared back up.
pub fn series_expm(cvec: [f64; 3], lambda: f64) -> M2 {
    let v = cvec.map(|x| x * lambda);
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let scale = 2f64.powi(squarings as i32);
    let a = i_pauli_dot(v.map(|x| x / scale));
    let mut sum = identity();
    let mut term = identity();
    for k in 1..=30 {
        term = mul(&term, &a);
        for row in term.iter_mut() {
            for x in row.iter_mut() {
                *x /= k as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// Largest entrywise modulus of `a − b` where `b` is a library matrix.
pub fn max_diff(a: &M2, b: &DMatrix<C>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[(i, j)]).norm());
        }
    }
    worst
}

/// `H₂(p)` in bits.
pub fn h2(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

/// `E[cos(t|c|)]` for `c` standard normal in three dimensions.
pub fn mean_cos_radial(t: f64) -> f64 {
    (1.0 - t * t) * (-t * t / 2.0).exp()
}

/// Same expectation by midpoint quadrature over the chi(3) density, as a
/// check on the closed form.
pub fn mean_cos_radial_quadrature(t: f64) -> f64 {
    let n = 200_000;
    let upper = 12.0;
    let h = upper / n as f64;
    let norm = (2.0 / std::f64::consts::PI).sqrt();
    (0..n)
        .map(|k| {
            let r = (k as f64 + 0.5) * h;
            norm * r * r * (-r * r / 2.0).exp() * (t * r).cos() * h
        })
        .sum()
}

/// Bloch-vector shrink factor of the averaged noisy channel.
///
/// The channel rotates the Bloch sphere by `2λ|c|` about a uniformly random
/// axis, and averaging a rotation by φ over axes gives `(1 + 2 cos φ)/3`.
pub fn shrink_factor(lambda: f64) -> f64 {
    (1.0 + 2.0 * mean_cos_radial(2.0 * lambda)) / 3.0
}

/// Holevo quantity of the uniform `{|0⟩, |1⟩}` ensemble after the averaged
/// channel: two states with Bloch vectors `(0, 0, ±a)`.
pub fn chi_of_shrink(a: f64) -> f64 {
    1.0 - h2((1.0 + a) / 2.0)
}

/// Expected per-pair success without feedback. The Bell state survives
/// `U ⊗ I` with probability `|Tr U / 2|² = cos²(λ|c|)`.
pub fn no_feedback_success(lambda: f64) -> f64 {
    (1.0 + mean_cos_radial(2.0 * lambda)) / 2.0
}

/// Three-sigma half-width of a proportion estimate.
pub fn three_sigma(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}
