//! Exact linear algebra for one and two qubits.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with qubit 1 as the
//! most-significant bit, so `a ⊗ b` always puts `a` on qubit 1. States are
//! compared through [`fidelity`] only, never amplitude by amplitude, since
//! global phase carries no physical meaning.

pub mod jacobi;

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::stream;

/// Complex amplitude or matrix entry.
pub type ComplexScalar = Complex<f64>;

/// Tolerance for structural invariants (normalization, unitarity, trace).
pub const STRUCTURAL_TOLERANCE: f64 = 1e-10;
/// Smallest eigenvalue accepted in a density operator.
pub const PSD_TOLERANCE: f64 = 1e-9;

const fn c64(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

const ZERO: ComplexScalar = c64(0.0, 0.0);
const ONE: ComplexScalar = c64(1.0, 0.0);
const I: ComplexScalar = c64(0.0, 1.0);

fn dimension_to_qubits(dim: usize) -> Result<usize> {
    match dim {
        2 => Ok(1),
        4 => Ok(2),
        _ => Err(Error::DimensionMismatch { left: dim, right: 4 }),
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 1 || n == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedQubitCount(n))
    }
}

fn all_finite<'a>(mut it: impl Iterator<Item = &'a ComplexScalar>) -> bool {
    it.all(|z| z.re.is_finite() && z.im.is_finite())
}

fn max_abs(m: &DMatrix<ComplexScalar>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn trace(m: &DMatrix<ComplexScalar>) -> ComplexScalar {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

// ---------------------------------------------------------------------------
// Pure states

/// Normalized state vector of one or two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<ComplexScalar>,
    qubits: usize,
}

impl PureState {
    /// Validates length, finiteness and normalization.
    pub fn new(amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        let qubits = dimension_to_qubits(amplitudes.len())?;
        if !all_finite(amplitudes.iter()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > STRUCTURAL_TOLERANCE {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            amplitudes: DVector::from_vec(amplitudes),
            qubits,
        })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<ComplexScalar>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Computational basis state `|index⟩` on `qubits` qubits.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(qubits)?;
        let dim = 1 << qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch { left: index, right: dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self::new(amps)
    }

    pub fn zero() -> Self {
        Self::from_bit(false)
    }

    pub fn one() -> Self {
        Self::from_bit(true)
    }

    /// `|0⟩` or `|1⟩`.
    pub fn from_bit(bit: bool) -> Self {
        let amps = if bit { vec![ZERO, ONE] } else { vec![ONE, ZERO] };
        Self::from_vector(DVector::from_vec(amps))
    }

    /// `(|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_vector(DVector::from_vec(vec![c64(h, 0.0), c64(h, 0.0)]))
    }

    pub(crate) fn from_vector(amplitudes: DVector<ComplexScalar>) -> Self {
        let qubits = if amplitudes.len() == 2 { 1 } else { 2 };
        debug_assert!(amplitudes.len() == 2 || amplitudes.len() == 4);
        Self { amplitudes, qubits }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        self.amplitudes.as_slice()
    }

    pub fn vector(&self) -> &DVector<ComplexScalar> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<ComplexScalar> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch {
                left: self.dimension(),
                right: other.dimension(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> DensityOperator {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityOperator::from_matrix_unchecked(m, self.qubits)
    }

    /// Probability of each computational basis index.
    pub fn basis_probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// If the state is `|0⟩` or `|1⟩` up to phase, the bit it encodes.
    pub fn basis_label(&self) -> Option<bool> {
        if self.qubits != 1 {
            return None;
        }
        let p1 = self.amplitudes[1].norm_sqr();
        if p1 < STRUCTURAL_TOLERANCE {
            Some(false)
        } else if (p1 - 1.0).abs() < STRUCTURAL_TOLERANCE {
            Some(true)
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Unitary operators

/// Unitary matrix on one or two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator {
    matrix: DMatrix<ComplexScalar>,
    qubits: usize,
}

impl UnitaryOperator {
    /// Validates shape, finiteness and `U·U† = I` within 1e-10.
    pub fn new(matrix: DMatrix<ComplexScalar>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let qubits = dimension_to_qubits(matrix.nrows())?;
        if !all_finite(matrix.iter()) {
            return Err(Error::NonFinite("unitary matrix"));
        }
        let op = Self { matrix, qubits };
        let dev = op.unitarity_deviation();
        if dev > STRUCTURAL_TOLERANCE {
            return Err(Error::NotUnitary(dev));
        }
        Ok(op)
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<ComplexScalar>) -> Self {
        let qubits = if matrix.nrows() == 2 { 1 } else { 2 };
        Self { matrix, qubits }
    }

    pub fn identity(qubits: usize) -> Result<Self> {
        check_qubit_count(qubits)?;
        let d = 1 << qubits;
        Ok(Self::from_matrix_unchecked(DMatrix::identity(d, d)))
    }

    pub fn matrix(&self) -> &DMatrix<ComplexScalar> {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix_unchecked(self.matrix.adjoint())
    }

    /// Max-entry norm of `U·U† − I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.matrix.nrows();
        max_abs(&(&self.matrix * self.matrix.adjoint() - DMatrix::identity(d, d)))
    }

    pub fn determinant(&self) -> ComplexScalar {
        self.matrix.determinant()
    }

    /// `U|ψ⟩` for a state on the same number of qubits.
    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        if self.qubits != state.qubits {
            return Err(Error::QubitCount {
                expected: self.qubits,
                actual: state.qubits,
            });
        }
        Ok(PureState::from_vector(&self.matrix * &state.amplitudes))
    }
}

impl Mul for &UnitaryOperator {
    type Output = UnitaryOperator;

    /// Matrix product; panics on mismatched sizes.
    fn mul(self, rhs: &UnitaryOperator) -> UnitaryOperator {
        assert_eq!(self.qubits, rhs.qubits, "operator sizes differ");
        UnitaryOperator::from_matrix_unchecked(&self.matrix * &rhs.matrix)
    }
}

// ---------------------------------------------------------------------------
// Pauli algebra

/// One component of the Pauli vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> DMatrix<ComplexScalar> {
        let entries = match self {
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -I, I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        DMatrix::from_row_slice(2, 2, &entries)
    }

    pub fn operator(self) -> UnitaryOperator {
        UnitaryOperator::from_matrix_unchecked(self.matrix())
    }
}

pub fn sigma_x() -> UnitaryOperator {
    Pauli::X.operator()
}

pub fn sigma_y() -> UnitaryOperator {
    Pauli::Y.operator()
}

pub fn sigma_z() -> UnitaryOperator {
    Pauli::Z.operator()
}

/// `(σ_x, σ_y, σ_z)`.
pub fn pauli_vector() -> [UnitaryOperator; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// `v·σ` for a real 3-vector (Hermitian, not unitary unless `|v| = 1`).
pub fn pauli_dot(v: [f64; 3]) -> DMatrix<ComplexScalar> {
    let [x, y, z] = v;
    DMatrix::from_row_slice(2, 2, &[c64(z, 0.0), c64(x, -y), c64(x, y), c64(-z, 0.0)])
}

/// `exp(i·λ·(c·σ))` in closed form.
///
/// With `θ = λ|c|` and `n = c/|c|`, the exponential is
/// `cos θ·I + i sin θ·(n·σ)`, which stays exact for the large `λ|c|` where a
/// truncated series would not. A zero vector gives the identity. The result
/// always has determinant 1.
pub fn pauli_exponential(c: [f64; 3], lambda: f64) -> UnitaryOperator {
    let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    if norm == 0.0 {
        return UnitaryOperator::from_matrix_unchecked(DMatrix::identity(2, 2));
    }
    let theta = lambda * norm;
    let n = [c[0] / norm, c[1] / norm, c[2] / norm];
    let (s, cos) = theta.sin_cos();
    let m = DMatrix::identity(2, 2).scale(cos) + pauli_dot(n) * c64(0.0, s);
    UnitaryOperator::from_matrix_unchecked(m)
}

// ---------------------------------------------------------------------------
// Density operators

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<ComplexScalar>,
    qubits: usize,
}

impl DensityOperator {
    /// Validates Hermiticity (1e-10), trace (1e-10) and eigenvalues (≥ −1e-9).
    pub fn new(matrix: DMatrix<ComplexScalar>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let qubits = dimension_to_qubits(matrix.nrows())?;
        if !all_finite(matrix.iter()) {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm = max_abs(&(&matrix - matrix.adjoint()));
        if herm > STRUCTURAL_TOLERANCE {
            return Err(Error::NotHermitian(herm));
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > STRUCTURAL_TOLERANCE {
            return Err(Error::BadTrace(tr));
        }
        let rho = Self { matrix, qubits };
        let min = rho.raw_eigenvalues()[0];
        if min < -PSD_TOLERANCE {
            return Err(Error::NotPositive(min));
        }
        Ok(rho)
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<ComplexScalar>, qubits: usize) -> Self {
        Self { matrix, qubits }
    }

    /// Replaces `m` by `(m + m†)/2` divided by its trace.
    pub(crate) fn resymmetrized(m: DMatrix<ComplexScalar>, qubits: usize) -> Self {
        let h = (&m + m.adjoint()).scale(0.5);
        let tr = trace(&h).re;
        Self::from_matrix_unchecked(h.unscale(tr), qubits)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(qubits: usize) -> Result<Self> {
        check_qubit_count(qubits)?;
        let d = 1 << qubits;
        Ok(Self::from_matrix_unchecked(
            DMatrix::identity(d, d).unscale(d as f64),
            qubits,
        ))
    }

    /// Single-qubit state `(I + r·σ)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let m = (DMatrix::identity(2, 2) + pauli_dot(r)).scale(0.5);
        Self::new(m)
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must be nonnegative and sum to 1.
    pub fn mixture(entries: &[(f64, &DensityOperator)]) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| crate::error::invalid("empty mixture"))?;
        let dim = first.1.dimension();
        let mut total = 0.0;
        let mut m = DMatrix::zeros(dim, dim);
        for (w, rho) in entries {
            if rho.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: rho.dimension(),
                });
            }
            if !(w.is_finite() && *w >= 0.0) {
                return Err(crate::error::invalid(format!("mixture weight {w}")));
            }
            total += w;
            m += rho.matrix.scale(*w);
        }
        if (total - 1.0).abs() > STRUCTURAL_TOLERANCE {
            return Err(Error::BadDistribution(total));
        }
        Ok(Self::from_matrix_unchecked(m, first.1.qubits))
    }

    pub fn matrix(&self) -> &DMatrix<ComplexScalar> {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        trace(&self.matrix).re
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &UnitaryOperator) -> Result<Self> {
        if u.qubits != self.qubits {
            return Err(Error::QubitCount {
                expected: self.qubits,
                actual: u.qubits,
            });
        }
        Ok(Self::from_matrix_unchecked(
            &u.matrix * &self.matrix * u.matrix.adjoint(),
            self.qubits,
        ))
    }

    /// Eigenvalues in ascending order, unclamped.
    pub fn raw_eigenvalues(&self) -> Vec<f64> {
        if self.qubits == 1 {
            let r = bloch_unchecked(self);
            let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            let half = 0.5 * self.trace();
            vec![half - 0.5 * len, half + 0.5 * len]
        } else {
            jacobi::hermitian_eigen(&self.matrix).values
        }
    }

    /// Eigenvalues clamped to `[0, 1]`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.raw_eigenvalues()
            .into_iter()
            .map(|x| x.clamp(0.0, 1.0))
            .collect()
    }

    /// Max-entry distance to another operator of equal size.
    pub fn max_distance(&self, other: &DensityOperator) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }
}

// ---------------------------------------------------------------------------
// Tensor products

/// Objects that combine under the Kronecker product, first factor on the
/// high-order qubit.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

fn combined_qubits(a: usize, b: usize) -> Result<usize> {
    let n = a + b;
    check_qubit_count(n)?;
    Ok(n)
}

impl Tensor for PureState {
    fn tensor(&self, other: &Self) -> Result<Self> {
        combined_qubits(self.qubits, other.qubits)?;
        Ok(PureState::from_vector(self.amplitudes.kronecker(&other.amplitudes)))
    }
}

impl Tensor for UnitaryOperator {
    fn tensor(&self, other: &Self) -> Result<Self> {
        combined_qubits(self.qubits, other.qubits)?;
        Ok(UnitaryOperator::from_matrix_unchecked(self.matrix.kronecker(&other.matrix)))
    }
}

impl Tensor for DensityOperator {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let n = combined_qubits(self.qubits, other.qubits)?;
        Ok(DensityOperator::from_matrix_unchecked(
            self.matrix.kronecker(&other.matrix),
            n,
        ))
    }
}

/// Any tensorable value, for callers that hold mixed kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumObject {
    State(PureState),
    Operator(UnitaryOperator),
    Density(DensityOperator),
}

/// Kronecker product of two objects of the same kind; mixed kinds are
/// rejected.
pub fn tensor_product(a: &QuantumObject, b: &QuantumObject) -> Result<QuantumObject> {
    use QuantumObject::*;
    match (a, b) {
        (State(x), State(y)) => x.tensor(y).map(State),
        (Operator(x), Operator(y)) => x.tensor(y).map(Operator),
        (Density(x), Density(y)) => x.tensor(y).map(Density),
        _ => Err(Error::MixedOperands),
    }
}

// ---------------------------------------------------------------------------
// Two-qubit operations

fn check_target(target: usize) -> Result<()> {
    if target == 1 || target == 2 {
        Ok(())
    } else {
        Err(Error::InvalidQubit(target))
    }
}

/// Lifts a one-qubit operator to act on `target` (1 or 2) of a pair.
pub fn lift_to_pair(u: &UnitaryOperator, target: usize) -> Result<UnitaryOperator> {
    check_target(target)?;
    if u.qubits != 1 {
        return Err(Error::QubitCount {
            expected: 1,
            actual: u.qubits,
        });
    }
    let id = DMatrix::identity(2, 2);
    let m = if target == 1 {
        u.matrix.kronecker(&id)
    } else {
        id.kronecker(&u.matrix)
    };
    Ok(UnitaryOperator::from_matrix_unchecked(m))
}

/// `(u ⊗ I)|ψ⟩` for `target = 1`, `(I ⊗ u)|ψ⟩` for `target = 2`.
pub fn apply_single_qubit(state: &PureState, u: &UnitaryOperator, target: usize) -> Result<PureState> {
    if state.qubits != 2 {
        return Err(Error::QubitCount {
            expected: 2,
            actual: state.qubits,
        });
    }
    lift_to_pair(u, target)?.apply(state)
}

/// Reduced state of qubit `keep` (1 or 2) of a two-qubit density operator.
pub fn partial_trace(rho: &DensityOperator, keep: usize) -> Result<DensityOperator> {
    check_target(keep)?;
    if rho.qubits != 2 {
        return Err(Error::QubitCount {
            expected: 2,
            actual: rho.qubits,
        });
    }
    let m = &rho.matrix;
    let reduced = DMatrix::from_fn(2, 2, |i, j| {
        (0..2)
            .map(|k| {
                if keep == 1 {
                    m[(2 * i + k, 2 * j + k)]
                } else {
                    m[(2 * k + i, 2 * k + j)]
                }
            })
            .sum()
    });
    Ok(DensityOperator::from_matrix_unchecked(reduced, 1))
}

// ---------------------------------------------------------------------------
// Bell basis

/// Outcome of a Bell-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellOutcome {
    /// `(|00⟩ + |11⟩)/√2`
    PhiPlus,
    /// `(|00⟩ − |11⟩)/√2`
    PhiMinus,
    /// `(|01⟩ + |10⟩)/√2`
    PsiPlus,
    /// `(|01⟩ − |10⟩)/√2`
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];

    pub fn state(self) -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let amps = match self {
            BellOutcome::PhiPlus => [h, 0.0, 0.0, h],
            BellOutcome::PhiMinus => [h, 0.0, 0.0, -h],
            BellOutcome::PsiPlus => [0.0, h, h, 0.0],
            BellOutcome::PsiMinus => [0.0, h, -h, 0.0],
        };
        PureState::from_vector(DVector::from_iterator(4, amps.iter().map(|&a| c64(a, 0.0))))
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BellOutcome::PhiPlus => "PhiPlus",
            BellOutcome::PhiMinus => "PhiMinus",
            BellOutcome::PsiPlus => "PsiPlus",
            BellOutcome::PsiMinus => "PsiMinus",
        };
        f.write_str(s)
    }
}

/// `|⟨bell_k|ψ⟩|²` in the order of [`BellOutcome::ALL`].
pub fn bell_probabilities(state: &PureState) -> Result<[f64; 4]> {
    if state.qubits != 2 {
        return Err(Error::QubitCount {
            expected: 2,
            actual: state.qubits,
        });
    }
    let mut p = [0.0; 4];
    for (slot, outcome) in p.iter_mut().zip(BellOutcome::ALL) {
        *slot = outcome.state().inner(state)?.norm_sqr();
    }
    Ok(p)
}

fn sample_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let total: f64 = probs.iter().sum();
    let u = stream::uniform(rng) * total;
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // u landed in the rounding gap at the top: take the last nonzero outcome
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1)
}

/// Samples a Bell-basis outcome; returns it with its exact probability.
pub fn measure_bell_basis<R: Rng + ?Sized>(state: &PureState, rng: &mut R) -> Result<(BellOutcome, f64)> {
    let probs = bell_probabilities(state)?;
    let k = sample_index(&probs, rng);
    Ok((BellOutcome::ALL[k], probs[k]))
}

/// Samples a computational-basis measurement of a single qubit.
pub fn measure_computational<R: Rng + ?Sized>(state: &PureState, rng: &mut R) -> Result<(bool, f64)> {
    if state.qubits != 1 {
        return Err(Error::QubitCount {
            expected: 1,
            actual: state.qubits,
        });
    }
    let probs = state.basis_probabilities();
    let k = sample_index(&probs, rng);
    Ok((k == 1, probs[k]))
}

// ---------------------------------------------------------------------------
// Scalar functionals

/// `−Σ p log₂ p` over a probability list, with `0 log 0 = 0`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Binary entropy `H₂(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// Von Neumann entropy in bits.
///
/// One qubit uses the Bloch length (eigenvalues `(1 ± |r|)/2`); two qubits
/// use the Jacobi eigensolver. Eigenvalues are clamped to `[0, 1]`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    let s = shannon_entropy(&rho.eigenvalues());
    s.clamp(0.0, rho.qubits as f64)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}

fn bloch_unchecked(rho: &DensityOperator) -> [f64; 3] {
    let mut r = [0.0; 3];
    for (slot, p) in r.iter_mut().zip(Pauli::ALL) {
        *slot = trace(&(&rho.matrix * p.matrix())).re;
    }
    r
}

/// `(Tr ρσ_x, Tr ρσ_y, Tr ρσ_z)` of a single-qubit state.
pub fn bloch_vector(rho: &DensityOperator) -> Result<[f64; 3]> {
    if rho.qubits != 1 {
        return Err(Error::QubitCount {
            expected: 1,
            actual: rho.qubits,
        });
    }
    Ok(bloch_unchecked(rho))
}

pub fn vector_norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
