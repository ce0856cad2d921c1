mod common;

use std::f64::consts::PI;

use common::{c, max_diff, series_expm};
use nalgebra::DMatrix;
use qfeedback::qcore::jacobi::{hermitian_eigen, hermitian_exp_i};
use qfeedback::qcore::{
    apply_single_qubit, bell_probabilities, fidelity, lift_to_pair, partial_trace, pauli_dot,
    pauli_exponential, sigma_x, tensor_product, von_neumann_entropy, BellOutcome, DensityOperator,
    Pauli, PureState, QuantumObject, Tensor, UnitaryOperator,
};
use qfeedback::stream::{standard_normal_pair, stream, uniform};
use qfeedback::Error;

#[test]
fn exponential_of_z_at_pi_is_minus_identity() {
    let u = pauli_exponential([0.0, 0.0, 1.0], PI);
    let oracle = series_expm([0.0, 0.0, 1.0], PI);
    assert!(max_diff(&oracle, u.matrix()) < 1e-12);
    let minus_i = [[c(-1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
    assert!(max_diff(&minus_i, u.matrix()) < 1e-12);
}

#[test]
fn exponential_of_x_at_half_pi_is_i_sigma_x() {
    let u = pauli_exponential([1.0, 0.0, 0.0], PI / 2.0);
    let expected = [[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
    assert!(max_diff(&expected, u.matrix()) < 1e-12);
    assert!(max_diff(&series_expm([1.0, 0.0, 0.0], PI / 2.0), u.matrix()) < 1e-12);
}

#[test]
fn exponential_matches_series_oracle_on_random_arguments() {
    let mut rng = stream(11, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let (x, y) = standard_normal_pair(&mut rng);
        let (z, _) = standard_normal_pair(&mut rng);
        let lambda = 10.0 * uniform(&mut rng);
        let u = pauli_exponential([x, y, z], lambda);
        worst = worst.max(max_diff(&series_expm([x, y, z], lambda), u.matrix()));
    }
    assert!(worst < 1e-9, "worst deviation {worst:e}");
}

#[test]
fn exponential_matches_eigendecomposition() {
    let mut rng = stream(12, 0);
    for _ in 0..200 {
        let (x, y) = standard_normal_pair(&mut rng);
        let (z, _) = standard_normal_pair(&mut rng);
        let lambda = 5.0 * uniform(&mut rng);
        let closed = pauli_exponential([x, y, z], lambda);
        let spectral = hermitian_exp_i(&pauli_dot([x, y, z]), lambda);
        assert!((closed.matrix() - spectral).camax() < 1e-10);
    }
}

#[test]
fn exponential_is_special_unitary() {
    let mut rng = stream(13, 0);
    for _ in 0..500 {
        let (x, y) = standard_normal_pair(&mut rng);
        let (z, _) = standard_normal_pair(&mut rng);
        let u = pauli_exponential([x, y, z], 20.0 * uniform(&mut rng));
        assert!(u.unitarity_deviation() < 1e-12);
        assert!((u.determinant() - c(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn jacobi_agrees_with_nalgebra() {
    let mut rng = stream(14, 0);
    for _ in 0..100 {
        let mut m = DMatrix::from_fn(4, 4, |_, _| {
            let (a, b) = standard_normal_pair(&mut rng);
            c(a, b)
        });
        m = &m + m.adjoint();
        let ours = hermitian_eigen(&m).values;
        let mut theirs: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-9, "{ours:?} vs {theirs:?}");
        }
    }
}

#[test]
fn state_validation() {
    assert!(matches!(
        PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
        Err(Error::NotNormalized(_))
    ));
    assert!(matches!(
        PureState::new(vec![c(1.0, 0.0); 3]),
        Err(Error::DimensionMismatch { left: 3, .. })
    ));
    assert!(matches!(
        PureState::new(vec![c(f64::NAN, 0.0), c(0.0, 0.0)]),
        Err(Error::NonFinite(_))
    ));
    assert!(PureState::normalized(vec![c(0.0, 0.0); 2]).is_err());
}

#[test]
fn tensor_products_and_mixed_kinds() {
    let z = PureState::zero();
    let o = PureState::one();
    let zo = z.tensor(&o).unwrap();
    assert_eq!(zo.basis_probabilities(), vec![0.0, 1.0, 0.0, 0.0]);
    assert!(zo.tensor(&z).is_err());
    let mixed = tensor_product(
        &QuantumObject::State(z.clone()),
        &QuantumObject::Operator(sigma_x()),
    );
    assert!(matches!(mixed, Err(Error::MixedOperands)));
}

#[test]
fn lift_matches_kronecker_convention() {
    let x = sigma_x();
    let id = UnitaryOperator::identity(1).unwrap();
    let on_first = lift_to_pair(&x, 1).unwrap();
    assert_eq!(on_first.matrix(), x.tensor(&id).unwrap().matrix());
    let on_second = lift_to_pair(&x, 2).unwrap();
    assert_eq!(on_second.matrix(), id.tensor(&x).unwrap().matrix());
    // qubit 1 is the most significant bit: X on qubit 1 sends |00> to |10>
    let s = apply_single_qubit(&PureState::basis(2, 0).unwrap(), &x, 1).unwrap();
    assert_eq!(s.basis_probabilities(), vec![0.0, 0.0, 1.0, 0.0]);
}

#[test]
fn bell_states_are_orthonormal_and_complete() {
    for a in BellOutcome::ALL {
        let p = bell_probabilities(&a.state()).unwrap();
        for (b, pb) in BellOutcome::ALL.iter().zip(p) {
            let expected = if a == *b { 1.0 } else { 0.0 };
            assert!((pb - expected).abs() < 1e-12);
        }
        assert!((fidelity(&a.state(), &a.state()).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn entropies_of_reduced_states() {
    let singlet = BellOutcome::PsiMinus.state().projector();
    for keep in [1, 2] {
        let reduced = partial_trace(&singlet, keep).unwrap();
        assert!((von_neumann_entropy(&reduced) - 1.0).abs() < 1e-12);
    }
    let product = PureState::zero().tensor(&PureState::plus()).unwrap().projector();
    assert!(von_neumann_entropy(&partial_trace(&product, 2).unwrap()).abs() < 1e-12);
    let mixed = DensityOperator::maximally_mixed(2).unwrap();
    assert!((von_neumann_entropy(&mixed) - 2.0).abs() < 1e-12);
}

#[test]
fn density_validation() {
    let not_psd = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.5, 0.0), c(-0.5, 0.0)]));
    assert!(matches!(DensityOperator::new(not_psd), Err(Error::NotPositive(_))));
    let bad_trace = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5, 0.0), c(0.0, 0.0)]));
    assert!(matches!(DensityOperator::new(bad_trace), Err(Error::BadTrace(_))));
    let y = Pauli::Y.matrix();
    assert!(UnitaryOperator::new(y.scale(2.0)).is_err());
}
