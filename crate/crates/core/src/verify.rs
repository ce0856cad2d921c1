//! Invariant suite run by `qfeedback --command verify`.
//!
//! Each check is sized to finish in well under a second and reports the
//! measured quantity next to the threshold it was held to.

use nalgebra::DMatrix;

use crate::capacity::{classical_baseline_capacity, noisy_subchannel_chi, BlochMap};
use crate::channels::{
    noisy_transmit_member, sample_channel_param, ChannelParam, FlipChannelConfig, NoisyChannelConfig,
};
use crate::protocol::{
    helper_feedback_round, make_singlet, superdense_decode, superdense_encode, verify_undo_identity,
    BellMessage,
};
use crate::qcore::{
    bell_probabilities, partial_trace, pauli_exponential, von_neumann_entropy, ComplexScalar,
    DensityOperator, PureState, Tensor, UnitaryOperator,
};
use crate::report::{render, Format, ReportRow};
use crate::simulation::{run_pipeline, PipelineConfig};
use crate::stream::{standard_normal_pair, stream, uniform, Stream};

/// Outcome of one invariant check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
}

impl CheckResult {
    fn at_most(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            passed: measured <= threshold,
            measured,
            threshold,
        }
    }

    pub fn to_row(&self) -> ReportRow {
        ReportRow::new()
            .with("check", self.name)
            .with("passed", self.passed)
            .with("measured", self.measured)
            .with("threshold", self.threshold)
    }
}

fn random_pure_state(qubits: usize, rng: &mut Stream) -> PureState {
    let dim = 1 << qubits;
    let amps = (0..dim)
        .map(|_| {
            let (re, im) = standard_normal_pair(rng);
            ComplexScalar::new(re, im)
        })
        .collect();
    PureState::normalized(amps).expect("Gaussian vector is nonzero")
}

fn random_density(qubits: usize, rng: &mut Stream) -> DensityOperator {
    let dim = 1 << qubits;
    let k = 1 + (uniform(rng) * dim as f64) as usize;
    let weights: Vec<f64> = (0..k).map(|_| uniform(rng) + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut m = DMatrix::zeros(dim, dim);
    for w in weights {
        m += random_pure_state(qubits, rng).projector().matrix().scale(w / total);
    }
    DensityOperator::new(m).expect("convex mix of projectors")
}

fn random_param(rng: &mut Stream) -> ChannelParam {
    sample_channel_param(rng)
}

fn random_two_qubit_unitary(rng: &mut Stream) -> UnitaryOperator {
    let a = pauli_exponential(random_param(rng).components(), 3.0 * uniform(rng));
    let b = pauli_exponential(random_param(rng).components(), 3.0 * uniform(rng));
    let one = ComplexScalar::new(1.0, 0.0);
    let zero = ComplexScalar::new(0.0, 0.0);
    let cnot = UnitaryOperator::new(DMatrix::from_row_slice(
        4,
        4,
        &[
            one, zero, zero, zero, zero, one, zero, zero, zero, zero, zero, one, zero, zero, one, zero,
        ],
    ))
    .expect("CNOT is unitary");
    &cnot * &a.tensor(&b).expect("two qubits")
}

fn check_unitarity(rng: &mut Stream) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let c = random_param(rng);
        let lambda = 20.0 * uniform(rng);
        let u = pauli_exponential(c.components(), lambda);
        worst = worst
            .max(u.unitarity_deviation())
            .max((u.determinant() - ComplexScalar::new(1.0, 0.0)).norm());
    }
    CheckResult::at_most("pauli_exponential unitary with det 1", worst, 1e-10)
}

fn check_composition(rng: &mut Stream) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let c = random_param(rng).components();
        let (l1, l2) = (10.0 * uniform(rng), 10.0 * uniform(rng));
        let prod = &pauli_exponential(c, l1) * &pauli_exponential(c, l2);
        let sum = pauli_exponential(c, l1 + l2);
        let dev = (prod.matrix() - sum.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    CheckResult::at_most("same-axis rotations compose additively", worst, 1e-9)
}

fn check_normalization(rng: &mut Stream) -> CheckResult {
    let cfg = NoisyChannelConfig::new(10.0).expect("valid lambda");
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let s = random_pure_state(2, rng);
        let out = noisy_transmit_member(&s, 1, &cfg, rng).expect("pair");
        worst = worst.max((out.output_state().norm() - 1.0).abs());
    }
    CheckResult::at_most("channel output stays normalized", worst, 1e-10)
}

fn check_bell_completeness(rng: &mut Stream) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..1_000 {
        let p = bell_probabilities(&random_pure_state(2, rng)).expect("pair");
        worst = worst.max((p.iter().sum::<f64>() - 1.0).abs());
    }
    CheckResult::at_most("Bell probabilities sum to 1", worst, 1e-10)
}

fn check_entropy(rng: &mut Stream) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let rho = random_density(2, rng);
        let s = von_neumann_entropy(&rho);
        if !(0.0..=2.0).contains(&s) {
            worst = f64::INFINITY;
        }
        let u = random_two_qubit_unitary(rng);
        let s2 = von_neumann_entropy(&rho.conjugate(&u).expect("same size"));
        worst = worst.max((s - s2).abs());
    }
    CheckResult::at_most("entropy bounded and unitarily invariant", worst, 1e-9)
}

fn check_partial_trace_linearity(rng: &mut Stream) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let (a, b) = (random_density(2, rng), random_density(2, rng));
        let alpha = uniform(rng);
        let mix = DensityOperator::mixture(&[(alpha, &a), (1.0 - alpha, &b)]).expect("valid mix");
        for keep in [1, 2] {
            let lhs = partial_trace(&mix, keep).expect("pair");
            let ra = partial_trace(&a, keep).expect("pair");
            let rb = partial_trace(&b, keep).expect("pair");
            let rhs = DensityOperator::mixture(&[(alpha, &ra), (1.0 - alpha, &rb)]).expect("valid mix");
            worst = worst.max(lhs.max_distance(&rhs));
        }
    }
    CheckResult::at_most("partial trace is linear", worst, 1e-10)
}

fn check_gaussian_moments(rng: &mut Stream) -> Vec<CheckResult> {
    let n = 100_000;
    let mut sum = [0.0; 3];
    let mut sum_sq = [0.0; 3];
    for _ in 0..n {
        let c = random_param(rng).components();
        for k in 0..3 {
            sum[k] += c[k];
            sum_sq[k] += c[k] * c[k];
        }
    }
    let nf = n as f64;
    let mean_dev = (0..3).map(|k| (sum[k] / nf).abs()).fold(0.0, f64::max);
    let var_dev = (0..3)
        .map(|k| (sum_sq[k] / nf - (sum[k] / nf).powi(2) - 1.0).abs())
        .fold(0.0, f64::max);
    vec![
        CheckResult::at_most("channel vector mean ~ 0", mean_dev, 0.02),
        CheckResult::at_most("channel vector variance ~ 1", var_dev, 0.03),
    ]
}

fn check_undo(rng: &mut Stream) -> CheckResult {
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let c = random_param(rng);
        let lambda = 20.0 * uniform(rng);
        worst = worst.max(1.0 - verify_undo_identity(&c, lambda));
    }
    CheckResult::at_most("undo restores the singlet", worst, 1e-9)
}

fn check_codec(rng: &mut Stream) -> CheckResult {
    let failures = BellMessage::ALL
        .iter()
        .filter(|&&m| {
            let encoded = superdense_encode(m, &make_singlet()).expect("singlet");
            superdense_decode(&encoded, rng).expect("pair") != m
        })
        .count();
    CheckResult::at_most("superdense round trip", failures as f64, 0.0)
}

fn check_isotropy(rng: &mut Stream) -> CheckResult {
    let cfg = NoisyChannelConfig::new(2.0).expect("valid lambda");
    let map = BlochMap::estimate(&cfg, 20_000, rng).expect("samples > 0");
    let diag = [map.linear[0][0], map.linear[1][1], map.linear[2][2]];
    let spread = diag.iter().cloned().fold(f64::MIN, f64::max) - diag.iter().cloned().fold(f64::MAX, f64::min);
    CheckResult::at_most("averaged channel shrinks all directions equally", spread, 0.02)
}

fn check_pipeline(seed: u64) -> Vec<CheckResult> {
    let cfg = NoisyChannelConfig::new(10.0).expect("valid lambda");
    let with = run_pipeline(&PipelineConfig::new(1000, cfg, true), seed).expect("valid pipeline");
    let without = run_pipeline(&PipelineConfig::new(1000, cfg, false), seed).expect("valid pipeline");
    vec![
        CheckResult::at_most("pipeline with feedback: 1.998 bits/slot", (with.throughput() - 1.998).abs(), 0.0),
        CheckResult::at_most("pipeline without feedback: 1 bit/slot", (without.throughput() - 1.0).abs(), 0.0),
        CheckResult::at_most("pipeline causality violations", (!with.is_causal()) as u8 as f64, 0.0),
    ]
}

fn check_baseline(rng: &mut Stream) -> Vec<CheckResult> {
    let off = classical_baseline_capacity(false, 10_000, rng).expect("valid baseline");
    let on = classical_baseline_capacity(true, 10_000, rng).expect("valid baseline");
    vec![
        CheckResult::at_most("classical baseline without feedback", (off - 1.0).abs(), 0.0),
        CheckResult::at_most("classical baseline with feedback", (on - 1.0).abs(), 0.02),
    ]
}

fn check_helpers(rng: &mut Stream) -> Vec<CheckResult> {
    let cfg = FlipChannelConfig::default();
    let rounds = 10_000;
    let mut misses = 0;
    let mut blind = 0;
    for i in 0..rounds {
        let r = helper_feedback_round(&cfg, i % 2 == 1, rng).expect("one helper");
        misses += (r.inferred_flip != r.true_flip) as usize;
        blind += r.receiver_blind_guess_correct as usize;
    }
    vec![
        CheckResult::at_most("transmitter flip inference misses", misses as f64, 0.0),
        CheckResult::at_most("receiver blind guess ~ 1/2", (blind as f64 / rounds as f64 - 0.5).abs(), 0.015),
    ]
}

fn check_chi_at_zero(seed: u64) -> CheckResult {
    let rec = noisy_subchannel_chi(0.0, 1_000, seed).expect("valid sweep point");
    CheckResult::at_most("chi(lambda = 0) = 1", (rec.chi_bits - 1.0).abs(), 1e-6)
}

fn check_reproducibility(seed: u64) -> CheckResult {
    let render_once = || {
        let recs = crate::capacity::lambda_sweep(&[0.0, 1.0, 2.0], 1_000, seed).expect("valid sweep");
        let rows: Vec<ReportRow> = recs
            .iter()
            .map(|r| ReportRow::new().with("lambda", r.lambda).with("chi_bits", r.chi_bits))
            .collect();
        render(&rows, Format::Csv).expect("finite rows")
    };
    let same = render_once() == render_once();
    CheckResult::at_most("report bytes reproducible", (!same) as u8 as f64, 0.0)
}

/// Runs every check with streams derived from `seed`.
pub fn run_suite(seed: u64) -> Vec<CheckResult> {
    let rng = |i: u64| stream(seed, 100 + i);
    let mut out = vec![
        check_unitarity(&mut rng(0)),
        check_composition(&mut rng(1)),
        check_normalization(&mut rng(2)),
        check_bell_completeness(&mut rng(3)),
        check_entropy(&mut rng(4)),
        check_partial_trace_linearity(&mut rng(5)),
    ];
    out.extend(check_gaussian_moments(&mut rng(6)));
    out.push(check_undo(&mut rng(7)));
    out.push(check_codec(&mut rng(8)));
    out.push(check_isotropy(&mut rng(9)));
    out.extend(check_pipeline(seed));
    out.extend(check_baseline(&mut rng(10)));
    out.extend(check_helpers(&mut rng(11)));
    out.push(check_chi_at_zero(seed));
    out.push(check_reproducibility(seed));
    out
}
