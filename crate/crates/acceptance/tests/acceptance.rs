//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::time::Instant;

use qfeedback::capacity::{classical_baseline_capacity, noisy_subchannel_chi};
use qfeedback::channels::{sample_channel_param, FlipChannelConfig, NoisyChannelConfig};
use qfeedback::protocol::{
    helper_feedback_round, make_singlet, run_pair_protocol, superdense_decode, superdense_encode,
    verify_undo_identity, BellMessage,
};
use qfeedback::qcore::bell_probabilities;
use qfeedback::simulation::{run_pipeline, PipelineConfig};
use qfeedback::stream::{stream, uniform};
use qfeedback::verify::run_suite;

const SEED: u64 = 42;

struct Verdict {
    passed: bool,
    line: String,
}

fn verdict(id: u32, name: &str, passed: bool, detail: String) -> Verdict {
    let tag = if passed { "PASS" } else { "FAIL" };
    Verdict {
        passed,
        line: format!("criterion {id} {tag} {name}: {detail}"),
    }
}

fn criterion_1_undo_identity() -> Verdict {
    let start = Instant::now();
    let mut rng = stream(SEED, 1);
    let mut worst: f64 = 1.0;
    for _ in 0..10_000 {
        let c = sample_channel_param(&mut rng);
        let lambda = 20.0 * uniform(&mut rng);
        worst = worst.min(verify_undo_identity(&c, lambda));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        "undo identity",
        worst >= 1.0 - 1e-9 && secs < 1.0,
        format!("min fidelity {worst:.15} (need >= 1 - 1e-9), {secs:.3} s (need < 1 s)"),
    )
}

fn criterion_2_superdense_round_trip() -> Verdict {
    let mut rng = stream(SEED, 2);
    let singlet = make_singlet();
    let mut exact = 0;
    for m in BellMessage::ALL {
        let encoded = superdense_encode(m, &singlet).unwrap();
        let deterministic = bell_probabilities(&encoded)
            .unwrap()
            .iter()
            .any(|&p| (p - 1.0).abs() < 1e-12);
        let decoded = superdense_decode(&encoded, &mut rng).unwrap();
        exact += (deterministic && decoded == m) as usize;
    }
    verdict(2, "superdense round trip", exact == 4, format!("{exact}/4 messages exact"))
}

fn criterion_3_capacity_doubling() -> Verdict {
    let start = Instant::now();
    let cfg = NoisyChannelConfig::new(10.0).unwrap();
    let on = run_pipeline(&PipelineConfig::new(1000, cfg, true), SEED).unwrap();
    let off = run_pipeline(&PipelineConfig::new(1000, cfg, false), SEED).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let passed = on.throughput() == 2.0 * 999.0 / 1000.0
        && on.message_errors() == 0
        && off.throughput() == 1.0
        && secs < 10.0;
    verdict(
        3,
        "capacity doubling",
        passed,
        format!(
            "feedback on {} bits/slot with {} errors (need 1.998, 0), feedback off {} bits/slot (need 1.0), {secs:.3} s",
            on.throughput(),
            on.message_errors(),
            off.throughput()
        ),
    )
}

fn criterion_4_noisy_subchannel_collapse() -> Verdict {
    let start = Instant::now();
    let at_zero = noisy_subchannel_chi(0.0, 100_000, SEED).unwrap().chi_bits;
    let at_five = noisy_subchannel_chi(5.0, 100_000, SEED).unwrap().chi_bits;
    let secs = start.elapsed().as_secs_f64();
    let passed = (at_zero - 1.0).abs() <= 1e-6 && at_five < 0.01 && secs < 60.0;
    verdict(
        4,
        "noisy subchannel capacity collapse",
        passed,
        format!("chi(0) = {at_zero:.9} (need 1 +- 1e-6), chi(5) = {at_five:.6} (need < 0.01), {secs:.3} s"),
    )
}

fn criterion_5_no_feedback_error_floor() -> Verdict {
    let start = Instant::now();
    let cfg = NoisyChannelConfig::new(10.0).unwrap();
    let mut rng = stream(SEED, 5);
    let mut messages = stream(SEED, 50);
    let n = 10_000;
    let errors = (0..n)
        .filter(|_| {
            let m = BellMessage::random(&mut messages);
            !run_pair_protocol(m, &cfg, false, &mut rng).unwrap().is_correct()
        })
        .count();
    let rate = errors as f64 / n as f64;
    let secs = start.elapsed().as_secs_f64();
    verdict(
        5,
        "no-feedback error floor",
        (rate - 0.75).abs() <= 0.02 && secs < 30.0,
        format!("error rate {rate:.4} over {n} pairs (need 0.75 +- 0.02), {secs:.3} s"),
    )
}

fn criterion_6_classical_no_gain() -> Verdict {
    let start = Instant::now();
    let off = classical_baseline_capacity(false, 10_000, &mut stream(SEED, 6)).unwrap();
    let on = classical_baseline_capacity(true, 10_000, &mut stream(SEED, 60)).unwrap();
    let secs = start.elapsed().as_secs_f64();
    verdict(
        6,
        "classical no-gain baseline",
        off == 1.0 && (on - 1.0).abs() <= 0.02 && secs < 5.0,
        format!("without feedback {off} (need 1.0), with retransmission {on} (need 1.0 +- 0.02), {secs:.3} s"),
    )
}

fn criterion_7_helper_qubit_feedback() -> Verdict {
    let cfg = FlipChannelConfig::default();
    let mut rng = stream(SEED, 7);
    let n = 10_000;
    let (mut inferred, mut blind) = (0usize, 0usize);
    for round in 0..n {
        let r = helper_feedback_round(&cfg, round % 2 == 1, &mut rng).unwrap();
        inferred += (r.inferred_flip == r.true_flip) as usize;
        blind += r.receiver_blind_guess_correct as usize;
    }
    let accuracy = blind as f64 / n as f64;
    verdict(
        7,
        "helper-qubit feedback",
        inferred == n && (accuracy - 0.5).abs() <= 0.015,
        format!("transmitter inference {inferred}/{n} (need all), receiver blind accuracy {accuracy:.4} (need 0.5 +- 0.015)"),
    )
}

fn criterion_8_property_suite() -> Verdict {
    let checks = run_suite(SEED);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    verdict(
        8,
        "property suite",
        failed.is_empty(),
        format!("{} checks, failed: {failed:?}", checks.len()),
    )
}

fn main() {
    let criteria: [fn() -> Verdict; 8] = [
        criterion_1_undo_identity,
        criterion_2_superdense_round_trip,
        criterion_3_capacity_doubling,
        criterion_4_noisy_subchannel_collapse,
        criterion_5_no_feedback_error_floor,
        criterion_6_classical_no_gain,
        criterion_7_helper_qubit_feedback,
        criterion_8_property_suite,
    ];
    let mut failed = 0;
    for run in criteria {
        let v = run();
        println!("{}", v.line);
        failed += (!v.passed) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
