//! Information measures: Holevo quantity of the noisy subchannel, plug-in
//! mutual information, and the classical two-subchannel baseline.

use rand::Rng;

use crate::channels::{averaged_channel, bsc_transmit, sample_channel_param, NoisyChannelConfig};
use crate::error::{invalid, Error, Result};
use crate::qcore::{
    binary_entropy, bloch_vector, von_neumann_entropy, DensityOperator, PureState,
    STRUCTURAL_TOLERANCE,
};
use crate::stream::{coin, stream, Stream};

/// Smallest Monte Carlo sample count accepted for χ estimates.
pub const MIN_MC_SAMPLES: usize = 1_000;

/// Weighted set of states of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    entries: Vec<(f64, DensityOperator)>,
}

impl Ensemble {
    pub fn new(entries: Vec<(f64, DensityOperator)>) -> Result<Self> {
        let dim = entries
            .first()
            .map(|(_, rho)| rho.dimension())
            .ok_or_else(|| invalid("empty ensemble"))?;
        let mut total = 0.0;
        for (p, rho) in &entries {
            if rho.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: rho.dimension(),
                });
            }
            if !(p.is_finite() && *p >= 0.0) {
                return Err(invalid(format!("ensemble probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > STRUCTURAL_TOLERANCE {
            return Err(Error::BadDistribution(total));
        }
        Ok(Self { entries })
    }

    /// Equal-weight ensemble of the given states.
    pub fn uniform(states: Vec<DensityOperator>) -> Result<Self> {
        let p = 1.0 / states.len().max(1) as f64;
        Self::new(states.into_iter().map(|s| (p, s)).collect())
    }

    pub fn entries(&self) -> &[(f64, DensityOperator)] {
        &self.entries
    }

    /// `Σ pᵢ ρᵢ`.
    pub fn average(&self) -> DensityOperator {
        let refs: Vec<(f64, &DensityOperator)> = self.entries.iter().map(|(p, r)| (*p, r)).collect();
        DensityOperator::mixture(&refs).expect("validated at construction")
    }
}

/// `χ = S(Σ pᵢρᵢ) − Σ pᵢ S(ρᵢ)` in bits, clamped to `[0, log₂ dim]`.
pub fn holevo_quantity(e: &Ensemble) -> f64 {
    let mixed = von_neumann_entropy(&e.average());
    let conditional: f64 = e
        .entries
        .iter()
        .map(|(p, rho)| p * von_neumann_entropy(rho))
        .sum();
    let max = (e.average().dimension() as f64).log2();
    (mixed - conditional).clamp(0.0, max)
}

/// One point of a χ-versus-λ sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub lambda: f64,
    pub chi_bits: f64,
    pub mc_samples: usize,
    pub seed: u64,
}

fn chi_with_stream(lambda: f64, mc_samples: usize, rng: &mut Stream, seed: u64) -> Result<SweepRecord> {
    if mc_samples < MIN_MC_SAMPLES {
        return Err(invalid(format!(
            "need at least {MIN_MC_SAMPLES} Monte Carlo samples, got {mc_samples}"
        )));
    }
    let cfg = NoisyChannelConfig::new(lambda)?;
    // both inputs see the same channel draws
    let out0 = averaged_channel(&cfg, &PureState::zero().projector(), mc_samples, &mut rng.clone())?;
    let out1 = averaged_channel(&cfg, &PureState::one().projector(), mc_samples, rng)?;
    let chi = holevo_quantity(&Ensemble::uniform(vec![out0, out1])?);
    Ok(SweepRecord {
        lambda,
        chi_bits: chi,
        mc_samples,
        seed,
    })
}

/// χ of the uniform `{|0⟩, |1⟩}` ensemble after the averaged noisy
/// subchannel, estimated on stream `(seed, 0)`.
pub fn noisy_subchannel_chi(lambda: f64, mc_samples: usize, seed: u64) -> Result<SweepRecord> {
    chi_with_stream(lambda, mc_samples, &mut stream(seed, 0), seed)
}

/// [`noisy_subchannel_chi`] over a grid; point `i` uses stream `(seed, i)`.
pub fn lambda_sweep(lambdas: &[f64], mc_samples: usize, seed: u64) -> Result<Vec<SweepRecord>> {
    if lambdas.is_empty() {
        return Err(invalid("lambda grid is empty"));
    }
    lambdas
        .iter()
        .enumerate()
        .map(|(i, &lambda)| chi_with_stream(lambda, mc_samples, &mut stream(seed, i as u64), seed))
        .collect()
}

/// Monte Carlo estimate of the averaged noisy subchannel as an affine map on
/// Bloch vectors, `r ↦ M r + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochMap {
    pub linear: [[f64; 3]; 3],
    pub offset: [f64; 3],
}

impl BlochMap {
    pub fn estimate<R: Rng + ?Sized>(cfg: &NoisyChannelConfig, n_samples: usize, rng: &mut R) -> Result<Self> {
        if n_samples == 0 {
            return Err(invalid("BlochMap::estimate needs at least one sample"));
        }
        let inputs = [
            DensityOperator::from_bloch([1.0, 0.0, 0.0])?,
            DensityOperator::from_bloch([0.0, 1.0, 0.0])?,
            DensityOperator::from_bloch([0.0, 0.0, 1.0])?,
            DensityOperator::maximally_mixed(1)?,
        ];
        let mut sums = [[0.0; 3]; 4];
        for _ in 0..n_samples {
            let u = sample_channel_param(rng).unitary(cfg.lambda());
            for (input, sum) in inputs.iter().zip(sums.iter_mut()) {
                let r = bloch_vector(&input.conjugate(&u)?)?;
                for k in 0..3 {
                    sum[k] += r[k];
                }
            }
        }
        let n = n_samples as f64;
        let offset = sums[3].map(|x| x / n);
        let mut linear = [[0.0; 3]; 3];
        for col in 0..3 {
            for row in 0..3 {
                linear[row][col] = sums[col][row] / n - offset[row];
            }
        }
        Ok(Self { linear, offset })
    }

    pub fn apply(&self, r: [f64; 3]) -> [f64; 3] {
        let mut out = self.offset;
        for row in 0..3 {
            for col in 0..3 {
                out[row] += self.linear[row][col] * r[col];
            }
        }
        out
    }
}

fn qubit_entropy_from_bloch(r: [f64; 3]) -> f64 {
    let len = crate::qcore::vector_norm(r).min(1.0);
    binary_entropy((1.0 + len) / 2.0)
}

/// Best equal-prior binary χ over pairs of pure inputs on a Bloch-sphere
/// grid (`polar` polar angles including both poles × `azimuthal` azimuths).
pub fn optimized_binary_chi(map: &BlochMap, polar: usize, azimuthal: usize) -> f64 {
    let mut points = Vec::with_capacity(polar * azimuthal);
    for i in 0..polar {
        let theta = std::f64::consts::PI * i as f64 / (polar.max(2) - 1) as f64;
        for j in 0..azimuthal {
            let phi = std::f64::consts::TAU * j as f64 / azimuthal as f64;
            let input = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let out = map.apply(input);
            points.push((out, qubit_entropy_from_bloch(out)));
        }
    }
    let mut best: f64 = 0.0;
    for (a, (ra, sa)) in points.iter().enumerate() {
        for (rb, sb) in &points[a + 1..] {
            let mid = [(ra[0] + rb[0]) / 2.0, (ra[1] + rb[1]) / 2.0, (ra[2] + rb[2]) / 2.0];
            best = best.max(qubit_entropy_from_bloch(mid) - (sa + sb) / 2.0);
        }
    }
    best
}

/// Contingency table of (input, output) symbol counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointCounts {
    counts: Vec<Vec<u64>>,
}

impl JointCounts {
    pub fn new(counts: Vec<Vec<u64>>) -> Result<Self> {
        let cols = counts.first().map(Vec::len).unwrap_or(0);
        if cols == 0 || counts.iter().any(|row| row.len() != cols) {
            return Err(invalid("joint counts must be a nonempty rectangular table"));
        }
        if counts.iter().flatten().sum::<u64>() == 0 {
            return Err(invalid("joint counts total is zero"));
        }
        Ok(Self { counts })
    }

    /// Tallies `(x, y)` pairs into an `nx × ny` table.
    pub fn tally(pairs: impl IntoIterator<Item = (usize, usize)>, nx: usize, ny: usize) -> Result<Self> {
        let mut counts = vec![vec![0u64; ny]; nx];
        for (x, y) in pairs {
            if x >= nx || y >= ny {
                return Err(invalid(format!("symbol ({x}, {y}) outside {nx}x{ny} table")));
            }
            counts[x][y] += 1;
        }
        Self::new(counts)
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// Plug-in estimate `Σ p(x,y) log₂[p(x,y) / p(x)p(y)]`.
pub fn empirical_mutual_information(j: &JointCounts) -> f64 {
    let total = j.total() as f64;
    let nx = j.counts.len();
    let ny = j.counts[0].len();
    let px: Vec<f64> = j.counts.iter().map(|row| row.iter().sum::<u64>() as f64 / total).collect();
    let py: Vec<f64> = (0..ny)
        .map(|y| (0..nx).map(|x| j.counts[x][y]).sum::<u64>() as f64 / total)
        .collect();
    let mut mi = 0.0;
    for x in 0..nx {
        for y in 0..ny {
            let pxy = j.counts[x][y] as f64 / total;
            if pxy > 0.0 {
                mi += pxy * (pxy / (px[x] * py[y])).log2();
            }
        }
    }
    mi.max(0.0)
}

/// What the quiet subchannel carried in a baseline slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuietPayloadKind {
    Fresh,
    Correction,
}

impl QuietPayloadKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QuietPayloadKind::Fresh => "fresh",
            QuietPayloadKind::Correction => "correction",
        }
    }
}

/// Classical two-subchannel system: a BSC and a noiseless binary channel,
/// one bit per slot each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineConfig {
    pub n_slots: usize,
    pub flip_probability: f64,
    pub feedback_enabled: bool,
}

impl BaselineConfig {
    /// Fair-coin BSC, the extremely noisy case.
    pub fn new(n_slots: usize, feedback_enabled: bool) -> Self {
        Self {
            n_slots,
            flip_probability: 0.5,
            feedback_enabled,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaselineSlot {
    pub slot: usize,
    /// `None` when the noisy subchannel is unused.
    pub noisy_bit_in: Option<bool>,
    pub noisy_bit_out: Option<bool>,
    pub quiet_payload_kind: QuietPayloadKind,
    /// New data bits the receiver decoded correctly during this slot.
    pub novel_bits_delivered: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineLog {
    pub config: BaselineConfig,
    pub slots: Vec<BaselineSlot>,
    pub novel_bits: usize,
}

impl BaselineLog {
    pub fn throughput(&self) -> f64 {
        self.novel_bits as f64 / self.config.n_slots as f64
    }
}

/// Simulates the classical system.
///
/// Without feedback the noisy subchannel is ignored and the quiet one carries
/// a fresh bit every slot. With feedback both carry data; the transmitter
/// learns each noisy output at the end of its slot, and in the next slot the
/// quiet subchannel carries the correction (sent ⊕ received) so the receiver
/// recovers the corrupted bit. When the BSC is deterministic (`p` of 0 or 1)
/// the receiver needs no corrections and the quiet subchannel stays free for
/// fresh data. Only data bits the receiver decodes correctly are counted.
pub fn run_classical_baseline<R: Rng + ?Sized>(cfg: &BaselineConfig, rng: &mut R) -> Result<BaselineLog> {
    if cfg.n_slots < 2 {
        return Err(invalid(format!("baseline needs at least 2 slots, got {}", cfg.n_slots)));
    }
    let p = cfg.flip_probability;
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("flip probability must lie in [0, 1], got {p}")));
    }
    let corrections_needed = p > 0.0 && p < 1.0;
    let mut slots = Vec::with_capacity(cfg.n_slots);
    let mut novel = 0usize;
    // (sent, received) of the previous noisy bit awaiting correction
    let mut awaiting: Option<(bool, bool)> = None;

    for slot in 1..=cfg.n_slots {
        let mut delivered = 0usize;

        let kind = match awaiting.take() {
            Some((sent, received)) => {
                let correction = sent ^ received;
                let decoded = received ^ correction;
                delivered += (decoded == sent) as usize;
                QuietPayloadKind::Correction
            }
            None => {
                let bit = coin(rng);
                let decoded = bit; // noiseless
                delivered += (decoded == bit) as usize;
                QuietPayloadKind::Fresh
            }
        };

        let (noisy_in, noisy_out) = if cfg.feedback_enabled {
            let bit = coin(rng);
            let out = bsc_transmit(bit, p, rng)?;
            if corrections_needed {
                awaiting = Some((bit, out));
            } else {
                let decoded = out ^ (p == 1.0);
                delivered += (decoded == bit) as usize;
            }
            (Some(bit), Some(out))
        } else {
            (None, None)
        };

        novel += delivered;
        slots.push(BaselineSlot {
            slot,
            noisy_bit_in: noisy_in,
            noisy_bit_out: noisy_out,
            quiet_payload_kind: kind,
            novel_bits_delivered: delivered,
        });
    }

    Ok(BaselineLog {
        config: *cfg,
        slots,
        novel_bits: novel,
    })
}

/// Novel-bit throughput of the fair-coin baseline.
pub fn classical_baseline_capacity<R: Rng + ?Sized>(
    feedback_enabled: bool,
    n_slots: usize,
    rng: &mut R,
) -> Result<f64> {
    run_classical_baseline(&BaselineConfig::new(n_slots, feedback_enabled), rng).map(|l| l.throughput())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ensemble_validation() {
        let a = PureState::zero().projector();
        let b = DensityOperator::maximally_mixed(2).unwrap();
        assert!(matches!(
            Ensemble::new(vec![(0.5, a.clone()), (0.5, b)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Ensemble::new(vec![(0.7, a.clone()), (0.7, a.clone())]),
            Err(Error::BadDistribution(_))
        ));
        assert!(Ensemble::new(vec![(-0.5, a.clone()), (1.5, a)]).is_err());
        assert!(Ensemble::new(vec![]).is_err());
    }

    #[test]
    fn holevo_basic_examples() {
        let e = Ensemble::uniform(vec![PureState::zero().projector(), PureState::one().projector()]).unwrap();
        assert!((holevo_quantity(&e) - 1.0).abs() < 1e-12);
        let same = Ensemble::uniform(vec![PureState::plus().projector(), PureState::plus().projector()]).unwrap();
        assert!(holevo_quantity(&same).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        assert!(noisy_subchannel_chi(1.0, 999, 0).is_err());
        assert!(lambda_sweep(&[], 1000, 0).is_err());
    }

    #[test]
    fn joint_count_validation() {
        assert!(JointCounts::new(vec![]).is_err());
        assert!(JointCounts::new(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(JointCounts::new(vec![vec![1, 2], vec![3]]).is_err());
        assert!(JointCounts::tally([(0, 2)], 2, 2).is_err());
    }

    #[test]
    fn mutual_information_basic_examples() {
        let flat = JointCounts::new(vec![vec![5, 5], vec![5, 5]]).unwrap();
        assert!(empirical_mutual_information(&flat).abs() < 1e-15);
        let diag = JointCounts::new(vec![vec![7, 0], vec![0, 7]]).unwrap();
        assert!((empirical_mutual_information(&diag) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn baseline_rejects_bad_config() {
        let mut rng = stream(0, 0);
        assert!(run_classical_baseline(&BaselineConfig::new(1, true), &mut rng).is_err());
        let cfg = BaselineConfig {
            flip_probability: 2.0,
            ..BaselineConfig::new(10, true)
        };
        assert!(run_classical_baseline(&cfg, &mut rng).is_err());
    }

    #[test]
    fn baseline_slot_kinds() {
        let log = run_classical_baseline(&BaselineConfig::new(5, true), &mut stream(1, 0)).unwrap();
        assert_eq!(log.slots[0].quiet_payload_kind, QuietPayloadKind::Fresh);
        assert!(log.slots[1..]
            .iter()
            .all(|s| s.quiet_payload_kind == QuietPayloadKind::Correction));
        let off = run_classical_baseline(&BaselineConfig::new(5, false), &mut stream(1, 0)).unwrap();
        assert!(off.slots.iter().all(|s| s.noisy_bit_in.is_none()));
    }
}
