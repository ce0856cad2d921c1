//! Singlet source, undo operator, superdense codec and the per-pair feedback
//! protocol, plus the helper-qubit feedback demonstration.
//!
//! Codec convention (applied to qubit 2 of the singlet `|ψ⁻⟩`):
//!
//! | message | operator  | resulting Bell state |
//! |---------|-----------|----------------------|
//! | 00      | I         | Ψ⁻                   |
//! | 01      | σ_x       | Φ⁻                   |
//! | 10      | σ_z       | Ψ⁺ (up to sign)      |
//! | 11      | σ_z·σ_x   | Φ⁺                   |

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use std::fmt;

use crate::channels::{
    bit_flip_block_transmit, noisy_transmit_member, quiet_transmit, ChannelParam,
    FlipChannelConfig, NoisyChannelConfig,
};
use crate::error::{invalid, Error, Result};
use crate::qcore::{
    apply_single_qubit, fidelity, measure_bell_basis, measure_computational, pauli_exponential,
    sigma_x, sigma_z, BellOutcome, Pauli, PureState, UnitaryOperator,
};
use crate::stream::coin;

/// Minimum singlet fidelity accepted by [`superdense_encode`].
pub const SINGLET_FIDELITY_FLOOR: f64 = 1.0 - 1e-9;

/// Two-bit superdense payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellMessage {
    pub b1: bool,
    pub b2: bool,
}

impl BellMessage {
    pub const ALL: [BellMessage; 4] = [
        BellMessage::new(false, false),
        BellMessage::new(false, true),
        BellMessage::new(true, false),
        BellMessage::new(true, true),
    ];

    pub const fn new(b1: bool, b2: bool) -> Self {
        Self { b1, b2 }
    }

    /// `2·b1 + b2`.
    pub fn index(self) -> usize {
        (self.b1 as usize) << 1 | self.b2 as usize
    }

    pub fn from_index(index: usize) -> Result<Self> {
        if index < 4 {
            Ok(Self::new(index & 2 != 0, index & 1 != 0))
        } else {
            Err(invalid(format!("message index {index} out of range")))
        }
    }

    /// Uniformly random message.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let b1 = coin(rng);
        let b2 = coin(rng);
        Self::new(b1, b2)
    }

    /// Number of bits on which `self` and `other` agree.
    pub fn matching_bits(self, other: BellMessage) -> usize {
        (self.b1 == other.b1) as usize + (self.b2 == other.b2) as usize
    }
}

impl fmt::Display for BellMessage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.b1 as u8, self.b2 as u8)
    }
}

/// Operator applied to the transmitter's qubit to encode `msg`.
pub fn encoding_operator(msg: BellMessage) -> UnitaryOperator {
    match (msg.b1, msg.b2) {
        (false, false) => UnitaryOperator::identity(1).expect("one qubit"),
        (false, true) => sigma_x(),
        (true, false) => sigma_z(),
        (true, true) => &sigma_z() * &sigma_x(),
    }
}

/// Bell outcome produced by encoding `msg` into the singlet.
pub fn outcome_for_message(msg: BellMessage) -> BellOutcome {
    match (msg.b1, msg.b2) {
        (false, false) => BellOutcome::PsiMinus,
        (false, true) => BellOutcome::PhiMinus,
        (true, false) => BellOutcome::PsiPlus,
        (true, true) => BellOutcome::PhiPlus,
    }
}

/// Inverse of [`outcome_for_message`].
pub fn message_for_outcome(outcome: BellOutcome) -> BellMessage {
    match outcome {
        BellOutcome::PsiMinus => BellMessage::new(false, false),
        BellOutcome::PhiMinus => BellMessage::new(false, true),
        BellOutcome::PsiPlus => BellMessage::new(true, false),
        BellOutcome::PhiPlus => BellMessage::new(true, true),
    }
}

/// `(|01⟩ − |10⟩)/√2`.
pub fn make_singlet() -> PureState {
    BellOutcome::PsiMinus.state()
}

/// Total spin `S_k = (σ_k ⊗ I + I ⊗ σ_k)/2` of a qubit pair.
#[derive(Debug, Clone)]
pub struct TotalSpinOperator {
    components: [DMatrix<Complex<f64>>; 3],
}

impl TotalSpinOperator {
    pub fn new() -> Self {
        let id = DMatrix::identity(2, 2);
        let component = |p: Pauli| {
            let s = p.matrix();
            (s.kronecker(&id) + id.kronecker(&s)).scale(0.5)
        };
        Self {
            components: [component(Pauli::X), component(Pauli::Y), component(Pauli::Z)],
        }
    }

    pub fn component(&self, axis: Pauli) -> &DMatrix<Complex<f64>> {
        match axis {
            Pauli::X => &self.components[0],
            Pauli::Y => &self.components[1],
            Pauli::Z => &self.components[2],
        }
    }

    /// `c·S`.
    pub fn dot(&self, c: [f64; 3]) -> DMatrix<Complex<f64>> {
        self.components
            .iter()
            .zip(c)
            .fold(DMatrix::zeros(4, 4), |acc, (s, ck)| acc + s.scale(ck))
    }
}

impl Default for TotalSpinOperator {
    fn default() -> Self {
        Self::new()
    }
}

/// Operator the transmitter applies to qubit 2 to cancel the channel on
/// qubit 1. For the singlet this is the channel unitary itself, since
/// `U ⊗ U` fixes a total-spin-zero state whenever `det U = 1`.
pub fn undo_operator(c: &ChannelParam, lambda: f64) -> UnitaryOperator {
    pauli_exponential(c.components(), lambda)
}

/// Fidelity with `pair` after the channel on qubit 1 and the undo on qubit 2.
pub fn verify_undo_identity_on(pair: &PureState, c: &ChannelParam, lambda: f64) -> Result<f64> {
    let channel = c.unitary(lambda);
    let after_channel = apply_single_qubit(pair, &channel, 1)?;
    let restored = apply_single_qubit(&after_channel, &undo_operator(c, lambda), 2)?;
    fidelity(&restored, pair)
}

/// [`verify_undo_identity_on`] for the singlet.
pub fn verify_undo_identity(c: &ChannelParam, lambda: f64) -> f64 {
    verify_undo_identity_on(&make_singlet(), c, lambda).expect("singlet is a two-qubit state")
}

/// Applies the encoding for `msg` to qubit 2 without checking the pair.
pub fn encode_second_member(msg: BellMessage, pair: &PureState) -> Result<PureState> {
    apply_single_qubit(pair, &encoding_operator(msg), 2)
}

/// Superdense encoding into a fresh singlet.
pub fn superdense_encode(msg: BellMessage, pair: &PureState) -> Result<PureState> {
    if pair.qubit_count() != 2 {
        return Err(Error::QubitCount {
            expected: 2,
            actual: pair.qubit_count(),
        });
    }
    let f = fidelity(pair, &make_singlet())?;
    if f < SINGLET_FIDELITY_FLOOR {
        return Err(Error::NotSinglet(f));
    }
    encode_second_member(msg, pair)
}

/// Bell measurement followed by the inverse codec table.
pub fn superdense_decode_with_outcome<R: Rng + ?Sized>(
    state: &PureState,
    rng: &mut R,
) -> Result<(BellMessage, BellOutcome)> {
    let (outcome, _) = measure_bell_basis(state, rng)?;
    Ok((message_for_outcome(outcome), outcome))
}

pub fn superdense_decode<R: Rng + ?Sized>(state: &PureState, rng: &mut R) -> Result<BellMessage> {
    superdense_decode_with_outcome(state, rng).map(|(m, _)| m)
}

/// Transmitter-side options for the per-pair protocol.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProtocolOptions {
    /// Apply `encode · undo` as one operator instead of two in sequence.
    pub fuse_undo_and_encode: bool,
}

/// Transmitter step between the two transmissions: optional undo with the
/// fed-back parameter, then the encoding, both on qubit 2.
pub fn reencode_second_member(
    pair: &PureState,
    msg: BellMessage,
    undo: Option<(&ChannelParam, f64)>,
    options: ProtocolOptions,
) -> Result<PureState> {
    let encode = encoding_operator(msg);
    match undo {
        None => apply_single_qubit(pair, &encode, 2),
        Some((c, lambda)) if options.fuse_undo_and_encode => {
            let fused = &encode * &undo_operator(c, lambda);
            apply_single_qubit(pair, &fused, 2)
        }
        Some((c, lambda)) => {
            let undone = apply_single_qubit(pair, &undo_operator(c, lambda), 2)?;
            apply_single_qubit(&undone, &encode, 2)
        }
    }
}

/// Record of one pair's trip through the protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct PairProtocolTrace {
    pub sent: BellMessage,
    pub realized_param: ChannelParam,
    pub undo_applied: bool,
    pub decoded: BellMessage,
    pub bell_outcome: BellOutcome,
}

impl PairProtocolTrace {
    pub fn is_correct(&self) -> bool {
        self.sent == self.decoded
    }
}

/// One pair end to end: singlet, qubit 1 over the noisy subchannel,
/// optional undo from feedback, encoding, qubit 2 over the quiet subchannel,
/// Bell decoding.
pub fn run_pair_protocol<R: Rng + ?Sized>(
    msg: BellMessage,
    cfg: &NoisyChannelConfig,
    feedback_enabled: bool,
    rng: &mut R,
) -> Result<PairProtocolTrace> {
    run_pair_protocol_with(msg, cfg, feedback_enabled, ProtocolOptions::default(), rng)
}

pub fn run_pair_protocol_with<R: Rng + ?Sized>(
    msg: BellMessage,
    cfg: &NoisyChannelConfig,
    feedback_enabled: bool,
    options: ProtocolOptions,
    rng: &mut R,
) -> Result<PairProtocolTrace> {
    let pair = make_singlet();
    let (pair, c) = noisy_transmit_member(&pair, 1, cfg, rng)?.into_parts();
    let undo = feedback_enabled.then_some((&c, cfg.lambda()));
    let pair = reencode_second_member(&pair, msg, undo, options)?;
    // qubit 2 crosses the noiseless subchannel; the joint state is unchanged
    let pair = quiet_transmit(&pair);
    let (decoded, bell_outcome) = superdense_decode_with_outcome(&pair, rng)?;
    Ok(PairProtocolTrace {
        sent: msg,
        realized_param: c,
        undo_applied: feedback_enabled,
        decoded,
        bell_outcome,
    })
}

/// Result of one helper-qubit feedback round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HelperRound {
    /// Flip inferred by the transmitter from fed-back helper readings.
    pub inferred_flip: bool,
    /// Ground truth from the channel.
    pub true_flip: bool,
    /// Whether a receiver guessing from its own readings alone was right.
    pub receiver_blind_guess_correct: bool,
    /// Information bit as read by the receiver (possibly flipped).
    pub received_info_bit: bool,
}

/// One slot of the helper-qubit example.
///
/// Helper labels are i.i.d. fair coins known to the transmitter in advance
/// (pre-shared classical randomness; basis states copy classically). The
/// helpers and the information qubit cross the flip channel together, the
/// receiver measures the helpers and feeds the readings back, and the
/// transmitter XORs them with the labels it knows. The receiver alone, not
/// knowing the labels, guesses "flipped" when its first helper reads 1.
pub fn helper_feedback_round<R: Rng + ?Sized>(
    cfg: &FlipChannelConfig,
    info_bit: bool,
    rng: &mut R,
) -> Result<HelperRound> {
    let helpers = cfg.helpers_per_slot();
    if helpers == 0 {
        return Err(invalid("helper_feedback_round needs at least one helper qubit"));
    }
    let initial: Vec<bool> = (0..helpers).map(|_| coin(rng)).collect();
    let transmitter_copy = initial.clone();

    let mut block: Vec<PureState> = initial.iter().map(|&b| PureState::from_bit(b)).collect();
    block.push(PureState::from_bit(info_bit));
    let (outputs, true_flip) = bit_flip_block_transmit(&block, cfg, rng)?;

    let (helper_out, info_out) = outputs.split_at(helpers);
    let readings = helper_out
        .iter()
        .map(|s| measure_computational(s, rng).map(|(bit, _)| bit))
        .collect::<Result<Vec<_>>>()?;
    let (received_info_bit, _) = measure_computational(&info_out[0], rng)?;

    // feedback link: readings go back to the transmitter
    let inferred: Vec<bool> = transmitter_copy
        .iter()
        .zip(&readings)
        .map(|(a, b)| a ^ b)
        .collect();
    debug_assert!(inferred.iter().all(|&f| f == inferred[0]));

    let blind_guess = readings[0];
    Ok(HelperRound {
        inferred_flip: inferred[0],
        true_flip,
        receiver_blind_guess_correct: blind_guess == true_flip,
        received_info_bit,
    })
}
