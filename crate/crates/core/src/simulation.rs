//! Slotted pipeline over the two subchannels with a feedback link.
//!
//! In feedback mode, slot `t` carries the first member of pair `t` on the
//! noisy subchannel and, for `t ≥ 2`, the re-encoded second member of pair
//! `t − 1` on the quiet subchannel. The realized channel vector of slot `t`
//! reaches the transmitter at the end of slot `t`, so the undo for pair
//! `t − 1` always uses a value from an earlier slot. Slot 1 has nothing to
//! send on the quiet subchannel, which is why `n` slots complete `n − 1`
//! pairs.
//!
//! Without feedback the noisy subchannel is left idle and the quiet one
//! carries one fresh classical bit per slot.

use rand::Rng;

use crate::channels::{noisy_transmit_member, quiet_transmit, ChannelParam, NoisyChannelConfig};
use crate::error::{invalid, Result};
use crate::protocol::{
    make_singlet, reencode_second_member, superdense_decode_with_outcome, BellMessage,
    PairProtocolTrace, ProtocolOptions,
};
use crate::qcore::{measure_computational, PureState};
use crate::stream::{coin, stream};

/// Largest supported quantizer resolution.
pub const MAX_QUANTIZE_BITS: u32 = 52;

/// Realism knobs for the feedback link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeedbackLinkConfig {
    quantize_bits: u32,
    clamp_range: f64,
}

impl FeedbackLinkConfig {
    /// `quantize_bits = 0` means exact real-valued feedback.
    pub fn new(quantize_bits: u32, clamp_range: f64) -> Result<Self> {
        if quantize_bits > MAX_QUANTIZE_BITS {
            return Err(invalid(format!(
                "quantize_bits must be at most {MAX_QUANTIZE_BITS}, got {quantize_bits}"
            )));
        }
        if !(clamp_range.is_finite() && clamp_range > 0.0) {
            return Err(invalid(format!("clamp_range must be positive, got {clamp_range}")));
        }
        Ok(Self {
            quantize_bits,
            clamp_range,
        })
    }

    pub fn quantize_bits(&self) -> u32 {
        self.quantize_bits
    }

    pub fn clamp_range(&self) -> f64 {
        self.clamp_range
    }
}

impl Default for FeedbackLinkConfig {
    fn default() -> Self {
        Self {
            quantize_bits: 0,
            clamp_range: 5.0,
        }
    }
}

/// Clamps each component to `±clamp_range` and rounds it to the nearest of
/// `2^quantize_bits` evenly spaced levels spanning that interval.
pub fn quantize_feedback(c: &ChannelParam, cfg: &FeedbackLinkConfig) -> ChannelParam {
    if cfg.quantize_bits == 0 {
        return *c;
    }
    let r = cfg.clamp_range;
    let steps = ((1u64 << cfg.quantize_bits) - 1) as f64;
    let step = 2.0 * r / steps;
    let q = c.components().map(|x| {
        let k = ((x.clamp(-r, r) + r) / step).round().min(steps);
        (-r + k * step).clamp(-r, r)
    });
    ChannelParam::new(q).expect("quantized components are finite")
}

/// Pipeline run parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub n_slots: usize,
    pub channel: NoisyChannelConfig,
    pub feedback_link: FeedbackLinkConfig,
    pub feedback_enabled: bool,
    pub options: ProtocolOptions,
}

impl PipelineConfig {
    pub fn new(n_slots: usize, channel: NoisyChannelConfig, feedback_enabled: bool) -> Self {
        Self {
            n_slots,
            channel,
            feedback_link: FeedbackLinkConfig::default(),
            feedback_enabled,
            options: ProtocolOptions::default(),
        }
    }

    pub fn with_feedback_link(mut self, link: FeedbackLinkConfig) -> Self {
        self.feedback_link = link;
        self
    }
}

/// What the quiet subchannel carried in a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuietPayload {
    /// Re-encoded second member of a pair.
    SecondMember(usize),
    /// One fresh classical bit (no-feedback mode).
    FreshBit(bool),
}

/// Occupancy of both subchannels in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotSchedule {
    pub slot_index: usize,
    pub noisy_payload: Option<usize>,
    pub quiet_payload: Option<QuietPayload>,
}

/// Life of one pair through the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub pair_id: usize,
    pub noisy_slot: usize,
    /// Slot at whose end the channel vector reached the transmitter.
    pub feedback_slot: usize,
    pub undo_slot: usize,
    pub quiet_slot: usize,
    /// Channel vector as received over the feedback link (after quantization).
    pub fed_back_param: ChannelParam,
    pub trace: PairProtocolTrace,
}

/// One classical bit sent in no-feedback mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalBitRecord {
    pub slot: usize,
    pub sent: bool,
    pub received: bool,
}

/// A decoded payload, in the shape of a pipeline report row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delivery {
    pub slot: usize,
    pub message: String,
    pub decoded: String,
    pub correct: bool,
}

/// Complete record of a pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialLog {
    pub slots: usize,
    pub bits_sent: usize,
    pub bits_decoded_correctly: usize,
    pub schedule: Vec<SlotSchedule>,
    pub pairs: Vec<PairRecord>,
    pub classical_bits: Vec<ClassicalBitRecord>,
    pub master_seed: u64,
    pub feedback_enabled: bool,
    pub lambda: f64,
}

impl TrialLog {
    /// Correctly decoded bits per slot.
    pub fn throughput(&self) -> f64 {
        self.bits_decoded_correctly as f64 / self.slots as f64
    }

    /// Throughput per qubit transmission (two qubit slots per time slot).
    pub fn bits_per_qubit(&self) -> f64 {
        self.throughput() / 2.0
    }

    /// Pairs whose message was decoded wrongly.
    pub fn message_errors(&self) -> usize {
        self.pairs.iter().filter(|p| !p.trace.is_correct()).count()
    }

    /// Fraction of completed pairs decoded wrongly (0 if none completed).
    pub fn message_error_rate(&self) -> f64 {
        if self.pairs.is_empty() {
            0.0
        } else {
            self.message_errors() as f64 / self.pairs.len() as f64
        }
    }

    /// Every undo used a channel vector delivered before the undo's slot.
    pub fn is_causal(&self) -> bool {
        self.pairs
            .iter()
            .all(|p| p.noisy_slot <= p.feedback_slot && p.feedback_slot < p.undo_slot)
    }

    /// Decoded payloads in slot order.
    pub fn deliveries(&self) -> Vec<Delivery> {
        let pairs = self.pairs.iter().map(|p| Delivery {
            slot: p.quiet_slot,
            message: p.trace.sent.to_string(),
            decoded: p.trace.decoded.to_string(),
            correct: p.trace.is_correct(),
        });
        let bits = self.classical_bits.iter().map(|b| Delivery {
            slot: b.slot,
            message: (b.sent as u8).to_string(),
            decoded: (b.received as u8).to_string(),
            correct: b.sent == b.received,
        });
        let mut out: Vec<Delivery> = pairs.chain(bits).collect();
        out.sort_by_key(|d| d.slot);
        out
    }
}

/// Runs the pipeline with streams derived from `master_seed`: stream 0
/// drives the message source, stream 1 the channel and measurements.
pub fn run_pipeline(cfg: &PipelineConfig, master_seed: u64) -> Result<TrialLog> {
    let mut messages = stream(master_seed, 0);
    let mut rng = stream(master_seed, 1);
    run_pipeline_with_streams(cfg, &mut messages, &mut rng, master_seed)
}

struct InFlight {
    pair_id: usize,
    state: PureState,
    message: BellMessage,
    realized: ChannelParam,
    noisy_slot: usize,
    feedback: Option<(ChannelParam, usize)>,
}

pub fn run_pipeline_with_streams<M: Rng + ?Sized, R: Rng + ?Sized>(
    cfg: &PipelineConfig,
    message_source: &mut M,
    rng: &mut R,
    master_seed: u64,
) -> Result<TrialLog> {
    if cfg.n_slots < 2 {
        return Err(invalid(format!("pipeline needs at least 2 slots, got {}", cfg.n_slots)));
    }
    let mut log = TrialLog {
        slots: cfg.n_slots,
        bits_sent: 0,
        bits_decoded_correctly: 0,
        schedule: Vec::with_capacity(cfg.n_slots),
        pairs: Vec::new(),
        classical_bits: Vec::new(),
        master_seed,
        feedback_enabled: cfg.feedback_enabled,
        lambda: cfg.channel.lambda(),
    };
    if cfg.feedback_enabled {
        run_feedback_mode(cfg, message_source, rng, &mut log)?;
    } else {
        run_quiet_only_mode(cfg, message_source, rng, &mut log)?;
    }
    Ok(log)
}

fn run_feedback_mode<M: Rng + ?Sized, R: Rng + ?Sized>(
    cfg: &PipelineConfig,
    message_source: &mut M,
    rng: &mut R,
    log: &mut TrialLog,
) -> Result<()> {
    let lambda = cfg.channel.lambda();
    let mut pending: Option<InFlight> = None;

    for slot in 1..=cfg.n_slots {
        let mut schedule = SlotSchedule {
            slot_index: slot,
            noisy_payload: None,
            quiet_payload: None,
        };

        if let Some(pair) = pending.take() {
            let (fed_back, feedback_slot) = pair
                .feedback
                .expect("feedback is delivered at the end of the noisy slot");
            let undo_param = quantize_feedback(&fed_back, &cfg.feedback_link);
            let state = reencode_second_member(
                &pair.state,
                pair.message,
                Some((&undo_param, lambda)),
                cfg.options,
            )?;
            let state = quiet_transmit(&state);
            let (decoded, bell_outcome) = superdense_decode_with_outcome(&state, rng)?;

            schedule.quiet_payload = Some(QuietPayload::SecondMember(pair.pair_id));
            log.bits_sent += 2;
            log.bits_decoded_correctly += pair.message.matching_bits(decoded);
            log.pairs.push(PairRecord {
                pair_id: pair.pair_id,
                noisy_slot: pair.noisy_slot,
                feedback_slot,
                undo_slot: slot,
                quiet_slot: slot,
                fed_back_param: undo_param,
                trace: PairProtocolTrace {
                    sent: pair.message,
                    realized_param: pair.realized,
                    undo_applied: true,
                    decoded,
                    bell_outcome,
                },
            });
        }

        let message = BellMessage::random(message_source);
        let (state, realized) =
            noisy_transmit_member(&make_singlet(), 1, &cfg.channel, rng)?.into_parts();
        schedule.noisy_payload = Some(slot);
        pending = Some(InFlight {
            pair_id: slot,
            state,
            message,
            realized,
            noisy_slot: slot,
            // end-of-slot delivery over the feedback link
            feedback: Some((realized, slot)),
        });

        log.schedule.push(schedule);
    }
    Ok(())
}

fn run_quiet_only_mode<M: Rng + ?Sized, R: Rng + ?Sized>(
    cfg: &PipelineConfig,
    message_source: &mut M,
    rng: &mut R,
    log: &mut TrialLog,
) -> Result<()> {
    for slot in 1..=cfg.n_slots {
        let bit = coin(message_source);
        let received_state = quiet_transmit(&PureState::from_bit(bit));
        let (received, _) = measure_computational(&received_state, rng)?;
        log.bits_sent += 1;
        log.bits_decoded_correctly += (bit == received) as usize;
        log.classical_bits.push(ClassicalBitRecord {
            slot,
            sent: bit,
            received,
        });
        log.schedule.push(SlotSchedule {
            slot_index: slot,
            noisy_payload: None,
            quiet_payload: Some(QuietPayload::FreshBit(bit)),
        });
    }
    Ok(())
}
