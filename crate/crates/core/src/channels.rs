//! Channel models: the Gaussian random-unitary noisy subchannel, the
//! block spin-flip channel with helper qubits, the noiseless quiet
//! subchannel and the classical binary symmetric channel.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::qcore::{
    lift_to_pair, pauli_exponential, sigma_x, DensityOperator, PureState, UnitaryOperator,
};
use crate::stream::{bernoulli, standard_normal_pair};

/// Realized channel vector `c`: the content of the feedback message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParam {
    c: [f64; 3],
}

impl ChannelParam {
    pub fn new(c: [f64; 3]) -> Result<Self> {
        if c.iter().all(|x| x.is_finite()) {
            Ok(Self { c })
        } else {
            Err(Error::NonFinite("channel parameter"))
        }
    }

    pub const fn zero() -> Self {
        Self { c: [0.0; 3] }
    }

    pub fn components(&self) -> [f64; 3] {
        self.c
    }

    pub fn norm(&self) -> f64 {
        crate::qcore::vector_norm(self.c)
    }

    pub fn negated(&self) -> Self {
        Self {
            c: [-self.c[0], -self.c[1], -self.c[2]],
        }
    }

    /// `exp(iλ c·σ)`.
    pub fn unitary(&self, lambda: f64) -> UnitaryOperator {
        pauli_exponential(self.c, lambda)
    }
}

/// Noise strength of the random-unitary subchannel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyChannelConfig {
    lambda: f64,
}

impl NoisyChannelConfig {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(invalid(format!("lambda must be finite and >= 0, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Block spin-flip channel shared by helper and information qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipChannelConfig {
    p_flip: f64,
    helpers_per_slot: usize,
}

impl FlipChannelConfig {
    pub fn new(p_flip: f64, helpers_per_slot: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_flip) {
            return Err(invalid(format!("p_flip must lie in [0, 1], got {p_flip}")));
        }
        Ok(Self {
            p_flip,
            helpers_per_slot,
        })
    }

    pub fn p_flip(&self) -> f64 {
        self.p_flip
    }

    pub fn helpers_per_slot(&self) -> usize {
        self.helpers_per_slot
    }
}

impl Default for FlipChannelConfig {
    /// Fair flips, one helper per slot.
    fn default() -> Self {
        Self {
            p_flip: 0.5,
            helpers_per_slot: 1,
        }
    }
}

/// Output of one noisy transmission.
///
/// The realized parameter is hidden from the receiver: receiver-side code
/// only ever gets the state (see [`TransmissionResult::into_parts`]), and the
/// parameter goes to the feedback link.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionResult {
    output_state: PureState,
    realized_param: ChannelParam,
}

impl TransmissionResult {
    pub fn output_state(&self) -> &PureState {
        &self.output_state
    }

    pub fn realized_param(&self) -> ChannelParam {
        self.realized_param
    }

    /// Splits into the state (to the receiver) and `c` (to the feedback link).
    pub fn into_parts(self) -> (PureState, ChannelParam) {
        (self.output_state, self.realized_param)
    }
}

/// Three independent standard normals: two Box–Muller pairs, last draw
/// discarded. Always consumes four uniforms.
pub fn sample_channel_param<R: Rng + ?Sized>(rng: &mut R) -> ChannelParam {
    let (a, b) = standard_normal_pair(rng);
    let (c, _) = standard_normal_pair(rng);
    ChannelParam { c: [a, b, c] }
}

/// Sends a single qubit through the noisy subchannel.
pub fn noisy_transmit<R: Rng + ?Sized>(
    state: &PureState,
    cfg: &NoisyChannelConfig,
    rng: &mut R,
) -> Result<TransmissionResult> {
    if state.qubit_count() != 1 {
        return Err(Error::QubitCount {
            expected: 1,
            actual: state.qubit_count(),
        });
    }
    let c = sample_channel_param(rng);
    let output_state = c.unitary(cfg.lambda).apply(state)?;
    Ok(TransmissionResult {
        output_state,
        realized_param: c,
    })
}

/// Sends `member` (1 or 2) of an entangled pair through the noisy
/// subchannel. The returned state is the joint pair state.
pub fn noisy_transmit_member<R: Rng + ?Sized>(
    pair: &PureState,
    member: usize,
    cfg: &NoisyChannelConfig,
    rng: &mut R,
) -> Result<TransmissionResult> {
    if pair.qubit_count() != 2 {
        return Err(Error::QubitCount {
            expected: 2,
            actual: pair.qubit_count(),
        });
    }
    if member != 1 && member != 2 {
        return Err(Error::InvalidQubit(member));
    }
    let c = sample_channel_param(rng);
    let output_state = lift_to_pair(&c.unitary(cfg.lambda), member)?.apply(pair)?;
    Ok(TransmissionResult {
        output_state,
        realized_param: c,
    })
}

/// Passes a block of basis-state qubits through the shared flip channel.
///
/// One flip event per block: with probability `p_flip` every member gets
/// `σ_x`. The returned flag is ground truth for tests and must not reach
/// receiver logic.
pub fn bit_flip_block_transmit<R: Rng + ?Sized>(
    block: &[PureState],
    cfg: &FlipChannelConfig,
    rng: &mut R,
) -> Result<(Vec<PureState>, bool)> {
    if block.iter().any(|s| s.basis_label().is_none()) {
        return Err(Error::NotBasisState);
    }
    let flip = bernoulli(rng, cfg.p_flip);
    let outputs = if flip {
        let x = sigma_x();
        block.iter().map(|s| x.apply(s)).collect::<Result<Vec<_>>>()?
    } else {
        block.to_vec()
    };
    Ok((outputs, flip))
}

/// The noiseless subchannel.
pub fn quiet_transmit(state: &PureState) -> PureState {
    state.clone()
}

/// Monte Carlo estimate of the receiver's averaged channel
/// `(1/N) Σ U(cᵢ) ρ U(cᵢ)†`.
pub fn averaged_channel<R: Rng + ?Sized>(
    cfg: &NoisyChannelConfig,
    rho: &DensityOperator,
    n_samples: usize,
    rng: &mut R,
) -> Result<DensityOperator> {
    if n_samples == 0 {
        return Err(invalid("averaged_channel needs at least one sample"));
    }
    if rho.qubit_count() != 1 {
        return Err(Error::QubitCount {
            expected: 1,
            actual: rho.qubit_count(),
        });
    }
    let mut acc = DMatrix::zeros(2, 2);
    for _ in 0..n_samples {
        let u = sample_channel_param(rng).unitary(cfg.lambda);
        acc += u.matrix() * rho.matrix() * u.matrix().adjoint();
    }
    Ok(DensityOperator::resymmetrized(acc, 1))
}

/// Binary symmetric channel: flips `bit` with probability `p`.
pub fn bsc_transmit<R: Rng + ?Sized>(bit: bool, p: f64, rng: &mut R) -> Result<bool> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("BSC flip probability must lie in [0, 1], got {p}")));
    }
    Ok(bit ^ bernoulli(rng, p))
}
