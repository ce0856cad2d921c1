//! Exact small-scale simulator for classical feedback over a memoryless
//! quantum channel.
//!
//! The system under study has two subchannels that each carry one qubit per
//! slot: a noisy one that applies a random unitary `exp(iλ c·σ)` with a
//! Gaussian vector `c`, and a noiseless one. When the transmitter learns `c`
//! after each noisy transmission, it can cancel the noise on a singlet pair
//! from the member it still holds, then superdense-encode two bits into that
//! member. The crate simulates every piece of that argument with exact 1- and
//! 2-qubit linear algebra, plus the classical analog in which feedback buys
//! nothing.
//!
//! Modules, bottom-up:
//!
//! * [`qcore`]: states, operators, Pauli algebra, measurement, entropy.
//! * [`channels`]: the noisy, flip, quiet and binary symmetric channels.
//! * [`protocol`]: singlet source, undo operator, superdense codec, the
//!   per-pair feedback protocol and the helper-qubit demonstration.
//! * [`simulation`]: the slotted pipeline with a feedback link.
//! * [`capacity`]: Holevo quantity, plug-in mutual information and the
//!   classical retransmission baseline.
//! * [`report`] and [`cli`]: report files and the batch experiment runner.

pub mod capacity;
pub mod channels;
pub mod cli;
mod error;
pub mod protocol;
pub mod qcore;
pub mod report;
pub mod simulation;
pub mod stream;
pub mod verify;

pub use error::{Error, Result};
