//! Single-cell Massive MIMO uplink simulator for dense IoT device populations.
//!
//! The crate is organised bottom-up:
//!
//! * [`randcore`]: seeded random streams, special functions, small linear algebra.
//! * [`channel`]: device drops, path loss and shadowing, correlated Rayleigh
//!   channels and Gauss–Markov aging.
//! * [`pilot`]: pilot books, assignment strategies, LS/MMSE estimation and the
//!   pilot contamination index.
//! * [`beamform`]: MRC/ZF combining, hybrid DFT beam selection, exact antenna
//!   selection and SINR/spectral efficiency.
//! * [`powermodel`]: circuit + PA power accounting and energy efficiency.
//! * [`mac`]: IoT traffic, schedulers and the per-frame delivery loop.
//! * [`campaign`]: scenario presets, the Monte Carlo driver and statistics.

pub mod beamform;
pub mod campaign;
pub mod channel;
pub mod error;
pub mod mac;
pub mod pilot;
pub mod powermodel;
pub mod randcore;

pub use error::{NumericError, Result, SimError};
pub use randcore::{CMatrix, RngStream, C64};
