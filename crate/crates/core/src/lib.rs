//! Decision engine and experiment harness for multiuser edge-computing
//! offloading when tasks also need data stored at the server.
//!
//! Offloading users upload their local data and download only the task
//! outcome; non-offloading users must download the server-side data and
//! compute locally. Under channel-inversion power control every offloading
//! user sees the same uplink rate `u(n)` (a function of the offloader count
//! `n` only), which makes total energy and total transmission time affine in
//! the decision vector at fixed `n`. The [`optimizer`] exploits this: it
//! solves one small cardinality-constrained binary integer linear program per
//! candidate `n` instead of searching all `2^K` subsets.
//!
//! Module map:
//! - [`channel`]: uplink/downlink rate closed forms, inversion power control,
//!   fading-gain sampling.
//! - [`scenario`]: per-user task data, system configuration, sampling
//!   distributions, JSON (de)serialization.
//! - [`cost`]: exact energy/time evaluation for any decision vector and the
//!   affine coefficient extraction.
//! - [`bilp`]: exact branch-and-bound solver for the per-cardinality binary
//!   program, plus a brute-force oracle.
//! - [`optimizer`]: the top-level solve loop over `n` with feasibility
//!   re-verification.
//! - [`analysis`]: closed-form mean-time estimates and rate comparisons.
//! - [`sweep`]: deterministic Monte Carlo parameter sweeps with CSV/JSON
//!   output.

pub mod analysis;
pub mod bilp;
pub mod channel;
pub mod cost;
pub mod error;
pub mod optimizer;
pub mod rng;
pub mod scenario;
pub mod sweep;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
