//! Quantized 2×2 strategic games under quantum and phase-damped correlations.
//!
//! * [`qcore`]: small dense complex linear algebra and density matrices.
//! * [`ewl`]: the entangle / play / disentangle / measure protocol.
//! * [`catalog`]: the named games and their classical analysis.
//! * [`equilibria`]: Nash-equilibrium scans over the continuous strategy space.
//! * [`monty`]: the three-qutrit Monty Hall game.
//! * [`claims`]: the claim-verification table used by the CLI.

pub mod catalog;
pub mod claims;
pub mod equilibria;
pub mod error;
pub mod ewl;
pub mod monty;
pub mod qcore;

pub use error::{Error, Result};
