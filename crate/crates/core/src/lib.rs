//! Generalized quadratic noise modulation (GQNM).
//!
//! Each symbol carries two bits in synthetic noise: `b0` picks the voltage
//! bias, `b1` picks a low- or high-variance noise distribution (Gaussian,
//! two-Gaussian mixture or Laplacian). The crate provides
//!
//! - [`noise`]: reproducible random streams and the three noise families,
//! - [`modem`]: the modulator and the midpoint threshold detector,
//! - [`channel`]: a real AWGN channel,
//! - [`analytics`]: the Gaussian tail function and closed-form bit error
//!   probabilities, transmit powers and power-matching solvers,
//! - [`montecarlo`]: a parallel, partition-independent simulation engine,
//! - [`experiments`]: sweeps over `sigma_w` or `N` with CSV/SVG export.
//!
//! ```
//! use gqnm::prelude::*;
//!
//! let scheme = SchemeParams::gg(1e-3, 1e-2, 1e-3, 20e-3, 10)?;
//! let theory = bep_total(&scheme, 2e-5, 10, TheoryOptions::default())?;
//! let sim = run(&TrialPlan::new(scheme, 2e-5, 50_000, 1)?);
//! assert!((sim.p_b0 - theory.p_b0).abs() < 0.01);
//! # Ok::<(), gqnm::Error>(())
//! ```

pub mod analytics;
pub mod channel;
mod error;
pub mod experiments;
pub mod modem;
pub mod montecarlo;
pub mod noise;
pub mod validation;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::analytics::{
        bep_b0, bep_b1, bep_total, match_power_laplace, match_power_motg, q, transmit_power,
        TheoryBep, TheoryMode, TheoryOptions,
    };
    pub use crate::channel::awgn;
    pub use crate::experiments::{sweep, to_csv, to_svg, Profile, SweepSpec, SweepVariable};
    pub use crate::modem::{
        detect, modulate, statistics, thresholds, BitPair, DetectorMode, SchemeParams, Symbol,
    };
    pub use crate::montecarlo::{run, run_with_workers, wilson_ci, BepEstimate, TrialPlan};
    pub use crate::noise::{substream, MomentFidelity, NoiseModel, RngStream};
    pub use crate::{Error, Result};
}

// The guide's code listings are compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/noise.md")]
    struct Noise;
    #[doc = include_str!("../../../book/src/modem.md")]
    struct Modem;
    #[doc = include_str!("../../../book/src/theory.md")]
    struct Theory;
    #[doc = include_str!("../../../book/src/power.md")]
    struct Power;
    #[doc = include_str!("../../../book/src/simulation.md")]
    struct Simulation;
    #[doc = include_str!("../../../book/src/experiments.md")]
    struct Experiments;
}
