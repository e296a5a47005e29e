//! Monte Carlo transmission engine.
//!
//! Symbol `k` draws its bits, modulation noise and channel noise from
//! `substream(master_seed, k)`, in that order. Counts are therefore a pure
//! function of the plan, whatever the number of workers.

use std::ops::Range;

use rand::RngCore;
use rayon::prelude::*;

use crate::analytics::q_inverse;
use crate::channel::{awgn_in_place, check_sigma_w};
use crate::error::{invalid, Result};
use crate::modem::{
    detect_with, modulate_into, statistics, thresholds, BitPair, DetectorMode, SchemeParams,
};
use crate::noise::substream;

/// Symbols handed to a worker at a time.
const BLOCK: u64 = 1 << 14;

/// One simulated operating point.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialPlan {
    pub scheme: SchemeParams,
    pub sigma_w: f64,
    pub num_symbols: u64,
    pub master_seed: u64,
    pub detector: DetectorMode,
}

impl TrialPlan {
    pub fn new(
        scheme: SchemeParams,
        sigma_w: f64,
        num_symbols: u64,
        master_seed: u64,
    ) -> Result<Self> {
        check_sigma_w(sigma_w)?;
        if num_symbols == 0 {
            return invalid("num_symbols must be >= 1");
        }
        Ok(Self {
            scheme,
            sigma_w,
            num_symbols,
            master_seed,
            detector: DetectorMode::PaperThreshold,
        })
    }

    pub fn with_detector(mut self, detector: DetectorMode) -> Self {
        self.detector = detector;
        self
    }
}

/// Simulated error counts and derived probabilities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BepEstimate {
    pub symbols: u64,
    pub errors_b0: u64,
    pub errors_b1: u64,
    pub p_b0: f64,
    pub p_b1: f64,
    pub p_b: f64,
    pub se_b0: f64,
    pub se_b1: f64,
}

impl BepEstimate {
    pub fn from_counts(symbols: u64, errors_b0: u64, errors_b1: u64) -> Self {
        assert!(symbols > 0 && errors_b0 <= symbols && errors_b1 <= symbols);
        let n = symbols as f64;
        let p_b0 = errors_b0 as f64 / n;
        let p_b1 = errors_b1 as f64 / n;
        let se = |p: f64| (p * (1.0 - p) / n).sqrt();
        Self {
            symbols,
            errors_b0,
            errors_b1,
            p_b0,
            p_b1,
            p_b: 0.5 * (p_b0 + p_b1),
            se_b0: se(p_b0),
            se_b1: se(p_b1),
        }
    }

    /// Standard error of `p_b`, treating the two sub-bit counts as
    /// independent.
    pub fn se_b(&self) -> f64 {
        0.5 * (self.se_b0 * self.se_b0 + self.se_b1 * self.se_b1).sqrt()
    }
}

/// Runs the plan on the global rayon pool.
pub fn run(plan: &TrialPlan) -> BepEstimate {
    run_with_workers(plan, 0)
}

/// Runs the plan on `workers` threads (`0` = rayon default, `1` = inline on
/// the calling thread).
pub fn run_with_workers(plan: &TrialPlan, workers: usize) -> BepEstimate {
    let n = plan.num_symbols;
    let blocks: Vec<Range<u64>> = (0..n.div_ceil(BLOCK))
        .map(|b| b * BLOCK..((b + 1) * BLOCK).min(n))
        .collect();
    let (e0, e1) = match workers {
        1 => blocks
            .into_iter()
            .map(|r| count_errors(plan, r))
            .fold((0, 0), add),
        0 => par_count(plan, blocks),
        w => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("failed to build worker pool")
            .install(|| par_count(plan, blocks)),
    };
    BepEstimate::from_counts(n, e0, e1)
}

fn add(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    (a.0 + b.0, a.1 + b.1)
}

fn par_count(plan: &TrialPlan, blocks: Vec<Range<u64>>) -> (u64, u64) {
    blocks
        .into_par_iter()
        .map(|r| count_errors(plan, r))
        .reduce(|| (0, 0), add)
}

/// Sub-bit error counts over the symbol indices in `range`.
pub fn count_errors(plan: &TrialPlan, range: Range<u64>) -> (u64, u64) {
    let th = thresholds(&plan.scheme);
    let mut buf = Vec::with_capacity(plan.scheme.samples_per_symbol());
    let (mut e0, mut e1) = (0u64, 0u64);
    for k in range {
        let mut stream = substream(plan.master_seed, k);
        let bits = BitPair::from_word(stream.next_u32());
        modulate_into(&plan.scheme, bits, &mut stream, &mut buf);
        awgn_in_place(&mut buf, plan.sigma_w, &mut stream).expect("sigma_w validated by TrialPlan");
        let stats = statistics(&buf).expect("scheme has N >= 1");
        let decided = detect_with(stats, th, plan.detector);
        e0 += (decided.b0 != bits.b0) as u64;
        e1 += (decided.b1 != bits.b1) as u64;
    }
    (e0, e1)
}

/// Wilson score interval for a binomial proportion at confidence `level`.
pub fn wilson_ci(errors: u64, symbols: u64, level: f64) -> Result<(f64, f64)> {
    if symbols == 0 || errors > symbols {
        return invalid(format!(
            "need 0 <= errors <= symbols and symbols > 0, got {errors}/{symbols}"
        ));
    }
    if !(level > 0.0 && level < 1.0) {
        return invalid(format!("confidence level must be in (0, 1), got {level}"));
    }
    let z = q_inverse(0.5 * (1.0 - level))?;
    let n = symbols as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if errors == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if errors == symbols {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    Ok((lo, hi))
}
