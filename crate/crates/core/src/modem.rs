//! Two-bit noise modulator and the midpoint threshold detector.
//!
//! Bit `b0` selects the voltage bias (`m_L` or `m_H`), bit `b1` selects the
//! low- or high-variance noise distribution. The receiver forms the sample
//! mean and the raw second moment `(1/N) sum r_n^2` and compares each with a
//! midpoint threshold.

use std::fmt;
use std::ops::Deref;

use crate::error::{invalid, Result};
use crate::noise::{Family, NoiseModel, RngStream};

/// The two information bits carried by one symbol.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitPair {
    /// Mean bit: selects `m_H` when set.
    pub b0: bool,
    /// Variance bit: selects the high-variance noise when set.
    pub b1: bool,
}

impl BitPair {
    /// The four cases in the order `00, 01, 10, 11` (written `b0 b1`).
    pub const ALL: [BitPair; 4] = [
        BitPair::new(false, false),
        BitPair::new(false, true),
        BitPair::new(true, false),
        BitPair::new(true, true),
    ];

    pub const fn new(b0: bool, b1: bool) -> Self {
        Self { b0, b1 }
    }

    /// Takes `b0` from bit 0 and `b1` from bit 1 of `word`.
    #[inline]
    pub fn from_word(word: u32) -> Self {
        Self {
            b0: word & 1 == 1,
            b1: word & 2 == 2,
        }
    }
}

impl fmt::Display for BitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.b0 as u8, self.b1 as u8)
    }
}

/// A complete modulation scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeParams {
    m_low: f64,
    m_high: f64,
    low: NoiseModel,
    high: NoiseModel,
    samples_per_symbol: usize,
}

impl SchemeParams {
    /// General constructor. Requires `m_low < m_high`,
    /// `variance(low) < variance(high)` and at least one sample per symbol.
    pub fn new(
        m_low: f64,
        m_high: f64,
        low: NoiseModel,
        high: NoiseModel,
        samples_per_symbol: usize,
    ) -> Result<Self> {
        if !(m_low.is_finite() && m_high.is_finite()) {
            return invalid("means must be finite");
        }
        if m_low >= m_high {
            return invalid(format!(
                "m_L must be < m_H, got {m_low:e} >= {m_high:e} (use SchemeParams::binary for equal means)"
            ));
        }
        Self::build(m_low, m_high, low, high, samples_per_symbol)
    }

    /// Classical binary noise modulation: both means are zero and only the
    /// variance bit carries information. `b0` is still detected but is a
    /// coin flip.
    pub fn binary(low: NoiseModel, high: NoiseModel, samples_per_symbol: usize) -> Result<Self> {
        Self::build(0.0, 0.0, low, high, samples_per_symbol)
    }

    fn build(
        m_low: f64,
        m_high: f64,
        low: NoiseModel,
        high: NoiseModel,
        samples_per_symbol: usize,
    ) -> Result<Self> {
        low.validate()?;
        high.validate()?;
        if low.variance() >= high.variance() {
            return invalid(format!(
                "variance(low) must be < variance(high), got {:e} >= {:e}",
                low.variance(),
                high.variance()
            ));
        }
        if samples_per_symbol == 0 {
            return invalid("samples per symbol must be >= 1");
        }
        Ok(Self {
            m_low,
            m_high,
            low,
            high,
            samples_per_symbol,
        })
    }

    /// Gaussian alphabet (GG).
    pub fn gg(m_low: f64, m_high: f64, sigma0: f64, sigma1: f64, n: usize) -> Result<Self> {
        Self::new(
            m_low,
            m_high,
            NoiseModel::gaussian(sigma0)?,
            NoiseModel::gaussian(sigma1)?,
            n,
        )
    }

    /// Two-Gaussian mixture alphabet (GMoTG) with a shared weight `p`.
    #[allow(clippy::too_many_arguments)]
    pub fn motg(
        m_low: f64,
        m_high: f64,
        p: f64,
        sigma0_low: f64,
        sigma1_low: f64,
        sigma0_high: f64,
        sigma1_high: f64,
        n: usize,
    ) -> Result<Self> {
        if sigma0_low >= sigma0_high || sigma1_low >= sigma1_high {
            return invalid(format!(
                "mixture alphabet requires sigma0L < sigma0H and sigma1L < sigma1H, got \
                 ({sigma0_low:e}, {sigma1_low:e}) vs ({sigma0_high:e}, {sigma1_high:e})"
            ));
        }
        Self::new(
            m_low,
            m_high,
            NoiseModel::mixture(p, sigma0_low, sigma1_low)?,
            NoiseModel::mixture(p, sigma0_high, sigma1_high)?,
            n,
        )
    }

    /// Laplacian alphabet (GLAP).
    pub fn glap(m_low: f64, m_high: f64, lambda0: f64, lambda1: f64, n: usize) -> Result<Self> {
        Self::new(
            m_low,
            m_high,
            NoiseModel::laplacian(lambda0)?,
            NoiseModel::laplacian(lambda1)?,
            n,
        )
    }

    pub fn with_samples_per_symbol(&self, n: usize) -> Result<Self> {
        Self::build(self.m_low, self.m_high, self.low, self.high, n)
    }

    /// Scales the means and every noise scale parameter by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return invalid(format!("scale factor must be finite and > 0, got {c}"));
        }
        Self::build(
            self.m_low * c,
            self.m_high * c,
            self.low.scaled(c)?,
            self.high.scaled(c)?,
            self.samples_per_symbol,
        )
    }

    pub fn m_low(&self) -> f64 {
        self.m_low
    }

    pub fn m_high(&self) -> f64 {
        self.m_high
    }

    pub fn low(&self) -> &NoiseModel {
        &self.low
    }

    pub fn high(&self) -> &NoiseModel {
        &self.high
    }

    pub fn samples_per_symbol(&self) -> usize {
        self.samples_per_symbol
    }

    /// True for the degenerate equal-means configuration.
    pub fn is_binary(&self) -> bool {
        self.m_low == self.m_high
    }

    /// The shared noise family, or `None` when the two alphabets differ.
    pub fn family(&self) -> Option<Family> {
        let family = self.low.family();
        (family == self.high.family()).then_some(family)
    }
}

/// One symbol worth of voltage samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol(Vec<f64>);

impl Symbol {
    pub fn new(samples: Vec<f64>) -> Self {
        Self(samples)
    }

    pub fn samples(&self) -> &[f64] {
        &self.0
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Symbol {
    fn from(samples: Vec<f64>) -> Self {
        Self(samples)
    }
}

impl Deref for Symbol {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Decision thresholds: `th_m` for the sample mean, `th_v` for the raw second
/// moment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    pub th_m: f64,
    pub th_v: f64,
}

/// Detection statistics of one received symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolStats {
    pub sample_mean: f64,
    /// `(1/N) sum r_n^2`; not mean-centred.
    pub raw_second_moment: f64,
}

/// Detector variants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DetectorMode {
    /// Compare the raw second moment with `th_v`.
    #[default]
    PaperThreshold,
    /// Extension: compare `raw_second_moment - sample_mean^2` with `th_v`.
    /// Not covered by the closed-form theory.
    MeanCompensated,
}

/// Mean of the transmitted samples for `bits`.
pub fn case_mean(scheme: &SchemeParams, bits: BitPair) -> f64 {
    if bits.b0 {
        scheme.m_high
    } else {
        scheme.m_low
    }
}

pub(crate) fn case_model(scheme: &SchemeParams, bits: BitPair) -> &NoiseModel {
    if bits.b1 {
        &scheme.high
    } else {
        &scheme.low
    }
}

/// Transmit-side (noise-free channel) variance of the samples for `bits`.
pub fn case_tx_variance(scheme: &SchemeParams, bits: BitPair) -> f64 {
    case_model(scheme, bits).variance()
}

/// Generates one symbol.
pub fn modulate(scheme: &SchemeParams, bits: BitPair, stream: &mut RngStream) -> Symbol {
    let mut samples = Vec::with_capacity(scheme.samples_per_symbol);
    modulate_into(scheme, bits, stream, &mut samples);
    Symbol(samples)
}

/// Like [`modulate`], but reuses `out` (cleared first).
#[inline]
pub fn modulate_into(
    scheme: &SchemeParams,
    bits: BitPair,
    stream: &mut RngStream,
    out: &mut Vec<f64>,
) {
    let mean = case_mean(scheme, bits);
    let model = case_model(scheme, bits);
    out.clear();
    out.extend((0..scheme.samples_per_symbol).map(|_| mean + model.draw(stream)));
}

/// Midpoint thresholds: `th_m = (m_L + m_H)/2`,
/// `th_v = (variance(low) + variance(high))/2`.
///
/// For the Laplacian alphabet this is `lambda0^2 + lambda1^2`.
pub fn thresholds(scheme: &SchemeParams) -> Thresholds {
    Thresholds {
        th_m: 0.5 * (scheme.m_low + scheme.m_high),
        th_v: 0.5 * (scheme.low.variance() + scheme.high.variance()),
    }
}

/// Sample mean and raw second moment.
pub fn statistics(received: &[f64]) -> Result<SymbolStats> {
    if received.is_empty() {
        return invalid("cannot compute statistics of an empty symbol");
    }
    let n = received.len() as f64;
    let (sum, sum_sq) = received
        .iter()
        .fold((0.0, 0.0), |(s, q), &r| (s + r, q + r * r));
    let sample_mean = sum / n;
    // rounding can leave the second moment an ulp below mean^2
    let raw_second_moment = (sum_sq / n).max(sample_mean * sample_mean);
    Ok(SymbolStats {
        sample_mean,
        raw_second_moment,
    })
}

/// Threshold detector. Equality decides 0.
#[inline]
pub fn detect(stats: SymbolStats, th: Thresholds) -> BitPair {
    detect_with(stats, th, DetectorMode::PaperThreshold)
}

#[inline]
pub fn detect_with(stats: SymbolStats, th: Thresholds, mode: DetectorMode) -> BitPair {
    let power = match mode {
        DetectorMode::PaperThreshold => stats.raw_second_moment,
        DetectorMode::MeanCompensated => {
            stats.raw_second_moment - stats.sample_mean * stats.sample_mean
        }
    };
    BitPair {
        b0: stats.sample_mean > th.th_m,
        b1: power > th.th_v,
    }
}
