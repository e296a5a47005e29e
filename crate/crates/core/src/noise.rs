//! Random streams and the three zero-mean noise families used as modulation
//! alphabets.
//!
//! Every stream is addressed by `(master_seed, stream_index)`. The Monte
//! Carlo engine opens one stream per symbol index, which is what makes a run
//! independent of how the symbol range is split across workers.

use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};

use crate::error::{invalid, Result};

/// A deterministic random stream identified by a master seed and an index.
#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        Self {
            master_seed,
            stream_index,
            rng,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform sample in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform sample in the open interval `(0, 1)`.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        self.rng.sample(Open01)
    }

    #[inline]
    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Opens stream `index` of `master_seed`. The mapping is pure.
pub fn substream(master_seed: u64, index: u64) -> RngStream {
    RngStream::new(master_seed, index)
}

/// Noise family tag, used to pick the matching closed-form theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gaussian,
    Mixture,
    Laplacian,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gaussian => "Gaussian",
            Family::Mixture => "two-Gaussian mixture",
            Family::Laplacian => "Laplacian",
        })
    }
}

/// Which fourth moment to use for the two-Gaussian mixture.
///
/// `Exact` is the weighted moment `3(p s0^4 + (1-p) s1^4)`. `PaperLiteral`
/// drops the mixture weights and uses `3(s0^4 + s1^4)`. Sampling disagrees
/// with it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MomentFidelity {
    #[default]
    Exact,
    PaperLiteral,
}

/// A zero-mean, symmetric noise distribution (all scales in volts).
///
/// Construct through [`NoiseModel::gaussian`], [`NoiseModel::mixture`] or
/// [`NoiseModel::laplacian`], which reject degenerate parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    Gaussian {
        sigma: f64,
    },
    /// With probability `p` the sample comes from `N(0, sigma0^2)`, otherwise
    /// from `N(0, sigma1^2)`.
    Mixture {
        p: f64,
        sigma0: f64,
        sigma1: f64,
    },
    /// Density `exp(-|v|/lambda) / (2 lambda)`, variance `2 lambda^2`.
    Laplacian {
        lambda: f64,
    },
}

fn positive_scale(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        invalid(format!("{name} must be finite and > 0, got {value}"))
    }
}

impl NoiseModel {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        let model = NoiseModel::Gaussian { sigma };
        model.validate()?;
        Ok(model)
    }

    pub fn mixture(p: f64, sigma0: f64, sigma1: f64) -> Result<Self> {
        let model = NoiseModel::Mixture { p, sigma0, sigma1 };
        model.validate()?;
        Ok(model)
    }

    pub fn laplacian(lambda: f64) -> Result<Self> {
        let model = NoiseModel::Laplacian { lambda };
        model.validate()?;
        Ok(model)
    }

    /// Checks the parameter invariants. Enum literals bypass the constructors,
    /// so anything that accepts a model re-validates it.
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Gaussian { sigma } => positive_scale("sigma", sigma),
            NoiseModel::Mixture { p, sigma0, sigma1 } => {
                if !(p > 0.0 && p < 1.0) {
                    return invalid(format!("mixture weight p must be in (0, 1), got {p}"));
                }
                positive_scale("sigma0", sigma0)?;
                positive_scale("sigma1", sigma1)?;
                if sigma0 >= sigma1 {
                    return invalid(format!(
                        "mixture requires sigma0 < sigma1, got {sigma0} >= {sigma1}"
                    ));
                }
                Ok(())
            }
            NoiseModel::Laplacian { lambda } => positive_scale("lambda", lambda),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            NoiseModel::Gaussian { .. } => Family::Gaussian,
            NoiseModel::Mixture { .. } => Family::Mixture,
            NoiseModel::Laplacian { .. } => Family::Laplacian,
        }
    }

    /// Draws one sample.
    #[inline]
    pub fn draw(&self, stream: &mut RngStream) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => sigma * stream.standard_normal(),
            NoiseModel::Mixture { p, sigma0, sigma1 } => {
                let sigma = if stream.uniform() < p { sigma0 } else { sigma1 };
                sigma * stream.standard_normal()
            }
            NoiseModel::Laplacian { lambda } => {
                // inverse CDF of the standard Laplace distribution
                let u = stream.uniform_open();
                if u < 0.5 {
                    lambda * (2.0 * u).ln()
                } else {
                    -lambda * (2.0 * (1.0 - u)).ln()
                }
            }
        }
    }

    /// `E{v^2}` in volts².
    pub fn variance(&self) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => sigma * sigma,
            NoiseModel::Mixture { p, sigma0, sigma1 } => {
                p * sigma0 * sigma0 + (1.0 - p) * sigma1 * sigma1
            }
            NoiseModel::Laplacian { lambda } => 2.0 * lambda * lambda,
        }
    }

    /// `E{v^4}` in volts⁴. Only the mixture depends on `fidelity`.
    pub fn fourth_moment(&self, fidelity: MomentFidelity) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => 3.0 * sigma.powi(4),
            NoiseModel::Mixture { p, sigma0, sigma1 } => match fidelity {
                MomentFidelity::Exact => 3.0 * (p * sigma0.powi(4) + (1.0 - p) * sigma1.powi(4)),
                MomentFidelity::PaperLiteral => 3.0 * (sigma0.powi(4) + sigma1.powi(4)),
            },
            NoiseModel::Laplacian { lambda } => 24.0 * lambda.powi(4),
        }
    }

    /// Returns the model with every scale parameter multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let model = match *self {
            NoiseModel::Gaussian { sigma } => NoiseModel::Gaussian { sigma: sigma * c },
            NoiseModel::Mixture { p, sigma0, sigma1 } => NoiseModel::Mixture {
                p,
                sigma0: sigma0 * c,
                sigma1: sigma1 * c,
            },
            NoiseModel::Laplacian { lambda } => NoiseModel::Laplacian { lambda: lambda * c },
        };
        model.validate()?;
        Ok(model)
    }
}
