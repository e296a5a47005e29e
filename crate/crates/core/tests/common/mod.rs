//! Test-only oracles, independent of the library's evaluation paths.
#![allow(dead_code)]

pub mod ddq;

use gqnm::noise::{substream, NoiseModel};

/// Raw sample moments `E{v^k}` for `k = 1..=8` of `draws` samples.
pub struct Moments {
    pub n: f64,
    pub raw: [f64; 9],
}

impl Moments {
    pub fn of(mut sample: impl FnMut() -> f64, draws: u64) -> Self {
        let mut raw = [0.0f64; 9];
        for _ in 0..draws {
            let v = sample();
            let mut p = 1.0;
            for r in raw.iter_mut() {
                *r += p;
                p *= v;
            }
        }
        let n = draws as f64;
        for r in raw.iter_mut() {
            *r /= n;
        }
        Self { n, raw }
    }

    pub fn of_model(model: &NoiseModel, draws: u64, seed: u64) -> Self {
        let mut stream = substream(seed, 0);
        Self::of(|| model.draw(&mut stream), draws)
    }

    /// Standard error of the k-th raw moment estimate.
    pub fn se(&self, k: usize) -> f64 {
        ((self.raw[2 * k] - self.raw[k] * self.raw[k]) / self.n).sqrt()
    }

    /// Distance of the k-th raw moment from `expected`, in standard errors.
    pub fn z(&self, k: usize, expected: f64) -> f64 {
        (self.raw[k] - expected) / self.se(k)
    }
}

/// Sample variance of `x` and its standard error, from the central moments.
pub fn variance_with_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let (mut m2, mut m4) = (0.0, 0.0);
    for &x in xs {
        let d = (x - mean) * (x - mean);
        m2 += d;
        m4 += d * d;
    }
    m2 /= n;
    m4 /= n;
    (m2, ((m4 - m2 * m2) / n).sqrt())
}
