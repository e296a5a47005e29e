//! Memoryless real-valued AWGN channel.

use crate::error::{invalid, Result};
use crate::modem::Symbol;
use crate::noise::RngStream;

/// Adds i.i.d. `N(0, sigma_w^2)` noise to every sample. `sigma_w = 0` returns
/// the input untouched and consumes no randomness.
pub fn awgn(tx: Symbol, sigma_w: f64, stream: &mut RngStream) -> Result<Symbol> {
    let mut rx = tx;
    awgn_in_place(rx.samples_mut(), sigma_w, stream)?;
    Ok(rx)
}

#[inline]
pub fn awgn_in_place(samples: &mut [f64], sigma_w: f64, stream: &mut RngStream) -> Result<()> {
    check_sigma_w(sigma_w)?;
    if sigma_w > 0.0 {
        for x in samples.iter_mut() {
            *x += sigma_w * stream.standard_normal();
        }
    }
    Ok(())
}

pub(crate) fn check_sigma_w(sigma_w: f64) -> Result<()> {
    if sigma_w.is_finite() && sigma_w >= 0.0 {
        Ok(())
    } else {
        invalid(format!("sigma_w must be finite and >= 0, got {sigma_w}"))
    }
}
