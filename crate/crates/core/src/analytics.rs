//! Closed-form theory: the Gaussian tail function, per-case received moments,
//! bit error probabilities under the CLT approximation, transmit powers and
//! the power-matching solvers.

use crate::error::{invalid, Error, Result};
use crate::modem::{case_mean, case_model, case_tx_variance, thresholds, BitPair, SchemeParams};
use crate::noise::{Family, MomentFidelity, NoiseModel};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Below this argument the tail is computed from the power series of `Phi`,
/// above it from the continued fraction of the Mills ratio.
const SERIES_CUTOFF: f64 = 3.0;

/// Gaussian tail probability `Q(x) = P(Z > x)` for standard normal `Z`.
///
/// Accuracy: absolute error below 1e-12 for `|x| <= 8` (in practice a few
/// ulps of 0.5) and relative error below 1e-8 for `8 < x <= 37`. Past
/// `x ~ 37.5` the true value leaves the normal `f64` range, so the result
/// degrades to a subnormal and then to zero.
pub fn q(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return invalid(format!("Q(x) requires finite x, got {x}"));
    }
    Ok(q_finite(x))
}

pub(crate) fn q_finite(x: f64) -> f64 {
    if x < 0.0 {
        1.0 - upper_tail(-x)
    } else {
        upper_tail(x)
    }
}

#[inline]
fn pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

fn upper_tail(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < SERIES_CUTOFF {
        // Phi(x) - 1/2 = pdf(x) * sum_k x^(2k+1) / (2k+1)!!, all terms positive
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 1.0;
        while term > 1e-17 * sum {
            term *= x2 / (2.0 * k + 1.0);
            sum += term;
            k += 1.0;
        }
        0.5 - pdf(x) * sum
    } else {
        pdf(x) * mills_ratio(x)
    }
}

/// `Q(x)/pdf(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...))))`, modified Lentz.
fn mills_ratio(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for j in 1..10_000 {
        let a = j as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// Inverse of [`q`] on `(0, 1)`: returns `x` with `Q(x) = prob`.
pub fn q_inverse(prob: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return invalid(format!("Q^-1 requires 0 < prob < 1, got {prob}"));
    }
    if prob > 0.5 {
        return Ok(-q_inverse(1.0 - prob)?);
    }
    // Newton on the monotone tail, kept inside a shrinking bracket
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    let mut x = (-2.0 * prob.ln()).sqrt().min(39.0);
    for _ in 0..200 {
        let err = q_finite(x) - prob;
        if err > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = err / pdf(x);
        let mut next = x + step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Received-sample moments for one bit case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseMoments {
    /// Mean of `r_n`.
    pub m_r: f64,
    /// Variance of `r_n`.
    pub var_r: f64,
    /// Mean of the raw second moment estimator, `m_r^2 + var_r`.
    pub m_sigma2: f64,
    /// Variance of the raw second moment estimator, `Var(r_n^2)/N`.
    pub var_sigma2: f64,
}

/// How the mean-estimator spread enters the mixture `p_b0` expression.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TheoryMode {
    /// `sample_mean ~ N(m_r, var_r / N)` for every family.
    #[default]
    NDivided,
    /// Mixture `p_b0` uses `var_r` without the `1/N` factor, the literal
    /// form of that expression. Gaussian expressions are unaffected.
    PaperLiteral,
}

/// Flags selecting the flavour of the closed-form evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct TheoryOptions {
    pub mode: TheoryMode,
    pub fidelity: MomentFidelity,
}

/// Theoretical error probabilities for both sub-bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoryBep {
    pub p_b0: f64,
    pub p_b1: f64,
    pub p_b: f64,
}

impl TheoryBep {
    pub fn new(p_b0: f64, p_b1: f64) -> Self {
        Self {
            p_b0,
            p_b1,
            p_b: 0.5 * (p_b0 + p_b1),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        invalid("N must be >= 1")
    } else {
        Ok(())
    }
}

fn check_family(scheme: &SchemeParams, expected: Family) -> Result<()> {
    match scheme.family() {
        Some(f) if f == expected => Ok(()),
        Some(f) => invalid(format!("expected a {expected} scheme, got {f}")),
        None => invalid(format!("expected a {expected} scheme, got mixed families")),
    }
}

/// Moments for a Gaussian alphabet; `var_sigma2 = (4 m_r^2 var_r + 2 var_r^2)/N`.
pub fn gaussian_case_moments(
    scheme: &SchemeParams,
    sigma_w: f64,
    bits: BitPair,
    n: usize,
) -> Result<CaseMoments> {
    check_family(scheme, Family::Gaussian)?;
    crate::channel::check_sigma_w(sigma_w)?;
    check_n(n)?;
    let m_r = case_mean(scheme, bits);
    let var_r = sigma_w * sigma_w + case_tx_variance(scheme, bits);
    let m2 = m_r * m_r;
    Ok(CaseMoments {
        m_r,
        var_r,
        m_sigma2: m2 + var_r,
        var_sigma2: (4.0 * m2 * var_r + 2.0 * var_r * var_r) / n as f64,
    })
}

/// Moments for a two-Gaussian mixture alphabet under the CLT approximation.
pub fn motg_case_moments(
    scheme: &SchemeParams,
    sigma_w: f64,
    bits: BitPair,
    n: usize,
    fidelity: MomentFidelity,
) -> Result<CaseMoments> {
    check_family(scheme, Family::Mixture)?;
    case_moments(scheme, sigma_w, bits, n, fidelity)
}

/// Moments for any zero-mean symmetric alphabet, from the second and fourth
/// moments of the noise:
///
/// ```text
/// E{x^4} = E{Y^4} + 6 m^2 E{Y^2} + m^4
/// E{r^4} = E{x^4} + 6 E{x^2} sw^2 + 3 sw^4
/// var_sigma2 = (E{r^4} - (m^2 + var_r)^2) / N
/// ```
pub fn case_moments(
    scheme: &SchemeParams,
    sigma_w: f64,
    bits: BitPair,
    n: usize,
    fidelity: MomentFidelity,
) -> Result<CaseMoments> {
    crate::channel::check_sigma_w(sigma_w)?;
    check_n(n)?;
    let model = case_model(scheme, bits);
    let m_r = case_mean(scheme, bits);
    let m2 = m_r * m_r;
    let sw2 = sigma_w * sigma_w;
    let ey2 = model.variance();
    let ey4 = model.fourth_moment(fidelity);
    let ex2 = ey2 + m2;
    let ex4 = ey4 + 6.0 * m2 * ey2 + m2 * m2;
    let er4 = ex4 + 6.0 * ex2 * sw2 + 3.0 * sw2 * sw2;
    let var_r = sw2 + ey2;
    let m_sigma2 = m2 + var_r;
    Ok(CaseMoments {
        m_r,
        var_r,
        m_sigma2,
        var_sigma2: (er4 - m_sigma2 * m_sigma2) / n as f64,
    })
}

fn theory_family(scheme: &SchemeParams) -> Result<Family> {
    match scheme.family() {
        Some(f @ (Family::Gaussian | Family::Mixture)) => Ok(f),
        Some(Family::Laplacian) => Err(Error::UnsupportedTheory(Family::Laplacian.to_string())),
        None => Err(Error::UnsupportedTheory("mixed-family".into())),
    }
}

/// Theoretical `p_b0`:
/// `1/2 [1 - Q((m_L - th_m)/s_L) + Q((m_H - th_m)/s_H)]` with `s` the
/// standard deviation of the sample mean in the low/high variance state.
pub fn bep_b0(scheme: &SchemeParams, sigma_w: f64, n: usize, mode: TheoryMode) -> Result<f64> {
    let family = theory_family(scheme)?;
    crate::channel::check_sigma_w(sigma_w)?;
    check_n(n)?;
    let th = thresholds(scheme);
    let sw2 = sigma_w * sigma_w;
    let divide = match (family, mode) {
        (Family::Mixture, TheoryMode::PaperLiteral) => 1.0,
        _ => n as f64,
    };
    let s_low = ((sw2 + scheme.low().variance()) / divide).sqrt();
    let s_high = ((sw2 + scheme.high().variance()) / divide).sqrt();
    let p = 0.5
        * (1.0 - q_finite((scheme.m_low() - th.th_m) / s_low)
            + q_finite((scheme.m_high() - th.th_m) / s_high));
    Ok(p)
}

/// Theoretical `p_b1`: the quarter-weighted sum over the four bit cases of
/// the probability that the raw second moment lands on the wrong side of
/// `th_v`.
pub fn bep_b1(
    scheme: &SchemeParams,
    sigma_w: f64,
    n: usize,
    fidelity: MomentFidelity,
) -> Result<f64> {
    let family = theory_family(scheme)?;
    let th_v = thresholds(scheme).th_v;
    let mut p = 0.0;
    for bits in BitPair::ALL {
        let cm = match family {
            Family::Gaussian => gaussian_case_moments(scheme, sigma_w, bits, n)?,
            _ => motg_case_moments(scheme, sigma_w, bits, n, fidelity)?,
        };
        let z = (cm.m_sigma2 - th_v) / cm.var_sigma2.sqrt();
        p += 0.25
            * if bits.b1 {
                q_finite(z)
            } else {
                1.0 - q_finite(z)
            };
    }
    Ok(p)
}

pub fn bep_total(
    scheme: &SchemeParams,
    sigma_w: f64,
    n: usize,
    options: TheoryOptions,
) -> Result<TheoryBep> {
    Ok(TheoryBep::new(
        bep_b0(scheme, sigma_w, n, options.mode)?,
        bep_b1(scheme, sigma_w, n, options.fidelity)?,
    ))
}

/// Average transmit power `E{x_n^2}` over the four equiprobable bit cases.
///
/// With `Exact` fidelity this is `(m_L^2 + m_H^2)/2 + (Var_L + Var_H)/2` for
/// every family. `PaperLiteral` changes only the mixture case, where the
/// literal expression pairs `sigma_0L` with `sigma_0H` inside each bit case;
/// it requires both mixtures to share the same weight.
pub fn transmit_power(scheme: &SchemeParams, fidelity: MomentFidelity) -> Result<f64> {
    let means = 0.5 * (scheme.m_low().powi(2) + scheme.m_high().powi(2));
    match (fidelity, *scheme.low(), *scheme.high()) {
        (
            MomentFidelity::PaperLiteral,
            NoiseModel::Mixture {
                p,
                sigma0: s0l,
                sigma1: s1l,
            },
            NoiseModel::Mixture {
                p: p_high,
                sigma0: s0h,
                sigma1: s1h,
            },
        ) => {
            if p != p_high {
                return invalid(format!(
                    "literal mixture power needs a shared weight, got p_low={p} p_high={p_high}"
                ));
            }
            Ok(means + 0.5 * (p * (s0l * s0l + s1l * s1l) + (1.0 - p) * (s0h * s0h + s1h * s1h)))
        }
        _ => Ok(means + 0.5 * (scheme.low().variance() + scheme.high().variance())),
    }
}

fn check_power_inputs(values: &[(&str, f64)]) -> Result<()> {
    for &(name, v) in values {
        if !v.is_finite() {
            return invalid(format!("{name} must be finite, got {v}"));
        }
    }
    Ok(())
}

/// Solves the Laplacian high-state scale `lambda1` so the GLAP transmit power
/// equals `target_power`.
pub fn match_power_laplace(
    target_power: f64,
    lambda0: f64,
    m_low: f64,
    m_high: f64,
) -> Result<f64> {
    check_power_inputs(&[
        ("target power", target_power),
        ("lambda0", lambda0),
        ("m_L", m_low),
        ("m_H", m_high),
    ])?;
    if lambda0 <= 0.0 {
        return invalid(format!("lambda0 must be > 0, got {lambda0}"));
    }
    let minimum = 0.5 * (m_low * m_low + m_high * m_high) + lambda0 * lambda0;
    if target_power <= minimum {
        return Err(Error::InfeasiblePower {
            target: target_power,
            minimum,
        });
    }
    Ok((target_power - minimum).sqrt())
}

/// Solves the mixture high-state scale `sigma_1H` so the GMoTG transmit power
/// (under `fidelity`) equals `target_power`.
#[allow(clippy::too_many_arguments)]
pub fn match_power_motg(
    target_power: f64,
    p: f64,
    sigma0_low: f64,
    sigma1_low: f64,
    sigma0_high: f64,
    m_low: f64,
    m_high: f64,
    fidelity: MomentFidelity,
) -> Result<f64> {
    check_power_inputs(&[
        ("target power", target_power),
        ("sigma0L", sigma0_low),
        ("sigma1L", sigma1_low),
        ("sigma0H", sigma0_high),
        ("m_L", m_low),
        ("m_H", m_high),
    ])?;
    if !(p > 0.0 && p < 1.0) {
        return invalid(format!("mixture weight p must be in (0, 1), got {p}"));
    }
    let means = 0.5 * (m_low * m_low + m_high * m_high);
    let (s0l2, s1l2, s0h2) = (sigma0_low.powi(2), sigma1_low.powi(2), sigma0_high.powi(2));
    // power = minimum + (1-p)/2 * sigma1H^2 under both readings
    let minimum = match fidelity {
        MomentFidelity::Exact => means + 0.5 * (p * s0l2 + (1.0 - p) * s1l2 + p * s0h2),
        MomentFidelity::PaperLiteral => means + 0.5 * (p * (s0l2 + s1l2) + (1.0 - p) * s0h2),
    };
    if target_power <= minimum {
        return Err(Error::InfeasiblePower {
            target: target_power,
            minimum,
        });
    }
    Ok((2.0 * (target_power - minimum) / (1.0 - p)).sqrt())
}

/// Diagnostic inverse: the mixture weight `p` that gives `target_power` for
/// fixed scales. Power is linear in `p`, so this is a single division.
#[allow(clippy::too_many_arguments)]
pub fn solve_mixture_weight(
    target_power: f64,
    sigma0_low: f64,
    sigma1_low: f64,
    sigma0_high: f64,
    sigma1_high: f64,
    m_low: f64,
    m_high: f64,
    fidelity: MomentFidelity,
) -> Result<f64> {
    let means = 0.5 * (m_low * m_low + m_high * m_high);
    let r = 2.0 * (target_power - means);
    let (s0l2, s1l2, s0h2, s1h2) = (
        sigma0_low.powi(2),
        sigma1_low.powi(2),
        sigma0_high.powi(2),
        sigma1_high.powi(2),
    );
    // r = p * a + (1 - p) * b
    let (a, b) = match fidelity {
        MomentFidelity::Exact => (s0l2 + s0h2, s1l2 + s1h2),
        MomentFidelity::PaperLiteral => (s0l2 + s1l2, s0h2 + s1h2),
    };
    let p = (b - r) / (b - a);
    if !(p > 0.0 && p < 1.0) {
        let (lo, hi) = (means + 0.5 * a.min(b), means + 0.5 * a.max(b));
        return Err(Error::InfeasiblePower {
            target: target_power,
            minimum: if target_power < lo { lo } else { hi },
        });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gg() -> SchemeParams {
        SchemeParams::gg(1e-3, 1e-2, 1e-3, 20e-3, 10).unwrap()
    }

    fn motg() -> SchemeParams {
        let s1h = match_power_motg(
            2.51e-4,
            0.5,
            5e-4,
            1e-3,
            5e-3,
            1e-3,
            1e-2,
            MomentFidelity::Exact,
        )
        .unwrap();
        SchemeParams::motg(1e-3, 1e-2, 0.5, 5e-4, 1e-3, 5e-3, s1h, 10).unwrap()
    }

    #[test]
    fn q_reference_values() {
        assert_eq!(q(0.0).unwrap(), 0.5);
        assert!((q(1.0).unwrap() - 0.158_655_253_931_457_05).abs() < 1e-15);
        assert!((q(-3.0).unwrap() - 0.998_650_101_968_369_9).abs() < 1e-15);
        assert!((q(2.0).unwrap() - 0.022_750_131_948_179_21).abs() < 1e-15);
        let r = q(10.0).unwrap() / 7.619_853_024_160_526e-24;
        assert!((r - 1.0).abs() < 1e-12);
        assert!(q(f64::NAN).is_err());
        assert!(q(f64::INFINITY).is_err());
    }

    #[test]
    fn q_routes_agree_at_cutoff() {
        let x = SERIES_CUTOFF;
        let cf = pdf(x) * mills_ratio(x);
        let below = q(x - 1e-9).unwrap();
        assert!((below - cf - pdf(x) * 1e-9).abs() < 2e-16, "{below} {cf}");
    }

    #[test]
    fn q_inverse_round_trips() {
        for &p in &[0.025, 0.5, 0.975, 1e-6, 0.3, 1e-12] {
            let x = q_inverse(p).unwrap();
            assert!(
                (q(x).unwrap() - p).abs() <= 1e-14 * p.max(1e-3),
                "p={p} x={x}"
            );
        }
        assert!((q_inverse(0.025).unwrap() - 1.959_963_984_540_054).abs() < 1e-12);
        assert!(q_inverse(0.0).is_err());
        assert!(q_inverse(1.0).is_err());
    }

    #[test]
    fn gaussian_moments_examples() {
        let s = gg();
        let cm = gaussian_case_moments(&s, 2e-5, BitPair::new(false, false), 10).unwrap();
        assert_eq!(cm.m_r, 1e-3);
        assert!((cm.var_r - 1.0004e-6).abs() < 1e-20);
        let cm = gaussian_case_moments(&s, 2e-5, BitPair::new(false, true), 10).unwrap();
        assert!((cm.var_r - 4.000004e-4).abs() < 1e-18);
        for bits in BitPair::ALL {
            let cm = gaussian_case_moments(&s, 2e-5, bits, 10).unwrap();
            let residual = cm.m_sigma2 - cm.m_r * cm.m_r - cm.var_r;
            assert!(residual.abs() <= 4.0 * f64::EPSILON * cm.m_sigma2);
        }
        assert!(gaussian_case_moments(&motg(), 2e-5, BitPair::default(), 10).is_err());
    }

    // The family-generic route must agree with the Gaussian closed form.
    #[test]
    fn generic_moments_agree_with_gaussian_closed_form() {
        let s = gg();
        for sw in [0.0, 2e-5, 1e-4, 3e-3] {
            for bits in BitPair::ALL {
                let a = gaussian_case_moments(&s, sw, bits, 10).unwrap();
                let b = case_moments(&s, sw, bits, 10, MomentFidelity::Exact).unwrap();
                assert!(
                    (a.var_sigma2 - b.var_sigma2).abs() <= 1e-9 * a.var_sigma2,
                    "{a:?} {b:?}"
                );
            }
        }
    }

    #[test]
    fn motg_moment_examples() {
        let s = motg();
        let cm = motg_case_moments(
            &s,
            0.0,
            BitPair::new(false, false),
            10,
            MomentFidelity::Exact,
        )
        .unwrap();
        assert!((cm.var_r - 6.25e-7).abs() < 1e-20);
        let exact = motg_case_moments(
            &s,
            2e-5,
            BitPair::new(true, true),
            10,
            MomentFidelity::Exact,
        )
        .unwrap();
        let literal = motg_case_moments(
            &s,
            2e-5,
            BitPair::new(true, true),
            10,
            MomentFidelity::PaperLiteral,
        )
        .unwrap();
        assert!(literal.var_sigma2 > exact.var_sigma2);
        assert!(
            motg_case_moments(&gg(), 2e-5, BitPair::default(), 10, MomentFidelity::Exact).is_err()
        );
    }

    #[test]
    fn bep_gg_operating_point() {
        let s = gg();
        let p0 = bep_b0(&s, 2e-5, 10, TheoryMode::NDivided).unwrap();
        let p1 = bep_b1(&s, 2e-5, 10, MomentFidelity::Exact).unwrap();
        // frozen from an independent scipy evaluation of the same expressions
        assert!((p0 - 0.119_19).abs() < 5e-5, "{p0}");
        assert!((p1 - 0.054_40).abs() < 5e-5, "{p1}");
        let total = bep_total(&s, 2e-5, 10, TheoryOptions::default()).unwrap();
        assert!((total.p_b - 0.0868).abs() < 1e-4);
        assert_eq!(total.p_b, 0.5 * (total.p_b0 + total.p_b1));
    }

    #[test]
    fn bep_degenerate_means_is_half() {
        let s = SchemeParams::binary(
            NoiseModel::gaussian(1e-3).unwrap(),
            NoiseModel::gaussian(2e-2).unwrap(),
            10,
        )
        .unwrap();
        assert_eq!(bep_b0(&s, 2e-5, 10, TheoryMode::NDivided).unwrap(), 0.5);
    }

    #[test]
    fn bep_laplace_unsupported() {
        let s = SchemeParams::glap(1e-3, 1e-2, 1e-4, 1.4e-2, 10).unwrap();
        assert!(matches!(
            bep_b0(&s, 2e-5, 10, TheoryMode::NDivided),
            Err(Error::UnsupportedTheory(_))
        ));
        assert!(matches!(
            bep_b1(&s, 2e-5, 10, MomentFidelity::Exact),
            Err(Error::UnsupportedTheory(_))
        ));
    }

    #[test]
    fn motg_b0_close_to_gg_at_matched_power() {
        // matched power leaves the high-state variance 0.09% above GG, so the
        // mean-bit theory is marginally higher, not lower
        let g = bep_b0(&gg(), 2e-5, 10, TheoryMode::NDivided).unwrap();
        let m = bep_b0(&motg(), 2e-5, 10, TheoryMode::NDivided).unwrap();
        assert!(m > g);
        assert!((m - g) / g < 1e-3);
        let literal = bep_b0(&motg(), 2e-5, 10, TheoryMode::PaperLiteral).unwrap();
        assert!((literal - 0.2055).abs() < 1e-3, "{literal}");
    }

    #[test]
    fn bep_b1_decreases_with_n() {
        let s = gg();
        let vals: Vec<f64> = (5..=40)
            .map(|n| bep_b1(&s, 2e-5, n, MomentFidelity::Exact).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        assert!(bep_b1(&s, 2e-5, 100_000, MomentFidelity::Exact).unwrap() < 1e-12);
    }

    #[test]
    fn transmit_powers() {
        assert!((transmit_power(&gg(), MomentFidelity::Exact).unwrap() - 2.51e-4).abs() < 1e-18);
        let glap = SchemeParams::glap(1e-3, 1e-2, 1e-4, 14.2e-3, 10).unwrap();
        let p = transmit_power(&glap, MomentFidelity::Exact).unwrap();
        assert!((p - 2.5215e-4).abs() < 1e-12, "{p}");
        assert!((p / 2.51e-4 - 1.0).abs() < 5e-3);
        // both readings agree at p = 0.5
        let m = motg();
        let a = transmit_power(&m, MomentFidelity::Exact).unwrap();
        let b = transmit_power(&m, MomentFidelity::PaperLiteral).unwrap();
        assert!((a - b).abs() < 1e-18);
    }

    #[test]
    fn laplace_solver() {
        let l1 = match_power_laplace(2.51e-4, 1e-4, 1e-3, 1e-2).unwrap();
        assert!((l1 - 1.4159e-2).abs() < 1e-6, "{l1}");
        let min = 0.5 * (1e-6 + 1e-4) + 1e-8;
        let eps = 1e-10;
        let l = match_power_laplace(min + eps, 1e-4, 1e-3, 1e-2).unwrap();
        assert!((l - eps.sqrt()).abs() < 1e-6 * eps.sqrt() + 1e-9);
        match match_power_laplace(min * 0.9, 1e-4, 1e-3, 1e-2) {
            Err(Error::InfeasiblePower { minimum, .. }) => assert!((minimum - min).abs() < 1e-18),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn motg_solver_and_weight_diagnostic() {
        let s1h = match_power_motg(
            2.51e-4,
            0.5,
            5e-4,
            1e-3,
            5e-3,
            1e-3,
            1e-2,
            MomentFidelity::Exact,
        )
        .unwrap();
        assert!((s1h - 2.785e-2).abs() < 1e-4, "{s1h}");
        for fidelity in [MomentFidelity::Exact, MomentFidelity::PaperLiteral] {
            let s1h =
                match_power_motg(2.51e-4, 0.3, 5e-4, 1e-3, 5e-3, 1e-3, 1e-2, fidelity).unwrap();
            let s = SchemeParams::motg(1e-3, 1e-2, 0.3, 5e-4, 1e-3, 5e-3, s1h, 10).unwrap();
            let p = transmit_power(&s, fidelity).unwrap();
            assert!((p / 2.51e-4 - 1.0).abs() < 1e-12);
        }
        let p = solve_mixture_weight(
            2.51e-4,
            5e-4,
            1e-3,
            5e-3,
            21e-3,
            1e-3,
            1e-2,
            MomentFidelity::PaperLiteral,
        )
        .unwrap();
        assert!((p - 0.14).abs() < 0.005, "{p}");
        let p_exact = solve_mixture_weight(
            2.51e-4,
            5e-4,
            1e-3,
            5e-3,
            21e-3,
            1e-3,
            1e-2,
            MomentFidelity::Exact,
        )
        .unwrap();
        assert!((p_exact - 0.0984).abs() < 1e-3, "{p_exact}");
        assert!(match_power_motg(
            1e-5,
            0.5,
            5e-4,
            1e-3,
            5e-3,
            1e-3,
            1e-2,
            MomentFidelity::Exact
        )
        .is_err());
    }
}
