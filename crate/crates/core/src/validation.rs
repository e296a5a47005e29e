//! Quick self-check of the main invariants, used by `gqnm validate`.

use crate::analytics::{bep_total, q, transmit_power, TheoryOptions};
use crate::error::Result;
use crate::experiments::{Profile, DEFAULT_SAMPLES_PER_SYMBOL, DEFAULT_SIGMA_W};
use crate::montecarlo::{run_with_workers, TrialPlan};
use crate::noise::{substream, NoiseModel};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

/// Runs the invariant checks with `num_symbols` Monte Carlo symbols (and ten
/// times as many noise draws) per check.
pub fn run_checks(
    profile: &Profile,
    num_symbols: u64,
    master_seed: u64,
    workers: usize,
) -> Result<Vec<CheckResult>> {
    let n = DEFAULT_SAMPLES_PER_SYMBOL;
    let mut out = Vec::new();

    let worst = (0..1000)
        .map(|i| -8.0 + 16.0 * i as f64 / 999.0)
        .map(|x| Ok((q(x)? + q(-x)? - 1.0).abs()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    out.push(CheckResult::new(
        "q symmetry",
        worst <= 1e-12,
        format!("max |Q(x)+Q(-x)-1| = {worst:.3e}"),
    ));

    let schemes = profile.schemes(n)?;
    let draws = num_symbols.saturating_mul(10).max(1000);
    for (i, named) in schemes.iter().enumerate() {
        for (j, (label, model)) in [("low", named.scheme.low()), ("high", named.scheme.high())]
            .into_iter()
            .enumerate()
        {
            let (z, sample) = variance_z(model, draws, master_seed ^ ((2 * i + j) as u64) << 8);
            out.push(CheckResult::new(
                format!("{} {label} variance", named.name),
                z.abs() <= 5.0,
                format!(
                    "sample {sample:.6e} vs {:.6e} ({z:+.2} SE)",
                    model.variance()
                ),
            ));
        }
    }

    let target = profile.target_power()?;
    for named in &schemes {
        let p = transmit_power(&named.scheme, profile.fidelity)?;
        let rel = (p / target - 1.0).abs();
        out.push(CheckResult::new(
            format!("{} power match", named.name),
            rel <= 1e-12,
            format!("power {p:.9e} vs target {target:.9e}"),
        ));
    }

    for named in schemes.iter().filter(|s| s.name != "GLAP") {
        let theory = bep_total(&named.scheme, DEFAULT_SIGMA_W, n, TheoryOptions::default())?;
        let plan = TrialPlan::new(
            named.scheme.clone(),
            DEFAULT_SIGMA_W,
            num_symbols,
            master_seed,
        )?;
        let sim = run_with_workers(&plan, workers);
        let ok = (sim.p_b0 - theory.p_b0).abs() <= 3.0 * sim.se_b0 + 0.25 * theory.p_b0;
        out.push(CheckResult::new(
            format!("{} p_b0 theory vs simulation", named.name),
            ok,
            format!(
                "sim {:.6e} +/- {:.1e}, theory {:.6e}",
                sim.p_b0, sim.se_b0, theory.p_b0
            ),
        ));
    }

    let plan = TrialPlan::new(
        schemes[0].scheme.clone(),
        DEFAULT_SIGMA_W,
        num_symbols.min(100_000),
        master_seed,
    )?;
    let a = run_with_workers(&plan, 1);
    let b = run_with_workers(&plan, 4);
    out.push(CheckResult::new(
        "worker determinism",
        a == b,
        format!(
            "1 worker: {}/{} errors, 4 workers: {}/{}",
            a.errors_b0, a.errors_b1, b.errors_b0, b.errors_b1
        ),
    ));

    Ok(out)
}

fn variance_z(model: &NoiseModel, draws: u64, seed: u64) -> (f64, f64) {
    let mut stream = substream(seed, 0);
    let (mut s2, mut s4) = (0.0, 0.0);
    for _ in 0..draws {
        let v = model.draw(&mut stream);
        let v2 = v * v;
        s2 += v2;
        s4 += v2 * v2;
    }
    let n = draws as f64;
    let m2 = s2 / n;
    let se = ((s4 / n - m2 * m2) / n).sqrt();
    ((m2 - model.variance()) / se, m2)
}
