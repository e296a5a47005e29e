//! Parameter sweeps over the channel noise level or the samples per symbol,
//! with CSV and SVG export.

use std::fmt::{self, Write as _};

use crate::analytics::{
    bep_total, match_power_laplace, match_power_motg, transmit_power, TheoryBep, TheoryOptions,
};
use crate::error::{invalid, Error, Result};
use crate::modem::{DetectorMode, SchemeParams};
use crate::montecarlo::{run_with_workers, BepEstimate, TrialPlan};
use crate::noise::{Family, MomentFidelity};

/// Operating point of the reference profile.
pub const DEFAULT_SIGMA_W: f64 = 2e-5;
pub const DEFAULT_SAMPLES_PER_SYMBOL: usize = 10;

/// Built-in parameter set: GG, GMoTG and GLAP alphabets at equal transmit
/// power.
///
/// The Gaussian alphabet fixes the power; the GMoTG `sigma_1H` and GLAP
/// `lambda1` are solved to match it.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub name: &'static str,
    pub m_low: f64,
    pub m_high: f64,
    pub sigma0: f64,
    pub sigma1: f64,
    pub mixture_p: f64,
    pub sigma0_low: f64,
    pub sigma1_low: f64,
    pub sigma0_high: f64,
    pub lambda0: f64,
    pub fidelity: MomentFidelity,
}

impl Profile {
    /// `m_L = 1e-3`, `m_H = 1e-2`; GG `sigma0 = 1e-3`, `sigma1 = 20e-3`;
    /// GMoTG `sigma0L = 5e-4`, `sigma1L = 1e-3`, `sigma0H = 5e-3`, `p = 0.5`;
    /// GLAP `lambda0 = 1e-4`.
    pub fn paper_sec4() -> Self {
        Self {
            name: "paper-sec4",
            m_low: 1e-3,
            m_high: 1e-2,
            sigma0: 1e-3,
            sigma1: 20e-3,
            mixture_p: 0.5,
            sigma0_low: 5e-4,
            sigma1_low: 1e-3,
            sigma0_high: 5e-3,
            lambda0: 1e-4,
            fidelity: MomentFidelity::Exact,
        }
    }

    pub fn gg(&self, n: usize) -> Result<SchemeParams> {
        SchemeParams::gg(self.m_low, self.m_high, self.sigma0, self.sigma1, n)
    }

    /// Transmit power of the GG alphabet; the other two are matched to it.
    pub fn target_power(&self) -> Result<f64> {
        transmit_power(&self.gg(1)?, MomentFidelity::Exact)
    }

    pub fn sigma1_high(&self) -> Result<f64> {
        match_power_motg(
            self.target_power()?,
            self.mixture_p,
            self.sigma0_low,
            self.sigma1_low,
            self.sigma0_high,
            self.m_low,
            self.m_high,
            self.fidelity,
        )
    }

    pub fn lambda1(&self) -> Result<f64> {
        match_power_laplace(self.target_power()?, self.lambda0, self.m_low, self.m_high)
    }

    pub fn motg(&self, n: usize) -> Result<SchemeParams> {
        SchemeParams::motg(
            self.m_low,
            self.m_high,
            self.mixture_p,
            self.sigma0_low,
            self.sigma1_low,
            self.sigma0_high,
            self.sigma1_high()?,
            n,
        )
    }

    pub fn glap(&self, n: usize) -> Result<SchemeParams> {
        SchemeParams::glap(self.m_low, self.m_high, self.lambda0, self.lambda1()?, n)
    }

    /// The three alphabets, named `GG`, `GMoTG`, `GLAP`.
    pub fn schemes(&self, n: usize) -> Result<Vec<NamedScheme>> {
        Ok(vec![
            NamedScheme::new("GG", self.gg(n)?),
            NamedScheme::new("GMoTG", self.motg(n)?),
            NamedScheme::new("GLAP", self.glap(n)?),
        ])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedScheme {
    pub name: String,
    pub scheme: SchemeParams,
}

impl NamedScheme {
    pub fn new(name: impl Into<String>, scheme: SchemeParams) -> Self {
        Self {
            name: name.into(),
            scheme,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepVariable {
    SigmaW,
    SamplesN,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::SigmaW => "sigma_w",
            SweepVariable::SamplesN => "N",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sigma_w" => Some(SweepVariable::SigmaW),
            "N" => Some(SweepVariable::SamplesN),
            _ => None,
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sweep definition. When sweeping `sigma_w`, every scheme keeps its own
/// samples per symbol; when sweeping `N`, every point uses `sigma_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    variable: SweepVariable,
    grid: Vec<f64>,
    schemes: Vec<NamedScheme>,
    sigma_w: f64,
    num_symbols: u64,
    master_seed: u64,
    theory: TheoryOptions,
    detector: DetectorMode,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        grid: Vec<f64>,
        schemes: Vec<NamedScheme>,
        sigma_w: f64,
        num_symbols: u64,
        master_seed: u64,
    ) -> Result<Self> {
        if grid.is_empty() {
            return invalid("sweep grid is empty");
        }
        if !grid.windows(2).all(|w| w[0] < w[1]) {
            return invalid("sweep grid must be strictly increasing");
        }
        match variable {
            SweepVariable::SigmaW => {
                if let Some(v) = grid.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return invalid(format!("sigma_w grid values must be > 0, got {v}"));
                }
            }
            SweepVariable::SamplesN => {
                if let Some(v) = grid
                    .iter()
                    .find(|v| !(v.fract() == 0.0 && **v >= 2.0 && **v <= 1e9))
                {
                    return invalid(format!("N grid values must be integers >= 2, got {v}"));
                }
            }
        }
        if schemes.is_empty() {
            return invalid("sweep needs at least one scheme");
        }
        let mut names: Vec<&str> = schemes.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return invalid("scheme names must be unique");
        }
        if names
            .iter()
            .any(|n| n.is_empty() || n.contains([',', '"', '\n']))
        {
            return invalid(
                "scheme names must be non-empty and free of commas, quotes and newlines",
            );
        }
        crate::channel::check_sigma_w(sigma_w)?;
        if num_symbols == 0 {
            return invalid("num_symbols must be >= 1");
        }
        Ok(Self {
            variable,
            grid,
            schemes,
            sigma_w,
            num_symbols,
            master_seed,
            theory: TheoryOptions::default(),
            detector: DetectorMode::default(),
        })
    }

    /// Channel-noise sweep: 12 log-spaced points from `10^-5.2` to `10^-4`,
    /// the three profile schemes at `N = 10`.
    pub fn fig4(profile: &Profile, num_symbols: u64, master_seed: u64) -> Result<Self> {
        let grid = (0..12)
            .map(|k| 10f64.powf(-5.2 + 1.2 * k as f64 / 11.0))
            .collect();
        Self::new(
            SweepVariable::SigmaW,
            grid,
            profile.schemes(DEFAULT_SAMPLES_PER_SYMBOL)?,
            DEFAULT_SIGMA_W,
            num_symbols,
            master_seed,
        )
    }

    /// Samples-per-symbol sweep: `N = 5, 10, ..., 40` at `sigma_w = 2e-5`.
    pub fn fig5(profile: &Profile, num_symbols: u64, master_seed: u64) -> Result<Self> {
        let grid = (1..=8).map(|k| 5.0 * k as f64).collect();
        Self::new(
            SweepVariable::SamplesN,
            grid,
            profile.schemes(DEFAULT_SAMPLES_PER_SYMBOL)?,
            DEFAULT_SIGMA_W,
            num_symbols,
            master_seed,
        )
    }

    pub fn with_theory(mut self, theory: TheoryOptions) -> Self {
        self.theory = theory;
        self
    }

    pub fn with_detector(mut self, detector: DetectorMode) -> Self {
        self.detector = detector;
        self
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn schemes(&self) -> &[NamedScheme] {
        &self.schemes
    }

    pub fn num_symbols(&self) -> u64 {
        self.num_symbols
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn theory(&self) -> TheoryOptions {
        self.theory
    }

    pub fn detector(&self) -> DetectorMode {
        self.detector
    }

    /// Scheme, channel noise and seed used for one grid point.
    pub fn point(&self, scheme: &NamedScheme, value: f64) -> Result<(SchemeParams, f64, u64)> {
        let (params, sigma_w) = match self.variable {
            SweepVariable::SigmaW => (scheme.scheme.clone(), value),
            SweepVariable::SamplesN => (
                scheme.scheme.with_samples_per_symbol(value as usize)?,
                self.sigma_w,
            ),
        };
        Ok((
            params,
            sigma_w,
            point_seed(self.master_seed, &scheme.name, value),
        ))
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one (scheme, grid value) cell, independent of row order.
fn point_seed(master_seed: u64, scheme: &str, value: f64) -> u64 {
    // FNV-1a over the name
    let name_hash = scheme.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    splitmix64(master_seed ^ splitmix64(name_hash) ^ splitmix64(value.to_bits().rotate_left(17)))
}

/// One (grid point, scheme) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub scheme: String,
    pub sim: BepEstimate,
    /// `None` where no closed form exists (Laplacian or mixed alphabets).
    pub theory: Option<TheoryBep>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub variable: SweepVariable,
    /// Sorted by `(scheme, value)`.
    pub rows: Vec<SweepRow>,
}

/// Runs a sweep on the default worker pool.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    sweep_with_workers(spec, 0)
}

pub fn sweep_with_workers(spec: &SweepSpec, workers: usize) -> Result<SweepResult> {
    let mut rows = Vec::with_capacity(spec.grid.len() * spec.schemes.len());
    for named in &spec.schemes {
        for &value in &spec.grid {
            let row = run_point(spec, named, value, workers).map_err(|e| Error::SweepPoint {
                variable: spec.variable.name(),
                value,
                scheme: named.name.clone(),
                source: Box::new(e),
            })?;
            rows.push(row);
        }
    }
    rows.sort_by(|a, b| a.scheme.cmp(&b.scheme).then(a.value.total_cmp(&b.value)));
    Ok(SweepResult {
        variable: spec.variable,
        rows,
    })
}

fn run_point(
    spec: &SweepSpec,
    named: &NamedScheme,
    value: f64,
    workers: usize,
) -> Result<SweepRow> {
    let (scheme, sigma_w, seed) = spec.point(named, value)?;
    let theory = match scheme.family() {
        Some(Family::Gaussian | Family::Mixture) => Some(bep_total(
            &scheme,
            sigma_w,
            scheme.samples_per_symbol(),
            spec.theory,
        )?),
        _ => None,
    };
    let plan =
        TrialPlan::new(scheme, sigma_w, spec.num_symbols, seed)?.with_detector(spec.detector);
    Ok(SweepRow {
        value,
        scheme: named.name.clone(),
        sim: run_with_workers(&plan, workers),
        theory,
    })
}

pub const CSV_HEADER: &str = "variable_name,variable_value,scheme,sim_pb0,sim_pb1,sim_pb,se_pb0,se_pb1,theory_pb0,theory_pb1,theory_pb";

/// Scientific notation with 9 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.8e}")
}

/// Renders the result as CSV. Rows are sorted by `(scheme, value)`.
pub fn to_csv(result: &SweepResult) -> String {
    let mut rows: Vec<&SweepRow> = result.rows.iter().collect();
    rows.sort_by(|a, b| a.scheme.cmp(&b.scheme).then(a.value.total_cmp(&b.value)));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let theory = match row.theory {
            Some(t) => [t.p_b0, t.p_b1, t.p_b].map(format_number),
            None => ["n/a", "n/a", "n/a"].map(String::from),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            result.variable.name(),
            format_number(row.value),
            row.scheme,
            format_number(row.sim.p_b0),
            format_number(row.sim.p_b1),
            format_number(row.sim.p_b),
            format_number(row.sim.se_b0),
            format_number(row.sim.se_b1),
            theory[0],
            theory[1],
            theory[2],
        );
    }
    out
}

const WIDTH: f64 = 820.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 230.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Clone, Copy)]
enum SubBit {
    B0,
    B1,
    Total,
}

impl SubBit {
    const ALL: [SubBit; 3] = [SubBit::B0, SubBit::B1, SubBit::Total];

    fn label(self) -> &'static str {
        match self {
            SubBit::B0 => "p_b0",
            SubBit::B1 => "p_b1",
            SubBit::Total => "p_b",
        }
    }

    fn sim(self, e: &BepEstimate) -> f64 {
        match self {
            SubBit::B0 => e.p_b0,
            SubBit::B1 => e.p_b1,
            SubBit::Total => e.p_b,
        }
    }

    fn theory(self, t: &TheoryBep) -> f64 {
        match self {
            SubBit::B0 => t.p_b0,
            SubBit::B1 => t.p_b1,
            SubBit::Total => t.p_b,
        }
    }

    fn marker(self, x: f64, y: f64, colour: &str) -> String {
        match self {
            SubBit::B0 => {
                format!(r#"<circle class="sim" cx="{x:.2}" cy="{y:.2}" r="4" fill="{colour}"/>"#)
            }
            SubBit::B1 => format!(
                r#"<rect class="sim" x="{:.2}" y="{:.2}" width="8" height="8" fill="{colour}"/>"#,
                x - 4.0,
                y - 4.0
            ),
            SubBit::Total => format!(
                r#"<path class="sim" d="M{:.2},{:.2} L{:.2},{:.2} L{:.2},{:.2} Z" fill="{colour}"/>"#,
                x,
                y - 5.0,
                x + 5.0,
                y + 4.0,
                x - 5.0,
                y + 4.0
            ),
        }
    }
}

/// Log-log (`sigma_w`) or lin-log (`N`) chart of the sweep: filled markers
/// for simulation, dashed lines for theory.
pub fn to_svg(result: &SweepResult) -> Result<String> {
    if result.rows.is_empty() {
        return invalid("cannot plot an empty sweep result");
    }
    let log_x = result.variable == SweepVariable::SigmaW;
    let xs: Vec<f64> = result.rows.iter().map(|r| r.value).collect();
    if log_x && xs.iter().any(|&x| x <= 0.0) {
        return invalid("sigma_w values must be positive for a log axis");
    }
    let fx = |x: f64| if log_x { x.log10() } else { x };
    let (mut x0, mut x1) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(fx(x)), b.max(fx(x)))
        });
    if x1 - x0 < 1e-12 {
        x0 -= 0.5;
        x1 += 0.5;
    } else {
        let pad = 0.04 * (x1 - x0);
        x0 -= pad;
        x1 += pad;
    }

    let mut ys: Vec<f64> = Vec::new();
    for row in &result.rows {
        for sb in SubBit::ALL {
            ys.push(sb.sim(&row.sim));
            if let Some(t) = &row.theory {
                ys.push(sb.theory(t));
            }
        }
    }
    let positive: Vec<f64> = ys
        .into_iter()
        .filter(|&y| y > 0.0 && y.is_finite())
        .collect();
    let (ylo, yhi) = if positive.is_empty() {
        (-6.0, 0.0)
    } else {
        let lo = positive
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
            .log10()
            .floor();
        let hi = positive
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
            .log10()
            .ceil();
        (lo.max(-15.0), if hi <= lo { lo + 1.0 } else { hi })
    };

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (fx(x) - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| TOP + (yhi - y.log10().clamp(ylo, yhi)) / (yhi - ylo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    // y decades
    let mut d = ylo as i32;
    while d as f64 <= yhi {
        let y = py(10f64.powi(d));
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
        d += 1;
    }

    // x ticks at the distinct grid values
    let mut ticks = xs.clone();
    ticks.sort_by(f64::total_cmp);
    ticks.dedup();
    let step = ticks.len().div_ceil(12).max(1);
    for &t in ticks.iter().step_by(step) {
        let x = px(t);
        let label = if log_x {
            format!("{t:.2e}")
        } else {
            format!("{t}")
        };
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#eeeeee"/>"##,
            TOP + plot_h
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            TOP + plot_h + 18.0
        );
    }
    let x_title = if log_x {
        "channel noise sigma_w (V)"
    } else {
        "samples per symbol N"
    };
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_title}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">bit error probability</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    let mut schemes: Vec<&str> = result.rows.iter().map(|r| r.scheme.as_str()).collect();
    schemes.sort_unstable();
    schemes.dedup();

    let mut legend_y = TOP + 10.0;
    for (i, scheme) in schemes.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut rows: Vec<&SweepRow> = result.rows.iter().filter(|r| r.scheme == *scheme).collect();
        rows.sort_by(|a, b| a.value.total_cmp(&b.value));
        for sb in SubBit::ALL {
            let _ = writeln!(
                svg,
                r#"<g class="series" data-scheme="{scheme}" data-subbit="{}">"#,
                sb.label()
            );
            let theory: Vec<(f64, f64)> = rows
                .iter()
                .filter_map(|r| r.theory.as_ref().map(|t| (r.value, sb.theory(t))))
                .filter(|&(_, y)| y > 0.0)
                .collect();
            if theory.len() > 1 {
                let points: Vec<String> = theory
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline class="theory" points="{}" fill="none" stroke="{colour}" stroke-width="1.5" stroke-dasharray="6,4"/>"#,
                    points.join(" ")
                );
            } else if let Some(&(x, y)) = theory.first() {
                let _ = writeln!(
                    svg,
                    r#"<line class="theory" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="1.5" stroke-dasharray="3,2"/>"#,
                    px(x) - 10.0,
                    py(y),
                    px(x) + 10.0,
                    py(y)
                );
            }
            for r in &rows {
                let y = sb.sim(&r.sim);
                if y > 0.0 {
                    let _ = writeln!(svg, "{}", sb.marker(px(r.value), py(y), colour));
                }
            }
            let _ = writeln!(svg, "</g>");

            let lx = WIDTH - RIGHT + 20.0;
            let _ = writeln!(svg, "{}", sb.marker(lx, legend_y, colour));
            let _ = writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{legend_y:.2}" x2="{:.2}" y2="{legend_y:.2}" stroke="{colour}" stroke-dasharray="6,4"/>"#,
                lx + 10.0,
                lx + 34.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}">{scheme} {}</text>"#,
                lx + 42.0,
                legend_y + 4.0,
                sb.label()
            );
            legend_y += 18.0;
        }
    }
    let _ = writeln!(
        svg,
        r##"<text x="{:.2}" y="{:.2}" fill="#444444">markers: simulation, dashed: theory</text>"##,
        WIDTH - RIGHT + 20.0,
        legend_y + 10.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec(variable: SweepVariable, grid: Vec<f64>) -> SweepSpec {
        let profile = Profile::paper_sec4();
        SweepSpec::new(variable, grid, profile.schemes(10).unwrap(), 2e-5, 2_000, 5).unwrap()
    }

    #[test]
    fn presets_have_expected_shape() {
        let p = Profile::paper_sec4();
        let fig4 = SweepSpec::fig4(&p, 10, 1).unwrap();
        assert_eq!(fig4.grid().len(), 12);
        assert!((fig4.grid()[0] - 10f64.powf(-5.2)).abs() < 1e-18);
        assert!((fig4.grid()[11] - 1e-4).abs() < 1e-16);
        assert_eq!(fig4.schemes().len(), 3);
        let fig5 = SweepSpec::fig5(&p, 10, 1).unwrap();
        assert_eq!(
            fig5.grid(),
            &[5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0]
        );
    }

    #[test]
    fn spec_validation() {
        let p = Profile::paper_sec4();
        let schemes = p.schemes(10).unwrap();
        let new = |v, g: Vec<f64>, s: Vec<NamedScheme>| SweepSpec::new(v, g, s, 2e-5, 10, 0);
        assert!(new(SweepVariable::SigmaW, vec![1e-5], vec![]).is_err());
        assert!(new(SweepVariable::SigmaW, vec![], schemes.clone()).is_err());
        assert!(new(SweepVariable::SigmaW, vec![2e-5, 1e-5], schemes.clone()).is_err());
        assert!(new(SweepVariable::SigmaW, vec![0.0, 1e-5], schemes.clone()).is_err());
        assert!(new(SweepVariable::SamplesN, vec![1.0, 5.0], schemes.clone()).is_err());
        assert!(new(SweepVariable::SamplesN, vec![2.5, 5.0], schemes.clone()).is_err());
        let dup = vec![schemes[0].clone(), schemes[0].clone()];
        assert!(new(SweepVariable::SamplesN, vec![5.0], dup).is_err());
        assert!(new(SweepVariable::SamplesN, vec![2.0, 5.0], schemes).is_ok());
    }

    #[test]
    fn sweep_rows_and_theory_columns() {
        let spec = tiny_spec(SweepVariable::SamplesN, vec![5.0, 10.0]);
        let res = sweep(&spec).unwrap();
        assert_eq!(res.rows.len(), 6);
        let names: Vec<_> = res
            .rows
            .iter()
            .map(|r| (r.scheme.as_str(), r.value))
            .collect();
        assert_eq!(
            names,
            vec![
                ("GG", 5.0),
                ("GG", 10.0),
                ("GLAP", 5.0),
                ("GLAP", 10.0),
                ("GMoTG", 5.0),
                ("GMoTG", 10.0)
            ]
        );
        for row in &res.rows {
            assert_eq!(row.theory.is_some(), row.scheme != "GLAP");
        }
    }

    #[test]
    fn theory_matches_direct_call() {
        let spec = tiny_spec(SweepVariable::SamplesN, vec![5.0, 20.0]);
        let res = sweep(&spec).unwrap();
        for row in res.rows.iter().filter(|r| r.theory.is_some()) {
            let named = spec
                .schemes()
                .iter()
                .find(|s| s.name == row.scheme)
                .unwrap();
            let (scheme, sw, _) = spec.point(named, row.value).unwrap();
            let direct =
                bep_total(&scheme, sw, row.value as usize, TheoryOptions::default()).unwrap();
            assert_eq!(row.theory.unwrap(), direct);
        }
    }

    #[test]
    fn csv_layout() {
        let spec = tiny_spec(SweepVariable::SigmaW, vec![1e-5]);
        let mut res = sweep(&spec).unwrap();
        res.rows.truncate(2);
        let csv = to_csv(&res);
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(csv, to_csv(&res));
        let glap = csv.lines().nth(2).unwrap();
        assert!(glap.starts_with("sigma_w,1.00000000e-5,GLAP,"));
        assert!(glap.ends_with(",n/a,n/a,n/a"));
    }

    #[test]
    fn svg_basics() {
        let spec = tiny_spec(SweepVariable::SamplesN, vec![10.0]);
        let mut res = sweep(&spec).unwrap();
        res.rows.truncate(1);
        let svg = to_svg(&res).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        // one simulation mark per plotted series, plus one legend marker each
        let series = svg.matches(r#"<g class="series""#).count();
        assert_eq!(series, 3);
        assert_eq!(svg.matches(r#"class="sim""#).count(), 6);
        assert_eq!(svg, to_svg(&res).unwrap());
        assert!(to_svg(&SweepResult {
            variable: SweepVariable::SigmaW,
            rows: vec![]
        })
        .is_err());
    }

    #[test]
    fn point_errors_name_the_cell() {
        // N = 2 is a valid grid value, but an absurd scheme can still fail at a point
        let s = SchemeParams::gg(0.0, 1.0, 0.1, 1.0, 4).unwrap();
        let spec = SweepSpec::new(
            SweepVariable::SigmaW,
            vec![1e-3],
            vec![NamedScheme::new("X", s)],
            0.0,
            10,
            0,
        )
        .unwrap();
        assert!(sweep(&spec).is_ok());
        let err = Error::SweepPoint {
            variable: "N",
            value: 5.0,
            scheme: "X".into(),
            source: Box::new(Error::InvalidInput("boom".into())),
        };
        assert!(err.to_string().contains("N=5e0 for scheme X"));
    }

    #[test]
    fn seeds_differ_per_cell() {
        assert_ne!(point_seed(1, "GG", 5.0), point_seed(1, "GG", 10.0));
        assert_ne!(point_seed(1, "GG", 5.0), point_seed(1, "GLAP", 5.0));
        assert_ne!(point_seed(1, "GG", 5.0), point_seed(2, "GG", 5.0));
        assert_eq!(point_seed(1, "GG", 5.0), point_seed(1, "GG", 5.0));
    }
}
