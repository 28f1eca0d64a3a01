//! Adaptive numerical integration.
//!
//! Everything in this crate that is not available in closed form goes
//! through this module: finite integrals, improper tails `[a, ∞)`, and
//! cumulative integrals along a grid. The rule is the 7/15-point
//! Gauss-Kronrod pair, applied with global adaptive bisection. Kronrod nodes
//! are strictly interior, so integrands are never sampled at panel
//! endpoints; integrable endpoint singularities are tolerated.
//!
//! Improper tails are mapped onto a bounded variable and split into dyadic
//! panels. Panels are summed until the estimated remainder falls below the
//! requested tolerance; when the panel contributions stop shrinking the
//! integral is reported as divergent.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Substitution used to map `[a, ∞)` onto a bounded interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TailTransform {
    /// `x = a + s·u/(1-u)`. Power-law tails become bounded integrands.
    #[default]
    Reciprocal,
    /// `x = a - s·ln(1-u)`. Suited to exponentially decaying integrands.
    Exponential,
}

/// Tolerances and limits for every integration routine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of any single panel.
    pub max_depth: u32,
    pub tail_transform: TailTransform,
    /// A tail integral whose partial sums exceed this magnitude is reported
    /// as divergent.
    pub divergence_bound: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_depth: 60,
            tail_transform: TailTransform::Reciprocal,
            divergence_bound: 1e15,
        }
    }
}

impl QuadConfig {
    /// Relative-only configuration used for evaluating distribution
    /// functionals, whose magnitudes range over many decades.
    pub fn precise() -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol: 1e-12,
            ..Self::default()
        }
    }

    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_depth < 10 {
            return Err(QuadError::InvalidConfig(format!(
                "abs_tol={} rel_tol={} max_depth={}",
                self.abs_tol, self.rel_tol, self.max_depth
            )));
        }
        Ok(())
    }

    fn target(&self, estimate: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * estimate.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("integration did not converge on [{a}, {b}]: estimate {estimate}, error {error}")]
    NonConvergence { a: f64, b: f64, estimate: f64, error: f64 },
    #[error("integrand returned {value} at x = {x}")]
    DomainError { x: f64, value: f64 },
    #[error("tail integral from {a} appears divergent (partial sum {partial_sum} after {panels} panels)")]
    Divergence { a: f64, partial_sum: f64, panels: usize },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("panel {index} of cumulative table: {source}")]
    Panel {
        index: usize,
        #[source]
        source: Box<QuadError>,
    },
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Error floor imposed by rounding; a panel at its floor cannot improve.
    floor: f64,
    depth: u32,
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, QuadError> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadError::DomainError { x, value: v })
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Result<Panel, QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = checked(f, center)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = checked(f, center - dx)?;
        let f2 = checked(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    error = error.max(floor);
    Ok(Panel {
        a,
        b,
        value,
        error,
        floor,
        depth,
    })
}

/// Global adaptive integration over a list of initial panels.
fn adaptive<F: Fn(f64) -> f64>(f: &F, breaks: &[f64], cfg: &QuadConfig) -> Result<(f64, f64), QuadError> {
    let mut panels = Vec::with_capacity(64);
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            panels.push(kronrod15(f, w[0], w[1], 0)?);
        }
    }
    let max_panels = 2000 + 50 * breaks.len();
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= cfg.target(value) {
            return Ok((value, error));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels[worst];
        if p.error <= p.floor {
            // Rounding-limited everywhere that matters.
            return Ok((value, error));
        }
        let mid = 0.5 * (p.a + p.b);
        if p.depth >= cfg.max_depth || panels.len() >= max_panels || mid <= p.a || mid >= p.b {
            return Err(QuadError::NonConvergence {
                a: breaks[0],
                b: breaks[breaks.len() - 1],
                estimate: value,
                error,
            });
        }
        let left = kronrod15(f, p.a, mid, p.depth + 1)?;
        let right = kronrod15(f, mid, p.b, p.depth + 1)?;
        panels[worst] = left;
        panels.push(right);
    }
}

/// `∫_a^b f(x) dx`.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64, QuadError> {
    integrate_with_breaks(f, a, b, &[], cfg)
}

/// `∫_a^b f(x) dx` with the interval pre-split at the given interior points,
/// typically kinks or discontinuities of `f`. Points outside `(a, b)` are
/// ignored.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<f64, QuadError> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(QuadError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let mut pts = Vec::with_capacity(breaks.len() + 2);
    pts.push(a);
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    pts.extend(inner);
    pts.push(b);
    adaptive(&f, &pts, cfg).map(|(v, _)| v)
}

const MAX_TAIL_PANELS: usize = 480;

/// `∫_a^∞ f(x) dx` using the configured tail transform and a length scale
/// of `max(1, |a|)`.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadConfig) -> Result<f64, QuadError> {
    integrate_tail_scaled(f, a, a.abs().max(1.0), &[], cfg)
}

/// `∫_a^∞ f(x) dx` with an explicit length scale for the transform and
/// optional break points (kinks of `f`) beyond `a`.
///
/// Break points are handled by integrating `[a, last_break]` as a finite
/// integral and transforming only the remainder.
pub fn integrate_tail_scaled<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    scale: f64,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<f64, QuadError> {
    cfg.validate()?;
    if !a.is_finite() {
        return Err(QuadError::InvalidInterval { a, b: f64::INFINITY });
    }
    let last = breaks
        .iter()
        .copied()
        .filter(|&x| x > a && x.is_finite())
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let (head, start) = match last {
        Some(end) => (integrate_with_breaks(&f, a, end, breaks, cfg)?, end),
        None => (0.0, a),
    };
    let scale = if scale.is_finite() && scale > 0.0 { scale } else { 1.0 };
    let tail = transformed_tail(&f, start, scale, head, cfg)?;
    Ok(head + tail)
}

fn transformed_tail<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    s: f64,
    carried: f64,
    cfg: &QuadConfig,
) -> Result<f64, QuadError> {
    let transform = cfg.tail_transform;
    // v = 1 - u runs over (0, 1]; dyadic panels [2^-(k+1), 2^-k].
    let g = move |v: f64| -> f64 {
        match transform {
            TailTransform::Reciprocal => {
                let inv = 1.0 / v;
                let x = a + s * (inv - 1.0);
                f(x) * s * inv * inv
            }
            TailTransform::Exponential => {
                let x = a - s * v.ln();
                f(x) * s / v
            }
        }
    };
    let piece_cfg = QuadConfig {
        abs_tol: (cfg.abs_tol * 0.125).max(f64::MIN_POSITIVE),
        ..*cfg
    };
    let mut sum = 0.0;
    let mut prev: Option<f64> = None;
    let mut growing = 0usize;
    let mut hi = 1.0f64;
    for k in 0..MAX_TAIL_PANELS {
        let lo = hi * 0.5;
        let piece = adaptive(&g, &[lo, hi], &piece_cfg)?.0;
        sum += piece;
        hi = lo;
        if !sum.is_finite() || sum.abs() > cfg.divergence_bound {
            return Err(QuadError::Divergence {
                a,
                partial_sum: sum,
                panels: k + 1,
            });
        }
        if let Some(p) = prev {
            let target = cfg.target(sum + carried);
            if piece == 0.0 && p == 0.0 {
                return Ok(sum);
            }
            let ratio = if p != 0.0 { (piece / p).abs() } else { f64::INFINITY };
            if ratio < 1.0 {
                growing = 0;
                let remainder = piece.abs() * ratio / (1.0 - ratio);
                if remainder <= 0.25 * target {
                    return Ok(sum);
                }
            } else {
                growing += 1;
                if k >= 64 && growing >= 32 {
                    return Err(QuadError::Divergence {
                        a,
                        partial_sum: sum,
                        panels: k + 1,
                    });
                }
            }
        }
        prev = Some(piece);
    }
    Err(QuadError::Divergence {
        a,
        partial_sum: sum,
        panels: MAX_TAIL_PANELS,
    })
}

/// Running integrals `∫_origin^{grid[j]} f` tabulated on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeTable {
    pub origin: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub integrand_id: String,
}

impl CumulativeTable {
    /// `∫_{grid[i]}^{grid[j]} f`.
    pub fn between(&self, i: usize, j: usize) -> f64 {
        self.values[j] - self.values[i]
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Tabulates `∫_origin^{grid[j]} f` for every grid point. Each panel between
/// consecutive points is integrated once and the results are accumulated.
pub fn cumulative_on_grid<F: Fn(f64) -> f64>(
    f: F,
    origin: f64,
    grid: &[f64],
    integrand_id: impl Into<String>,
    cfg: &QuadConfig,
) -> Result<CumulativeTable, QuadError> {
    cumulative_with_breaks(f, origin, grid, &[], integrand_id, cfg)
}

pub fn cumulative_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    origin: f64,
    grid: &[f64],
    breaks: &[f64],
    integrand_id: impl Into<String>,
    cfg: &QuadConfig,
) -> Result<CumulativeTable, QuadError> {
    if grid.is_empty() {
        return Err(QuadError::InvalidGrid("empty grid".into()));
    }
    if grid[0] < origin {
        return Err(QuadError::InvalidGrid(format!(
            "grid starts at {} before origin {}",
            grid[0], origin
        )));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(QuadError::InvalidGrid("grid is not strictly increasing".into()));
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    let mut left = origin;
    for (index, &right) in grid.iter().enumerate() {
        acc += integrate_with_breaks(&f, left, right, breaks, cfg).map_err(|e| QuadError::Panel {
            index,
            source: Box::new(e),
        })?;
        values.push(acc);
        left = right;
    }
    Ok(CumulativeTable {
        origin,
        grid: grid.to_vec(),
        values,
        integrand_id: integrand_id.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn polynomial_and_empty_interval() {
        let cfg = QuadConfig::default();
        assert!(close(integrate_finite(|x| x, 0.0, 1.0, &cfg).unwrap(), 0.5, 1e-14));
        assert_eq!(integrate_finite(|_| f64::NAN, 2.0, 2.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn erlang_mrl_antiderivative() {
        // t/2 + ln(2t+1)/4 at t = 0.5
        let expected = 0.25 + 2f64.ln() / 4.0;
        assert!((expected - 0.4232867951).abs() < 1e-10);
        let got = integrate_finite(|u| (u + 1.0) / (2.0 * u + 1.0), 0.0, 0.5, &QuadConfig::default()).unwrap();
        assert!((got - expected).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_is_never_sampled() {
        // ∫_0^1 x^{-1/2} = 2, integrand infinite at 0.
        let cfg = QuadConfig::with_tolerances(1e-9, 1e-9);
        let got = integrate_finite(|x| 1.0 / x.sqrt(), 0.0, 1.0, &cfg).unwrap();
        assert!((got - 2.0).abs() < 1e-8);
    }

    #[test]
    fn nan_is_a_hard_error() {
        let err =
            integrate_finite(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &QuadConfig::default()).unwrap_err();
        assert!(matches!(err, QuadError::DomainError { .. }));
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(matches!(
            integrate_finite(|x| x, 1.0, 0.0, &QuadConfig::default()),
            Err(QuadError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn tails() {
        let cfg = QuadConfig::default();
        assert!(close(integrate_tail(|u| (-u).exp(), 0.0, &cfg).unwrap(), 1.0, 1e-10));
        assert!(close(integrate_tail(|u| u.powi(-2), 1.0, &cfg).unwrap(), 1.0, 1e-9));
        let got = integrate_tail(|u| (-2.0 * u).exp(), 1.0, &cfg).unwrap();
        assert!((got - (-2f64).exp() / 2.0).abs() < 1e-11);
        assert!((got - 0.0676676).abs() < 1e-7);
    }

    #[test]
    fn exponential_transform_on_light_tail() {
        let cfg = QuadConfig {
            tail_transform: TailTransform::Exponential,
            ..QuadConfig::precise()
        };
        let got = integrate_tail(|u| (-3.0 * u).exp(), 0.5, &cfg).unwrap();
        assert!(close(got, (-1.5f64).exp() / 3.0, 1e-11));
    }

    #[test]
    fn heavy_tail_converges() {
        // ∫_1^∞ x^{-9/8} = 8
        let got = integrate_tail(|x| x.powf(-1.125), 1.0, &QuadConfig::precise()).unwrap();
        assert!(close(got, 8.0, 1e-9), "{got}");
    }

    #[test]
    fn divergent_tail_is_flagged() {
        let err = integrate_tail(|x| 1.0 / x, 1.0, &QuadConfig::default()).unwrap_err();
        assert!(matches!(err, QuadError::Divergence { .. }), "{err:?}");
        let err = integrate_tail(|_| 1.0, 0.0, &QuadConfig::default()).unwrap_err();
        assert!(matches!(err, QuadError::Divergence { .. }), "{err:?}");
    }

    #[test]
    fn tail_with_breaks() {
        // Pareto(2,1) survival: 1 on [0,1], x^-2 after; total 2.
        let sf = |x: f64| if x < 1.0 { 1.0 } else { x.powi(-2) };
        let got = integrate_tail_scaled(sf, 0.0, 1.0, &[1.0], &QuadConfig::precise()).unwrap();
        assert!(close(got, 2.0, 1e-12));
    }

    #[test]
    fn cumulative_tables() {
        let cfg = QuadConfig::default();
        let t = cumulative_on_grid(|_| 1.0, 0.0, &[1.0, 2.0, 3.0], "one", &cfg).unwrap();
        for (v, e) in t.values.iter().zip([1.0, 2.0, 3.0]) {
            assert!(close(*v, e, 1e-14));
        }
        let t = cumulative_on_grid(|u| u, 0.0, &[1.0, 2.0], "id", &cfg).unwrap();
        assert!(close(t.values[0], 0.5, 1e-14) && close(t.values[1], 2.0, 1e-14));
        let t = cumulative_on_grid(|u| (u + 1.0) / (2.0 * u + 1.0), 0.0, &[0.5, 2.0], "mu", &cfg).unwrap();
        let g = |t: f64| t / 2.0 + (2.0 * t + 1.0).ln() / 4.0;
        assert!((t.values[0] - g(0.5)).abs() < 1e-12);
        assert!((t.values[1] - g(2.0)).abs() < 1e-12);
        assert!((t.values[0] - 0.4232868).abs() < 1e-7);
        assert!((t.values[1] - 1.4023595).abs() < 1e-7);
        assert!((t.between(0, 1) - (g(2.0) - g(0.5))).abs() < 1e-12);
    }

    #[test]
    fn cumulative_errors_name_the_panel() {
        let err = cumulative_on_grid(
            |u| if u > 2.5 { f64::INFINITY } else { u },
            0.0,
            &[1.0, 2.0, 3.0],
            "x",
            &QuadConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, QuadError::Panel { index: 2, .. }), "{err:?}");
        assert!(cumulative_on_grid(|u| u, 0.0, &[1.0, 1.0], "x", &QuadConfig::default()).is_err());
        assert!(cumulative_on_grid(|u| u, 2.0, &[1.0], "x", &QuadConfig::default()).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = QuadConfig {
            max_depth: 5,
            ..QuadConfig::default()
        };
        assert!(integrate_finite(|x| x, 0.0, 1.0, &bad).is_err());
        let bad = QuadConfig {
            abs_tol: 0.0,
            ..QuadConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
