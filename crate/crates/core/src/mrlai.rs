//! Mean residual life, its running average, the MRLAI ratio and the
//! hazard-based ageing intensity.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distmodel::{precise, DistSpec};
use crate::error::{Error, Result};
use crate::quadrature::{self, CumulativeTable};
use crate::Dist;

/// Where the running-average integral starts and which MRL is used below
/// the support start `s0`. All three agree when `s0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Integrate from 0 with the true MRL, `mean - t` below `s0`.
    #[default]
    Zero,
    /// Integrate from `s0`, keeping the `1/t` prefactor.
    SupportStart,
    /// Integrate from 0 with the on-support MRL formula continued below `s0`.
    FormalExtension,
}

impl Convention {
    pub const ALL: [Convention; 3] = [Convention::Zero, Convention::SupportStart, Convention::FormalExtension];

    pub fn origin(self, d: &Dist) -> f64 {
        match self {
            Convention::SupportStart => d.support().0,
            _ => 0.0,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Convention::Zero => "zero",
            Convention::SupportStart => "support",
            Convention::FormalExtension => "formal",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "zero" => Ok(Convention::Zero),
            "support" | "support_start" => Ok(Convention::SupportStart),
            "formal" | "formal_extension" => Ok(Convention::FormalExtension),
            other => Err(format!(
                "unknown convention {other:?} (expected zero, support or formal)"
            )),
        }
    }
}

/// `μ(t) = E[X - t | X > t]`.
pub fn mrl(d: &Dist, t: f64) -> Result<f64> {
    d.mrl(t)
}

/// The MRL the convention integrates: the formal continuation below `s0`
/// under [`Convention::FormalExtension`], the true MRL otherwise.
pub fn mrl_under(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    match conv {
        Convention::FormalExtension => d.formal_mrl(t),
        _ => d.mrl(t),
    }
}

/// `∫_a^b μ_conv(u) du` for `origin ≤ a ≤ b`.
fn segment(d: &Dist, a: f64, b: f64, conv: Convention) -> Result<f64> {
    let s0 = d.support().0;
    if conv != Convention::FormalExtension || a >= s0 {
        return d.mrl_integral(a, b);
    }
    let c = b.min(s0);
    let head = if a == 0.0 && c == s0 {
        d.formal_head_integral()?
    } else {
        let mu = |u: f64| d.formal_mrl(u).unwrap_or(f64::NAN);
        quadrature::integrate_finite(mu, a, c, &precise())?
    };
    Ok(head + if b > s0 { d.mrl_integral(s0, b)? } else { 0.0 })
}

fn check_origin(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    let origin = conv.origin(d);
    if !(t > origin) || !t.is_finite() {
        return Err(Error::OriginSingularity { t, origin });
    }
    if t >= d.support().1 {
        return Err(Error::BeyondSupport { t });
    }
    Ok(origin)
}

/// Below this fraction of the mean the average uses Simpson's rule on
/// `[origin, t]`, which has the right limit and no cancellation.
const SMALL_T: f64 = 1e-4;

/// `G(t) = ∫_origin^t μ_conv(u) du`.
pub fn mrl_integral(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    let origin = check_origin(d, t, conv)?;
    segment(d, origin, t, conv)
}

/// `(1/t) ∫_origin^t μ_conv(u) du`.
pub fn mrl_average(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    let origin = check_origin(d, t, conv)?;
    let h = t - origin;
    let crosses_kink = d.kinks().iter().any(|&k| k > origin && k < t);
    if h < SMALL_T * d.mean() && !crosses_kink {
        let m0 = mrl_under(d, origin, conv)?;
        let m1 = mrl_under(d, origin + 0.5 * h, conv)?;
        let m2 = mrl_under(d, t, conv)?;
        return Ok(h * (m0 + 4.0 * m1 + m2) / (6.0 * t));
    }
    Ok(segment(d, origin, t, conv)? / t)
}

/// The MRLAI `L(t) = μ(t) / mrl_average(t)`.
pub fn mrlai(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    let avg = mrl_average(d, t, conv)?;
    Ok(mrl_under(d, t, conv)? / avg)
}

/// MRL, running average and MRLAI tabulated on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MrlProfile {
    pub spec: DistSpec,
    pub convention: Convention,
    pub grid: Vec<f64>,
    pub survival: Vec<f64>,
    pub mu: Vec<f64>,
    pub mu_avg: Vec<f64>,
    #[serde(rename = "L")]
    pub l: Vec<f64>,
    pub hazard_ai: Option<Vec<f64>>,
    /// `G(t)` on the grid.
    #[serde(skip)]
    pub cumulative: CumulativeTable,
}

/// Evaluates the profile with one pass over the grid: the MRL integral is
/// accumulated panel by panel. Points within the small-`t` band use the
/// same fallback as [`mrl_average`].
pub fn profile(d: &Dist, grid: &[f64], conv: Convention) -> Result<MrlProfile> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("grid is not strictly increasing".into()));
    }
    let origin = check_origin(d, grid[0], conv)?;
    check_origin(d, *grid.last().expect("non-empty"), conv)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut mu_avg = Vec::with_capacity(grid.len());
    let mut mu = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    let mut left = origin;
    for &t in grid {
        acc += segment(d, left, t, conv)?;
        left = t;
        values.push(acc);
        mu.push(mrl_under(d, t, conv)?);
        let small = t - origin < SMALL_T * d.mean();
        mu_avg.push(if small { mrl_average(d, t, conv)? } else { acc / t });
    }
    let l = mu.iter().zip(&mu_avg).map(|(m, a)| m / a).collect();
    let hazard_ai = if d.has_density() && d.support().0 == 0.0 {
        grid.iter().map(|&t| hazard_ai(d, t)).collect::<Result<Vec<_>>>().ok()
    } else {
        None
    };
    Ok(MrlProfile {
        spec: d.spec().clone(),
        convention: conv,
        grid: grid.to_vec(),
        survival: grid.iter().map(|&t| d.survival(t)).collect(),
        mu,
        mu_avg,
        l,
        hazard_ai,
        cumulative: CumulativeTable {
            origin,
            grid: grid.to_vec(),
            values,
            integrand_id: format!("mrl:{}:{}", conv, d.spec().to_json()),
        },
    })
}

/// Survival recovered from an MRL function by
/// `S(t) = μ(0)/μ(t) · exp(-∫_0^t du/μ(u))`, with the integral evaluated by
/// quadrature. Pass discontinuities of `μ` as `breaks`.
pub fn survival_from_mrl<F: Fn(f64) -> f64>(mu: F, t: f64, breaks: &[f64]) -> Result<f64> {
    if t <= 0.0 {
        return Ok(1.0);
    }
    let (m0, mt) = (mu(0.0), mu(t));
    for (at, v) in [(0.0, m0), (t, mt)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveMrl { t: at, value: v });
        }
    }
    let bad = Cell::new(None);
    let inv = |u: f64| {
        let v = mu(u);
        if !(v > 0.0) && bad.get().is_none() {
            bad.set(Some((u, v)));
        }
        1.0 / v
    };
    let h = quadrature::integrate_with_breaks(inv, 0.0, t, breaks, &precise());
    if let Some((at, value)) = bad.get() {
        return Err(Error::NonPositiveMrl { t: at, value });
    }
    Ok(m0 / mt * (-h?).exp())
}

/// Hazard rate `f(t)/S(t)`.
pub fn hazard(d: &Dist, t: f64) -> Result<f64> {
    let f = d.density(t)?;
    let s = d.survival(t);
    if !(s > 0.0) {
        return Err(Error::BeyondSupport { t });
    }
    Ok(f / s)
}

/// `r(t) / ((1/t)∫_0^t r)`, using `∫_0^t r = -ln S(t)`.
pub fn hazard_ai(d: &Dist, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OriginSingularity { t, origin: 0.0 });
    }
    let r = hazard(d, t)?;
    let cumulative = -(-d.cdf(t)).ln_1p();
    if !(cumulative > 0.0) {
        return Err(Error::OriginSingularity {
            t,
            origin: d.support().0,
        });
    }
    Ok(r * t / cumulative)
}

/// The MRLAI in closed form for families where it is known: linear,
/// reciprocal-linear and exponential MRL, exponential, and Erlang with two
/// stages. Only the formula is evaluated; the parameters are not validated.
pub fn mrlai_closed_form(spec: &DistSpec, t: f64) -> Option<f64> {
    match *spec {
        DistSpec::Exponential { .. } | DistSpec::Erlang { k: 1, .. } => Some(1.0),
        DistSpec::MrlLinear { a, b } => Some((a + b * t) / (a + 0.5 * b * t)),
        DistSpec::MrlReciprocalLinear { a, b } => Some(b * t / ((a + b * t) * (b * t / a).ln_1p())),
        DistSpec::MrlExponential { b, .. } => Some(b * t * (b * t).exp() / (b * t).exp_m1()),
        DistSpec::Erlang { k: 2, rate } => {
            let x = rate * t;
            Some(t * (x + 2.0) / ((x + 1.0) * (t + x.ln_1p() / rate)))
        }
        _ => None,
    }
}
