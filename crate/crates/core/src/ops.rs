//! Reliability operations: mixtures, sums, order statistics and scaling.

use crate::distmodel::{precise, validate, Dist, DistSpec, Family, Node, SpecError};
use crate::error::{Error, Result};
use crate::quadrature;

/// `S = Σ wᵢ Sᵢ`.
pub fn mixture(weights: &[f64], components: &[Dist]) -> Result<Dist> {
    let spec = DistSpec::Mixture {
        weights: weights.to_vec(),
        components: components.iter().map(|c| c.spec().clone()).collect(),
    };
    validate(&spec)?;
    let mean = weights.iter().zip(components).map(|(w, c)| w * c.mean()).sum();
    let s0 = components.iter().map(|c| c.support().0).fold(f64::INFINITY, f64::min);
    let s1 = components.iter().map(|c| c.support().1).fold(0.0, f64::max);
    let kinks = components
        .iter()
        .flat_map(|c| {
            let (a, b) = c.support();
            c.kinks().iter().copied().chain([a, b])
        })
        .collect();
    Ok(Dist::from_node(
        spec,
        Node::Mixture {
            weights: weights.to_vec(),
            components: components.to_vec(),
        },
        (s0, s1),
        mean,
        kinks,
    ))
}

fn gamma_stage(d: &Dist) -> Option<(u32, f64)> {
    match d.as_family()? {
        Family::Exponential { rate } => Some((1, rate)),
        Family::Erlang { k, rate } => Some((k, rate)),
        _ => None,
    }
}

/// The distribution of `X + Y` for independent `X`, `Y`. Sums of
/// exponential and Erlang stages sharing one rate are returned in closed
/// form; everything else is convolved numerically.
pub fn convolution(x: &Dist, y: &Dist) -> Result<Dist> {
    if let (Some((kx, rx)), Some((ky, ry))) = (gamma_stage(x), gamma_stage(y)) {
        if rx == ry {
            let closed = Dist::build(&DistSpec::Erlang { k: kx + ky, rate: rx })?;
            return Ok(closed.with_spec(sum_spec(x, y)));
        }
    }
    convolution_numeric(x, y)
}

fn sum_spec(x: &Dist, y: &Dist) -> DistSpec {
    let mut components = match x.spec() {
        DistSpec::Convolution { components } => components.clone(),
        other => vec![other.clone()],
    };
    components.push(y.spec().clone());
    DistSpec::Convolution { components }
}

/// `X + Y` by quadrature of `∫ f_X(u) F_Y(t - u) du`, never using the
/// closed Erlang shortcut.
pub fn convolution_numeric(x: &Dist, y: &Dist) -> Result<Dist> {
    let (x, y) = if x.has_density() {
        (x, y)
    } else if y.has_density() {
        (y, x)
    } else {
        return Err(Error::UnsupportedCapability {
            family: "convolution",
            capability: "a component density",
        });
    };
    let (ax, bx) = x.support();
    let (ay, by) = y.support();
    let mut kinks: Vec<f64> = Vec::new();
    let kx: Vec<f64> = x.kinks().iter().copied().chain([ax]).collect();
    let ky: Vec<f64> = y.kinks().iter().copied().chain([ay]).collect();
    for &p in &kx {
        for &q in &ky {
            kinks.push(p + q);
        }
    }
    kinks.extend(kx.iter().chain(ky.iter()).copied());
    Ok(Dist::from_node(
        sum_spec(x, y),
        Node::Convolution {
            x: x.clone(),
            y: y.clone(),
        },
        (ax + ay, bx + by),
        x.mean() + y.mean(),
        kinks,
    ))
}

/// Integration range for `u` (the `X` argument) and the break points for
/// `∫ f_X(u) g(t - u) du`.
fn conv_range(x: &Dist, y: &Dist, t: f64) -> (f64, f64, Vec<f64>) {
    let (ax, bx) = x.support();
    let ay = y.support().0;
    let lo = ax;
    let hi = (t - ay).min(bx);
    let mut breaks: Vec<f64> = x.kinks().to_vec();
    breaks.extend(y.kinks().iter().map(|k| t - k));
    (lo, hi, breaks)
}

pub(crate) fn convolution_cdf(x: &Dist, y: &Dist, t: f64) -> Result<f64> {
    let (lo, hi, breaks) = conv_range(x, y, t);
    if hi <= lo {
        return Ok(0.0);
    }
    let f = |u: f64| x.density(u).unwrap_or(f64::NAN) * y.cdf(t - u);
    let mut v = quadrature::integrate_with_breaks(f, lo, hi, &breaks, &precise())?;
    if v > 0.5 {
        v = 1.0 - convolution_survival_direct(x, y, t)?;
    }
    Ok(v.clamp(0.0, 1.0))
}

fn convolution_survival_direct(x: &Dist, y: &Dist, t: f64) -> Result<f64> {
    let (ax, bx) = x.support();
    let hi = t.min(bx);
    let mut breaks: Vec<f64> = x.kinks().to_vec();
    breaks.extend(y.kinks().iter().map(|k| t - k));
    breaks.push(t - y.support().0);
    let f = |u: f64| x.density(u).unwrap_or(f64::NAN) * y.survival(t - u);
    let inner = if hi > ax {
        quadrature::integrate_with_breaks(f, ax, hi, &breaks, &precise())?
    } else {
        0.0
    };
    Ok((x.survival(t) + inner).clamp(0.0, 1.0))
}

pub(crate) fn convolution_survival(x: &Dist, y: &Dist, t: f64) -> Result<f64> {
    let c = convolution_cdf(x, y, t)?;
    if c <= 0.5 {
        Ok(1.0 - c)
    } else {
        convolution_survival_direct(x, y, t)
    }
}

pub(crate) fn convolution_density(x: &Dist, y: &Dist, t: f64) -> Result<f64> {
    let (lo, hi, breaks) = conv_range(x, y, t);
    if hi <= lo {
        return Ok(0.0);
    }
    let f = |u: f64| x.density(u).unwrap_or(f64::NAN) * y.density(t - u).unwrap_or(f64::NAN);
    Ok(quadrature::integrate_with_breaks(f, lo, hi, &breaks, &precise())?)
}

/// `T_c(t) = T_X(t) + ∫_0^t f_X(u) T_Y(t - u) du + E[Y]·S_X(t)`
pub(crate) fn convolution_tail(x: &Dist, y: &Dist, t: f64) -> Result<f64> {
    let (ax, bx) = x.support();
    let hi = t.min(bx);
    let mut inner = 0.0;
    if hi > ax {
        let mut breaks: Vec<f64> = x.kinks().to_vec();
        breaks.extend(y.kinks().iter().map(|k| t - k));
        breaks.push(t - y.support().0);
        let f = |u: f64| x.density(u).unwrap_or(f64::NAN) * y.tail_integral(t - u).unwrap_or(f64::NAN);
        inner = quadrature::integrate_with_breaks(f, ax, hi, &breaks, &precise())?;
    }
    Ok(x.tail_integral(t)? + inner + y.mean() * x.survival(t))
}

fn binomial(n: u32, j: u32) -> f64 {
    let j = j.min(n - j);
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The `k`-th smallest of `n` iid copies of `base`, i.e. the lifetime of an
/// `(n-k+1)`-out-of-`n` system.
pub fn order_statistic(base: &Dist, k: u32, n: u32) -> Result<Dist> {
    let spec = DistSpec::OrderStatistic {
        base: Box::new(base.spec().clone()),
        k,
        n,
    };
    validate(&spec)?;
    if k == 1 && n == 1 {
        return Ok(base.clone().with_spec(spec));
    }
    if let (Some(Family::Exponential { rate }), 1) = (base.as_family(), k) {
        let series = Dist::build(&DistSpec::Exponential { rate: rate * n as f64 })?;
        return Ok(series.with_spec(spec));
    }
    let node = Node::OrderStatistic {
        base: base.clone(),
        k,
        n,
    };
    let provisional = Dist::from_node(spec.clone(), node, base.support(), base.mean(), base.kinks().to_vec());
    let mean = provisional.numeric_tail(0.0)?;
    Ok(Dist::from_node(
        spec,
        Node::OrderStatistic {
            base: base.clone(),
            k,
            n,
        },
        base.support(),
        mean,
        base.kinks().to_vec(),
    ))
}

/// Parallel system of `n` iid components: the maximum.
pub fn parallel(base: &Dist, n: u32) -> Result<Dist> {
    order_statistic(base, n, n)
}

/// Series system of `n` iid components: the minimum.
pub fn series(base: &Dist, n: u32) -> Result<Dist> {
    order_statistic(base, 1, n)
}

/// `S_{(k:n)} = Σ_{j=n-k+1}^{n} C(n,j) S^j F^{n-j}`
pub(crate) fn order_survival(base: &Dist, k: u32, n: u32, t: f64) -> f64 {
    let (s, f) = (base.survival(t), base.cdf(t));
    (n - k + 1..=n)
        .map(|j| binomial(n, j) * s.powi(j as i32) * f.powi((n - j) as i32))
        .sum()
}

pub(crate) fn order_cdf(base: &Dist, k: u32, n: u32, t: f64) -> f64 {
    let (s, f) = (base.survival(t), base.cdf(t));
    (k..=n)
        .map(|j| binomial(n, j) * f.powi(j as i32) * s.powi((n - j) as i32))
        .sum()
}

/// `f_{(k:n)} = n C(n-1,k-1) F^{k-1} S^{n-k} f`
pub(crate) fn order_density(base: &Dist, k: u32, n: u32, t: f64) -> Result<f64> {
    let (s, f) = (base.survival(t), base.cdf(t));
    Ok(n as f64 * binomial(n - 1, k - 1) * f.powi(k as i32 - 1) * s.powi((n - k) as i32) * base.density(t)?)
}

/// The distribution of `a·X`.
pub fn scale(base: &Dist, factor: f64) -> Result<Dist> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(SpecError::new("$.factor", format!("must be positive and finite, got {factor}")).into());
    }
    let spec = validate(&DistSpec::Scaled {
        base: Box::new(base.spec().clone()),
        factor,
    })?;
    if factor == 1.0 {
        return Ok(base.clone().with_spec(spec));
    }
    if let Some(Family::Exponential { rate }) = base.as_family() {
        return Ok(Dist::build(&DistSpec::Exponential { rate: rate / factor })?.with_spec(spec));
    }
    let (s0, s1) = base.support();
    Ok(Dist::from_node(
        spec,
        Node::Scaled {
            base: base.clone(),
            factor,
        },
        (factor * s0, factor * s1),
        factor * base.mean(),
        base.kinks().iter().map(|k| k * factor).collect(),
    ))
}
