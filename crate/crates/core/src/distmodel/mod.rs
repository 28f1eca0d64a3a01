//! Distribution specifications and their evaluatable realizations.

mod families;
mod mrlfn;
mod spec;

use std::sync::Arc;

pub use families::Family;
pub use mrlfn::MrlFunction;
pub use spec::{validate, DistSpec, MrlPiece, SpecError};

use crate::error::{Error, Result};
use crate::ops;
use crate::quadrature::{self, QuadConfig};

#[derive(Debug)]
pub(crate) enum Node {
    Family(Family),
    Mrl(MrlFunction),
    Mixture {
        weights: Vec<f64>,
        components: Vec<Dist>,
    },
    /// `x + y`, integrated against the density of `x`.
    Convolution {
        x: Dist,
        y: Dist,
    },
    OrderStatistic {
        base: Dist,
        k: u32,
        n: u32,
    },
    Scaled {
        base: Dist,
        factor: f64,
    },
}

/// An immutable, cheaply clonable lifetime distribution.
#[derive(Debug, Clone)]
pub struct Dist {
    spec: DistSpec,
    node: Arc<Node>,
    support: (f64, f64),
    mean: f64,
    kinks: Arc<Vec<f64>>,
    closed: bool,
}

pub(crate) fn precise() -> QuadConfig {
    QuadConfig::precise()
}

fn sorted_kinks(mut k: Vec<f64>) -> Vec<f64> {
    k.retain(|x| x.is_finite() && *x > 0.0);
    k.sort_by(f64::total_cmp);
    k.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * b.abs());
    k
}

impl Dist {
    pub fn build(spec: &DistSpec) -> Result<Dist> {
        let spec = validate(spec)?;
        let dist = match &spec {
            DistSpec::Exponential { rate } => Self::family(Family::Exponential { rate: *rate }),
            DistSpec::Weibull { shape, scale } => Self::family(Family::Weibull {
                shape: *shape,
                scale: *scale,
            }),
            DistSpec::Pareto { shape, scale } => Self::family(Family::Pareto {
                shape: *shape,
                scale: *scale,
            }),
            DistSpec::Erlang { k, rate } => Self::family(Family::Erlang { k: *k, rate: *rate }),
            DistSpec::Uniform { lo, hi } => Self::family(Family::Uniform { lo: *lo, hi: *hi }),
            DistSpec::MrlLinear { .. }
            | DistSpec::MrlReciprocalLinear { .. }
            | DistSpec::MrlExponential { .. }
            | DistSpec::MrlPiecewise { .. } => {
                let (breakpoints, pieces) = spec.mrl_pieces().expect("mrl family");
                let f = MrlFunction::new(breakpoints, pieces);
                let kinks = sorted_kinks(f.breakpoints().to_vec());
                let mean = f.mean();
                Dist::from_node(spec.clone(), Node::Mrl(f), (0.0, f64::INFINITY), mean, kinks)
            }
            DistSpec::Mixture { weights, components } => {
                let built = components.iter().map(Dist::build).collect::<Result<Vec<_>>>()?;
                ops::mixture(weights, &built)?
            }
            DistSpec::Convolution { components } => {
                let mut acc = Dist::build(&components[0])?;
                for c in &components[1..] {
                    acc = ops::convolution(&acc, &Dist::build(c)?)?;
                }
                acc
            }
            DistSpec::OrderStatistic { base, k, n } => ops::order_statistic(&Dist::build(base)?, *k, *n)?,
            DistSpec::Scaled { base, factor } => ops::scale(&Dist::build(base)?, *factor)?,
        };
        Ok(dist.with_spec(spec))
    }

    fn family(f: Family) -> Dist {
        let spec = match f {
            Family::Exponential { rate } => DistSpec::Exponential { rate },
            Family::Weibull { shape, scale } => DistSpec::Weibull { shape, scale },
            Family::Pareto { shape, scale } => DistSpec::Pareto { shape, scale },
            Family::Erlang { k, rate } => DistSpec::Erlang { k, rate },
            Family::Uniform { lo, hi } => DistSpec::Uniform { lo, hi },
        };
        Dist::from_node(spec, Node::Family(f), f.support(), f.mean(), sorted_kinks(f.kinks()))
    }

    pub(crate) fn from_node(spec: DistSpec, node: Node, support: (f64, f64), mean: f64, kinks: Vec<f64>) -> Dist {
        Dist {
            spec,
            node: Arc::new(node),
            support,
            mean,
            kinks: Arc::new(sorted_kinks(kinks)),
            closed: true,
        }
    }

    pub(crate) fn with_spec(mut self, spec: DistSpec) -> Dist {
        self.spec = spec;
        self
    }

    pub fn spec(&self) -> &DistSpec {
        &self.spec
    }

    pub fn family_name(&self) -> &'static str {
        self.spec.family_name()
    }

    /// `(s0, s1)`: survival is 1 below `s0` and 0 from `s1` on.
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Points where the survival function or its derivative may jump.
    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    /// The same distribution with every closed-form tail, MRL and MRL
    /// integral disabled at the top level, so that those quantities are
    /// obtained by quadrature of the survival function.
    pub fn quadrature_only(&self) -> Dist {
        Dist {
            closed: false,
            ..self.clone()
        }
    }

    pub fn is_quadrature_only(&self) -> bool {
        !self.closed
    }

    /// The underlying closed family, if any.
    pub fn as_family(&self) -> Option<Family> {
        match *self.node {
            Node::Family(f) => Some(f),
            _ => None,
        }
    }

    /// Survival probability. Composite survivals computed by quadrature
    /// return NaN if the integration fails.
    pub fn survival(&self, t: f64) -> f64 {
        let (s0, s1) = self.support;
        if t < s0 || t <= 0.0 {
            return 1.0;
        }
        if t >= s1 {
            return 0.0;
        }
        match &*self.node {
            Node::Family(f) => f.survival(t),
            Node::Mrl(m) => m.survival(t),
            Node::Mixture { weights, components } => {
                weights.iter().zip(components).map(|(w, c)| w * c.survival(t)).sum()
            }
            Node::Convolution { x, y } => ops::convolution_survival(x, y, t).unwrap_or(f64::NAN),
            Node::OrderStatistic { base, k, n } => ops::order_survival(base, *k, *n, t),
            Node::Scaled { base, factor } => base.survival(t / factor),
        }
    }

    /// `1 - S(t)`, computed without cancellation for small `t`.
    pub fn cdf(&self, t: f64) -> f64 {
        let (s0, s1) = self.support;
        if t < s0 || t <= 0.0 {
            return 0.0;
        }
        if t >= s1 {
            return 1.0;
        }
        match &*self.node {
            Node::Family(f) => f.cdf(t),
            Node::Mrl(m) => m.cdf(t),
            Node::Mixture { weights, components } => weights.iter().zip(components).map(|(w, c)| w * c.cdf(t)).sum(),
            Node::Convolution { x, y } => ops::convolution_cdf(x, y, t).unwrap_or(f64::NAN),
            Node::OrderStatistic { base, k, n } => ops::order_cdf(base, *k, *n, t),
            Node::Scaled { base, factor } => base.cdf(t / factor),
        }
    }

    pub fn has_density(&self) -> bool {
        match &*self.node {
            Node::Family(_) => true,
            Node::Mrl(m) => m.is_continuous(),
            Node::Mixture { components, .. } => components.iter().all(Dist::has_density),
            Node::Convolution { x, y } => x.has_density() && y.has_density(),
            Node::OrderStatistic { base, .. } | Node::Scaled { base, .. } => base.has_density(),
        }
    }

    pub fn density(&self, t: f64) -> Result<f64> {
        if !self.has_density() {
            return Err(Error::UnsupportedCapability {
                family: self.family_name(),
                capability: "a density",
            });
        }
        let (s0, s1) = self.support;
        if t < s0 || t >= s1 || t < 0.0 {
            return Ok(0.0);
        }
        Ok(match &*self.node {
            Node::Family(f) => f.density(t),
            Node::Mrl(m) => m.density(t),
            Node::Mixture { weights, components } => {
                let mut s = 0.0;
                for (w, c) in weights.iter().zip(components) {
                    s += w * c.density(t)?;
                }
                s
            }
            Node::Convolution { x, y } => ops::convolution_density(x, y, t)?,
            Node::OrderStatistic { base, k, n } => ops::order_density(base, *k, *n, t)?,
            Node::Scaled { base, factor } => base.density(t / factor)? / factor,
        })
    }

    /// Whether the tail integral has a closed (or single-quadrature) form.
    pub fn has_closed_tail(&self) -> bool {
        self.closed
            && match &*self.node {
                Node::Family(_) | Node::Mrl(_) | Node::Convolution { .. } => true,
                Node::Mixture { components, .. } => components.iter().all(Dist::has_closed_tail),
                Node::OrderStatistic { .. } => false,
                Node::Scaled { base, .. } => base.has_closed_tail(),
            }
    }

    /// `∫_t^∞ S(u) du`
    pub fn tail_integral(&self, t: f64) -> Result<f64> {
        let t = t.max(0.0);
        if t >= self.support.1 {
            return Ok(0.0);
        }
        if self.has_closed_tail() {
            return match &*self.node {
                Node::Family(f) => Ok(f.tail(t)),
                Node::Mrl(m) => Ok(m.tail(t)),
                Node::Mixture { weights, components } => {
                    let mut s = 0.0;
                    for (w, c) in weights.iter().zip(components) {
                        s += w * c.tail_integral(t)?;
                    }
                    Ok(s)
                }
                Node::Convolution { x, y } => ops::convolution_tail(x, y, t),
                Node::Scaled { base, factor } => Ok(factor * base.tail_integral(t / factor)?),
                Node::OrderStatistic { .. } => unreachable!(),
            };
        }
        self.numeric_tail(t)
    }

    pub(crate) fn numeric_tail(&self, t: f64) -> Result<f64> {
        let cfg = precise();
        let s = |u: f64| self.survival(u);
        let (_, s1) = self.support;
        let v = if s1.is_finite() {
            quadrature::integrate_with_breaks(s, t, s1, &self.kinks, &cfg)?
        } else {
            quadrature::integrate_tail_scaled(s, t, self.mean.max(t), &self.kinks, &cfg)?
        };
        Ok(v)
    }

    /// `ln S(t)` where it has a form that survives underflow of `S`.
    pub fn ln_survival(&self, t: f64) -> Option<f64> {
        if t <= self.support.0 || t <= 0.0 {
            return Some(0.0);
        }
        match &*self.node {
            Node::Mrl(m) => Some(m.ln_survival(t)),
            Node::Family(f) => f.ln_survival(t),
            Node::Scaled { base, factor } => base.ln_survival(t / factor),
            _ => None,
        }
    }

    /// `∫_t^∞ S(u)/S(t) du` from log survivals, for `t` deep in the tail.
    fn conditional_tail(&self, t: f64, ln_s: f64) -> Result<f64> {
        let ratio = |u: f64| self.ln_survival(u).map_or(f64::NAN, |l| (l - ln_s).exp());
        let (_, s1) = self.support;
        let cfg = precise();
        Ok(if s1.is_finite() {
            quadrature::integrate_with_breaks(ratio, t, s1, &self.kinks, &cfg)?
        } else {
            quadrature::integrate_tail_scaled(ratio, t, self.mean.max(t), &self.kinks, &cfg)?
        })
    }

    pub fn has_closed_mrl(&self) -> bool {
        self.closed
            && match &*self.node {
                Node::Family(_) | Node::Mrl(_) => true,
                Node::Scaled { base, .. } => base.has_closed_mrl(),
                _ => false,
            }
    }

    /// Mean residual life `E[X - t | X > t]`. Below the support start this
    /// is `mean - t`.
    pub fn mrl(&self, t: f64) -> Result<f64> {
        let t = t.max(0.0);
        let (s0, s1) = self.support;
        if t < s0 {
            return Ok(self.mean - t);
        }
        if t >= s1 {
            return Err(Error::BeyondSupport { t });
        }
        if self.has_closed_mrl() {
            let v = match &*self.node {
                Node::Family(f) => f.mrl(t),
                Node::Mrl(m) => m.mu(t),
                Node::Scaled { base, factor } => factor * base.mrl(t / factor)?,
                _ => unreachable!(),
            };
            if v.is_finite() && v > 0.0 {
                return Ok(v);
            }
        }
        let s = self.survival(t);
        let v = match self.ln_survival(t) {
            Some(ls) if s < 1e-200 => self.conditional_tail(t, ls)?,
            _ if !(s > 0.0) => return Err(Error::BeyondSupport { t }),
            _ => self.tail_integral(t)? / s,
        };
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NonPositiveMrl { t, value: v });
        }
        Ok(v)
    }

    /// `∫_lo^hi μ(u) du` with the true MRL (`mean - u` below the support).
    pub fn mrl_integral(&self, lo: f64, hi: f64) -> Result<f64> {
        if hi <= lo {
            return Ok(0.0);
        }
        if hi > self.support.1 {
            return Err(Error::BeyondSupport { t: hi });
        }
        if self.closed {
            if let Some(v) = self.closed_mrl_integral(lo, hi) {
                return Ok(v);
            }
        }
        let s0 = self.support.0;
        let mut total = 0.0;
        let mut lo = lo;
        if lo < s0 {
            let b = hi.min(s0);
            total += self.mean * (b - lo) - 0.5 * (b * b - lo * lo);
            lo = b;
        }
        if hi > lo {
            total += self.numeric_mrl_integral(lo, hi)?;
        }
        Ok(total)
    }

    fn closed_mrl_integral(&self, lo: f64, hi: f64) -> Option<f64> {
        match &*self.node {
            Node::Family(f) => f.mrl_integral(lo, hi),
            Node::Mrl(m) => Some(m.integral(lo.max(0.0), hi)),
            Node::Scaled { base, factor } => {
                if !base.closed {
                    return None;
                }
                base.closed_mrl_integral(lo / factor, hi / factor)
                    .map(|v| factor * factor * v)
            }
            _ => None,
        }
    }

    /// Quadrature of `μ` over a sub-interval of the support.
    fn numeric_mrl_integral(&self, lo: f64, hi: f64) -> Result<f64> {
        let cfg = precise();
        let deep_tail = self.survival(hi) < 1e-200 && self.ln_survival(hi).is_some();
        if self.has_closed_mrl() || self.has_closed_tail() || deep_tail {
            let mu = |u: f64| self.mrl(u).unwrap_or(f64::NAN);
            return Ok(quadrature::integrate_with_breaks(mu, lo, hi, &self.kinks, &cfg)?);
        }
        // μ(u) = (T(hi) + ∫_u^hi S) / S(u): one improper integral per
        // interval, finite ones inside.
        let anchor = self.tail_integral(hi)?;
        let kinks = &self.kinks;
        let mu = |u: f64| -> f64 {
            let s = self.survival(u);
            match quadrature::integrate_with_breaks(|v| self.survival(v), u, hi, kinks, &cfg) {
                Ok(inner) if s > 0.0 => (anchor + inner) / s,
                _ => f64::NAN,
            }
        };
        Ok(quadrature::integrate_with_breaks(mu, lo, hi, &self.kinks, &cfg)?)
    }

    /// The on-support survival formula continued below the support start
    /// and its tail integral. Identical to the true pair when `s0 = 0`.
    pub fn formal_parts(&self, t: f64) -> Result<(f64, f64)> {
        if self.support.0 == 0.0 {
            return Ok((self.survival(t), self.tail_integral(t)?));
        }
        match &*self.node {
            Node::Family(f) => f.formal_parts(t).ok_or(Error::BeyondSupport { t }),
            Node::Scaled { base, factor } => {
                let (s, tail) = base.formal_parts(t / factor)?;
                Ok((s, factor * tail))
            }
            Node::Mixture { weights, components } => {
                let (mut s, mut tail) = (0.0, 0.0);
                for (w, c) in weights.iter().zip(components) {
                    let (cs, ct) = c.formal_parts(t)?;
                    s += w * cs;
                    tail += w * ct;
                }
                Ok((s, tail))
            }
            _ => Err(Error::FormalUnavailable {
                family: self.family_name(),
            }),
        }
    }

    /// The formal MRL: the on-support formula continued below `s0`.
    pub fn formal_mrl(&self, t: f64) -> Result<f64> {
        if t >= self.support.0 {
            return self.mrl(t);
        }
        if let (Node::Family(Family::Pareto { shape, .. }), true) = (&*self.node, self.closed) {
            return Ok(t / (shape - 1.0));
        }
        let (s, tail) = self.formal_parts(t)?;
        Ok(tail / s)
    }

    /// `∫_0^{s0} μ_formal(u) du`.
    pub fn formal_head_integral(&self) -> Result<f64> {
        let s0 = self.support.0;
        if s0 == 0.0 {
            return Ok(0.0);
        }
        match &*self.node {
            Node::Family(f) if self.closed => Ok(f.formal_head_integral()),
            Node::Scaled { base, factor } if self.closed => Ok(factor * factor * base.formal_head_integral()?),
            _ => {
                // fail early if the extension does not exist
                self.formal_parts(0.5 * s0)?;
                let mu = |u: f64| self.formal_mrl(u).unwrap_or(f64::NAN);
                Ok(quadrature::integrate_finite(mu, 0.0, s0, &precise())?)
            }
        }
    }
}
