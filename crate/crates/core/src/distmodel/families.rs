//! Closed-form lifetime families.

use statrs::function::gamma::{gamma, gamma_lr, gamma_ur};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Exponential { rate: f64 },
    Weibull { shape: f64, scale: f64 },
    Pareto { shape: f64, scale: f64 },
    Erlang { k: u32, rate: f64 },
    Uniform { lo: f64, hi: f64 },
}

/// `Σ_{i<k} x^i/i!` and `Σ_{m<k} (k-m) x^m/m!`
fn erlang_sums(k: u32, x: f64) -> (f64, f64) {
    let (mut term, mut s, mut w) = (1.0, 0.0, 0.0);
    for m in 0..k {
        if m > 0 {
            term *= x / m as f64;
        }
        s += term;
        w += (k - m) as f64 * term;
    }
    (s, w)
}

impl Family {
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Family::Pareto { scale, .. } => (scale, f64::INFINITY),
            Family::Uniform { lo, hi } => (lo, hi),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn kinks(&self) -> Vec<f64> {
        match *self {
            Family::Pareto { scale, .. } => vec![scale],
            Family::Uniform { lo, hi } => {
                if lo > 0.0 {
                    vec![lo, hi]
                } else {
                    vec![hi]
                }
            }
            _ => vec![],
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Family::Exponential { rate } => 1.0 / rate,
            Family::Weibull { shape, scale } => scale * gamma(1.0 + 1.0 / shape),
            Family::Pareto { shape, scale } => shape * scale / (shape - 1.0),
            Family::Erlang { k, rate } => k as f64 / rate,
            Family::Uniform { lo, hi } => 0.5 * (lo + hi),
        }
    }

    pub fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        match *self {
            Family::Exponential { rate } => (-rate * t).exp(),
            Family::Weibull { shape, scale } => (-(t / scale).powf(shape)).exp(),
            Family::Pareto { shape, scale } => {
                if t < scale {
                    1.0
                } else {
                    (scale / t).powf(shape)
                }
            }
            Family::Erlang { k, rate } => {
                let x = rate * t;
                (-x).exp() * erlang_sums(k, x).0
            }
            Family::Uniform { lo, hi } => {
                if t < lo {
                    1.0
                } else if t >= hi {
                    0.0
                } else {
                    (hi - t) / (hi - lo)
                }
            }
        }
    }

    pub fn ln_survival(&self, t: f64) -> Option<f64> {
        if t <= self.support().0 || t <= 0.0 {
            return Some(0.0);
        }
        match *self {
            Family::Exponential { rate } => Some(-rate * t),
            Family::Weibull { shape, scale } => Some(-(t / scale).powf(shape)),
            Family::Pareto { shape, scale } => Some(shape * (scale / t).ln()),
            Family::Erlang { k, rate } => {
                let x = rate * t;
                Some(-x + erlang_sums(k, x).0.ln())
            }
            Family::Uniform { .. } => None,
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            Family::Exponential { rate } => -(-rate * t).exp_m1(),
            Family::Weibull { shape, scale } => -(-(t / scale).powf(shape)).exp_m1(),
            Family::Pareto { shape, scale } => {
                if t < scale {
                    0.0
                } else {
                    -(shape * (scale / t).ln()).exp_m1()
                }
            }
            Family::Erlang { k, rate } => {
                let x = rate * t;
                if x < k as f64 {
                    gamma_lr(k as f64, x)
                } else {
                    1.0 - self.survival(t)
                }
            }
            Family::Uniform { lo, hi } => ((t - lo) / (hi - lo)).clamp(0.0, 1.0),
        }
    }

    pub fn density(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        match *self {
            Family::Exponential { rate } => rate * (-rate * t).exp(),
            Family::Weibull { shape, scale } => {
                let z = t / scale;
                shape / scale * z.powf(shape - 1.0) * (-z.powf(shape)).exp()
            }
            Family::Pareto { shape, scale } => {
                if t < scale {
                    0.0
                } else {
                    shape / t * (scale / t).powf(shape)
                }
            }
            Family::Erlang { k, rate } => {
                let x = rate * t;
                // λ x^{k-1} e^{-x} / (k-1)!
                let mut v = rate * (-x).exp();
                for m in 1..k {
                    v *= x / m as f64;
                }
                v
            }
            Family::Uniform { lo, hi } => {
                if t < lo || t >= hi {
                    0.0
                } else {
                    1.0 / (hi - lo)
                }
            }
        }
    }

    /// `∫_t^∞ S(u) du`
    pub fn tail(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match *self {
            Family::Exponential { rate } => (-rate * t).exp() / rate,
            Family::Weibull { shape, scale } => {
                let x = (t / scale).powf(shape);
                if x == 0.0 {
                    self.mean()
                } else {
                    self.mean() * gamma_ur(1.0 / shape, x)
                }
            }
            Family::Pareto { shape, scale } => {
                if t < scale {
                    (scale - t) + scale / (shape - 1.0)
                } else {
                    scale.powf(shape) * t.powf(1.0 - shape) / (shape - 1.0)
                }
            }
            Family::Erlang { k, rate } => {
                let x = rate * t;
                (-x).exp() * erlang_sums(k, x).1 / rate
            }
            Family::Uniform { lo, hi } => {
                if t < lo {
                    (lo - t) + 0.5 * (hi - lo)
                } else if t >= hi {
                    0.0
                } else {
                    (hi - t).powi(2) / (2.0 * (hi - lo))
                }
            }
        }
    }

    /// `μ(t)`, formed without dividing two small numbers where possible.
    pub fn mrl(&self, t: f64) -> f64 {
        let t = t.max(0.0);
        match *self {
            Family::Exponential { rate } => 1.0 / rate,
            Family::Weibull { .. } => self.tail(t) / self.survival(t),
            Family::Pareto { shape, scale } => {
                if t < scale {
                    self.mean() - t
                } else {
                    t / (shape - 1.0)
                }
            }
            Family::Erlang { k, rate } => {
                let (s, w) = erlang_sums(k, rate * t);
                w / (s * rate)
            }
            Family::Uniform { lo, hi } => {
                if t < lo {
                    self.mean() - t
                } else {
                    0.5 * (hi - t)
                }
            }
        }
    }

    /// `∫_lo^hi μ(u) du` when an antiderivative is available.
    pub fn mrl_integral(&self, lo: f64, hi: f64) -> Option<f64> {
        match *self {
            Family::Exponential { rate } => Some((hi - lo) / rate),
            Family::Erlang { k: 1, rate } => Some((hi - lo) / rate),
            Family::Erlang { k: 2, rate } => {
                // μ = (1/λ)(1 + 1/(1+λt))
                let log_ratio = (rate * (hi - lo) / (1.0 + rate * lo)).ln_1p();
                Some(((hi - lo) + log_ratio / rate) / rate)
            }
            Family::Pareto { .. } | Family::Uniform { .. } => {
                let (s0, _) = self.support();
                let m = self.mean();
                let below = |a: f64, b: f64| m * (b - a) - 0.5 * (b * b - a * a);
                let above = |a: f64, b: f64| match *self {
                    Family::Pareto { shape, .. } => (b * b - a * a) / (2.0 * (shape - 1.0)),
                    Family::Uniform { hi: h, .. } => ((h - a).powi(2) - (h - b).powi(2)) / 4.0,
                    _ => unreachable!(),
                };
                Some(if hi <= s0 {
                    below(lo, hi)
                } else if lo >= s0 {
                    above(lo, hi)
                } else {
                    below(lo, s0) + above(s0, hi)
                })
            }
            _ => None,
        }
    }

    /// The on-support survival formula continued below the support start,
    /// paired with its tail integral.
    pub fn formal_parts(&self, t: f64) -> Option<(f64, f64)> {
        match *self {
            Family::Pareto { shape, scale } => {
                let s = (scale / t).powf(shape);
                Some((s, s * t / (shape - 1.0)))
            }
            Family::Uniform { lo, hi } => {
                if t >= hi {
                    return None;
                }
                Some(((hi - t) / (hi - lo), (hi - t).powi(2) / (2.0 * (hi - lo))))
            }
            _ => Some((self.survival(t), self.tail(t))),
        }
    }

    /// `∫_0^{s0} μ_formal(u) du` where the support starts at `s0 > 0`.
    pub fn formal_head_integral(&self) -> f64 {
        match *self {
            Family::Pareto { shape, scale } => scale * scale / (2.0 * (shape - 1.0)),
            Family::Uniform { lo, hi } => (hi * hi - (hi - lo).powi(2)) / 4.0,
            _ => 0.0,
        }
    }
}
