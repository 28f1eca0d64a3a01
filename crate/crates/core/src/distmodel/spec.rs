//! Declarative distribution descriptions and their JSON grammar.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One piece of a piecewise mean residual life function, written in
/// absolute time `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MrlPiece {
    /// `intercept + slope·t`
    Linear { intercept: f64, slope: f64 },
    /// `1 / (a + b·t)`
    ReciprocalLinear { a: f64, b: f64 },
    /// `exp(a + b·t)`
    Exponential { a: f64, b: f64 },
    /// `base + coef·exp(rate·(t - shift))`
    ExpShift {
        base: f64,
        coef: f64,
        rate: f64,
        shift: f64,
    },
    /// `intercept + coef·√t`
    Sqrt { intercept: f64, coef: f64 },
}

/// A lifetime distribution, either a closed-form family, a distribution
/// specified through its mean residual life, or a composite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistSpec {
    Exponential {
        rate: f64,
    },
    Weibull {
        shape: f64,
        scale: f64,
    },
    Pareto {
        shape: f64,
        scale: f64,
    },
    Erlang {
        k: u32,
        rate: f64,
    },
    Uniform {
        lo: f64,
        hi: f64,
    },
    /// `μ(t) = a + b·t`
    MrlLinear {
        a: f64,
        b: f64,
    },
    /// `μ(t) = 1/(a + b·t)`
    MrlReciprocalLinear {
        a: f64,
        b: f64,
    },
    /// `μ(t) = exp(a + b·t)`
    MrlExponential {
        a: f64,
        b: f64,
    },
    /// Piece `i` applies on `[breakpoints[i-1], breakpoints[i])`; the first
    /// starts at 0 and the last extends to infinity.
    MrlPiecewise {
        breakpoints: Vec<f64>,
        pieces: Vec<MrlPiece>,
    },
    Mixture {
        weights: Vec<f64>,
        components: Vec<DistSpec>,
    },
    Convolution {
        components: Vec<DistSpec>,
    },
    /// The `k`-th smallest of `n` iid copies of `base`.
    OrderStatistic {
        base: Box<DistSpec>,
        k: u32,
        n: u32,
    },
    Scaled {
        base: Box<DistSpec>,
        factor: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{path}: {message}")]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl SpecError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

fn positive(path: &str, name: &str, v: f64) -> Result<(), SpecError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(SpecError::new(
            format!("{path}.{name}"),
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn finite(path: &str, name: &str, v: f64) -> Result<(), SpecError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(SpecError::new(
            format!("{path}.{name}"),
            format!("must be finite, got {v}"),
        ))
    }
}

impl MrlPiece {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            MrlPiece::Linear { intercept, slope } => intercept + slope * t,
            MrlPiece::ReciprocalLinear { a, b } => 1.0 / (a + b * t),
            MrlPiece::Exponential { a, b } => (a + b * t).exp(),
            MrlPiece::ExpShift {
                base,
                coef,
                rate,
                shift,
            } => base + coef * (rate * (t - shift)).exp(),
            MrlPiece::Sqrt { intercept, coef } => intercept + coef * t.sqrt(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            MrlPiece::Linear { slope, .. } => slope,
            MrlPiece::ReciprocalLinear { a, b } => -b / (a + b * t).powi(2),
            MrlPiece::Exponential { a, b } => b * (a + b * t).exp(),
            MrlPiece::ExpShift { coef, rate, shift, .. } => coef * rate * (rate * (t - shift)).exp(),
            MrlPiece::Sqrt { coef, .. } => {
                if t > 0.0 {
                    0.5 * coef / t.sqrt()
                } else {
                    f64::INFINITY * coef.signum()
                }
            }
        }
    }

    /// `∫_lo^hi μ(u) du`.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let anti = |t: f64| -> f64 {
            match *self {
                MrlPiece::Linear { intercept, slope } => intercept * t + 0.5 * slope * t * t,
                MrlPiece::ReciprocalLinear { a, b } => (a + b * t).ln() / b,
                MrlPiece::Exponential { a, b } => (a + b * t).exp() / b,
                MrlPiece::ExpShift {
                    base,
                    coef,
                    rate,
                    shift,
                } => base * t + coef * (rate * (t - shift)).exp() / rate,
                MrlPiece::Sqrt { intercept, coef } => intercept * t + coef * 2.0 / 3.0 * t.powf(1.5),
            }
        };
        match *self {
            MrlPiece::ReciprocalLinear { a, b } => ((b * (hi - lo)) / (a + b * lo)).ln_1p() / b,
            MrlPiece::Exponential { a, b } => (a + b * lo).exp() * (b * (hi - lo)).exp_m1() / b,
            _ => anti(hi) - anti(lo),
        }
    }

    /// `∫_lo^hi du / μ(u)`.
    pub fn hazard_integral(&self, lo: f64, hi: f64) -> f64 {
        match *self {
            MrlPiece::Linear { intercept, slope } => {
                if slope == 0.0 {
                    (hi - lo) / intercept
                } else {
                    ((slope * (hi - lo)) / (intercept + slope * lo)).ln_1p() / slope
                }
            }
            MrlPiece::ReciprocalLinear { a, b } => a * (hi - lo) + 0.5 * b * (hi * hi - lo * lo),
            MrlPiece::Exponential { a, b } => {
                // ∫ e^{-a-bu} du
                (-a - b * lo).exp() * (-(-b * (hi - lo)).exp_m1()) / b
            }
            MrlPiece::ExpShift {
                base,
                coef,
                rate,
                shift,
            } => {
                // (1/A)[t - (1/r) ln(A + C e^{r(t-s)})]
                let anti = |t: f64| t - (base + coef * (rate * (t - shift)).exp()).ln() / rate;
                (anti(hi) - anti(lo)) / base
            }
            MrlPiece::Sqrt { intercept, coef } => {
                // s = √t: (2/c)[s - (c0/c) ln(c0 + c s)]
                let anti = |t: f64| {
                    let s = t.sqrt();
                    2.0 / coef * (s - intercept / coef * (intercept + coef * s).ln())
                };
                anti(hi) - anti(lo)
            }
        }
    }

    fn inverse_diverges(&self) -> bool {
        match *self {
            MrlPiece::Linear { .. } | MrlPiece::Sqrt { .. } | MrlPiece::ReciprocalLinear { .. } => true,
            MrlPiece::Exponential { b, .. } => b < 0.0,
            MrlPiece::ExpShift { rate, .. } => rate < 0.0,
        }
    }

    fn validate(&self, path: &str, lo: f64, hi: f64) -> Result<(), SpecError> {
        match *self {
            MrlPiece::Linear { intercept, slope } => {
                finite(path, "intercept", intercept)?;
                finite(path, "slope", slope)?;
            }
            MrlPiece::ReciprocalLinear { a, b } => {
                finite(path, "a", a)?;
                finite(path, "b", b)?;
                if b == 0.0 {
                    return Err(SpecError::new(
                        format!("{path}.b"),
                        "must be non-zero (use a linear piece)",
                    ));
                }
            }
            MrlPiece::Exponential { a, b } => {
                finite(path, "a", a)?;
                finite(path, "b", b)?;
                if b == 0.0 {
                    return Err(SpecError::new(
                        format!("{path}.b"),
                        "must be non-zero (use a linear piece)",
                    ));
                }
            }
            MrlPiece::ExpShift {
                base,
                coef,
                rate,
                shift,
            } => {
                finite(path, "base", base)?;
                finite(path, "coef", coef)?;
                finite(path, "rate", rate)?;
                finite(path, "shift", shift)?;
                if rate == 0.0 || base == 0.0 {
                    return Err(SpecError::new(path, "rate and base must be non-zero"));
                }
            }
            MrlPiece::Sqrt { intercept, coef } => {
                finite(path, "intercept", intercept)?;
                finite(path, "coef", coef)?;
                if coef == 0.0 {
                    return Err(SpecError::new(
                        format!("{path}.coef"),
                        "must be non-zero (use a linear piece)",
                    ));
                }
            }
        }
        // Every kind is monotone on its interval, so positivity at both ends
        // (or at the limit) is positivity throughout.
        let at_hi = if hi.is_finite() {
            self.value(hi)
        } else {
            match *self {
                MrlPiece::Linear { intercept, slope } => {
                    if slope < 0.0 {
                        f64::NEG_INFINITY
                    } else if slope == 0.0 {
                        intercept
                    } else {
                        f64::INFINITY
                    }
                }
                MrlPiece::ReciprocalLinear { b, .. } => {
                    if b > 0.0 {
                        0.0_f64.max(f64::MIN_POSITIVE)
                    } else {
                        f64::NEG_INFINITY
                    }
                }
                MrlPiece::Exponential { .. } => f64::MIN_POSITIVE,
                MrlPiece::ExpShift { base, coef, rate, .. } => {
                    if rate < 0.0 {
                        base
                    } else if coef > 0.0 {
                        f64::INFINITY
                    } else {
                        f64::NEG_INFINITY
                    }
                }
                MrlPiece::Sqrt { coef, .. } => coef * f64::INFINITY,
            }
        };
        let at_lo = self.value(lo);
        let lo_ok = at_lo > 0.0 && at_lo.is_finite();
        // A decaying exponential piece may approach its base; base 0 is
        // excluded above, so a positive base keeps μ positive.
        let hi_ok = at_hi > 0.0
            || matches!(*self, MrlPiece::ExpShift { base, rate, .. } if rate < 0.0 && base >= 0.0 && !hi.is_finite());
        if !(lo_ok && hi_ok) {
            return Err(SpecError::new(
                path,
                format!("mean residual life must be positive on [{lo}, {hi})"),
            ));
        }
        Ok(())
    }
}

/// The survival function obtained by inversion is only a genuine one when
/// `∫^∞ du/μ(u)` diverges.
fn unbounded_inverse(path: &str) -> SpecError {
    SpecError::new(
        path,
        "the integral of 1/mrl must diverge; a mean residual life growing this fast does not define a distribution",
    )
}

impl DistSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            DistSpec::Exponential { .. } => "exponential",
            DistSpec::Weibull { .. } => "weibull",
            DistSpec::Pareto { .. } => "pareto",
            DistSpec::Erlang { .. } => "erlang",
            DistSpec::Uniform { .. } => "uniform",
            DistSpec::MrlLinear { .. } => "mrl_linear",
            DistSpec::MrlReciprocalLinear { .. } => "mrl_reciprocal_linear",
            DistSpec::MrlExponential { .. } => "mrl_exponential",
            DistSpec::MrlPiecewise { .. } => "mrl_piecewise",
            DistSpec::Mixture { .. } => "mixture",
            DistSpec::Convolution { .. } => "convolution",
            DistSpec::OrderStatistic { .. } => "order_statistic",
            DistSpec::Scaled { .. } => "scaled",
        }
    }

    pub fn from_json(text: &str) -> Result<DistSpec, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::new("$", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    /// The MRL description of an MRL-specified family as pieces, or `None`
    /// for every other family.
    pub fn mrl_pieces(&self) -> Option<(Vec<f64>, Vec<MrlPiece>)> {
        match *self {
            DistSpec::MrlLinear { a, b } => Some((vec![], vec![MrlPiece::Linear { intercept: a, slope: b }])),
            DistSpec::MrlReciprocalLinear { a, b } => Some((vec![], vec![MrlPiece::ReciprocalLinear { a, b }])),
            DistSpec::MrlExponential { a, b } => Some((vec![], vec![MrlPiece::Exponential { a, b }])),
            DistSpec::MrlPiecewise {
                ref breakpoints,
                ref pieces,
            } => Some((breakpoints.clone(), pieces.clone())),
            _ => None,
        }
    }
}

/// Checks every parameter constraint and returns the normalized form:
/// nested scalings are flattened and mixture components are put in a
/// deterministic order.
pub fn validate(spec: &DistSpec) -> Result<DistSpec, SpecError> {
    validate_at(spec, "$")
}

fn validate_at(spec: &DistSpec, path: &str) -> Result<DistSpec, SpecError> {
    match spec {
        DistSpec::Exponential { rate } => {
            positive(path, "rate", *rate)?;
            Ok(spec.clone())
        }
        DistSpec::Weibull { shape, scale } => {
            positive(path, "shape", *shape)?;
            positive(path, "scale", *scale)?;
            Ok(spec.clone())
        }
        DistSpec::Pareto { shape, scale } => {
            positive(path, "scale", *scale)?;
            if !(shape.is_finite() && *shape > 1.0) {
                return Err(SpecError::new(
                    format!("{path}.shape"),
                    format!("must exceed 1 for a finite mean (infinite mean), got {shape}"),
                ));
            }
            Ok(spec.clone())
        }
        DistSpec::Erlang { k, rate } => {
            if *k == 0 {
                return Err(SpecError::new(format!("{path}.k"), "must be a positive integer"));
            }
            positive(path, "rate", *rate)?;
            Ok(spec.clone())
        }
        DistSpec::Uniform { lo, hi } => {
            if !(lo.is_finite() && *lo >= 0.0) {
                return Err(SpecError::new(
                    format!("{path}.lo"),
                    format!("must be non-negative, got {lo}"),
                ));
            }
            if !(hi.is_finite() && hi > lo) {
                return Err(SpecError::new(
                    format!("{path}.hi"),
                    format!("must exceed lo, got {hi}"),
                ));
            }
            Ok(spec.clone())
        }
        DistSpec::MrlLinear { a, b } => {
            positive(path, "a", *a)?;
            if !(b.is_finite() && *b >= 0.0) {
                return Err(SpecError::new(
                    format!("{path}.b"),
                    format!("must be non-negative, got {b}"),
                ));
            }
            Ok(spec.clone())
        }
        DistSpec::MrlReciprocalLinear { a, b } => {
            positive(path, "a", *a)?;
            positive(path, "b", *b)?;
            Ok(spec.clone())
        }
        DistSpec::MrlExponential { a, b } => {
            finite(path, "a", *a)?;
            finite(path, "b", *b)?;
            if *b == 0.0 {
                return Err(SpecError::new(format!("{path}.b"), "must be non-zero"));
            }
            if *b > 0.0 {
                return Err(unbounded_inverse(path));
            }
            Ok(spec.clone())
        }
        DistSpec::MrlPiecewise { breakpoints, pieces } => {
            if pieces.len() != breakpoints.len() + 1 {
                return Err(SpecError::new(
                    format!("{path}.pieces"),
                    format!(
                        "need {} pieces for {} breakpoints",
                        breakpoints.len() + 1,
                        breakpoints.len()
                    ),
                ));
            }
            let mut prev = 0.0;
            for (i, &b) in breakpoints.iter().enumerate() {
                if !(b.is_finite() && b > prev) {
                    return Err(SpecError::new(
                        format!("{path}.breakpoints[{i}]"),
                        "breakpoints must be positive and strictly increasing",
                    ));
                }
                prev = b;
            }
            for (i, piece) in pieces.iter().enumerate() {
                let lo = if i == 0 { 0.0 } else { breakpoints[i - 1] };
                let hi = breakpoints.get(i).copied().unwrap_or(f64::INFINITY);
                piece.validate(&format!("{path}.pieces[{i}]"), lo, hi)?;
            }
            if !pieces.last().expect("non-empty").inverse_diverges() {
                return Err(unbounded_inverse(&format!("{path}.pieces[{}]", pieces.len() - 1)));
            }
            for (i, &b) in breakpoints.iter().enumerate() {
                let (left, right) = (pieces[i].value(b), pieces[i + 1].value(b));
                if right < left * (1.0 - 1e-12) {
                    return Err(SpecError::new(
                        format!("{path}.breakpoints[{i}]"),
                        "mean residual life may not jump down (survival would increase)",
                    ));
                }
            }
            Ok(spec.clone())
        }
        DistSpec::Mixture { weights, components } => {
            if components.len() < 2 {
                return Err(SpecError::new(
                    format!("{path}.components"),
                    "a mixture needs at least two components",
                ));
            }
            if weights.len() != components.len() {
                return Err(SpecError::new(
                    format!("{path}.weights"),
                    format!("{} weights for {} components", weights.len(), components.len()),
                ));
            }
            for (i, w) in weights.iter().enumerate() {
                if !(w.is_finite() && *w > 0.0) {
                    return Err(SpecError::new(
                        format!("{path}.weights[{i}]"),
                        format!("must be positive, got {w}"),
                    ));
                }
            }
            let total: f64 = weights.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(SpecError::new(
                    format!("{path}.weights"),
                    format!("must sum to 1, got {total}"),
                ));
            }
            let mut pairs = Vec::with_capacity(components.len());
            for (i, (w, c)) in weights.iter().zip(components).enumerate() {
                pairs.push((*w, validate_at(c, &format!("{path}.components[{i}]"))?));
            }
            pairs.sort_by(|x, y| x.1.to_json().cmp(&y.1.to_json()).then(x.0.total_cmp(&y.0)));
            Ok(DistSpec::Mixture {
                weights: pairs.iter().map(|p| p.0).collect(),
                components: pairs.into_iter().map(|p| p.1).collect(),
            })
        }
        DistSpec::Convolution { components } => {
            if components.len() < 2 {
                return Err(SpecError::new(
                    format!("{path}.components"),
                    "a convolution needs at least two components",
                ));
            }
            let components = components
                .iter()
                .enumerate()
                .map(|(i, c)| validate_at(c, &format!("{path}.components[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(DistSpec::Convolution { components })
        }
        DistSpec::OrderStatistic { base, k, n } => {
            if *n == 0 {
                return Err(SpecError::new(format!("{path}.n"), "must be a positive integer"));
            }
            if *k == 0 || k > n {
                return Err(SpecError::new(
                    format!("{path}.k"),
                    format!("must lie in 1..={n}, got {k}"),
                ));
            }
            Ok(DistSpec::OrderStatistic {
                base: Box::new(validate_at(base, &format!("{path}.base"))?),
                k: *k,
                n: *n,
            })
        }
        DistSpec::Scaled { base, factor } => {
            positive(path, "factor", *factor)?;
            let inner = validate_at(base, &format!("{path}.base"))?;
            match inner {
                DistSpec::Scaled { base, factor: f2 } => Ok(DistSpec::Scaled {
                    base,
                    factor: factor * f2,
                }),
                other => Ok(DistSpec::Scaled {
                    base: Box::new(other),
                    factor: *factor,
                }),
            }
        }
    }
}
