//! Pairwise stochastic orders: the MRLAI order, its cumulative-ratio
//! equivalent, the likelihood-ratio, increasing-convex, variance-residual-
//! life and mean-residual-life orders, and shortcut rules.
//!
//! A `Holds` verdict from a grid check is evidence on that grid; `Fails`
//! carries a concrete witness.

use serde::{Deserialize, Serialize};

use crate::classify::{self, Grid, VerdictKind};
use crate::distmodel::{precise, Family};
use crate::error::{Error, Result};
use crate::mrlai::{self, Convention};
use crate::quadrature;
use crate::Dist;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Holds,
    Fails,
    Inconclusive,
}

impl Relation {
    pub fn label(self) -> &'static str {
        match self {
            Relation::Holds => "holds",
            Relation::Fails => "fails",
            Relation::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecidedBy {
    Grid,
    RatioTest,
    /// `X` has a decreasing and `Y` an increasing MRL running average.
    MrlaShortcut,
    /// `X` has a decreasing and `Y` an increasing MRL.
    MrlShortcut,
    LinearMrlDeterminant,
    WeibullRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Mrlai,
    Ratio,
    Lr,
    Icx,
    Vrl,
    Mrl,
}

impl OrderKind {
    pub const ALL: [OrderKind; 6] = [
        OrderKind::Mrlai,
        OrderKind::Ratio,
        OrderKind::Lr,
        OrderKind::Icx,
        OrderKind::Vrl,
        OrderKind::Mrl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Mrlai => "mrlai",
            OrderKind::Ratio => "ratio",
            OrderKind::Lr => "lr",
            OrderKind::Icx => "icx",
            OrderKind::Vrl => "vrl",
            OrderKind::Mrl => "mrl",
        }
    }

    pub fn parse(s: &str) -> Option<OrderKind> {
        OrderKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// At `t` the compared inequality `lhs ≤ rhs` is violated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderWitness {
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub order: OrderKind,
    pub relation: Relation,
    pub witness: Option<OrderWitness>,
    pub decided_by: DecidedBy,
    pub grid: Option<Grid>,
    pub tol: f64,
    /// Hypotheses verified by a shortcut, or other context.
    pub note: Option<String>,
}

pub const DEFAULT_TOL: f64 = 1e-9;

fn verdict(
    order: OrderKind,
    grid: &Grid,
    tol: f64,
    witness: Option<OrderWitness>,
    decided_by: DecidedBy,
) -> OrderVerdict {
    OrderVerdict {
        order,
        relation: if witness.is_some() {
            Relation::Fails
        } else {
            Relation::Holds
        },
        witness,
        decided_by,
        grid: Some(*grid),
        tol,
        note: None,
    }
}

/// `lhs(t) ≤ rhs(t) + tol` at every grid point; the witness is the largest
/// violation.
fn pointwise(ts: &[f64], lhs: &[f64], rhs: &[f64], tol: f64) -> Option<OrderWitness> {
    let mut worst: Option<(f64, usize)> = None;
    for j in 0..ts.len() {
        let excess = lhs[j] - rhs[j];
        if excess > tol && worst.is_none_or(|(w, _)| excess > w) {
            worst = Some((excess, j));
        }
    }
    worst.map(|(_, j)| OrderWitness {
        t: ts[j],
        lhs: lhs[j],
        rhs: rhs[j],
    })
}

/// `ratio` non-increasing: each step's log change, divided by the step's
/// relative width, must stay below `tol`. The witness reports the ratio at
/// the right end (`lhs`) against the left end (`rhs`).
fn non_increasing(ts: &[f64], ratio: &[f64], tol: f64, per_log_t: bool) -> Option<OrderWitness> {
    let mut worst: Option<(f64, usize)> = None;
    for j in 1..ts.len() {
        let step = (ratio[j] / ratio[j - 1]).ln();
        let rate = if per_log_t {
            step * 0.5 * (ts[j] + ts[j - 1]) / (ts[j] - ts[j - 1])
        } else {
            step
        };
        if !(rate <= tol) && worst.is_none_or(|(w, _)| rate > w || rate.is_nan()) {
            worst = Some((rate, j));
        }
    }
    worst.map(|(_, j)| OrderWitness {
        t: ts[j],
        lhs: ratio[j],
        rhs: ratio[j - 1],
    })
}

/// `L_X(t) ≤ L_Y(t)` on the grid.
pub fn mrlai_order(x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    let ts = grid.points();
    let px = mrlai::profile(x, &ts, conv)?;
    let py = mrlai::profile(y, &ts, conv)?;
    Ok(verdict(
        OrderKind::Mrlai,
        grid,
        tol,
        pointwise(&ts, &px.l, &py.l, tol),
        DecidedBy::Grid,
    ))
}

/// `G_X(t)/G_Y(t)` non-increasing, with `G = ∫_origin^t μ`. Equivalent to
/// the MRLAI order because `d/dt ln(G_X/G_Y) = (L_X - L_Y)/t`.
pub fn ratio_test(x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    let ts = grid.points();
    let gx = mrlai::profile(x, &ts, conv)?.cumulative;
    let gy = mrlai::profile(y, &ts, conv)?.cumulative;
    let ratio: Vec<f64> = gx.values.iter().zip(&gy.values).map(|(a, b)| a / b).collect();
    Ok(verdict(
        OrderKind::Ratio,
        grid,
        tol,
        non_increasing(&ts, &ratio, tol, true),
        DecidedBy::RatioTest,
    ))
}

/// `f_X/f_Y` non-increasing wherever `f_Y > 0`.
pub fn lr_order(x: &Dist, y: &Dist, grid: &Grid, tol: f64) -> Result<OrderVerdict> {
    let mut ts = Vec::new();
    let mut ratio = Vec::new();
    for t in grid.points() {
        let (fx, fy) = (x.density(t)?, y.density(t)?);
        if fy > 0.0 {
            ts.push(t);
            ratio.push(fx / fy);
        } else if fx > 0.0 {
            // mass of X where Y has none, to the right of Y's support
            if let Some(&last) = ts.last() {
                return Ok(verdict(
                    OrderKind::Lr,
                    grid,
                    tol,
                    Some(OrderWitness {
                        t,
                        lhs: f64::INFINITY,
                        rhs: last,
                    }),
                    DecidedBy::Grid,
                ));
            }
        }
    }
    let mut witness = None;
    if ratio.iter().any(|r| *r > 0.0) {
        let positive: Vec<usize> = (0..ratio.len()).filter(|&i| ratio[i] > 0.0).collect();
        // X's density may vanish at the right while Y's does not; that keeps
        // the ratio non-increasing, so zero tails are dropped.
        let end = positive.last().copied().unwrap_or(0) + 1;
        let start = positive[0];
        if ratio[start..end].contains(&0.0) {
            let j = (start..end).find(|&i| ratio[i] == 0.0).expect("present");
            let k = (j..end).find(|&i| ratio[i] > 0.0).expect("present");
            witness = Some(OrderWitness {
                t: ts[k],
                lhs: ratio[k],
                rhs: 0.0,
            });
        } else {
            witness = non_increasing(&ts[start..end], &ratio[start..end], tol, false);
        }
    }
    Ok(verdict(OrderKind::Lr, grid, tol, witness, DecidedBy::Grid))
}

/// `∫_t^∞ S`, with the formal survival below the support start under the
/// formal convention.
pub fn tail_under(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    if conv == Convention::FormalExtension && t < d.support().0 {
        return Ok(d.formal_parts(t)?.1);
    }
    d.tail_integral(t)
}

/// `∫_t^∞ S_X ≤ ∫_t^∞ S_Y`.
pub fn icx_order(x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    let ts = grid.points();
    let gx = ts.iter().map(|&t| tail_under(x, t, conv)).collect::<Result<Vec<_>>>()?;
    let gy = ts.iter().map(|&t| tail_under(y, t, conv)).collect::<Result<Vec<_>>>()?;
    Ok(verdict(
        OrderKind::Icx,
        grid,
        tol,
        pointwise(&ts, &gx, &gy, tol),
        DecidedBy::Grid,
    ))
}

/// `∫_t^∞ ∫_u^∞ S(v) dv du`.
pub fn double_tail(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    if d.is_quadrature_only() {
        return numeric_double_tail(d, t, conv);
    }
    match d.as_family() {
        Some(Family::Exponential { rate }) => Ok((-rate * t).exp() / (rate * rate)),
        Some(Family::Pareto { shape: a, scale: b }) if a > 2.0 => {
            let beyond = |u: f64| b.powf(a) * u.powf(2.0 - a) / ((a - 1.0) * (a - 2.0));
            if t >= b || conv == Convention::FormalExtension {
                Ok(beyond(t))
            } else {
                let w = b - t;
                Ok(0.5 * w * w + w * b / (a - 1.0) + beyond(b))
            }
        }
        _ => numeric_double_tail(d, t, conv),
    }
}

fn numeric_double_tail(d: &Dist, t: f64, conv: Convention) -> Result<f64> {
    let cfg = precise();
    let f = |u: f64| tail_under(d, u, conv).unwrap_or(f64::NAN);
    let (s0, s1) = d.support();
    let mut breaks = d.kinks().to_vec();
    breaks.push(s0);
    if s1.is_finite() {
        return Ok(quadrature::integrate_with_breaks(f, t, s1, &breaks, &cfg)?);
    }
    Ok(quadrature::integrate_tail_scaled(f, t, d.mean().max(t), &breaks, &cfg)?)
}

/// The double-tail ratio `b(t)` non-increasing.
pub fn vrl_order(x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    let ts = grid.points();
    let ratio = ts
        .iter()
        .map(|&t| Ok(double_tail(x, t, conv)? / double_tail(y, t, conv)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(verdict(
        OrderKind::Vrl,
        grid,
        tol,
        non_increasing(&ts, &ratio, tol, false),
        DecidedBy::Grid,
    ))
}

/// `μ_X(t) ≤ μ_Y(t)`.
pub fn mrl_order(x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    let ts = grid.points();
    let mx = ts
        .iter()
        .map(|&t| mrlai::mrl_under(x, t, conv))
        .collect::<Result<Vec<_>>>()?;
    let my = ts
        .iter()
        .map(|&t| mrlai::mrl_under(y, t, conv))
        .collect::<Result<Vec<_>>>()?;
    Ok(verdict(
        OrderKind::Mrl,
        grid,
        tol,
        pointwise(&ts, &mx, &my, tol),
        DecidedBy::Grid,
    ))
}

pub fn order(kind: OrderKind, x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    match kind {
        OrderKind::Mrlai => mrlai_order(x, y, grid, conv, tol),
        OrderKind::Ratio => ratio_test(x, y, grid, conv, tol),
        OrderKind::Lr => lr_order(x, y, grid, tol),
        OrderKind::Icx => icx_order(x, y, grid, conv, tol),
        OrderKind::Vrl => vrl_order(x, y, grid, conv, tol),
        OrderKind::Mrl => mrl_order(x, y, grid, conv, tol),
    }
}

/// `X ≤ Y` in the MRLAI order for MRLs `μ_X = a_x + b_x t` and
/// `μ_Y = a_y + b_y t` iff `a_x b_y - b_x a_y ≥ 0`, since the MRLAI of a
/// linear MRL increases with `b/a`.
pub fn linear_mrl_order(ax: f64, bx: f64, ay: f64, by: f64) -> OrderVerdict {
    let det = ax * by - bx * ay;
    let holds = det >= 0.0;
    OrderVerdict {
        order: OrderKind::Mrlai,
        relation: if holds { Relation::Holds } else { Relation::Fails },
        witness: None,
        decided_by: DecidedBy::LinearMrlDeterminant,
        grid: None,
        tol: 0.0,
        note: Some(format!("determinant a_x*b_y - b_x*a_y = {det}")),
    }
}

fn strictly(kind: &VerdictKind, want: VerdictKind) -> bool {
    *kind == want
}

/// MRLAI order from ageing classes: `X` with decreasing and `Y` with
/// increasing MRL, or failing that, running average, forces
/// `L_X ≤ 1 ≤ L_Y`. Returns `None` when the hypotheses are not met on the
/// grid or the convention does not integrate from 0.
pub fn sufficient_conditions(x: &Dist, y: &Dist, grid: &Grid, conv: Convention) -> Result<Option<OrderVerdict>> {
    if conv == Convention::SupportStart && (x.support().0 > 0.0 || y.support().0 > 0.0) {
        return Ok(None);
    }
    let ts = grid.points();
    let scan = |v: Vec<f64>| classify::scan_monotonicity(&ts, &v, classify::DEFAULT_TOL);
    let px = mrlai::profile(x, &ts, conv)?;
    let py = mrlai::profile(y, &ts, conv)?;
    let (mx, my) = (scan(px.mu.clone())?, scan(py.mu.clone())?);
    let shortcut = |by: DecidedBy, note: &str| OrderVerdict {
        order: OrderKind::Mrlai,
        relation: Relation::Holds,
        witness: None,
        decided_by: by,
        grid: Some(*grid),
        tol: classify::DEFAULT_TOL,
        note: Some(note.into()),
    };
    if strictly(&mx.kind, VerdictKind::Decreasing) && strictly(&my.kind, VerdictKind::Increasing) {
        return Ok(Some(shortcut(
            DecidedBy::MrlShortcut,
            "X has decreasing MRL, Y has increasing MRL on the grid",
        )));
    }
    let (ax, ay) = (scan(px.mu_avg)?, scan(py.mu_avg)?);
    if strictly(&ax.kind, VerdictKind::Decreasing) && strictly(&ay.kind, VerdictKind::Increasing) {
        return Ok(Some(shortcut(
            DecidedBy::MrlaShortcut,
            "X has decreasing MRL average, Y has increasing MRL average on the grid",
        )));
    }
    Ok(None)
}

/// MRLAI order with shortcuts first and the grid check as arbiter. A
/// shortcut contradicted by the grid is reported as an error.
pub fn compare(x: &Dist, y: &Dist, grid: &Grid, conv: Convention, tol: f64) -> Result<OrderVerdict> {
    let grid_verdict = mrlai_order(x, y, grid, conv, tol)?;
    match sufficient_conditions(x, y, grid, conv)? {
        Some(short) => {
            if grid_verdict.relation != short.relation {
                return Err(Error::ShortcutDisagreement {
                    shortcut: format!("{:?}", short.decided_by),
                    shortcut_relation: short.relation.label().into(),
                    grid_relation: grid_verdict.relation.label().into(),
                });
            }
            Ok(short)
        }
        None => Ok(grid_verdict),
    }
}

/// MRLAI order between Weibull lifetimes given as `(shape, scale)`. Shape at
/// least 1 means decreasing MRL (so `L ≤ 1`), shape at most 1 increasing
/// MRL (`L ≥ 1`); the order is decided only where that settles it or the
/// distributions coincide.
pub fn weibull_rule(x: (f64, f64), y: (f64, f64)) -> Option<OrderVerdict> {
    let ((a1, b1), (a2, b2)) = (x, y);
    let note = if a1 == a2 && b1 == b2 {
        "identical distributions"
    } else if a1 == 1.0 && a2 == 1.0 {
        "both exponential, L = 1"
    } else if a2 <= 1.0 && 1.0 <= a1 {
        "shape of X at least 1 (L_X ≤ 1), shape of Y at most 1 (L_Y ≥ 1)"
    } else {
        return None;
    };
    Some(OrderVerdict {
        order: OrderKind::Mrlai,
        relation: Relation::Holds,
        witness: None,
        decided_by: DecidedBy::WeibullRule,
        grid: None,
        tol: 0.0,
        note: Some(note.into()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleReport {
    pub factor: f64,
    pub base: OrderVerdict,
    pub scaled: OrderVerdict,
    pub preserved: bool,
    /// `min_t (L_Y - L_X)` on the base grid.
    pub base_margin: f64,
    /// `min_t (L_{aY} - L_{aX})` on the scaled grid.
    pub scaled_margin: f64,
}

/// Checks that `X ≤ Y` carries over to `aX ≤ aY`, evaluating the scaled pair
/// on the grid stretched by `a`.
pub fn check_scale_preservation(x: &Dist, y: &Dist, factor: f64, grid: &Grid, conv: Convention) -> Result<ScaleReport> {
    let sx = crate::ops::scale(x, factor)?;
    let sy = crate::ops::scale(y, factor)?;
    let scaled_grid = Grid {
        t_min: grid.t_min * factor,
        t_max: grid.t_max * factor,
        ..*grid
    };
    let margin = |a: &Dist, b: &Dist, g: &Grid| -> Result<f64> {
        let ts = g.points();
        let la = mrlai::profile(a, &ts, conv)?.l;
        let lb = mrlai::profile(b, &ts, conv)?.l;
        Ok(la.iter().zip(&lb).map(|(p, q)| q - p).fold(f64::INFINITY, f64::min))
    };
    let base = mrlai_order(x, y, grid, conv, DEFAULT_TOL)?;
    let scaled = mrlai_order(&sx, &sy, &scaled_grid, conv, DEFAULT_TOL)?;
    Ok(ScaleReport {
        factor,
        preserved: base.relation != Relation::Holds || scaled.relation == Relation::Holds,
        base_margin: margin(x, y, grid)?,
        scaled_margin: margin(&sx, &sy, &scaled_grid)?,
        base,
        scaled,
    })
}
