//! Grid-based monotonicity verdicts for the MRL, its running average, the
//! MRLAI and the hazard-based ageing intensity.
//!
//! A `NonMonotone` verdict comes with a witness triple and is a certificate
//! on the sampled points; `Increasing`, `Decreasing` and `Constant` are
//! evidence on the grid only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mrlai::{self, Convention};
use crate::Dist;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Grid {
    pub const DEFAULT_POINTS: usize = 512;

    pub fn new(t_min: f64, t_max: f64, n_points: usize, spacing: Spacing) -> Result<Grid> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(Error::InvalidGrid(format!(
                "need t_min < t_max, got {t_min} and {t_max}"
            )));
        }
        if n_points < 16 {
            return Err(Error::InvalidGrid(format!("need at least 16 points, got {n_points}")));
        }
        if spacing == Spacing::Log && t_min <= 0.0 {
            return Err(Error::InvalidGrid("log spacing needs t_min > 0".into()));
        }
        Ok(Grid {
            t_min,
            t_max,
            n_points,
            spacing,
        })
    }

    pub fn linear(t_min: f64, t_max: f64, n_points: usize) -> Result<Grid> {
        Grid::new(t_min, t_max, n_points, Spacing::Linear)
    }

    pub fn log(t_min: f64, t_max: f64, n_points: usize) -> Result<Grid> {
        Grid::new(t_min, t_max, n_points, Spacing::Log)
    }

    /// Doubles the resolution, keeping every original point.
    pub fn refined(&self) -> Grid {
        Grid {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let last = (n - 1) as f64;
        let mut pts: Vec<f64> = match self.spacing {
            Spacing::Linear => (0..n)
                .map(|i| self.t_min + (self.t_max - self.t_min) * i as f64 / last)
                .collect(),
            Spacing::Log => {
                let (a, b) = (self.t_min.ln(), self.t_max.ln());
                (0..n).map(|i| (a + (b - a) * i as f64 / last).exp()).collect()
            }
        };
        pts[0] = self.t_min;
        pts[n - 1] = self.t_max;
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictKind {
    Increasing,
    Decreasing,
    Constant { level: f64 },
    NonMonotone,
}

impl VerdictKind {
    pub fn label(&self) -> &'static str {
        match self {
            VerdictKind::Increasing => "increasing",
            VerdictKind::Decreasing => "decreasing",
            VerdictKind::Constant { .. } => "constant",
            VerdictKind::NonMonotone => "non_monotone",
        }
    }
}

/// `f(t[0]) > f(t[1]) < f(t[2])` (a valley) or the reverse (a peak).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub t: [f64; 3],
    pub values: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityVerdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    /// For `NonMonotone`, how far both sides of the witness exceed the
    /// middle value; for monotone verdicts, the smallest consecutive step in
    /// the verdict's direction (negative within tolerance); for `Constant`,
    /// the total variation.
    pub margin: f64,
    /// The absolute threshold used, `tol · median|f|`.
    pub threshold: f64,
}

impl MonotonicityVerdict {
    pub fn is_non_monotone(&self) -> bool {
        self.kind == VerdictKind::NonMonotone
    }
}

pub const DEFAULT_TOL: f64 = 1e-7;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Classifies sampled values `values[i] = f(ts[i])`.
pub fn scan_monotonicity(ts: &[f64], values: &[f64], tol: f64) -> Result<MonotonicityVerdict> {
    if ts.len() != values.len() || ts.len() < 3 {
        return Err(Error::InvalidGrid(format!(
            "need at least 3 matching samples, got {} points and {} values",
            ts.len(),
            values.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "non-finite value {} at t = {}",
            values[i], ts[i]
        )));
    }
    let mut scale = median(values.iter().map(|v| v.abs()).collect());
    if scale == 0.0 {
        scale = 1.0;
    }
    let thr = tol * scale;
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let tv: f64 = diffs.iter().map(|d| d.abs()).sum();
    if tv < thr {
        return Ok(MonotonicityVerdict {
            kind: VerdictKind::Constant {
                level: median(values.to_vec()),
            },
            witness: None,
            margin: tv,
            threshold: thr,
        });
    }
    let min_step = diffs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_step = diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let up_ok = min_step >= -thr;
    let down_ok = max_step <= thr;
    let net = values[values.len() - 1] - values[0];
    if up_ok && (!down_ok || net >= 0.0) {
        return Ok(MonotonicityVerdict {
            kind: VerdictKind::Increasing,
            witness: None,
            margin: min_step,
            threshold: thr,
        });
    }
    if down_ok {
        return Ok(MonotonicityVerdict {
            kind: VerdictKind::Decreasing,
            witness: None,
            margin: -max_step,
            threshold: thr,
        });
    }
    let (margin, idx) = best_witness(values);
    Ok(MonotonicityVerdict {
        kind: VerdictKind::NonMonotone,
        witness: Some(Witness {
            t: idx.map(|i| ts[i]),
            values: idx.map(|i| values[i]),
        }),
        margin,
        threshold: thr,
    })
}

/// The valley or peak triple with the largest margin
/// `min(f(i) - f(j), f(k) - f(j))` (valleys) or its mirror (peaks).
fn best_witness(v: &[f64]) -> (f64, [usize; 3]) {
    let n = v.len();
    let mut best = (f64::NEG_INFINITY, [0, 1, 2]);
    for sign in [1.0, -1.0] {
        // prefix argmax and suffix argmax of sign·v
        let mut pre = vec![0usize; n];
        for j in 1..n {
            pre[j] = if sign * v[j - 1] > sign * v[pre[j - 1]] || j == 1 {
                j - 1
            } else {
                pre[j - 1]
            };
        }
        let mut suf = vec![n - 1; n];
        for j in (0..n - 1).rev() {
            suf[j] = if j + 2 == n || sign * v[j + 1] > sign * v[suf[j + 1]] {
                j + 1
            } else {
                suf[j + 1]
            };
        }
        for j in 1..n - 1 {
            let (i, k) = (pre[j], suf[j]);
            let m = (sign * (v[i] - v[j])).min(sign * (v[k] - v[j]));
            if m > best.0 {
                best = (m, [i, j, k]);
            }
        }
    }
    best
}

fn scan(ts: &[f64], values: Vec<f64>) -> Result<MonotonicityVerdict> {
    scan_monotonicity(ts, &values, DEFAULT_TOL)
}

/// Monotonicity of `μ`.
pub fn classify_mrl(d: &Dist, grid: &Grid) -> Result<MonotonicityVerdict> {
    let ts = grid.points();
    let values = ts.iter().map(|&t| d.mrl(t)).collect::<Result<Vec<_>>>()?;
    scan(&ts, values)
}

/// Monotonicity of the running average `(1/t)∫μ`.
pub fn classify_mrla(d: &Dist, grid: &Grid, conv: Convention) -> Result<MonotonicityVerdict> {
    let ts = grid.points();
    let p = mrlai::profile(d, &ts, conv)?;
    scan(&ts, p.mu_avg)
}

/// Monotonicity of the MRLAI.
pub fn classify_mrlai(d: &Dist, grid: &Grid, conv: Convention) -> Result<MonotonicityVerdict> {
    let ts = grid.points();
    let p = mrlai::profile(d, &ts, conv)?;
    scan(&ts, p.l)
}

/// Monotonicity of the hazard-based ageing intensity.
pub fn classify_hazard_ai(d: &Dist, grid: &Grid) -> Result<MonotonicityVerdict> {
    let ts = grid.points();
    let values = ts.iter().map(|&t| mrlai::hazard_ai(d, t)).collect::<Result<Vec<_>>>()?;
    scan(&ts, values)
}

/// All available verdicts for one distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgeingClasses {
    pub grid: Grid,
    pub convention: Convention,
    pub mrl: MonotonicityVerdict,
    pub mrla: MonotonicityVerdict,
    pub mrlai: MonotonicityVerdict,
    pub hazard_ai: Option<MonotonicityVerdict>,
}

pub fn classify_all(d: &Dist, grid: &Grid, conv: Convention) -> Result<AgeingClasses> {
    let ts = grid.points();
    let p = mrlai::profile(d, &ts, conv)?;
    let mu_true = if conv == Convention::FormalExtension {
        ts.iter().map(|&t| d.mrl(t)).collect::<Result<Vec<_>>>()?
    } else {
        p.mu.clone()
    };
    Ok(AgeingClasses {
        grid: *grid,
        convention: conv,
        mrl: scan(&ts, mu_true)?,
        mrla: scan(&ts, p.mu_avg.clone())?,
        mrlai: scan(&ts, p.l.clone())?,
        hazard_ai: match p.hazard_ai {
            Some(h) => Some(scan(&ts, h)?),
            None => None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DistSpec;

    fn build(s: &str) -> Dist {
        Dist::build(&DistSpec::from_json(s).unwrap()).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::linear(1.0, 1.0, 32).is_err());
        assert!(Grid::linear(0.1, 1.0, 8).is_err());
        assert!(Grid::log(0.0, 1.0, 32).is_err());
        let g = Grid::log(0.01, 100.0, 17).unwrap();
        let p = g.points();
        assert_eq!((p[0], p[16]), (0.01, 100.0));
        assert!((p[8] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scan_basics() {
        let ts: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let inc: Vec<f64> = ts.iter().map(|t| t * t).collect();
        assert_eq!(
            scan_monotonicity(&ts, &inc, 1e-7).unwrap().kind,
            VerdictKind::Increasing
        );
        let flat = vec![2.0; 20];
        assert_eq!(
            scan_monotonicity(&ts, &flat, 1e-7).unwrap().kind,
            VerdictKind::Constant { level: 2.0 }
        );
        let bumpy: Vec<f64> = ts.iter().map(|t| (t - 7.0).powi(2)).collect();
        let v = scan_monotonicity(&ts, &bumpy, 1e-7).unwrap();
        assert!(v.is_non_monotone());
        let w = v.witness.unwrap();
        assert_eq!(w.t, [0.0, 7.0, 19.0]);
        assert_eq!(v.margin, 49.0);
    }

    #[test]
    fn peak_witness() {
        let ts: Vec<f64> = (0..16).map(|i| i as f64).collect();
        let v: Vec<f64> = ts.iter().map(|t| -(t - 5.0).abs()).collect();
        let w = scan_monotonicity(&ts, &v, 1e-7).unwrap().witness.unwrap();
        assert_eq!(w.t[1], 5.0);
        assert!(w.values[0] < w.values[1] && w.values[2] < w.values[1]);
    }

    #[test]
    fn erlang_classes() {
        let d = build(r#"{"family":"erlang","k":2,"rate":2}"#);
        let g = Grid::linear(0.1, 10.0, 256).unwrap();
        let v = classify_mrlai(&d, &g, Convention::Zero).unwrap();
        assert!(v.is_non_monotone());
        let w = v.witness.unwrap();
        assert!(w.values[0] > w.values[1] && w.values[1] < w.values[2]);
        assert!(w.t[1] > 1.0 && w.t[1] < 3.0);
        assert_eq!(classify_mrl(&d, &g).unwrap().kind, VerdictKind::Decreasing);
    }

    #[test]
    fn constant_classes() {
        let g = Grid::linear(0.05, 20.0, 128).unwrap();
        let e = build(r#"{"family":"exponential","rate":1}"#);
        match classify_mrlai(&e, &g, Convention::Zero).unwrap().kind {
            VerdictKind::Constant { level } => assert!((level - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            classify_mrla(&e, &g, Convention::Zero).unwrap().kind,
            VerdictKind::Constant { .. }
        ));
        let p = build(r#"{"family":"pareto","shape":3,"scale":1}"#);
        match classify_mrlai(&p, &g, Convention::FormalExtension).unwrap().kind {
            VerdictKind::Constant { level } => assert!((level - 2.0).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_mrl_classes() {
        let g = Grid::linear(0.05, 20.0, 128).unwrap();
        let m = build(r#"{"family":"mrl_linear","a":1,"b":8}"#);
        assert_eq!(
            classify_mrlai(&m, &g, Convention::Zero).unwrap().kind,
            VerdictKind::Increasing
        );
        let m = build(r#"{"family":"mrl_linear","a":1,"b":1}"#);
        assert_eq!(classify_mrl(&m, &g).unwrap().kind, VerdictKind::Increasing);
        assert_eq!(
            classify_mrla(&m, &g, Convention::Zero).unwrap().kind,
            VerdictKind::Increasing
        );
    }

    #[test]
    fn sqrt_mrl_average_increases() {
        let d =
            build(r#"{"family":"mrl_piecewise","breakpoints":[],"pieces":[{"kind":"sqrt","intercept":2,"coef":2}]}"#);
        let g = Grid::linear(0.1, 30.0, 64).unwrap();
        assert_eq!(
            classify_mrla(&d, &g, Convention::Zero).unwrap().kind,
            VerdictKind::Increasing
        );
        // (1/t)∫_0^t 2(√u + 1) du = (4√t + 6)/3
        let t: f64 = 4.0;
        let avg = mrlai::mrl_average(&d, t, Convention::Zero).unwrap();
        assert!((avg - (4.0 * t.sqrt() + 6.0) / 3.0).abs() < 1e-13);
    }
}
