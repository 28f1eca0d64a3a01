//! Grid arguments: `min:max:step` or `min:max/n[:log]`.

use std::str::FromStr;

use mrlai_core::classify::{Grid, Spacing};

#[derive(Debug, Clone, PartialEq)]
pub struct GridArg {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
    pub spacing: Spacing,
    step: Option<f64>,
}

fn number(s: &str, what: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("grid {what} {s:?} is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("grid {what} must be finite"))
    }
}

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let usage = || format!("bad grid {s:?}: expected min:max:step or min:max/n[:log]");
        let (head, count) = match s.split_once('/') {
            Some((h, c)) => (h, Some(c)),
            None => (s, None),
        };
        let parts: Vec<&str> = head.split(':').collect();
        let grid = match (parts.as_slice(), count) {
            ([lo, hi], Some(c)) => {
                let (n, spacing) = match c.split_once(':') {
                    Some((n, "log")) => (n, Spacing::Log),
                    Some((n, "linear")) => (n, Spacing::Linear),
                    Some(_) => return Err(usage()),
                    None => (c, Spacing::Linear),
                };
                let n: usize = n.trim().parse().map_err(|_| usage())?;
                GridArg {
                    t_min: number(lo, "min")?,
                    t_max: number(hi, "max")?,
                    n,
                    spacing,
                    step: None,
                }
            }
            ([lo, hi, step], None) => {
                let (t_min, t_max, step) = (number(lo, "min")?, number(hi, "max")?, number(step, "step")?);
                if !(step > 0.0) {
                    return Err(format!("grid step must be positive, got {step}"));
                }
                let n = ((t_max - t_min) / step * (1.0 + 1e-12)).floor() as usize + 1;
                GridArg {
                    t_min,
                    t_max: t_min + (n - 1) as f64 * step,
                    n,
                    spacing: Spacing::Linear,
                    step: Some(step),
                }
            }
            _ => return Err(usage()),
        };
        if !(grid.t_min < grid.t_max) {
            return Err(format!("grid needs min < max, got {} and {}", grid.t_min, grid.t_max));
        }
        if grid.n < 2 {
            return Err("grid needs at least 2 points".into());
        }
        if grid.spacing == Spacing::Log && grid.t_min <= 0.0 {
            return Err("log grid needs min > 0".into());
        }
        Ok(grid)
    }
}

impl GridArg {
    pub fn points(&self) -> Vec<f64> {
        match self.step {
            Some(step) => (0..self.n).map(|i| self.t_min + i as f64 * step).collect(),
            None => Grid {
                t_min: self.t_min,
                t_max: self.t_max,
                n_points: self.n,
                spacing: self.spacing,
            }
            .points(),
        }
    }

    /// The scanning grid used by verdicts, which needs at least 16 points.
    pub fn scan_grid(&self) -> mrlai_core::Result<Grid> {
        Grid::new(self.t_min, self.t_max, self.n, self.spacing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_form() {
        let g: GridArg = "0.5:4.5:0.5".parse().unwrap();
        assert_eq!(g.points(), vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5]);
        let g: GridArg = "0:1:0.1".parse().unwrap();
        assert_eq!(g.n, 11);
    }

    #[test]
    fn count_form() {
        let g: GridArg = "0.1:10/64".parse().unwrap();
        assert_eq!(g.points().len(), 64);
        let g: GridArg = "0.01:100/5:log".parse().unwrap();
        let p = g.points();
        assert!((p[1] - 0.1).abs() < 1e-12 && (p[4] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn rejects() {
        for bad in [
            "",
            "1",
            "2:1:0.1",
            "0:1:-1",
            "0:1/x",
            "0:10/8:log",
            "0:1/8:cubic",
            "a:b/3",
            "1:1/4",
        ] {
            assert!(bad.parse::<GridArg>().is_err(), "{bad}");
        }
    }
}
