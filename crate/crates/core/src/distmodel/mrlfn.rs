//! Distributions specified through their mean residual life.
//!
//! The survival function follows from the inversion
//! `S(t) = μ(0)/μ(t) · exp(-∫_0^t du/μ(u))`, evaluated piece by piece with
//! each piece's analytic antiderivatives.

use super::spec::MrlPiece;

#[derive(Debug, Clone, PartialEq)]
pub struct MrlFunction {
    breakpoints: Vec<f64>,
    pieces: Vec<MrlPiece>,
    /// `∫_0^{breakpoints[i]} du/μ(u)`
    hazard_at: Vec<f64>,
    /// `∫_0^{breakpoints[i]} μ(u) du`
    mrl_at: Vec<f64>,
    mu0: f64,
    continuous: bool,
}

impl MrlFunction {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<MrlPiece>) -> Self {
        let mut hazard_at = Vec::with_capacity(breakpoints.len());
        let mut mrl_at = Vec::with_capacity(breakpoints.len());
        let (mut h, mut m, mut lo) = (0.0, 0.0, 0.0);
        let mut continuous = true;
        for (i, &b) in breakpoints.iter().enumerate() {
            h += pieces[i].hazard_integral(lo, b);
            m += pieces[i].integral(lo, b);
            hazard_at.push(h);
            mrl_at.push(m);
            let (left, right) = (pieces[i].value(b), pieces[i + 1].value(b));
            if (left - right).abs() > 1e-12 * left.abs().max(right.abs()) {
                continuous = false;
            }
            lo = b;
        }
        let mu0 = pieces[0].value(0.0);
        Self {
            breakpoints,
            pieces,
            hazard_at,
            mrl_at,
            mu0,
            continuous,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous
    }

    fn locate(&self, t: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= t)
    }

    fn piece_start(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.breakpoints[i - 1]
        }
    }

    pub fn mu(&self, t: f64) -> f64 {
        self.pieces[self.locate(t)].value(t)
    }

    pub fn mu_derivative(&self, t: f64) -> f64 {
        self.pieces[self.locate(t)].derivative(t)
    }

    /// `∫_0^t du/μ(u)`
    pub fn cumulative_hazard_term(&self, t: f64) -> f64 {
        let i = self.locate(t);
        let base = if i == 0 { 0.0 } else { self.hazard_at[i - 1] };
        base + self.pieces[i].hazard_integral(self.piece_start(i), t)
    }

    /// `∫_0^t μ(u) du`
    pub fn integral_from_zero(&self, t: f64) -> f64 {
        let i = self.locate(t);
        let base = if i == 0 { 0.0 } else { self.mrl_at[i - 1] };
        base + self.pieces[i].integral(self.piece_start(i), t)
    }

    /// `∫_lo^hi μ(u) du`, summed piece by piece so that short intervals
    /// far from the origin do not lose precision to cancellation.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let (i, j) = (self.locate(lo), self.locate(hi));
        if i == j {
            return self.pieces[i].integral(lo, hi);
        }
        let mut total = self.pieces[i].integral(lo, self.breakpoints[i]);
        for k in i + 1..j {
            total += self.pieces[k].integral(self.breakpoints[k - 1], self.breakpoints[k]);
        }
        total + self.pieces[j].integral(self.breakpoints[j - 1], hi)
    }

    pub fn mean(&self) -> f64 {
        self.mu0
    }

    pub fn ln_survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        (self.mu0 / self.mu(t)).ln() - self.cumulative_hazard_term(t)
    }

    pub fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        (self.mu0 / self.mu(t)) * (-self.cumulative_hazard_term(t)).exp()
    }

    pub fn cdf(&self, t: f64) -> f64 {
        -self.ln_survival(t).exp_m1()
    }

    /// `f = S·(1 + μ')/μ`
    pub fn density(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let mu = self.mu(t);
        self.survival(t) * (1.0 + self.mu_derivative(t)) / mu
    }

    pub fn tail(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.mu0 - t;
        }
        self.mu(t) * self.survival(t)
    }
}
