//! Printed closed forms referenced by corpus cases, keyed by name.
//!
//! Each entry takes `t` and the parameter list stored with the check.

use std::f64::consts::{E, LN_2, PI};

pub struct Formula {
    pub name: &'static str,
    pub description: &'static str,
    pub arity: usize,
    pub eval: fn(f64, &[f64]) -> f64,
}

macro_rules! formula {
    ($name:expr, $desc:expr, $arity:expr, $f:expr) => {
        Formula {
            name: $name,
            description: $desc,
            arity: $arity,
            eval: $f,
        }
    };
}

pub static FORMULAS: &[Formula] = &[
    formula!("constant", "c", 1, |_, p| p[0]),
    formula!("linear_mrl", "a + b t", 2, |t, p| p[0] + p[1] * t),
    formula!("linear_mrl_survival", "(a/(a+bt))^(1/b+1)", 2, |t, p| {
        (p[0] / (p[0] + p[1] * t)).powf(1.0 / p[1] + 1.0)
    }),
    formula!("linear_mrl_mrlai", "(a+bt)/(a+bt/2)", 2, |t, p| {
        (p[0] + p[1] * t) / (p[0] + 0.5 * p[1] * t)
    }),
    formula!("linear_mrl_average", "a + bt/2", 2, |t, p| p[0] + 0.5 * p[1] * t),
    formula!("reciprocal_linear_mrl", "1/(a+bt)", 2, |t, p| 1.0 / (p[0] + p[1] * t)),
    formula!(
        "reciprocal_linear_survival",
        "((a+bt)/a) exp(-(at+bt^2/2))",
        2,
        |t, p| {
            let (a, b) = (p[0], p[1]);
            (a + b * t) / a * (-(a * t + 0.5 * b * t * t)).exp()
        }
    ),
    formula!("reciprocal_linear_mrlai", "bt/((a+bt) ln((a+bt)/a))", 2, |t, p| {
        let (a, b) = (p[0], p[1]);
        b * t / ((a + b * t) * (b * t / a).ln_1p())
    }),
    formula!("exponential_mrl", "exp(a + bt)", 2, |t, p| (p[0] + p[1] * t).exp()),
    formula!(
        "exponential_mrl_survival",
        "exp(e^(-a)(e^(-bt)-1)/b - bt)",
        2,
        |t, p| {
            let (a, b) = (p[0], p[1]);
            ((-a).exp() * (-b * t).exp_m1() / b - b * t).exp()
        }
    ),
    formula!("exponential_mrl_mrlai", "bt e^(a+bt)/(e^a (e^(bt)-1))", 2, |t, p| {
        let (a, b) = (p[0], p[1]);
        b * t * (a + b * t).exp() / (a.exp() * (b * t).exp_m1())
    }),
    formula!("exponential_survival", "exp(-t/m)", 1, |t, p| (-t / p[0]).exp()),
    formula!("piecewise_exp_linear_mrl", "1-0.4e^(t-1) | 0.6t | 1.2", 0, |t, _| {
        if t < 1.0 {
            1.0 - 0.4 * (t - 1.0).exp()
        } else if t < 2.0 {
            0.6 * t
        } else {
            1.2
        }
    }),
    formula!(
        "piecewise_exp_linear_mrlai",
        "6et^2/(3e(t^2+1)+4) on [1,2), 12et/(3e(4t-3)+4) beyond",
        0,
        |t, _| {
            if t < 2.0 {
                6.0 * E * t * t / (3.0 * E * (t * t + 1.0) + 4.0)
            } else {
                12.0 * E * t / (3.0 * E * (4.0 * t - 3.0) + 4.0)
            }
        }
    ),
    formula!("piecewise_constant_linear_mrl", "0.5 | t - 0.5", 0, |t, _| {
        if t <= 1.0 {
            0.5
        } else {
            t - 0.5
        }
    }),
    formula!("erlang2_mrl", "(t+1)/(2t+1)", 0, |t, _| (t + 1.0) / (2.0 * t + 1.0)),
    formula!("erlang2_mrlai", "4t(t+1)/((2t+1)(ln(2t+1)+2t))", 0, |t, _| {
        4.0 * t * (t + 1.0) / ((2.0 * t + 1.0) * ((2.0 * t).ln_1p() + 2.0 * t))
    }),
    formula!("erlang2_hazard", "4t/(1+2t)", 0, |t, _| 4.0 * t / (1.0 + 2.0 * t)),
    formula!("erlang2_hazard_ai", "4t^2/((1+2t)(2t-ln(1+2t)))", 0, |t, _| {
        4.0 * t * t / ((1.0 + 2.0 * t) * (2.0 * t - (2.0 * t).ln_1p()))
    }),
    formula!("uniform_mrl", "(b-t)/2", 1, |t, p| 0.5 * (p[0] - t)),
    formula!("uniform_printed_mrlai", "b - t", 1, |t, p| p[0] - t),
    formula!("gamma3_mrl", "(t^2+4t+6)/(t^2+2t+2)", 0, |t, _| {
        (t * t + 4.0 * t + 6.0) / (t * t + 2.0 * t + 2.0)
    }),
    formula!(
        "gamma3_mrlai",
        "t mu / (ln(t^2+2t+2) + 2 atan(t+1) + t - (2 ln2 + pi)/2)",
        0,
        |t, _| {
            let mu = (t * t + 4.0 * t + 6.0) / (t * t + 2.0 * t + 2.0);
            let g = (t * t + 2.0 * t + 2.0).ln() + 2.0 * (t + 1.0).atan() + t - (2.0 * LN_2 + PI) / 2.0;
            t * mu / g
        }
    ),
    formula!("linear_mixture_mrl", "mixture of 1+8t and 1+0.1t", 0, |t, _| {
        let num = 1.0 / (5.0 * (8.0 * t + 1.0).powf(0.125)) + 8e9 / (t + 10.0).powi(10);
        let den = 1.0 / (5.0 * (8.0 * t + 1.0).powf(1.125)) + 4.0 / (5.0 * (t / 10.0 + 1.0).powi(11));
        num / den
    }),
    formula!("erlang2_unit_survival", "(t+1)e^(-t)", 0, |t, _| (t + 1.0) * (-t).exp()),
    formula!("erlang2_unit_mrl", "(t+2)/(t+1)", 0, |t, _| (t + 2.0) / (t + 1.0)),
    formula!("erlang2_unit_mrlai", "t(t+2)/((t+1)(ln(t+1)+t))", 0, |t, _| {
        t * (t + 2.0) / ((t + 1.0) * (t.ln_1p() + t))
    }),
    formula!("median_of_three_survival", "(3t^2+6t+1)/(t+1)^6", 0, |t, _| {
        (3.0 * t * t + 6.0 * t + 1.0) / (t + 1.0).powi(6)
    }),
    formula!("median_of_three_density", "12t(t+2)/(t+1)^7", 0, |t, _| {
        12.0 * t * (t + 2.0) / (t + 1.0).powi(7)
    }),
    formula!("median_of_three_mrl", "(t+1)(5t^2+10t+3)/(5(3t^2+6t+1))", 0, |t, _| {
        (t + 1.0) * (5.0 * t * t + 10.0 * t + 3.0) / (5.0 * (3.0 * t * t + 6.0 * t + 1.0))
    }),
    formula!(
        "median_of_three_printed_mrlai",
        "t(t+1)(5t^2+10t+3)/(450(3t^2+6t+1)(4ln(3t^2+6t+1)+15t(t+2)))",
        0,
        |t, _| {
            let q = 3.0 * t * t + 6.0 * t + 1.0;
            t * (t + 1.0) * (5.0 * t * t + 10.0 * t + 3.0) / (450.0 * q * (4.0 * q.ln() + 15.0 * t * (t + 2.0)))
        }
    ),
    formula!(
        "reciprocal_mixture_mrl",
        "mixture of 1/(1+t) and 1/(1+2t)",
        0,
        |t, _| {
            let (e1, e2) = ((t * t).exp(), (0.5 * t * t).exp());
            (e1 + 4.0 * e2) / ((t + 1.0) * e1 + (8.0 * t + 4.0) * e2)
        }
    ),
    formula!("uniform_median_mrl", "(b-t)(t+b-2a)/(2(2t+b-3a))", 2, |t, p| {
        let (a, b) = (p[0], p[1]);
        (b - t) * (t + b - 2.0 * a) / (2.0 * (2.0 * t + b - 3.0 * a))
    }),
    formula!("uniform_median_mrlai", "h(t)/k(t)", 2, |t, p| {
        let (a, b) = (p[0], p[1]);
        let h = 8.0 * t * (b - t) * (t + b - 2.0 * a);
        let w = (b - a).powi(2);
        let k = (2.0 * t + b - 3.0 * a)
            * (3.0 * w * (2.0 * t + b - 3.0 * a).ln() - 2.0 * t * t + 2.0 * (b + a) * t
                - 3.0 * w * (b - a).ln()
                - 2.0 * a * b);
        h / k
    }),
    formula!("exponential_tail", "e^(-rt)/r", 1, |t, p| (-p[0] * t).exp() / p[0]),
    formula!("pareto_formal_tail", "b^a t^(1-a)/(a-1)", 2, |t, p| {
        p[1].powf(p[0]) * t.powf(1.0 - p[0]) / (p[0] - 1.0)
    }),
    formula!("exp_pareto_double_tail_ratio", "t e^(-2t)/2", 0, |t, _| 0.5
        * t
        * (-2.0 * t).exp()),
    formula!(
        "erlang_mrl_integral_ratio",
        "4(ln(3t+1)+3t)/(9(ln(2t+1)+2t))",
        0,
        |t, _| { 4.0 * ((3.0 * t).ln_1p() + 3.0 * t) / (9.0 * ((2.0 * t).ln_1p() + 2.0 * t)) }
    ),
    formula!("sqrt_mrl_average", "(4 sqrt(t)+6)/3", 0, |t, _| (4.0 * t.sqrt() + 6.0)
        / 3.0),
    formula!("sqrt_mrl_mrlai", "3(sqrt(t)+1)/(2 sqrt(t)+3)", 0, |t, _| {
        3.0 * (t.sqrt() + 1.0) / (2.0 * t.sqrt() + 3.0)
    }),
    formula!(
        "parallel_erlang_mrl",
        "(2(4(t+2)e^t - t(t+3)) - 5)/(4(t+1)(2e^t - t - 1))",
        0,
        |t, _| {
            let et = t.exp();
            (2.0 * (4.0 * (t + 2.0) * et - t * (t + 3.0)) - 5.0) / (4.0 * (t + 1.0) * (2.0 * et - t - 1.0))
        }
    ),
    formula!("parallel_exponential_mrl", "(4e^(2t)-1)/(8e^(2t)-4)", 0, |t, _| {
        let e2 = (2.0 * t).exp();
        (4.0 * e2 - 1.0) / (8.0 * e2 - 4.0)
    }),
    formula!(
        "parallel_exponential_mrlai",
        "8t(4e^(2t)-1)/((8e^(2t)-4)(ln(16e^(4t)-8e^(2t)) - ln 8))",
        0,
        |t, _| {
            let e2 = (2.0 * t).exp();
            8.0 * t * (4.0 * e2 - 1.0) / ((8.0 * e2 - 4.0) * ((16.0 * e2 * e2 - 8.0 * e2).ln() - 8f64.ln()))
        }
    ),
];

pub fn lookup(name: &str) -> Option<&'static Formula> {
    FORMULAS.iter().find(|f| f.name == name)
}
