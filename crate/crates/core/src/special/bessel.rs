//! Modified Bessel functions of the first kind `I_nu(x)` for real `x >= 0`
//! and orders `nu >= -1/2` that are integers or half-integers.
//!
//! Three evaluation regimes are used:
//!
//! - power series `sum (x/2)^(2k+nu) / (k! Gamma(k+nu+1))` for small and
//!   moderate arguments (summed in log space beyond `x = 30` so that the
//!   exponentially scaled value never overflows),
//! - Hankel's asymptotic expansion for integer orders once `x` is large
//!   compared to `nu^2`,
//! - the elementary closed forms `I_{1/2}`, `I_{-1/2}` and upward
//!   recurrence for half-integer orders at large argument.

use crate::error::{domain, Error, Result};

/// Relative size of the first dropped series term.
pub const SERIES_TOLERANCE: f64 = 1e-16;

/// Arguments above this are summed in log space or expanded asymptotically.
const DIRECT_SERIES_LIMIT: f64 = 30.0;

/// Order `nu` stored as `2 nu`, so integer and half-integer orders are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    twice_order: i32,
}

impl BesselOrder {
    pub fn from_twice(twice_order: i32) -> Result<Self> {
        if twice_order < -1 {
            return Err(Error::Unsupported(format!(
                "Bessel order {}/2 is below -1/2",
                twice_order
            )));
        }
        Ok(Self { twice_order })
    }

    pub fn integer(n: u32) -> Self {
        Self {
            twice_order: 2 * n as i32,
        }
    }

    /// The order `(m+1)/2` or `(m-1)/2` appearing in moment formulas.
    pub fn half(numerator: i32) -> Result<Self> {
        Self::from_twice(numerator)
    }

    pub fn twice_order(&self) -> i32 {
        self.twice_order
    }

    pub fn value(&self) -> f64 {
        self.twice_order as f64 / 2.0
    }

    pub fn is_integer(&self) -> bool {
        self.twice_order % 2 == 0
    }
}

/// `Gamma(twice / 2)` for `twice >= 1`, by exact products from `Gamma(1) = 1`
/// or `Gamma(1/2) = sqrt(pi)`.
pub fn gamma_half_integer(twice: u32) -> f64 {
    assert!(twice >= 1, "Gamma is only tabulated for positive arguments");
    let (mut value, mut arg2) = if twice.is_multiple_of(2) {
        (1.0, 2u32)
    } else {
        (std::f64::consts::PI.sqrt(), 1u32)
    };
    while arg2 < twice {
        value *= arg2 as f64 / 2.0;
        arg2 += 2;
    }
    value
}

fn ln_gamma_half_integer(twice: u32) -> f64 {
    if twice <= 340 {
        gamma_half_integer(twice).ln()
    } else {
        statrs::function::gamma::ln_gamma(twice as f64 / 2.0)
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        return Err(domain(format!("Bessel argument must be >= 0, got {x}")));
    }
    Ok(())
}

/// `I_nu(x)`. Values beyond the `f64` range come back as `+inf`.
pub fn bessel_i(order: BesselOrder, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x <= DIRECT_SERIES_LIMIT && x > 0.0 && order.twice_order.abs() != 1 {
        return Ok(power_series(order, x));
    }
    let scaled = bessel_i_scaled(order, x)?;
    Ok(scaled * x.exp())
}

/// `e^{-x} I_nu(x)`, finite for every `x >= 0`.
pub fn bessel_i_scaled(order: BesselOrder, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x.is_infinite() {
        return Ok(0.0);
    }
    let nu = order.value();
    if x == 0.0 {
        return match order.twice_order {
            0 => Ok(1.0),
            -1 => Err(domain("I_{-1/2}(x) diverges at x = 0")),
            _ => Ok(0.0),
        };
    }
    if order.twice_order.abs() == 1 {
        return Ok(half_integer_closed_form(order, x));
    }
    if x <= DIRECT_SERIES_LIMIT {
        return Ok(power_series(order, x) * (-x).exp());
    }
    if x > nu * nu {
        if order.is_integer() {
            return Ok(hankel_scaled(nu, x));
        }
        return Ok(half_integer_closed_form(order, x));
    }
    Ok(log_series_scaled(order, x))
}

fn power_series(order: BesselOrder, x: f64) -> f64 {
    let nu = order.value();
    let half = 0.5 * x;
    // Gamma(nu + 1) = Gamma((twice + 2) / 2)
    let first = half.powf(nu) / gamma_half_integer((order.twice_order + 2) as u32);
    let q = half * half;
    let mut term = first;
    let mut sum = first;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        if term <= SERIES_TOLERANCE * sum {
            break;
        }
    }
    sum
}

/// Series summed with every term carried as a logarithm, already multiplied
/// by `e^{-x}`; usable far beyond the overflow threshold of `I_nu`.
fn log_series_scaled(order: BesselOrder, x: f64) -> f64 {
    let nu = order.value();
    let ln_q = 2.0 * (0.5 * x).ln();
    let mut ln_term =
        nu * (0.5 * x).ln() - ln_gamma_half_integer((order.twice_order + 2) as u32) - x;
    let mut sum = ln_term.exp();
    let peak = 0.5 * x;
    let mut k = 0.0f64;
    loop {
        k += 1.0;
        ln_term += ln_q - k.ln() - (k + nu).ln();
        let term = ln_term.exp();
        sum += term;
        if k > peak && term <= SERIES_TOLERANCE * sum {
            break;
        }
    }
    sum
}

/// Hankel expansion `e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum (-1)^k a_k(nu) / x^k`,
/// truncated at the smallest term.
fn hankel_scaled(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let odd = 2.0 * k - 1.0;
        let next = -term * (mu - odd * odd) / (8.0 * k * x);
        if next.abs() >= term.abs() || next == 0.0 {
            break;
        }
        sum += next;
        term = next;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// `e^{-x} I_{n+1/2}(x)` from `I_{+-1/2}(x) = sqrt(2/(pi x)) (sinh x, cosh x)`
/// and the upward recurrence `I_{nu+1} = I_{nu-1} - (2 nu / x) I_nu`.
fn half_integer_closed_form(order: BesselOrder, x: f64) -> f64 {
    let pre = (2.0 / (std::f64::consts::PI * x)).sqrt();
    let decay = (-2.0 * x).exp();
    let minus_half = pre * 0.5 * (1.0 + decay);
    let plus_half = pre * 0.5 * (1.0 - decay);
    if order.twice_order == -1 {
        return minus_half;
    }
    let (mut prev, mut cur) = (minus_half, plus_half);
    let mut twice = 1;
    while twice < order.twice_order {
        let nu = twice as f64 / 2.0;
        let next = prev - (2.0 * nu / x) * cur;
        prev = cur;
        cur = next;
        twice += 2;
    }
    cur
}
