//! The kernel `g(u,t) = I_0((lambda/c) sqrt(c^2 t^2 - u^2))` and the pieces built from it.
//!
//! With `s = c^2 t^2 - u^2` and `a = (lambda / 2c)^2`, the kernel is the
//! entire function `G(s) = sum_m a^m s^m / m!^2`, and every derivative of
//! `G` is again a non-negative series
//!
//! ```text
//! G^(r)(s) = S_r(s) = sum_m a^(m+r) s^m / (m! (m+r)!)  = (a/s)^(r/2) I_r(2 sqrt(a s)).
//! ```
//!
//! Partial derivatives of `g` follow from the chain rule with `s_t = 2c^2 t`
//! and `s_u = -2u`, so no negative power of `s` ever appears and the edge
//! `u = ct` is just `S_r(0) = a^r / r!`. All `*_scaled` values carry the
//! factor `e^{-lambda t}`; since `xi = 2 sqrt(a s) <= lambda t` they stay
//! bounded for any horizon.

use crate::error::{domain, Result};
use crate::params::ModelParams;
use crate::special::bessel::{bessel_i_scaled, gamma_half_integer, BesselOrder, SERIES_TOLERANCE};

/// Kernel argument below which `S_r` is summed directly.
const KERNEL_SERIES_LIMIT: f64 = 30.0;

/// A point `(u, t)` of the closed support `0 <= u <= ct`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    params: ModelParams,
    t: f64,
    u: f64,
}

impl KernelPoint {
    pub fn new(params: ModelParams, t: f64, u: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(domain(format!("time must be finite and >= 0, got {t}")));
        }
        if !(u.is_finite() && u >= 0.0) {
            return Err(domain(format!("radius must be finite and >= 0, got {u}")));
        }
        if u > params.reach(t) {
            return Err(domain(format!(
                "radius {u} exceeds ct = {}",
                params.reach(t)
            )));
        }
        Ok(Self { params, t, u })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `s = c^2 t^2 - u^2`, formed as a product to keep relative accuracy near the edge.
    pub fn gap(&self) -> f64 {
        let reach = self.params.reach(self.t);
        ((reach - self.u) * (reach + self.u)).max(0.0)
    }

    /// Bessel argument `xi = (lambda/c) sqrt(c^2 t^2 - u^2)`.
    pub fn argument(&self) -> f64 {
        self.params.lambda() / self.params.c() * self.gap().sqrt()
    }

    fn series_scale(&self) -> f64 {
        let ratio = self.params.lambda() / (2.0 * self.params.c());
        ratio * ratio
    }
}

/// `e^{-lambda t} S_r(s)` at the given point.
pub fn shifted_series_scaled(p: &KernelPoint, r: u32) -> f64 {
    let a = p.series_scale();
    let s = p.gap();
    let lt = p.params.lambda() * p.t;
    let ln_lead = r as f64 * a.ln() - gamma_half_integer(2 * r + 2).ln() - lt;
    let xi = p.argument();
    if xi <= KERNEL_SERIES_LIMIT {
        let q = a * s;
        let rr = r as f64;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut m = 0.0;
        if q > 0.0 {
            loop {
                m += 1.0;
                term *= q / (m * (m + rr));
                sum += term;
                if term <= SERIES_TOLERANCE * sum {
                    break;
                }
            }
        }
        (ln_lead + sum.ln()).exp()
    } else {
        let bessel = bessel_i_scaled(BesselOrder::integer(r), xi).expect("argument is positive");
        (0.5 * r as f64 * (a / s).ln() + bessel.ln() + xi - lt).exp()
    }
}

fn check_orders(t_order: u32, u_order: u32) -> Result<()> {
    let supported = matches!((t_order, u_order), (0..=3, 0) | (0, 1..=2) | (1, 1..=2));
    if supported {
        Ok(())
    } else {
        Err(domain(format!(
            "kernel derivative of order (t: {t_order}, u: {u_order}) is not provided"
        )))
    }
}

/// `e^{-lambda t} d^{t_order}_t d^{u_order}_u g(u, t)`.
pub fn kernel_derivative_scaled(p: &KernelPoint, t_order: u32, u_order: u32) -> Result<f64> {
    check_orders(t_order, u_order)?;
    let c2 = p.params.c() * p.params.c();
    let (t, u) = (p.t, p.u);
    let s = |r| shifted_series_scaled(p, r);
    let value = match (t_order, u_order) {
        (0, 0) => s(0),
        (1, 0) => 2.0 * c2 * t * s(1),
        (2, 0) => 2.0 * c2 * s(1) + 4.0 * c2 * c2 * t * t * s(2),
        (3, 0) => 12.0 * c2 * c2 * t * s(2) + 8.0 * c2 * c2 * c2 * t * t * t * s(3),
        (0, 1) => -2.0 * u * s(1),
        (0, 2) => -2.0 * s(1) + 4.0 * u * u * s(2),
        (1, 1) => -4.0 * c2 * t * u * s(2),
        (1, 2) => -4.0 * c2 * t * s(2) + 8.0 * c2 * t * u * u * s(3),
        _ => unreachable!("orders validated above"),
    };
    Ok(value)
}

/// `d^{t_order}_t d^{u_order}_u g(u, t)`; supported orders are `(0..=3, 0)`,
/// `(0, 1..=2)` and the mixed `(1, 1)`, `(1, 2)`.
pub fn kernel_derivative(p: &KernelPoint, t_order: u32, u_order: u32) -> Result<f64> {
    let scaled = kernel_derivative_scaled(p, t_order, u_order)?;
    Ok(scaled * (p.params.lambda() * p.t).exp())
}

/// `e^{-lambda t} int_0^{ct} u^m d^{t_order}_t g(u, t) du`.
pub fn kernel_integral_scaled(params: &ModelParams, t: f64, m: u32, t_order: u32) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(domain(format!("time must be finite and > 0, got {t}")));
    }
    let (c, lambda) = (params.c(), params.lambda());
    let lt = lambda * t;
    let damp = (-lt).exp();
    let decay2 = (-2.0 * lt).exp();
    if m == 0 {
        return match t_order {
            0 => Ok(c / (2.0 * lambda) * (1.0 - decay2)),
            1 => Ok(0.5 * c * (1.0 + decay2) - c * damp),
            2 => Ok(0.5 * c * lambda * (1.0 - decay2) - 0.5 * c * lambda * lt * damp),
            3 => Ok(0.5 * c * lambda * lambda * (1.0 + decay2)
                - (lambda * lambda * c + lambda.powi(4) * c * t * t / 8.0) * damp),
            _ => Err(domain(format!(
                "kernel integral of t-order {t_order} is not provided"
            ))),
        };
    }
    if t_order > 2 {
        return Err(domain(format!(
            "kernel integral with m = {m} and t-order {t_order} is not provided"
        )));
    }
    let moment_integral = MomentIntegrals::new(params, t, m);
    Ok(match t_order {
        0 => moment_integral.plain(),
        1 => moment_integral.first(),
        _ => moment_integral.second(),
    })
}

/// `int_0^{ct} u^m d^{t_order}_t g(u, t) du`.
pub fn kernel_integral(params: &ModelParams, t: f64, m: u32, t_order: u32) -> Result<f64> {
    let scaled = kernel_integral_scaled(params, t, m, t_order)?;
    Ok(scaled * (params.lambda() * t).exp())
}

/// Moment integrals of the kernel and its first two time derivatives, all
/// scaled by `e^{-lambda t}` and written with `B = 2c^2 t / lambda` and
/// Bessel functions of half-integer order `(m +- 1)/2` at `lambda t`.
pub(crate) struct MomentIntegrals {
    c: f64,
    lambda: f64,
    t: f64,
    m: u32,
    gamma: f64,
    base: f64,
    upper: f64,
    lower: f64,
}

impl MomentIntegrals {
    pub(crate) fn new(params: &ModelParams, t: f64, m: u32) -> Self {
        let (c, lambda) = (params.c(), params.lambda());
        let lt = lambda * t;
        let upper = bessel_i_scaled(BesselOrder::from_twice(m as i32 + 1).unwrap(), lt)
            .expect("lambda t > 0");
        let lower = bessel_i_scaled(BesselOrder::from_twice(m as i32 - 1).unwrap(), lt)
            .expect("lambda t > 0");
        Self {
            c,
            lambda,
            t,
            m,
            gamma: gamma_half_integer(m + 1),
            base: 2.0 * c * c * t / lambda,
            upper,
            lower,
        }
    }

    fn power(&self, twice_exponent: i32) -> f64 {
        self.base.powf(twice_exponent as f64 / 2.0)
    }

    fn damped_edge(&self, k: i32) -> f64 {
        (self.c * self.t).powi(k) * (-self.lambda * self.t).exp()
    }

    /// `int u^m g du`
    pub(crate) fn plain(&self) -> f64 {
        0.5 * self.gamma * self.power(self.m as i32 + 1) * self.upper
    }

    /// `int u^m d_t g du`
    pub(crate) fn first(&self) -> f64 {
        0.5 * self.lambda * self.power(self.m as i32 + 1) * self.gamma * self.lower
            - self.c * self.damped_edge(self.m as i32)
    }

    /// `int u^m d_t^2 g du`
    pub(crate) fn second(&self) -> f64 {
        let m = self.m as f64;
        let c2 = self.c * self.c;
        let mut value =
            -0.5 * self.lambda * self.lambda * self.c * self.t * self.damped_edge(self.m as i32)
                + 0.5
                    * self.lambda
                    * self.lambda
                    * self.gamma
                    * self.power(self.m as i32 + 1)
                    * self.upper;
        if self.m > 0 {
            value += -m * c2 * self.damped_edge(self.m as i32 - 1)
                + m * self.gamma * c2 * self.power(self.m as i32 - 1) * self.lower;
        }
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bessel::bessel_i;

    fn unit() -> ModelParams {
        ModelParams::new(1.0, 1.0, 2).unwrap()
    }

    fn g(params: &ModelParams, t: f64, u: f64) -> f64 {
        let xi = params.lambda() / params.c() * (params.reach(t).powi(2) - u * u).sqrt();
        bessel_i(BesselOrder::integer(0), xi).unwrap()
    }

    #[test]
    fn value_at_edge_is_one() {
        let p = KernelPoint::new(unit(), 1.0, 1.0).unwrap();
        assert_eq!(kernel_derivative(&p, 0, 0).unwrap(), 1.0);
    }

    #[test]
    fn first_time_derivative_at_centre() {
        let p = KernelPoint::new(unit(), 1.0, 0.0).unwrap();
        let got = kernel_derivative(&p, 1, 0).unwrap();
        let i1 = bessel_i(BesselOrder::integer(1), 1.0).unwrap();
        assert!((got - i1).abs() < 1e-14);
        assert!((got - 0.565159).abs() < 1e-6);
        let h = 1e-4;
        let params = unit();
        let fd = (g(&params, 1.0 + h, 0.0) - g(&params, 1.0 - h, 0.0)) / (2.0 * h);
        assert!((fd - got).abs() < 1e-8);
    }

    #[test]
    fn klein_gordon_identity() {
        for &(lambda, c) in &[(1.0, 1.0), (2.5, 0.7), (40.0, 1.0)] {
            let params = ModelParams::new(c, lambda, 2).unwrap();
            for &(t, frac) in &[(1.0, 0.5), (0.3, 0.1), (2.0, 0.99), (1.5, 0.0)] {
                let p = KernelPoint::new(params, t, frac * params.reach(t)).unwrap();
                let gtt = kernel_derivative_scaled(&p, 2, 0).unwrap();
                let guu = kernel_derivative_scaled(&p, 0, 2).unwrap();
                let g0 = kernel_derivative_scaled(&p, 0, 0).unwrap();
                let resid = gtt - c * c * guu - lambda * lambda * g0;
                let scale = gtt.abs().max(lambda * lambda * g0.abs());
                assert!(
                    resid.abs() <= 1e-10 * scale,
                    "resid {resid:e} scale {scale:e}"
                );
            }
        }
    }

    #[test]
    fn series_and_bessel_branches_agree() {
        // xi just below and above the switch between direct series and Bessel form
        let params = ModelParams::new(1.0, 30.2, 2).unwrap();
        for &u in &[0.0, 0.05, 0.2] {
            let p = KernelPoint::new(params, 1.0, u).unwrap();
            let xi = p.argument();
            let direct = (0..=3)
                .map(|r| shifted_series_scaled(&p, r))
                .collect::<Vec<_>>();
            for (r, v) in direct.iter().enumerate() {
                let b = bessel_i_scaled(BesselOrder::integer(r as u32), xi).unwrap();
                let a = p.series_scale();
                let s = p.gap();
                let want = ((a / s).powf(r as f64 / 2.0).ln() + b.ln() + xi - 30.2).exp();
                assert!(((v - want) / want).abs() < 1e-12, "r={r} u={u}");
            }
        }
    }

    /// Fourth-order accurate central differences of the kernel built from I_0.
    fn fd(params: &ModelParams, t: f64, u: f64, t_order: u32, u_order: u32, h: f64) -> f64 {
        let f = |dt: f64, du: f64| g(params, t + dt, u + du);
        let d1 = |f: &dyn Fn(f64) -> f64| (f(h) - f(-h)) / (2.0 * h);
        let d2 = |f: &dyn Fn(f64) -> f64| (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let d3 = |f: &dyn Fn(f64) -> f64| {
            (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h)
        };
        match (t_order, u_order) {
            (1, 0) => d1(&|x| f(x, 0.0)),
            (2, 0) => d2(&|x| f(x, 0.0)),
            (3, 0) => d3(&|x| f(x, 0.0)),
            (0, 1) => d1(&|x| f(0.0, x)),
            (0, 2) => d2(&|x| f(0.0, x)),
            (1, 1) => d1(&|x| d1(&|y| f(x, y))),
            (1, 2) => d1(&|x| d2(&|y| f(x, y))),
            _ => unreachable!(),
        }
    }

    #[test]
    fn derivatives_match_central_differences_at_second_order() {
        let params = ModelParams::new(1.3, 1.7, 2).unwrap();
        let (t, u) = (1.1, 0.6);
        let p = KernelPoint::new(params, t, u).unwrap();
        for &(a, b) in &[(1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (1, 1), (1, 2)] {
            let exact = kernel_derivative(&p, a, b).unwrap();
            let e1 = (fd(&params, t, u, a, b, 0.02) - exact).abs();
            let e2 = (fd(&params, t, u, a, b, 0.01) - exact).abs();
            let ratio = e1 / e2;
            assert!(
                (3.5..4.5).contains(&ratio),
                "orders ({a},{b}): errors {e1:e} {e2:e}, ratio {ratio}"
            );
        }
    }

    #[test]
    fn rejects_unsupported_requests() {
        let p = KernelPoint::new(unit(), 1.0, 0.3).unwrap();
        assert!(kernel_derivative(&p, 2, 1).is_err());
        assert!(kernel_derivative(&p, 0, 3).is_err());
        assert!(kernel_derivative(&p, 4, 0).is_err());
        assert!(KernelPoint::new(unit(), 1.0, 1.5).is_err());
        assert!(kernel_integral(&unit(), 1.0, 2, 3).is_err());
        assert!(kernel_integral(&unit(), 1.0, 0, 4).is_err());
    }

    #[test]
    fn tabulated_integrals() {
        let e = std::f64::consts::E;
        let i0 = kernel_integral(&unit(), 1.0, 0, 0).unwrap();
        assert!((i0 - 0.5 * (e - 1.0 / e)).abs() < 1e-14);
        assert!((i0 - 1.175201).abs() < 1e-6);
        let i1 = kernel_integral(&unit(), 1.0, 0, 1).unwrap();
        assert!((i1 - (0.5 * (e + 1.0 / e) - 1.0)).abs() < 1e-14);
        assert!((i1 - 0.543081).abs() < 1e-6);
    }

    #[test]
    fn general_moment_form_reduces_to_exponentials_at_m0() {
        let params = ModelParams::new(1.4, 0.8, 2).unwrap();
        let mi = MomentIntegrals::new(&params, 1.3, 0);
        for (order, general) in [mi.plain(), mi.first(), mi.second()]
            .into_iter()
            .enumerate()
        {
            let tab = kernel_integral_scaled(&params, 1.3, 0, order as u32).unwrap();
            assert!(((general - tab) / tab).abs() < 1e-13, "order {order}");
        }
    }
}
