//! Fractional integrals and derivatives of a characteristic function, evaluated by
//! direct quadrature. At `θ = 0` they reproduce the complex moments, which makes them
//! an independent check on the moment estimators.
//!
//! Pairings (for `φ(θ) = E[e^{iθX}]`):
//! * `(I₊^γ φ)(0) = E[(+iX)^(-γ)]`, `(I₋^γ φ)(0) = E[(-iX)^(-γ)]`
//! * `(D₊^γ φ)(0) = E[(+iX)^γ]`, `(D₋^γ φ)(0) = E[(-iX)^γ]` (Marchaud form)
//! * Riesz derivative `= -E|X|^γ`, Riesz integral `= E|X|^(-γ)`

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result, POLE_TOLERANCE};
use crate::moments::{absolute_moment_quadrature, signed_moment_quadrature, GridParams};
use crate::quad::{integrate, integrate_tail, mellin_half_line, Tolerance};
use crate::special::{complex_gamma, ComplexOrder, Sign};

/// Left (`+`, integrating over `t < x`) or right (`-`) operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    /// The moment sign an operator of this side produces at the origin.
    pub fn sign(self) -> Sign {
        match self {
            Side::Plus => Sign::Plus,
            Side::Minus => Sign::Minus,
        }
    }

    /// Direction in which the operator reaches from the evaluation point.
    fn step(self) -> f64 {
        match self {
            Side::Plus => -1.0,
            Side::Minus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    RLIntegralPlus,
    RLIntegralMinus,
    MarchaudPlus,
    MarchaudMinus,
    RieszDerivative,
    RieszIntegral,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 6] = [
        OperatorKind::RLIntegralPlus,
        OperatorKind::RLIntegralMinus,
        OperatorKind::MarchaudPlus,
        OperatorKind::MarchaudMinus,
        OperatorKind::RieszDerivative,
        OperatorKind::RieszIntegral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::RLIntegralPlus => "rl_integral_plus",
            OperatorKind::RLIntegralMinus => "rl_integral_minus",
            OperatorKind::MarchaudPlus => "marchaud_plus",
            OperatorKind::MarchaudMinus => "marchaud_minus",
            OperatorKind::RieszDerivative => "riesz_derivative",
            OperatorKind::RieszIntegral => "riesz_integral",
        }
    }

    /// Evaluates the operator on `cf` at the origin.
    pub fn apply_at_zero<F: Fn(f64) -> Complex64>(self, cf: F, gamma: impl Into<ComplexOrder>) -> Result<Complex64> {
        let g = gamma.into();
        match self {
            OperatorKind::RLIntegralPlus => rl_integral_at_zero(cf, g, Side::Plus),
            OperatorKind::RLIntegralMinus => rl_integral_at_zero(cf, g, Side::Minus),
            OperatorKind::MarchaudPlus => marchaud_derivative_at_zero(cf, g, Side::Plus),
            OperatorKind::MarchaudMinus => marchaud_derivative_at_zero(cf, g, Side::Minus),
            OperatorKind::RieszDerivative => riesz_derivative_at_zero(cf, g),
            OperatorKind::RieszIntegral => riesz_integral_at_zero(cf, g),
        }
    }

    /// The moment the operator should reproduce at the origin, by quadrature of the density.
    pub fn moment_counterpart(self, spec: &DistributionSpec, gamma: impl Into<ComplexOrder>) -> Result<Complex64> {
        let g = gamma.into().to_complex();
        let pdf = |x: f64| spec.exact_pdf(x);
        let support = spec.support();
        match self {
            OperatorKind::RLIntegralPlus => signed_moment_quadrature(pdf, support, -g, Sign::Plus),
            OperatorKind::RLIntegralMinus => signed_moment_quadrature(pdf, support, -g, Sign::Minus),
            OperatorKind::MarchaudPlus => signed_moment_quadrature(pdf, support, g, Sign::Plus),
            OperatorKind::MarchaudMinus => signed_moment_quadrature(pdf, support, g, Sign::Minus),
            OperatorKind::RieszDerivative => absolute_moment_quadrature(pdf, support, g).map(|v| -v),
            OperatorKind::RieszIntegral => absolute_moment_quadrature(pdf, support, -g),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown operator '{s}'")))
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const TOL: Tolerance = Tolerance::new(1e-11, 1e-11);

fn check_unit_strip(gamma: ComplexOrder) -> Result<()> {
    if !gamma.is_finite() {
        return Err(Error::Domain(format!("non-finite order {gamma:?}")));
    }
    if gamma.rho > 0.0 && gamma.rho < 1.0 {
        Ok(())
    } else {
        Err(Error::Strip { rho: gamma.rho, lo: 0.0, hi: 1.0 })
    }
}

/// `∫₀^∞ ξ^(γ-1) f(±ξ) dξ`, with `Side::Plus` reading `f(+ξ)`.
///
/// Equals `Γ(γ) (I∓^γ f)(0)`: the plus transform pairs with the right-sided integral.
pub fn mellin_forward<F: Fn(f64) -> Complex64>(f: F, gamma: impl Into<ComplexOrder>, side: Side) -> Result<Complex64> {
    let g = gamma.into();
    if !g.is_finite() {
        return Err(Error::Domain(format!("non-finite order {g:?}")));
    }
    if g.rho <= 0.0 {
        return Err(Error::Strip { rho: g.rho, lo: 0.0, hi: f64::INFINITY });
    }
    let dir = -side.step();
    Ok(mellin_half_line(|x| f(dir * x), g.to_complex(), TOL)?.value)
}

fn rl_integral_at<F: Fn(f64) -> Complex64>(f: F, x: f64, gamma: Complex64, side: Side) -> Result<Complex64> {
    let step = side.step();
    let m = mellin_half_line(|xi| f(x + step * xi), gamma, TOL)?.value;
    Ok(m / complex_gamma(gamma)?)
}

/// `(I±^γ f)(0) = Γ(γ)^(-1) ∫₀^∞ ξ^(γ-1) f(∓ξ) dξ` for `0 < Re γ < 1`.
pub fn rl_integral_at_zero<F: Fn(f64) -> Complex64>(cf: F, gamma: impl Into<ComplexOrder>, side: Side) -> Result<Complex64> {
    let g = gamma.into();
    check_unit_strip(g)?;
    rl_integral_at(cf, 0.0, g.to_complex(), side)
}

/// Marchaud derivative `(D±^γ f)(0) = γ/Γ(1-γ) ∫₀^∞ (f(0) - f(∓ξ)) ξ^(-1-γ) dξ`, `0 < Re γ < 1`.
///
/// The difference `f(0) - f(∓ξ)` loses all its digits as `ξ → 0`, so the innermost piece
/// is replaced by a fitted power law `C ξ^α` and integrated analytically.
pub fn marchaud_derivative_at_zero<F: Fn(f64) -> Complex64>(cf: F, gamma: impl Into<ComplexOrder>, side: Side) -> Result<Complex64> {
    let order = gamma.into();
    check_unit_strip(order)?;
    let g = order.to_complex();
    let step = side.step();
    let f0 = cf(0.0);
    let diff = |xi: f64| f0 - cf(step * xi);

    let mut eps = 0.1;
    while diff(eps).norm() > 1e-8 && eps > 1e-250 {
        eps *= 0.1;
    }
    let (d1, d2) = (diff(eps), diff(eps / 2.0));
    let inner = if d1.norm() == 0.0 || d2.norm() == 0.0 {
        Complex64::default()
    } else {
        let alpha = (d1.norm() / d2.norm()).ln() / std::f64::consts::LN_2;
        let expo = alpha - g;
        if expo.re <= 0.0 {
            return Err(Error::Domain(format!(
                "f(0) - f(ξ) ~ ξ^{alpha:.3} is too rough for a derivative of order {}",
                g.re
            )));
        }
        let c = d1 / eps.powf(alpha);
        c * Complex64::new(eps, 0.0).powc(expo) / expo
    };
    // ξ = e^{-u} on [ε, 1]
    let middle = integrate(|u| diff((-u).exp()) * (g * u).exp(), 0.0, -eps.ln(), TOL)?.value;
    let gp1 = g + 1.0;
    let tail = integrate_tail(|xi| cf(step * xi) * (-gp1 * xi.ln()).exp(), 1.0, TOL)?.value;
    let bracket = inner + middle + f0 / g - tail;
    Ok(g / complex_gamma(1.0 - g)? * bracket)
}

fn riesz_normalizer(g: Complex64) -> Result<Complex64> {
    let c = 2.0 * (FRAC_PI_2 * g).cos();
    if c.norm() < POLE_TOLERANCE {
        return Err(Error::Pole(format!("cos(γπ/2) vanishes at γ = {g}")));
    }
    Ok(c)
}

/// `-(D₊^γ f + D₋^γ f)(0) / (2cos(γπ/2))`; on a characteristic function this is `-E|X|^γ`.
pub fn riesz_derivative_at_zero<F: Fn(f64) -> Complex64>(cf: F, gamma: impl Into<ComplexOrder>) -> Result<Complex64> {
    let g = gamma.into();
    check_unit_strip(g)?;
    let c = riesz_normalizer(g.to_complex())?;
    let plus = marchaud_derivative_at_zero(&cf, g, Side::Plus)?;
    let minus = marchaud_derivative_at_zero(&cf, g, Side::Minus)?;
    Ok(-(plus + minus) / c)
}

/// `(I₊^γ f + I₋^γ f)(0) / (2cos(γπ/2))`; on a characteristic function this is `E|X|^(-γ)`.
pub fn riesz_integral_at_zero<F: Fn(f64) -> Complex64>(cf: F, gamma: impl Into<ComplexOrder>) -> Result<Complex64> {
    let g = gamma.into();
    check_unit_strip(g)?;
    let c = riesz_normalizer(g.to_complex())?;
    let plus = rl_integral_at_zero(&cf, g, Side::Plus)?;
    let minus = rl_integral_at_zero(&cf, g, Side::Minus)?;
    Ok((plus + minus) / c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositionReport {
    /// `(x, nested I^γ1 I^γ2 f, direct I^(γ1+γ2) f)` per evaluation point.
    pub points: Vec<(f64, Complex64, Complex64)>,
    pub max_deviation: f64,
}

/// Compares `I^γ1 (I^γ2 f)` with `I^(γ1+γ2) f` at each point in `xs`.
///
/// Zero orders are the identity operator.
pub fn composition_check<F: Fn(f64) -> Complex64>(
    gamma1: impl Into<ComplexOrder>,
    gamma2: impl Into<ComplexOrder>,
    f: F,
    side: Side,
    xs: &[f64],
) -> Result<CompositionReport> {
    let (g1, g2) = (gamma1.into(), gamma2.into());
    for g in [g1, g2] {
        if !g.is_finite() || g.rho < 0.0 || (g.rho == 0.0 && g.eta != 0.0) {
            return Err(Error::Domain(format!("composition needs Re γ > 0 or γ = 0, got {g:?}")));
        }
    }
    let sum = ComplexOrder::new(g1.rho + g2.rho, g1.eta + g2.eta);
    if sum.rho >= 1.0 {
        return Err(Error::Strip { rho: sum.rho, lo: 0.0, hi: 1.0 });
    }
    let is_zero = |g: ComplexOrder| g.rho == 0.0 && g.eta == 0.0;
    let apply = |h: &dyn Fn(f64) -> Complex64, x: f64, g: ComplexOrder| -> Result<Complex64> {
        if is_zero(g) {
            Ok(h(x))
        } else {
            rl_integral_at(h, x, g.to_complex(), side)
        }
    };

    let mut points = Vec::with_capacity(xs.len());
    let mut max_deviation: f64 = 0.0;
    for &x in xs {
        let direct = apply(&f, x, sum)?;
        let nested = if is_zero(g2) {
            apply(&f, x, g1)?
        } else if is_zero(g1) {
            apply(&f, x, g2)?
        } else {
            // the inner operator is re-evaluated wherever the outer quadrature samples it
            let failure = std::cell::Cell::new(None);
            let inner = |y: f64| match rl_integral_at(&f, y, g2.to_complex(), side) {
                Ok(v) => v,
                Err(e) => {
                    failure.set(Some(e));
                    Complex64::default()
                }
            };
            let v = rl_integral_at(inner, x, g1.to_complex(), side)?;
            if let Some(e) = failure.take() {
                return Err(e);
            }
            v
        };
        max_deviation = max_deviation.max((nested - direct).norm());
        points.push((x, nested, direct));
    }
    Ok(CompositionReport { points, max_deviation })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub operator: OperatorKind,
    pub gamma: ComplexOrder,
    pub operator_value: Complex64,
    pub moment: Complex64,
    pub rel_deviation: f64,
}

impl OperatorKind {
    /// Whether the moment this operator reproduces exists at `Re γ = rho`.
    fn admits(self, spec: &DistributionSpec, rho: f64) -> bool {
        let strip = spec.moment_strip();
        match self {
            OperatorKind::RLIntegralPlus | OperatorKind::RLIntegralMinus | OperatorKind::RieszIntegral => strip.contains(rho),
            OperatorKind::MarchaudPlus | OperatorKind::MarchaudMinus | OperatorKind::RieszDerivative => strip.contains(-rho),
        }
    }
}

/// Each operator applied to the exact CF at the origin against its moment by
/// density quadrature, for every order of `params` inside `(0, 1)` where that
/// moment exists.
pub fn identity_suite(spec: &DistributionSpec, params: &GridParams) -> Result<Vec<IdentityCheck>> {
    params.validate()?;
    let cf = |t: f64| spec.exact_cf(t);
    let mut out = Vec::new();
    for op in OperatorKind::ALL {
        if params.rho <= 0.0 || params.rho >= 1.0 || !op.admits(spec, params.rho) {
            continue;
        }
        for k in params.ks() {
            let gamma = params.gamma(k);
            let operator_value = op.apply_at_zero(cf, gamma)?;
            let moment = op.moment_counterpart(spec, gamma)?;
            let rel_deviation = (operator_value - moment).norm() / moment.norm();
            out.push(IdentityCheck { operator: op, gamma, operator_value, moment, rel_deviation });
        }
    }
    Ok(out)
}
