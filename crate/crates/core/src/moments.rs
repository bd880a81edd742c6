//! Complex moment grids `E[(∓iX)^(-γ_k)]`, `γ_k = ρ + ikΔ`, from three estimators,
//! plus conversion between moment flavors and truncation guidance.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionSpec, Family, FundamentalStrip};
use crate::error::{Error, Result};
use crate::quad::{mellin_log, Estimate, Tolerance};
use crate::special::{gamma_modulus_asymptotic, signed_power_unchecked, ComplexOrder, Sign};

/// Line abscissa, step and half-width of the moment grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub rho: f64,
    pub delta: f64,
    pub m: usize,
    pub sign: Sign,
}

impl Default for GridParams {
    fn default() -> Self {
        Self { rho: 0.4, delta: 0.4, m: 10, sign: Sign::Minus }
    }
}

impl GridParams {
    pub fn new(rho: f64, delta: f64, m: usize, sign: Sign) -> Result<Self> {
        let p = Self { rho, delta, m, sign };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rho.is_finite() {
            return Err(Error::Argument(format!("rho must be finite, got {}", self.rho)));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::Argument(format!("delta must be positive, got {}", self.delta)));
        }
        if self.m < 1 {
            return Err(Error::Argument("m must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_sign(self, sign: Sign) -> Self {
        Self { sign, ..self }
    }

    pub fn with_m(self, m: usize) -> Self {
        Self { m, ..self }
    }

    /// `γ_k = ρ + ikΔ`.
    pub fn gamma(&self, k: i64) -> ComplexOrder {
        ComplexOrder::new(self.rho, k as f64 * self.delta)
    }

    pub fn ks(&self) -> std::ops::RangeInclusive<i64> {
        let m = self.m as i64;
        -m..=m
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        2 * self.m + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo(Vec<f64>),
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Quadrature => "quad",
            Method::MonteCarlo(_) => "mc",
        }
    }
}

/// `2m+1` moments indexed by `k = -m..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentGrid {
    params: GridParams,
    values: Vec<Complex64>,
}

impl MomentGrid {
    pub fn from_values(params: GridParams, values: Vec<Complex64>) -> Result<Self> {
        params.validate()?;
        if values.len() != params.len() {
            return Err(Error::Argument(format!("grid with m = {} needs {} values, got {}", params.m, params.len(), values.len())));
        }
        Ok(Self { params, values })
    }

    pub fn params(&self) -> &GridParams {
        &self.params
    }

    /// Values in order `k = -m, ..., m`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, k: i64) -> Complex64 {
        self.values[(k + self.params.m as i64) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, ComplexOrder, Complex64)> + '_ {
        self.params.ks().map(move |k| (k, self.params.gamma(k), self.value(k)))
    }

    /// The same moments as a grid of the opposite sign, using `E[(±iX)^(-γ̄)] = conj E[(∓iX)^(-γ)]`.
    pub fn conjugate_sign(&self) -> MomentGrid {
        let values = self.values.iter().rev().map(|v| v.conj()).collect();
        MomentGrid { params: self.params.with_sign(self.params.sign.flip()), values }
    }
}

/// Builds the moment grid with the chosen estimator.
pub fn make_grid(spec: &DistributionSpec, params: GridParams, method: &Method) -> Result<MomentGrid> {
    params.validate()?;
    let strip = spec.moment_strip().intersect(&FundamentalStrip { rho_lo: 0.0, rho_hi: f64::INFINITY })?;
    strip.check(params.rho)?;
    let values = params
        .ks()
        .map(|k| {
            let g = params.gamma(k);
            match method {
                Method::ClosedForm => spec.closed_form_moment(g, params.sign),
                Method::Quadrature => moment_quadrature(|x| spec.exact_pdf(x), spec.support(), g, params.sign),
                Method::MonteCarlo(samples) => moment_monte_carlo(samples, g, params.sign).map(|e| e.value),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentGrid { params, values })
}

fn quad_tolerance() -> Tolerance {
    Tolerance::new(1e-13, 1e-12)
}

/// `w₊ ∫₀^∞ x^q p(x) dx + w₋ ∫₀^∞ x^q p(-x) dx` over the part of `support` on each side.
fn two_sided_power_integral<P: Fn(f64) -> f64>(
    pdf: P,
    support: (f64, f64),
    q: Complex64,
    weights: (Complex64, Complex64),
) -> Result<Estimate> {
    let (lo, hi) = support;
    if !(lo < hi) {
        return Err(Error::Argument(format!("empty support [{lo}, {hi}]")));
    }
    let s = q + 1.0;
    let tol = quad_tolerance();
    let mut total = Estimate { value: Complex64::default(), error: 0.0 };
    if hi > 0.0 {
        total = total + mellin_log(&pdf, s, hi, tol)?.scale(weights.0);
    }
    if lo < 0.0 {
        total = total + mellin_log(|x| pdf(-x), s, -lo, tol)?.scale(weights.1);
    }
    Ok(total)
}

/// `E[(∓iX)^(-γ)]` by quadrature of the density, split at the origin.
pub fn moment_quadrature<P: Fn(f64) -> f64>(pdf: P, support: (f64, f64), gamma: impl Into<ComplexOrder>, sign: Sign) -> Result<Complex64> {
    signed_moment_quadrature(pdf, support, -gamma.into().to_complex(), sign)
}

/// `E[(∓iX)^q]` for any complex exponent `q` where the integral converges.
pub fn signed_moment_quadrature<P: Fn(f64) -> f64>(pdf: P, support: (f64, f64), q: Complex64, sign: Sign) -> Result<Complex64> {
    let w = (signed_power_unchecked(1.0, q, sign), signed_power_unchecked(-1.0, q, sign));
    Ok(two_sided_power_integral(pdf, support, q, w)?.value)
}

/// `E|X|^q` by quadrature.
pub fn absolute_moment_quadrature<P: Fn(f64) -> f64>(pdf: P, support: (f64, f64), q: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok(two_sided_power_integral(pdf, support, q, (one, one))?.value)
}

/// `E[X^q]` on the principal branch (`arg x = π` for `x < 0`) by quadrature.
pub fn plain_moment_quadrature<P: Fn(f64) -> f64>(pdf: P, support: (f64, f64), q: Complex64) -> Result<Complex64> {
    let neg = (Complex64::new(0.0, std::f64::consts::PI) * q).exp();
    Ok(two_sided_power_integral(pdf, support, q, (Complex64::new(1.0, 0.0), neg))?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub value: Complex64,
    pub stderr: f64,
    pub used: usize,
    pub dropped: usize,
}

/// Sample mean of `(∓ix_j)^(-γ)` with its standard error; exact zeros are dropped.
pub fn moment_monte_carlo(samples: &[f64], gamma: impl Into<ComplexOrder>, sign: Sign) -> Result<MonteCarloEstimate> {
    moment_monte_carlo_excluding(samples, gamma, sign, 0.0)
}

/// As [`moment_monte_carlo`], also dropping samples with `|x| < exclude`.
pub fn moment_monte_carlo_excluding(
    samples: &[f64],
    gamma: impl Into<ComplexOrder>,
    sign: Sign,
    exclude: f64,
) -> Result<MonteCarloEstimate> {
    if samples.is_empty() {
        return Err(Error::Argument("no samples".into()));
    }
    let g = -gamma.into().to_complex();
    let terms: Vec<Complex64> = samples
        .iter()
        .filter(|x| **x != 0.0 && x.abs() >= exclude && x.is_finite())
        .map(|&x| signed_power_unchecked(x, g, sign))
        .collect();
    let used = terms.len();
    let dropped = samples.len() - used;
    if used == 0 {
        return Err(Error::AllSamplesDegenerate);
    }
    if dropped > 0 {
        log::debug!("monte carlo: dropped {dropped} of {} samples", samples.len());
    }
    let n = used as f64;
    let mean = terms.iter().sum::<Complex64>() / n;
    let stderr = if used > 1 {
        (terms.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (n * (n - 1.0))).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(MonteCarloEstimate { value: mean, stderr, used, dropped })
}

/// Moment flavors related by the sign-splitting identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// `E[(+iX)^q]`
    SignedPlus,
    /// `E[(-iX)^q]`
    SignedMinus,
    /// `E[X^q]`, principal branch
    Plain,
    /// `E|X|^q`
    Absolute,
}

impl Flavor {
    pub fn signed(sign: Sign) -> Flavor {
        match sign {
            Sign::Plus => Flavor::SignedPlus,
            Sign::Minus => Flavor::SignedMinus,
        }
    }
}

/// Converts between moment flavors of the same exponent `q`.
///
/// With `P = E[X^q]` and `A = E|X|^q`:
/// `E[(-iX)^q] = i^(-q) P` and `E[(+iX)^q] = 2cos(πq/2) A - i^(-q) P`.
/// Use `q = -γ` for the negative-order moments. Fails if `known` does not determine `to`.
pub fn convert_moment(known: &[(Flavor, Complex64)], to: Flavor, q: impl Into<ComplexOrder>) -> Result<Complex64> {
    let q = q.into().to_complex();
    let find = |f: Flavor| known.iter().find(|(k, _)| *k == f).map(|(_, v)| *v);
    let i_pow_minus_q = (Complex64::new(0.0, -FRAC_PI_2) * q).exp();
    let two_cos = 2.0 * (FRAC_PI_2 * q).cos();

    let plain = find(Flavor::Plain).or_else(|| find(Flavor::SignedMinus).map(|s| s / i_pow_minus_q));
    let absolute = find(Flavor::Absolute).or_else(|| {
        let (sp, p) = (find(Flavor::SignedPlus)?, plain?);
        (two_cos.norm() > 1e-300).then(|| (sp + i_pow_minus_q * p) / two_cos)
    });
    let missing = || Error::Argument(format!("inputs {:?} do not determine {to:?}", known.iter().map(|k| k.0).collect::<Vec<_>>()));
    match to {
        Flavor::Plain => plain.ok_or_else(missing),
        Flavor::Absolute => absolute.ok_or_else(missing),
        Flavor::SignedMinus => plain.map(|p| i_pow_minus_q * p).ok_or_else(missing),
        Flavor::SignedPlus => match (absolute, plain) {
            (Some(a), Some(p)) => Ok(two_cos * a - i_pow_minus_q * p),
            _ => Err(missing()),
        },
    }
}

/// Line abscissas guaranteed usable for reconstruction.
///
/// The moment strip intersected with `(0, 1)`; Gaussian characteristic functions decay fast
/// enough that every `ρ > 0` is admissible on the Mellin side.
pub fn working_strip(spec: &DistributionSpec) -> Result<FundamentalStrip> {
    if spec.family() == Family::Gaussian {
        return FundamentalStrip::new(0.0, f64::INFINITY);
    }
    spec.moment_strip().intersect(&FundamentalStrip { rho_lo: 0.0, rho_hi: 1.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub m: usize,
    /// `tol` was not reached below the cap.
    pub capped: bool,
}

pub const TRUNCATION_CAP: usize = 10_000;

/// Smallest `m` with `|Γ(ρ+imΔ)| · max_{|k|≤m} |E[(∓iX)^(-γ_k)]| ≤ tol`, using the Stirling
/// envelope for `|Γ|` and the closed-form moments at the grid endpoints.
pub fn suggest_truncation(spec: &DistributionSpec, rho: f64, delta: f64, sign: Sign, tol: f64) -> Result<Truncation> {
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    GridParams::new(rho, delta, 1, sign)?;
    let mut envelope: f64 = 1.0;
    for m in 1..=TRUNCATION_CAP {
        let eta = m as f64 * delta;
        for e in [eta, -eta] {
            let v = spec.closed_form_moment(ComplexOrder::new(rho, e), sign)?;
            envelope = envelope.max(v.norm());
        }
        if gamma_modulus_asymptotic(rho, eta) * envelope <= tol {
            return Ok(Truncation { m, capped: false });
        }
    }
    log::warn!("truncation tolerance {tol} not reached for {spec}; capping at m = {TRUNCATION_CAP}");
    Ok(Truncation { m: TRUNCATION_CAP, capped: true })
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "signed_plus" => Ok(Flavor::SignedPlus),
            "signed_minus" => Ok(Flavor::SignedMinus),
            "plain" => Ok(Flavor::Plain),
            "absolute" => Ok(Flavor::Absolute),
            other => Err(Error::Parse(format!("unknown moment flavor '{other}'"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::SignedPlus => "signed_plus",
            Flavor::SignedMinus => "signed_minus",
            Flavor::Plain => "plain",
            Flavor::Absolute => "absolute",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn cauchy_closed_form_grid_is_all_ones() {
        let p = GridParams::new(0.4, 0.4, 5, Sign::Minus).unwrap();
        let g = make_grid(&DistributionSpec::cauchy(), p, &Method::ClosedForm).unwrap();
        assert_eq!(g.values().len(), 11);
        assert!(g.values().iter().all(|v| *v == one()));
    }

    #[test]
    fn estimators_agree_on_default_grid() {
        let p = GridParams::default();
        for spec in DistributionSpec::catalog() {
            for sign in [Sign::Plus, Sign::Minus] {
                let p = p.with_sign(sign);
                let a = make_grid(&spec, p, &Method::ClosedForm).unwrap();
                let b = make_grid(&spec, p, &Method::Quadrature).unwrap();
                for (k, _, v) in a.iter() {
                    assert!(close(b.value(k), v, 1e-6), "{spec} {sign} k={k}: {} vs {v}", b.value(k));
                }
            }
        }
    }

    #[test]
    fn degenerate_samples_give_the_constant_moment() {
        let p = GridParams::new(0.4, 0.4, 3, Sign::Minus).unwrap();
        let g = make_grid(&DistributionSpec::cauchy(), p, &Method::MonteCarlo(vec![1.0; 7])).unwrap();
        for (_, gamma, v) in g.iter() {
            let want = signed_power_unchecked(1.0, -gamma.to_complex(), Sign::Minus);
            assert!(close(v, want, 1e-15));
        }
        let e = moment_monte_carlo(&[1.0; 4], 0.5, Sign::Minus).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.value - Complex64::new(h, h)).norm() < 1e-15);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn monte_carlo_drops_zeros() {
        let e = moment_monte_carlo(&[0.0, 2.0, 0.0, 2.0], 0.5, Sign::Plus).unwrap();
        assert_eq!((e.used, e.dropped), (2, 2));
        assert!(matches!(moment_monte_carlo(&[0.0, 0.0], 0.5, Sign::Plus), Err(Error::AllSamplesDegenerate)));
        let e = moment_monte_carlo_excluding(&[0.01, 2.0, -3.0], 0.5, Sign::Plus, 0.1).unwrap();
        assert_eq!((e.used, e.dropped), (2, 1));
    }

    #[test]
    fn quadrature_examples() {
        let u = DistributionSpec::uniform(2.0).unwrap();
        let v = moment_quadrature(|x| u.exact_pdf(x), u.support(), 0.5, Sign::Minus).unwrap();
        assert!(close(v, one(), 1e-12), "{v}");
        let g = DistributionSpec::gaussian(0.0, 1.0).unwrap();
        let v = moment_quadrature(|x| g.exact_pdf(x), g.support(), 0.0, Sign::Plus).unwrap();
        assert!(close(v, one(), 1e-12));
        let r = DistributionSpec::rayleigh(2.0).unwrap();
        let v = moment_quadrature(|x| r.exact_pdf(x), r.support(), 0.4, Sign::Minus).unwrap();
        assert!(close(v, r.closed_form_moment(0.4, Sign::Minus).unwrap(), 1e-10));
    }

    #[test]
    fn strip_is_enforced() {
        let p = GridParams::new(1.2, 0.4, 2, Sign::Minus).unwrap();
        assert!(matches!(make_grid(&DistributionSpec::cauchy(), p, &Method::ClosedForm), Err(Error::Strip { .. })));
        let p = GridParams::new(-0.2, 0.4, 2, Sign::Minus).unwrap();
        assert!(matches!(make_grid(&DistributionSpec::levy(), p, &Method::ClosedForm), Err(Error::Strip { .. })));
        let p = GridParams::new(1.5, 0.4, 2, Sign::Minus).unwrap();
        assert!(make_grid(&DistributionSpec::rayleigh(2.0).unwrap(), p, &Method::ClosedForm).is_ok());
        assert!(GridParams::new(0.4, 0.0, 2, Sign::Minus).is_err());
        assert!(GridParams::new(0.4, 0.4, 0, Sign::Minus).is_err());
    }

    #[test]
    fn cauchy_plain_moment_by_inversion() {
        // E[(-iX)^(-γ)] = 1 gives E[X^(-γ)] = i^(-γ)
        let g = ComplexOrder::new(0.4, 0.8);
        let q = -g.to_complex();
        let p = convert_moment(&[(Flavor::SignedMinus, one())], Flavor::Plain, q).unwrap();
        let want = (Complex64::new(0.0, -FRAC_PI_2) * g.to_complex()).exp();
        assert!(close(p, want, 1e-15));
        // and by quadrature of the density
        let c = DistributionSpec::cauchy();
        let direct = plain_moment_quadrature(|x| c.exact_pdf(x), c.support(), q).unwrap();
        assert!(close(direct, want, 1e-10), "{direct} vs {want}");
    }

    #[test]
    fn identities_at_zero_order() {
        for to in [Flavor::SignedPlus, Flavor::SignedMinus, Flavor::Plain, Flavor::Absolute] {
            let v = convert_moment(&[(Flavor::Plain, one()), (Flavor::Absolute, one())], to, 0.0).unwrap();
            assert!(close(v, one(), 1e-15));
        }
    }

    #[test]
    fn insufficient_inputs_are_rejected() {
        let r = convert_moment(&[(Flavor::Plain, one())], Flavor::SignedPlus, 0.3);
        assert!(matches!(r, Err(Error::Argument(_))));
    }

    #[test]
    fn identities_hold_against_quadrature() {
        // every flavor computed independently by quadrature, at negative and positive orders
        let tol = 1e-9;
        for spec in [DistributionSpec::gaussian(2.0, 1.0).unwrap(), DistributionSpec::uniform(2.0).unwrap(), DistributionSpec::rayleigh(2.0).unwrap()] {
            let pdf = |x: f64| spec.exact_pdf(x);
            for q in [Complex64::new(-0.4, 0.8), Complex64::new(-0.4, -1.6), Complex64::new(0.5, 0.0), Complex64::new(0.3, 1.1)] {
                let p = plain_moment_quadrature(pdf, spec.support(), q).unwrap();
                let a = absolute_moment_quadrature(pdf, spec.support(), q).unwrap();
                for sign in [Sign::Plus, Sign::Minus] {
                    let direct = signed_moment_quadrature(pdf, spec.support(), q, sign).unwrap();
                    let via = convert_moment(&[(Flavor::Plain, p), (Flavor::Absolute, a)], Flavor::signed(sign), q).unwrap();
                    assert!(close(via, direct, tol), "{spec} q={q} {sign}: {via} vs {direct}");
                }
            }
        }
    }

    #[test]
    fn working_strips() {
        let unit = FundamentalStrip { rho_lo: 0.0, rho_hi: 1.0 };
        assert_eq!(working_strip(&DistributionSpec::cauchy()).unwrap(), unit);
        assert_eq!(working_strip(&DistributionSpec::levy()).unwrap(), unit);
        assert!(working_strip(&DistributionSpec::levy()).unwrap().contains(0.9));
        let g = working_strip(&DistributionSpec::gaussian(0.0, 1.0).unwrap()).unwrap();
        assert_eq!((g.rho_lo, g.rho_hi), (0.0, f64::INFINITY));
    }

    #[test]
    fn truncation_examples() {
        // frozen from a sweep with the exact |Γ(0.4+iη)| times the moment envelope
        let g = suggest_truncation(&DistributionSpec::gaussian(0.0, 1.0).unwrap(), 0.4, 0.4, Sign::Minus, 1e-8).unwrap();
        assert!((57..=59).contains(&g.m), "{g:?}");
        let c = suggest_truncation(&DistributionSpec::cauchy(), 0.4, 0.4, Sign::Minus, 1e-6).unwrap();
        assert!((23..=25).contains(&c.m), "{c:?}");
        assert!(!c.capped);
        let loose = suggest_truncation(&DistributionSpec::cauchy(), 0.4, 0.4, Sign::Minus, 1.0).unwrap();
        assert!(loose.m >= 1);
        assert!(suggest_truncation(&DistributionSpec::cauchy(), 0.4, 0.4, Sign::Minus, 0.0).is_err());
    }

    #[test]
    fn uniform_truncation_is_capped() {
        // |Γ| decay only cancels the exponential moment growth; the remainder is algebraic
        let t = suggest_truncation(&DistributionSpec::uniform(2.0).unwrap(), 0.4, 0.4, Sign::Minus, 1e-12).unwrap();
        assert!(t.capped && t.m == TRUNCATION_CAP);
    }

    #[test]
    fn conjugate_sign_grid() {
        let spec = DistributionSpec::rayleigh(2.0).unwrap();
        let p = GridParams::new(0.4, 0.4, 4, Sign::Minus).unwrap();
        let minus = make_grid(&spec, p, &Method::ClosedForm).unwrap();
        let plus = make_grid(&spec, p.with_sign(Sign::Plus), &Method::ClosedForm).unwrap();
        for (k, _, v) in minus.conjugate_sign().iter() {
            assert!(close(v, plus.value(k), 1e-14));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn symmetric_grids_are_conjugate_symmetric(rho in 0.05f64..0.95, delta in 0.05f64..0.8, which in 0usize..3, plus: bool) {
            let spec = [DistributionSpec::uniform(2.0).unwrap(), DistributionSpec::cauchy(), DistributionSpec::gaussian(0.0, 1.0).unwrap()][which];
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            let g = make_grid(&spec, GridParams::new(rho, delta, 6, sign).unwrap(), &Method::ClosedForm).unwrap();
            for k in 1..=6 {
                prop_assert!((g.value(-k) - g.value(k).conj()).norm() <= 1e-10 * (1.0 + g.value(k).norm()));
            }
        }

        #[test]
        fn nonnegative_support_plain_identity(rho in 0.05f64..0.95, eta in -3.0f64..3.0, rayleigh: bool) {
            // for X ≥ 0: E[(-iX)^(-γ)] = i^γ E[X^(-γ)], both sides by independent quadrature
            let spec = if rayleigh { DistributionSpec::rayleigh(2.0).unwrap() } else { DistributionSpec::levy() };
            let g = ComplexOrder::new(rho, eta);
            let q = -g.to_complex();
            let pdf = |x: f64| spec.exact_pdf(x);
            let lhs = moment_quadrature(pdf, spec.support(), g, Sign::Minus).unwrap();
            let p = plain_moment_quadrature(pdf, spec.support(), q).unwrap();
            let rhs = (Complex64::new(0.0, FRAC_PI_2) * g.to_complex()).exp() * p;
            prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()));
        }
    }
}
