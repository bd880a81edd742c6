//! The five test distributions: exact density, exact characteristic function,
//! closed-form complex moments `E[(∓iX)^(-γ)]` and the strip where those exist.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Cauchy as CauchyDist, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{mellin_log, Tolerance};
use crate::special::{complex_gamma, dawson, ln_gamma, signed_power_unchecked, ComplexOrder, Sign};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Uniform,
    Rayleigh,
    Cauchy,
    Levy,
    Gaussian,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Uniform, Family::Rayleigh, Family::Cauchy, Family::Levy, Family::Gaussian];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Rayleigh => "rayleigh",
            Family::Cauchy => "cauchy",
            Family::Levy => "levy",
            Family::Gaussian => "gaussian",
        }
    }

    fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Uniform => &["a"],
            Family::Rayleigh => &["sigma"],
            Family::Cauchy | Family::Levy => &[],
            Family::Gaussian => &["mu", "sigma"],
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}' (expected uniform|rayleigh|cauchy|levy|gaussian)")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Open interval `(rho_lo, rho_hi)` of admissible `Re γ`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalStrip {
    pub rho_lo: f64,
    pub rho_hi: f64,
}

impl FundamentalStrip {
    pub fn new(rho_lo: f64, rho_hi: f64) -> Result<Self> {
        if rho_lo.is_nan() || rho_hi.is_nan() || rho_lo >= rho_hi {
            return Err(Error::EmptyStrip(format!("({rho_lo}, {rho_hi})")));
        }
        Ok(Self { rho_lo, rho_hi })
    }

    pub fn contains(&self, rho: f64) -> bool {
        rho > self.rho_lo && rho < self.rho_hi
    }

    pub fn intersect(&self, other: &FundamentalStrip) -> Result<FundamentalStrip> {
        FundamentalStrip::new(self.rho_lo.max(other.rho_lo), self.rho_hi.min(other.rho_hi))
    }

    pub fn check(&self, rho: f64) -> Result<()> {
        if self.contains(rho) {
            Ok(())
        } else {
            Err(Error::Strip { rho, lo: self.rho_lo, hi: self.rho_hi })
        }
    }
}

impl fmt::Display for FundamentalStrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |v: f64| match v {
            f64::INFINITY => "∞".to_string(),
            f64::NEG_INFINITY => "−∞".to_string(),
            v => v.to_string(),
        };
        write!(f, "({}, {})", end(self.rho_lo), end(self.rho_hi))
    }
}

/// Family parameters. Cauchy and Lévy are standardized (location 0, scale 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Params {
    Uniform { a: f64 },
    Rayleigh { sigma: f64 },
    Cauchy,
    Levy,
    Gaussian { mu: f64, sigma: f64 },
}

/// A validated catalog distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    params: Params,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    family: String,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

impl DistributionSpec {
    pub fn new(params: Params) -> Result<Self> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Argument(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match params {
            Params::Uniform { a } => positive("a", a)?,
            Params::Rayleigh { sigma } => positive("sigma", sigma)?,
            Params::Gaussian { mu, sigma } => {
                positive("sigma", sigma)?;
                if !mu.is_finite() {
                    return Err(Error::Argument(format!("mu must be finite, got {mu}")));
                }
            }
            Params::Cauchy | Params::Levy => {}
        }
        Ok(Self { params })
    }

    pub fn uniform(a: f64) -> Result<Self> {
        Self::new(Params::Uniform { a })
    }

    pub fn rayleigh(sigma: f64) -> Result<Self> {
        Self::new(Params::Rayleigh { sigma })
    }

    pub fn cauchy() -> Self {
        Self { params: Params::Cauchy }
    }

    pub fn levy() -> Self {
        Self { params: Params::Levy }
    }

    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        Self::new(Params::Gaussian { mu, sigma })
    }

    /// Uniform(a=2), Rayleigh(σ=2), Cauchy, Lévy, Gaussian(μ=2, σ=1).
    pub fn catalog() -> [DistributionSpec; 5] {
        [
            Self { params: Params::Uniform { a: 2.0 } },
            Self { params: Params::Rayleigh { sigma: 2.0 } },
            Self::cauchy(),
            Self::levy(),
            Self { params: Params::Gaussian { mu: 2.0, sigma: 1.0 } },
        ]
    }

    /// Builds a spec from a family and named parameters; missing or unknown names are errors.
    pub fn from_parts(family: Family, params: &BTreeMap<String, f64>) -> Result<Self> {
        let allowed = family.param_names();
        if let Some(unknown) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown parameter '{unknown}' for {family} (allowed: {allowed:?})")));
        }
        let get = |name: &str| {
            params.get(name).copied().ok_or_else(|| Error::Parse(format!("{family} requires parameter '{name}'")))
        };
        let p = match family {
            Family::Uniform => Params::Uniform { a: get("a")? },
            Family::Rayleigh => Params::Rayleigh { sigma: get("sigma")? },
            Family::Cauchy => Params::Cauchy,
            Family::Levy => Params::Levy,
            Family::Gaussian => Params::Gaussian { mu: get("mu")?, sigma: get("sigma")? },
        };
        Self::new(p)
    }

    /// Parses `{"family": "...", "params": {...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_parts(raw.family.parse()?, &raw.params)
    }

    pub fn to_json(&self) -> String {
        let params: BTreeMap<&str, f64> = self.named_params().into_iter().collect();
        serde_json::json!({ "family": self.family(), "params": params }).to_string()
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn family(&self) -> Family {
        match self.params {
            Params::Uniform { .. } => Family::Uniform,
            Params::Rayleigh { .. } => Family::Rayleigh,
            Params::Cauchy => Family::Cauchy,
            Params::Levy => Family::Levy,
            Params::Gaussian { .. } => Family::Gaussian,
        }
    }

    pub fn named_params(&self) -> Vec<(&'static str, f64)> {
        match self.params {
            Params::Uniform { a } => vec![("a", a)],
            Params::Rayleigh { sigma } => vec![("sigma", sigma)],
            Params::Cauchy | Params::Levy => vec![],
            Params::Gaussian { mu, sigma } => vec![("mu", mu), ("sigma", sigma)],
        }
    }

    /// Range of `Re γ` for which `E[(∓iX)^(-γ)]` is finite.
    pub fn moment_strip(&self) -> FundamentalStrip {
        let (lo, hi) = match self.params {
            Params::Uniform { .. } => (f64::NEG_INFINITY, 1.0),
            Params::Rayleigh { .. } => (f64::NEG_INFINITY, 2.0),
            Params::Cauchy => (-1.0, 1.0),
            Params::Levy => (-0.5, f64::INFINITY),
            // bounded nonzero density at the origin
            Params::Gaussian { .. } => (f64::NEG_INFINITY, 1.0),
        };
        FundamentalStrip { rho_lo: lo, rho_hi: hi }
    }

    /// Closed interval containing the support.
    pub fn support(&self) -> (f64, f64) {
        match self.params {
            Params::Uniform { a } => (-a, a),
            Params::Rayleigh { .. } | Params::Levy => (0.0, f64::INFINITY),
            Params::Cauchy | Params::Gaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.params, Params::Uniform { .. } | Params::Cauchy) || matches!(self.params, Params::Gaussian { mu, .. } if mu == 0.0)
    }

    pub fn exact_pdf(&self, x: f64) -> f64 {
        match self.params {
            Params::Uniform { a } => {
                if x.abs() <= a {
                    0.5 / a
                } else {
                    0.0
                }
            }
            Params::Rayleigh { sigma } => {
                if x > 0.0 {
                    let s2 = sigma * sigma;
                    x / s2 * (-x * x / (2.0 * s2)).exp()
                } else {
                    0.0
                }
            }
            Params::Cauchy => 1.0 / (PI * (1.0 + x * x)),
            Params::Levy => {
                if x > 0.0 {
                    FRAC_1_SQRT_2PI * x.powf(-1.5) * (-0.5 / x).exp()
                } else {
                    0.0
                }
            }
            Params::Gaussian { mu, sigma } => {
                let z = (x - mu) / sigma;
                FRAC_1_SQRT_2PI / sigma * (-0.5 * z * z).exp()
            }
        }
    }

    /// `φ(θ) = E[e^{iθX}]`; exactly 1 at `θ = 0`.
    pub fn exact_cf(&self, theta: f64) -> Complex64 {
        if theta == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        match self.params {
            Params::Uniform { a } => Complex64::new((a * theta).sin() / (a * theta), 0.0),
            Params::Rayleigh { sigma } => {
                let t = sigma * theta;
                let re = 1.0 - std::f64::consts::SQRT_2 * t * dawson(t / std::f64::consts::SQRT_2);
                let im = (FRAC_PI_2).sqrt() * t * (-0.5 * t * t).exp();
                Complex64::new(re, im)
            }
            Params::Cauchy => Complex64::new((-theta.abs()).exp(), 0.0),
            Params::Levy => (-Complex64::new(0.0, -2.0 * theta).sqrt()).exp(),
            Params::Gaussian { mu, sigma } => Complex64::new(-0.5 * sigma * sigma * theta * theta, mu * theta).exp(),
        }
    }

    /// `E[(∓iX)^(-γ)]` from its analytic form.
    pub fn closed_form_moment(&self, gamma: impl Into<ComplexOrder>, sign: Sign) -> Result<Complex64> {
        let order = gamma.into();
        if !order.is_finite() {
            return Err(Error::Domain(format!("non-finite order {order:?}")));
        }
        self.moment_strip().check(order.rho)?;
        let g = order.to_complex();
        let value = match self.params {
            Params::Uniform { a } => {
                // both half-lines contribute x^(-γ) e^{±iπγ/2}; the phases pair into a cosine
                Complex64::new(a, 0.0).powc(-g) * (FRAC_PI_2 * g).cos() / (1.0 - g)
            }
            Params::Rayleigh { sigma } => {
                Complex64::new(2.0, 0.0).powc(-g / 2.0) * signed_power_unchecked(sigma, -g, sign) * complex_gamma(1.0 - g / 2.0)?
            }
            Params::Cauchy => Complex64::new(1.0, 0.0),
            Params::Levy => {
                // X = 1/Z², so E[X^(-γ)] = E|Z|^(2γ)
                let abs_moment = Complex64::new(2.0, 0.0).powc(g) * complex_gamma(g + 0.5)? / PI.sqrt();
                signed_power_unchecked(1.0, -g, sign) * abs_moment
            }
            Params::Gaussian { mu, sigma } => gaussian_moment(mu, sigma, g, sign)?,
        };
        Ok(value)
    }

    /// `n` draws from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Argument("sample size must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = match self.params {
            Params::Uniform { a } => (0..n).map(|_| rng.random_range(-a..a)).collect(),
            Params::Rayleigh { sigma } => (0..n)
                .map(|_| {
                    let u: f64 = 1.0 - rng.random::<f64>();
                    sigma * (-2.0 * u.ln()).sqrt()
                })
                .collect(),
            Params::Cauchy => {
                let d = CauchyDist::new(0.0, 1.0).expect("unit Cauchy");
                (0..n).map(|_| d.sample(&mut rng)).collect()
            }
            Params::Levy => (0..n)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    1.0 / (z * z)
                })
                .collect(),
            Params::Gaussian { mu, sigma } => (0..n)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    mu + sigma * z
                })
                .collect(),
        };
        Ok(out)
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        for (k, v) in self.named_params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// `∫₀^∞ t^(s-1) e^{-(t-ν)²/2} dt / √(2π)` by expanding `e^{νt}`:
/// `e^{-ν²/2}/√(2π) Σ νⁿ/n! 2^{(s+n)/2-1} Γ((s+n)/2)`.
fn half_line_gaussian_mellin(nu: f64, s: Complex64) -> Result<Complex64> {
    let ln2 = std::f64::consts::LN_2;
    let mut sum = Complex64::default();
    let mut ln_fact = 0.0;
    for n in 0..2000u32 {
        let nf = f64::from(n);
        if n > 0 {
            ln_fact += nf.ln();
        }
        let half = (s + nf) / 2.0;
        let ln_mag = if nu == 0.0 {
            if n > 0 {
                break;
            }
            0.0
        } else {
            nf * nu.abs().ln()
        };
        let log_term = ln_mag - ln_fact + (half - 1.0) * ln2 + ln_gamma(half)?;
        let mut term = log_term.exp();
        if nu < 0.0 && n % 2 == 1 {
            term = -term;
        }
        sum += term;
        if nf > nu * nu + 10.0 && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    Ok(sum * (-0.5 * nu * nu).exp() * FRAC_1_SQRT_2PI)
}

// Beyond this standardized mean the alternating half-line series cancels too much.
const SERIES_MAX_NU: f64 = 5.0;

fn gaussian_moment(mu: f64, sigma: f64, g: Complex64, sign: Sign) -> Result<Complex64> {
    let s = 1.0 - g;
    let nu = mu / sigma;
    let (pos, neg) = if nu.abs() <= SERIES_MAX_NU {
        (half_line_gaussian_mellin(nu, s)?, half_line_gaussian_mellin(-nu, s)?)
    } else {
        let tol = Tolerance::new(1e-15, 1e-13);
        let p = move |t: f64| FRAC_1_SQRT_2PI * (-0.5 * (t - nu) * (t - nu)).exp();
        let q = move |t: f64| FRAC_1_SQRT_2PI * (-0.5 * (t + nu) * (t + nu)).exp();
        (mellin_log(p, s, f64::INFINITY, tol)?.value, mellin_log(q, s, f64::INFINITY, tol)?.value)
    };
    // (∓ix)^(-γ) = |x|^(-γ) (∓i sgn x)^(-γ)
    let scale = Complex64::new(sigma, 0.0).powc(-g);
    Ok(scale * (signed_power_unchecked(1.0, -g, sign) * pos + signed_power_unchecked(-1.0, -g, sign) * neg))
}
