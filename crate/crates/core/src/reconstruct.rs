//! Characteristic function and density rebuilt from one grid of complex moments by
//! rectangle-rule sums along the line `Re γ = ρ`, plus the integer-moment Taylor baseline.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::distributions::{DistributionSpec, Params};
use crate::error::{Error, Result};
use crate::moments::{GridParams, MomentGrid};
use crate::special::{complex_gamma, reflection_product, signed_power_unchecked, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Cf,
    Pdf,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Cf => "cf",
            CurveKind::Pdf => "pdf",
        }
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cf" => Ok(CurveKind::Cf),
            "pdf" => Ok(CurveKind::Pdf),
            other => Err(Error::Parse(format!("unknown curve kind '{other}'"))),
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Γ(γ_k) E_k` for every node, the part of each series term that does not depend on θ.
fn cf_weights(grid: &MomentGrid) -> Result<Vec<(Complex64, Complex64)>> {
    grid.iter()
        .map(|(_, g, v)| {
            let g = g.to_complex();
            Ok((g, complex_gamma(g)? * v))
        })
        .collect()
}

fn cf_sum(weights: &[(Complex64, Complex64)], delta: f64, abs_theta: f64) -> Complex64 {
    let ln_t = abs_theta.ln();
    let sum: Complex64 = weights.iter().map(|(g, w)| w * (-g * ln_t).exp()).sum();
    sum * (delta / (2.0 * PI))
}

/// `(Δ/2π) Σ_k Γ(γ_k) E[(∓iX)^(-γ_k)] |θ|^(-γ_k)`.
///
/// A `minus` grid serves `θ > 0` directly and a `plus` grid serves `θ < 0`; the other
/// half-line follows from `φ(-θ) = conj φ(θ)`.
pub fn cf_series(grid: &MomentGrid, theta: f64) -> Result<Complex64> {
    if theta == 0.0 || !theta.is_finite() {
        return Err(Error::Domain(format!("cf series is not evaluated at θ = {theta}")));
    }
    let weights = cf_weights(grid)?;
    Ok(cf_from_weights(&weights, grid.params(), theta))
}

fn cf_from_weights(weights: &[(Complex64, Complex64)], params: &GridParams, theta: f64) -> Complex64 {
    let direct = cf_sum(weights, params.delta, theta.abs());
    let native = match params.sign {
        Sign::Minus => theta > 0.0,
        Sign::Plus => theta < 0.0,
    };
    if native {
        direct
    } else {
        direct.conj()
    }
}

/// [`cf_series`] extended by `φ(0) = 1`.
pub fn cf_value(grid: &MomentGrid, theta: f64) -> Result<Complex64> {
    if theta == 0.0 {
        Ok(Complex64::new(1.0, 0.0))
    } else {
        cf_series(grid, theta)
    }
}

/// `(Δ/2π) Σ_k |Γ(γ_k) E_k| θ^(-ρ)`, an upper bound on `|cf_series(θ)|`.
pub fn cf_envelope(grid: &MomentGrid, theta: f64) -> Result<f64> {
    let p = grid.params();
    let total: f64 = cf_weights(grid)?.iter().map(|(_, w)| w.norm()).sum();
    Ok(p.delta / (2.0 * PI) * total * theta.abs().powf(-p.rho))
}

/// Density value and the imaginary residue of the two-sided inversion sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdfPoint {
    pub value: f64,
    /// Imaginary part left after adding the `θ > 0` and `θ < 0` halves, each summed
    /// independently; zero up to rounding when the two halves are exact conjugates.
    pub imag_residual: f64,
}

fn require_minus(grid: &MomentGrid) -> Result<()> {
    if grid.params().sign != Sign::Minus {
        return Err(Error::Argument("the density series needs a grid of E[(-iX)^(-γ)] (sign = minus)".into()));
    }
    Ok(())
}

fn pdf_weights(grid: &MomentGrid) -> Result<Vec<(Complex64, Complex64)>> {
    grid.iter()
        .map(|(_, g, v)| Ok((g.to_complex(), reflection_product(g)? * v)))
        .collect()
}

fn pdf_half(weights: &[(Complex64, Complex64)], x: f64) -> Complex64 {
    weights.iter().map(|(g, w)| w * signed_power_unchecked(x, g - 1.0, Sign::Plus)).sum()
}

fn pdf_from_weights(plus_half: &[(Complex64, Complex64)], minus_half: &[(Complex64, Complex64)], delta: f64, x: f64) -> PdfPoint {
    let scale = delta / (2.0 * PI * PI);
    let first = pdf_half(plus_half, x);
    // θ < 0 half: the conjugate-sign moments with (-ix)^(γ-1)
    let second: Complex64 = minus_half.iter().map(|(g, w)| w * signed_power_unchecked(x, g - 1.0, Sign::Minus)).sum();
    PdfPoint { value: first.re * scale, imag_residual: (first + second).im * scale / 2.0 }
}

/// `(Δ/2π²) Re Σ_k Γ(γ_k) Γ(1-γ_k) E[(-iX)^(-γ_k)] (ix)^(γ_k-1)`.
pub fn pdf_series(grid: &MomentGrid, x: f64) -> Result<f64> {
    Ok(pdf_point(grid, x)?.value)
}

pub fn pdf_point(grid: &MomentGrid, x: f64) -> Result<PdfPoint> {
    require_minus(grid)?;
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("density series is not evaluated at x = {x}")));
    }
    let plus = pdf_weights(grid)?;
    let minus = pdf_weights(&grid.conjugate_sign())?;
    Ok(pdf_from_weights(&plus, &minus, grid.params().delta, x))
}

fn integer_moments(spec: &DistributionSpec, order: usize) -> Result<Vec<f64>> {
    let mut m = vec![1.0; order + 1];
    match spec.params() {
        Params::Uniform { a } => {
            for (j, v) in m.iter_mut().enumerate() {
                *v = if j % 2 == 0 { a.powi(j as i32) / (j as f64 + 1.0) } else { 0.0 };
            }
        }
        Params::Gaussian { mu, sigma } => {
            // m_j = μ m_{j-1} + (j-1) σ² m_{j-2}
            for j in 1..=order {
                let prev2 = if j >= 2 { m[j - 2] } else { 0.0 };
                m[j] = mu * m[j - 1] + (j as f64 - 1.0) * sigma * sigma * prev2;
            }
        }
        Params::Rayleigh { sigma } => {
            for (j, v) in m.iter_mut().enumerate() {
                let h = j as f64 / 2.0;
                *v = (sigma * std::f64::consts::SQRT_2).powi(j as i32) * complex_gamma(Complex64::new(1.0 + h, 0.0))?.re;
            }
        }
        Params::Cauchy | Params::Levy => {
            return Err(Error::Unsupported(format!("{spec} has no finite integer moments; its Taylor series is a sum of divergent terms")));
        }
    }
    Ok(m)
}

/// `Σ_{j≤order} (iθ)^j E[X^j] / j!`.
pub fn classical_taylor_cf(spec: &DistributionSpec, theta: f64, order: usize) -> Result<Complex64> {
    let moments = integer_moments(spec, order)?;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::default();
    for (j, mj) in moments.iter().enumerate() {
        if j > 0 {
            term *= Complex64::new(0.0, theta) / j as f64;
        }
        sum += term * mj;
    }
    Ok(sum)
}

/// Sum of the residues of `Γ(γ) E[(-iX)^(-γ)] θ^(-γ)` at `γ = 0, -2, ..., -2(terms-1)`
/// for the standard normal law: `Σ (1/(2k)!) E[(-iX)^(2k)] θ^(2k)`.
pub fn residue_partial_sum(spec: &DistributionSpec, theta: f64, terms: usize) -> Result<Complex64> {
    match spec.params() {
        Params::Gaussian { mu, sigma } if mu == 0.0 && sigma == 1.0 => {}
        _ => return Err(Error::Unsupported(format!("residue sum is implemented for the standard normal law, not {spec}"))),
    }
    if terms == 0 {
        return Err(Error::Argument("terms must be at least 1".into()));
    }
    let mut sum = Complex64::default();
    // E[(-iX)^(2k)] = (-1)^k (2k-1)!!
    let mut signed_moment = 1.0;
    let mut factorial = 1.0;
    let mut power = 1.0;
    for k in 0..terms {
        if k > 0 {
            let n = 2.0 * k as f64;
            signed_moment *= -(n - 1.0);
            factorial *= n * (n - 1.0);
            power *= theta * theta;
        }
        sum += Complex64::new(signed_moment * power / factorial, 0.0);
    }
    Ok(sum)
}

/// Sampled reconstruction, optionally compared with the exact curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveResult {
    pub kind: CurveKind,
    pub params: GridParams,
    pub abscissae: Vec<f64>,
    pub values: Vec<Complex64>,
    pub exact: Option<Vec<Complex64>>,
    pub abs_err: Option<Vec<f64>>,
    /// Density curves only; see [`PdfPoint::imag_residual`].
    pub imag_residual: Option<Vec<f64>>,
}

impl CurveResult {
    pub fn max_abs_err(&self) -> Option<f64> {
        self.abs_err.as_ref().map(|e| e.iter().copied().fold(0.0, f64::max))
    }

    pub fn len(&self) -> usize {
        self.abscissae.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissae.is_empty()
    }
}

/// Evaluates the series at every abscissa. `θ = 0` yields the exact `φ(0) = 1`; `x = 0` is
/// rejected for densities.
pub fn sample_curve(grid: &MomentGrid, kind: CurveKind, abscissae: &[f64], exact: Option<&DistributionSpec>) -> Result<CurveResult> {
    let params = *grid.params();
    let mut values = Vec::with_capacity(abscissae.len());
    let mut residual = Vec::new();
    match kind {
        CurveKind::Cf => {
            let weights = cf_weights(grid)?;
            for &t in abscissae {
                if !t.is_finite() {
                    return Err(Error::Domain(format!("non-finite abscissa {t}")));
                }
                values.push(if t == 0.0 { Complex64::new(1.0, 0.0) } else { cf_from_weights(&weights, &params, t) });
            }
        }
        CurveKind::Pdf => {
            require_minus(grid)?;
            let plus = pdf_weights(grid)?;
            let minus = pdf_weights(&grid.conjugate_sign())?;
            for &x in abscissae {
                if x == 0.0 || !x.is_finite() {
                    return Err(Error::Domain(format!("density series is not evaluated at x = {x}")));
                }
                let p = pdf_from_weights(&plus, &minus, params.delta, x);
                values.push(Complex64::new(p.value, 0.0));
                residual.push(p.imag_residual);
            }
        }
    }
    let exact: Option<Vec<Complex64>> = exact.map(|spec| {
        abscissae
            .iter()
            .map(|&t| match kind {
                CurveKind::Cf => spec.exact_cf(t),
                CurveKind::Pdf => Complex64::new(spec.exact_pdf(t), 0.0),
            })
            .collect()
    });
    let abs_err = exact.as_ref().map(|e| e.iter().zip(&values).map(|(a, b)| (a - b).norm()).collect());
    Ok(CurveResult {
        kind,
        params,
        abscissae: abscissae.to_vec(),
        values,
        exact,
        abs_err,
        imag_residual: (kind == CurveKind::Pdf).then_some(residual),
    })
}

/// `count` evenly spaced points on `[lo, hi]`, dropping any with `|x| < exclude` and the
/// origin itself.
pub fn abscissae(lo: f64, hi: f64, count: usize, exclude: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::Argument(format!("range needs lo < hi, got {lo}:{hi}")));
    }
    if count < 2 {
        return Err(Error::Argument(format!("range needs at least 2 points, got {count}")));
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo + i as f64 * step })
        .filter(|x| *x != 0.0 && x.abs() >= exclude)
        .collect())
}
