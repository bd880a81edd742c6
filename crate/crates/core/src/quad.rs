//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands on finite and
//! half-infinite ranges, plus the two Mellin-type layouts used throughout the crate.
//!
//! * finite ranges: global adaptive bisection with the 10/21-point Gauss–Kronrod pair;
//! * `[a, ∞)`: consecutive blocks with epsilon extrapolation of the partial sums, which
//!   copes with slowly decaying and oscillating tails (a `t/(1-t)` map chokes on those);
//! * Mellin integrals `∫ x^{s-1} f(x) dx`: logarithmic coordinates near the origin,
//!   which turn the algebraic endpoint singularity into exponential decay.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-10, 1e-10)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate { value: self.value + rhs.value, error: self.error + rhs.error }
    }
}

impl Estimate {
    pub fn scale(self, factor: Complex64) -> Estimate {
        Estimate { value: self.value * factor, error: self.error * factor.norm() }
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv1 = [Complex64::default(); 10];
    let mut fv2 = [Complex64::default(); 10];

    let fc = f(center);
    let mut gauss = Complex64::default();
    let mut kronrod = fc * WGK[10];
    let mut resabs = fc.norm() * WGK[10];

    for (j, wg) in WG.iter().enumerate() {
        let k = 2 * j + 1;
        let dx = half * XGK[k];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[k] = f1;
        fv2[k] = f2;
        gauss += (f1 + f2) * wg;
        kronrod += (f1 + f2) * WGK[k];
        resabs += WGK[k] * (f1.norm() + f2.norm());
    }
    for j in 0..5 {
        let k = 2 * j;
        let dx = half * XGK[k];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[k] = f1;
        fv2[k] = f2;
        kronrod += (f1 + f2) * WGK[k];
        resabs += WGK[k] * (f1.norm() + f2.norm());
    }

    let mean = kronrod * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for k in 0..10 {
        resasc += WGK[k] * ((fv1[k] - mean).norm() + (fv2[k] - mean).norm());
    }

    let scale = half.abs();
    let value = kronrod * half;
    let resabs = resabs * scale;
    let resasc = resasc * scale;
    let mut error = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, value, error }
}

const MAX_SEGMENTS: usize = 4000;

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integrate needs finite bounds, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Estimate { value: Complex64::default(), error: 0.0 });
    }
    let first = gk21(&f, a, b);
    if !(first.value.re.is_finite() && first.value.im.is_finite()) {
        return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
    }
    let mut heap = BinaryHeap::new();
    let mut frozen = Estimate { value: Complex64::default(), error: 0.0 };
    let mut total = first.value;
    let mut error = first.error;
    heap.push(first);

    let mut segments = 1;
    while error > tol.target(total) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let too_narrow = (worst.b - worst.a).abs() <= 1e-13 * worst.a.abs().max(worst.b.abs())
            || mid == worst.a
            || mid == worst.b;
        if too_narrow || segments >= MAX_SEGMENTS {
            frozen.value += worst.value;
            frozen.error += worst.error;
            if segments >= MAX_SEGMENTS {
                break;
            }
            continue;
        }
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        segments += 1;
    }

    // re-sum to shed accumulated cancellation in the running totals
    let mut value = frozen.value;
    let mut err = frozen.error;
    for s in heap.iter() {
        value += s.value;
        err += s.error;
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
    }
    let target = tol.target(value);
    if err > target {
        return Err(Error::Quadrature { achieved: err, target });
    }
    Ok(Estimate { value, error: err })
}

/// Block layout for [`integrate_to_infinity`].
#[derive(Debug, Clone, Copy)]
pub struct Blocks {
    pub first: f64,
    pub max_width: f64,
    pub max_blocks: usize,
}

impl Blocks {
    /// Layout suited to exponentially decaying integrands (logarithmic coordinates).
    pub const LOG: Blocks = Blocks { first: 1.0, max_width: 8.0, max_blocks: 20_000 };
}

/// `∫_a^∞ f`, summing adaptive blocks until three consecutive ones are negligible.
pub fn integrate_to_infinity<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    tol: Tolerance,
    blocks: Blocks,
) -> Result<Estimate> {
    let block_tol = Tolerance::new(tol.abs / 64.0, tol.rel);
    let mut lo = a;
    let mut width = blocks.first;
    let mut total = Estimate { value: Complex64::default(), error: 0.0 };
    let mut quiet = 0;
    let mut last = 0.0;
    for _ in 0..blocks.max_blocks {
        let hi = lo + width;
        let block = integrate(&f, lo, hi, block_tol)?;
        total = total + block;
        last = block.value.norm() + block.error;
        let negligible = (tol.abs / 8.0).max(tol.rel * total.value.norm() / 8.0);
        if last <= negligible {
            quiet += 1;
            if quiet >= 3 {
                total.error += last;
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width = (width * 2.0).min(blocks.max_width);
    }
    Err(Error::Quadrature { achieved: last, target: tol.target(total.value) })
}

/// `∫₀^upper x^{s-1} f(x) dx` in logarithmic coordinates (`upper` may be `+∞`).
///
/// Suited to densities: smooth in `ln x`, so the `x^{iη}` factor becomes a plain
/// sinusoid and both ends decay exponentially whenever `Re s` sits inside the strip.
pub fn mellin_log<F: Fn(f64) -> f64>(f: F, s: Complex64, upper: f64, tol: Tolerance) -> Result<Estimate> {
    if !(upper > 0.0) {
        return Ok(Estimate { value: Complex64::default(), error: 0.0 });
    }
    let part_tol = Tolerance::new(tol.abs / 2.0, tol.rel);
    // x = c e^{-u}:  ∫₀^c x^{s-1} f dx = c^s ∫₀^∞ e^{-su} f(c e^{-u}) du
    let below = |c: f64| -> Result<Estimate> {
        let scale = Complex64::new(c, 0.0).powc(s);
        let est = integrate_to_infinity(
            |u| {
                let x = c * (-u).exp();
                if x == 0.0 {
                    return Complex64::default();
                }
                (-s * u).exp() * f(x)
            },
            0.0,
            Tolerance::new(part_tol.abs / scale.norm().max(1e-300), part_tol.rel),
            Blocks::LOG,
        )?;
        Ok(est.scale(scale))
    };
    if upper.is_finite() {
        return below(upper);
    }
    let lower = below(1.0)?;
    // x = e^{u}:  ∫₁^∞ x^{s-1} f dx = ∫₀^∞ e^{su} f(e^u) du
    let upper_part = integrate_to_infinity(
        |u| {
            let x = u.exp();
            if !x.is_finite() {
                return Complex64::default();
            }
            let v = f(x);
            if v == 0.0 {
                return Complex64::default();
            }
            (s * u).exp() * v
        },
        0.0,
        part_tol,
        Blocks::LOG,
    )?;
    Ok(lower + upper_part)
}

/// Last entry of the even columns of Wynn's epsilon table built from `sums`.
fn wynn_epsilon(sums: &[Complex64]) -> Option<Complex64> {
    let mut prev = vec![Complex64::default(); sums.len() + 1];
    let mut cur: Vec<Complex64> = sums.to_vec();
    let mut best = None;
    let mut column = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d.norm() == 0.0 {
                return best.or(Some(cur[i + 1]));
            }
            next.push(prev[i + 1] + d.inv());
        }
        column += 1;
        if column % 2 == 0 {
            let last = *next.last().unwrap();
            if !(last.re.is_finite() && last.im.is_finite()) {
                return best;
            }
            best = Some(last);
        }
        prev = cur;
        cur = next;
    }
    best
}

fn sign_changes(values: &[Complex64]) -> usize {
    let flips = |get: fn(&Complex64) -> f64| {
        values.windows(2).filter(|w| get(&w[0]) * get(&w[1]) < 0.0).count()
    };
    flips(|z| z.re).max(flips(|z| z.im))
}

const TAIL_WINDOW: usize = 24;
const TAIL_PROBE: usize = 12;
const TAIL_MAX_BLOCKS: usize = 4000;
const TAIL_MAX_GEOMETRIC: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
enum TailMode {
    /// equal widths; oscillating tails
    Constant(f64),
    /// `[X, 2X]` blocks; algebraic decay turns into a geometric sequence
    Geometric,
}

/// `∫_a^∞ f` for a bounded integrand whose tail may decay slowly, with or without
/// oscillation.
///
/// A probe of unit-width blocks decides the layout. Blocks whose values keep changing
/// sign stay at constant width; otherwise the blocks grow geometrically, which maps an
/// algebraic tail (even one modulated by `x^{iη}`) onto a geometric series. Either way the
/// partial sums are extrapolated with the epsilon algorithm. Geometric blocks that start
/// flipping sign reveal a slow oscillation and send the routine back to constant widths
/// at a finer scale.
pub fn integrate_tail<F: Fn(f64) -> Complex64>(f: F, a: f64, tol: Tolerance) -> Result<Estimate> {
    let block_tol = Tolerance::new(tol.abs / 64.0, tol.rel);
    let mut total = Estimate { value: Complex64::default(), error: 0.0 };
    let mut mode = TailMode::Constant(1.0);
    // partial sums and block values of the current layout
    let mut sums: Vec<Complex64> = vec![total.value];
    let mut values: Vec<Complex64> = Vec::new();
    let mut extrapolated: Vec<Complex64> = Vec::new();
    let mut quiet = 0;
    let mut lo = a;
    let mut last = f64::INFINITY;
    for _ in 0..TAIL_MAX_BLOCKS {
        let width = match mode {
            TailMode::Constant(w) => w,
            TailMode::Geometric => lo - a + 1.0,
        };
        let block = integrate(&f, lo, lo + width, block_tol)?;
        lo += width;
        total = total + block;
        sums.push(total.value);
        values.push(block.value);
        let target = tol.target(total.value);

        last = block.value.norm() + block.error;
        if last <= target / 8.0 {
            quiet += 1;
            if quiet >= 3 {
                total.error += 3.0 * last;
                return Ok(total);
            }
        } else {
            quiet = 0;
        }

        let switch_to = match mode {
            TailMode::Constant(_) if values.len() >= TAIL_PROBE => {
                if sign_changes(&values[values.len() - TAIL_PROBE..]) >= 3 {
                    None
                } else {
                    Some(TailMode::Geometric)
                }
            }
            TailMode::Constant(_) => continue,
            TailMode::Geometric => {
                let recent = &values[values.len().saturating_sub(6)..];
                if sign_changes(recent) >= 2 {
                    Some(TailMode::Constant(((lo - a) / 16.0).max(1.0)))
                } else if values.len() >= TAIL_MAX_GEOMETRIC {
                    break;
                } else {
                    None
                }
            }
        };
        if let Some(next) = switch_to {
            mode = next;
            sums.clear();
            sums.push(total.value);
            values.clear();
            extrapolated.clear();
            continue;
        }

        if sums.len() < 4 {
            continue;
        }
        let window = &sums[sums.len().saturating_sub(TAIL_WINDOW)..];
        if let Some(e) = wynn_epsilon(window) {
            extrapolated.push(e);
            let k = extrapolated.len();
            if k >= 3 {
                let d1 = (extrapolated[k - 1] - extrapolated[k - 2]).norm();
                let d2 = (extrapolated[k - 2] - extrapolated[k - 3]).norm();
                if d1.max(d2) <= target / 4.0 {
                    return Ok(Estimate { value: e, error: total.error + d1 + d2 });
                }
            }
        }
    }
    Err(Error::Quadrature { achieved: last, target: tol.target(total.value) })
}

/// `∫₀^∞ ξ^{s-1} f(ξ) dξ` for bounded, possibly oscillating `f` (characteristic functions).
///
/// `(0, 1]` runs in logarithmic coordinates and `[1, ∞)` goes through [`integrate_tail`].
pub fn mellin_half_line<F: Fn(f64) -> Complex64>(f: F, s: Complex64, tol: Tolerance) -> Result<Estimate> {
    let part_tol = Tolerance::new(tol.abs / 2.0, tol.rel);
    let lower = integrate_to_infinity(
        |u| {
            let x = (-u).exp();
            if x == 0.0 {
                return Complex64::default();
            }
            (-s * u).exp() * f(x)
        },
        0.0,
        part_tol,
        Blocks::LOG,
    )?;
    let sm1 = s - 1.0;
    let upper = integrate_tail(|x| (sm1 * x.ln()).exp() * f(x), 1.0, part_tol)?;
    Ok(lower + upper)
}
