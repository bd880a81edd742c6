//! Inputs shared by the benchmarks.

use fracmom_core::{make_grid, DistributionSpec, GridParams, Method, MomentGrid, Sign};

/// Closed-form grid at the default `ρ = Δ = 0.4`.
pub fn grid(spec: &DistributionSpec, m: usize) -> MomentGrid {
    let params = GridParams::new(0.4, 0.4, m, Sign::Minus).expect("default grid parameters are valid");
    make_grid(spec, params, &Method::ClosedForm).expect("catalog moments exist at ρ = 0.4")
}

/// `n` points spread over `[lo, hi]`.
pub fn points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}
