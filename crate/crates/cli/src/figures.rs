//! The fixed set of curves behind each figure.

use std::io::Write;
use std::path::Path;

use fracmom_core::csvio::{write_curve, Metadata, CURVE_HEADER};
use fracmom_core::reconstruct::classical_taylor_cf;
use fracmom_core::{make_grid, sample_curve, CurveKind, DistributionSpec, GridParams, Method, Sign};

use crate::{during, write_atomic, CliResult, Failure};

struct Figure {
    file: &'static str,
    label: &'static str,
    dist: DistributionSpec,
    kind: CurveKind,
    rho: f64,
    m: usize,
    /// Endpoints in hundredths; the curve is sampled every 0.01.
    range: (i64, i64),
    exclude: f64,
}

fn hundredths((lo, hi): (i64, i64), exclude: f64) -> Vec<f64> {
    (lo..=hi).map(|i| i as f64 / 100.0).filter(|x| *x != 0.0 && x.abs() >= exclude).collect()
}

fn table() -> CliResult<Vec<Figure>> {
    let bad = during("figure table");
    let uniform = DistributionSpec::uniform(2.0).map_err(&bad)?;
    let rayleigh = DistributionSpec::rayleigh(2.0).map_err(&bad)?;
    let gaussian = DistributionSpec::gaussian(2.0, 1.0).map_err(&bad)?;
    let fig = |file, label, dist, kind, rho, m, range, exclude| Figure { file, label, dist, kind, rho, m, range, exclude };
    Ok(vec![
        fig("fig3b_uniform_cf.csv", "3b", uniform, CurveKind::Cf, 0.4, 25, (10, 2000), 0.0),
        fig("fig4_rayleigh_cf.csv", "4a/4b", rayleigh, CurveKind::Cf, 0.4, 25, (10, 1000), 0.0),
        fig("fig5_cauchy_cf.csv", "5", DistributionSpec::cauchy(), CurveKind::Cf, 0.4, 25, (10, 1000), 0.0),
        fig("fig6_levy_cf.csv", "6a/6b", DistributionSpec::levy(), CurveKind::Cf, 0.9, 25, (10, 1000), 0.0),
        fig("fig7_gaussian_pdf.csv", "7", gaussian, CurveKind::Pdf, 0.4, 15, (-200, 600), 0.1),
        fig("fig8_cauchy_pdf.csv", "8", DistributionSpec::cauchy(), CurveKind::Pdf, 0.4, 5, (-1000, 1000), 0.1),
        fig("fig9_levy_pdf.csv", "9", DistributionSpec::levy(), CurveKind::Pdf, 0.4, 5, (10, 1000), 0.1),
    ])
}

/// Truncated integer-moment series, written in the curve layout.
fn write_taylor(dir: &Path) -> CliResult<f64> {
    let u = DistributionSpec::uniform(2.0).map_err(during("figure 3a"))?;
    let order = 8;
    let thetas = hundredths((10, 1000), 0.0);
    let rows = thetas
        .iter()
        .map(|&t| classical_taylor_cf(&u, t, order).map(|v| (t, v, u.exact_cf(t))))
        .collect::<fracmom_core::Result<Vec<_>>>()
        .map_err(during("figure 3a"))?;
    let peak = rows.iter().map(|(_, v, _)| v.norm()).fold(0.0, f64::max);
    write_atomic(&dir.join("fig3a_uniform_taylor.csv"), |w| {
        writeln!(w, "# kind=cf")?;
        writeln!(w, "# figure=3a")?;
        writeln!(w, "# dist={}", u.to_json())?;
        writeln!(w, "# series=taylor")?;
        writeln!(w, "# order={order}")?;
        writeln!(w, "{CURVE_HEADER}")?;
        for (t, v, e) in &rows {
            writeln!(w, "{t:?},{:?},{:?},{:?},{:?},{:?}", v.re, v.im, e.re, e.im, (v - e).norm())?;
        }
        Ok(())
    })?;
    Ok(peak)
}

pub fn run(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::invalid(format!("creating {}: {e}", dir.display())))?;
    let peak = write_taylor(dir)?;
    println!("3a     fig3a_uniform_taylor.csv  Taylor order 8, max |φ| {peak:.3e}");
    for f in table()? {
        let params = GridParams::new(f.rho, 0.4, f.m, Sign::Minus).map_err(during("figure grid"))?;
        let grid = make_grid(&f.dist, params, &Method::ClosedForm).map_err(during("figure grid"))?;
        let curve = sample_curve(&grid, f.kind, &hundredths(f.range, f.exclude), Some(&f.dist)).map_err(during("figure curve"))?;
        let mut meta = Metadata::for_grid(&params, Some(&f.dist), Method::ClosedForm.name());
        meta.push("figure", f.label);
        write_atomic(&dir.join(f.file), |w| write_curve(w, &curve, &meta))?;
        println!("{:<6} {:<25} max abs err {:.3e}", f.label, f.file, curve.max_abs_err().unwrap_or(f64::NAN));
    }
    Ok(())
}
