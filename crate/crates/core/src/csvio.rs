//! Plain-text tables for moment grids and sampled curves.
//!
//! Both formats start with `# key=value` metadata lines followed by a header row.
//! Floats are written with `{:?}`, the shortest string that parses back to the same
//! bits (switching to exponent form for very small or large values), so a grid read
//! back from disk reproduces its source exactly.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::moments::{GridParams, MomentGrid};
use crate::reconstruct::CurveResult;

pub const GRID_HEADER: &str = "k,rho,eta,re,im";
pub const CURVE_HEADER: &str = "x,re,im,exact_re,exact_im,abs_err";

/// Ordered `key=value` pairs from the `#` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Metadata(pub Vec<(String, String)>);

impl Metadata {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Parse(format!("missing `# {key}=` line")))
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.require(key)?;
        raw.parse().map_err(|_| Error::Parse(format!("bad value for {key}: {raw:?}")))
    }

    fn write_to<W: Write + ?Sized>(&self, w: &mut W) -> Result<()> {
        for (k, v) in &self.0 {
            writeln!(w, "# {k}={v}")?;
        }
        Ok(())
    }

    /// Grid parameters, distribution and estimator name, in the order the grid file uses.
    pub fn for_grid(params: &GridParams, dist: Option<&DistributionSpec>, method: &str) -> Metadata {
        let mut meta = Metadata::default();
        if let Some(d) = dist {
            meta.push("dist", d.to_json());
        }
        meta.push("sign", params.sign);
        meta.push("method", method);
        meta.push("rho", format!("{:?}", params.rho));
        meta.push("delta", format!("{:?}", params.delta));
        meta.push("m", params.m);
        meta
    }

    pub fn dist(&self) -> Result<Option<DistributionSpec>> {
        self.get("dist").map(DistributionSpec::from_json).transpose()
    }

    pub fn grid_params(&self) -> Result<GridParams> {
        GridParams::new(self.parse("rho")?, self.parse("delta")?, self.parse("m")?, self.parse("sign")?)
    }
}

/// A moment grid together with the metadata it was stored with.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFile {
    pub meta: Metadata,
    pub grid: MomentGrid,
}

impl GridFile {
    pub fn dist(&self) -> Result<Option<DistributionSpec>> {
        self.meta.dist()
    }

    pub fn method(&self) -> Option<&str> {
        self.meta.get("method")
    }
}

pub fn write_grid<W: Write + ?Sized>(w: &mut W, grid: &MomentGrid, meta: &Metadata) -> Result<()> {
    meta.write_to(w)?;
    writeln!(w, "{GRID_HEADER}")?;
    for (k, g, v) in grid.iter() {
        writeln!(w, "{k},{:?},{:?},{:?},{:?}", g.rho, g.eta, v.re, v.im)?;
    }
    Ok(())
}

type Split = (Metadata, String, Vec<(usize, String)>);

fn split_header(r: impl BufRead) -> Result<Split> {
    let mut meta = Metadata::default();
    let mut header = None;
    let mut rows = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if header.is_none() {
                if let Some((k, v)) = rest.trim_start().split_once('=') {
                    meta.push(k.trim(), v.trim());
                }
            }
            continue;
        }
        if header.is_none() {
            header = Some(line.to_string());
        } else {
            rows.push((n + 1, line.to_string()));
        }
    }
    let header = header.ok_or_else(|| Error::Parse("no header row".into()))?;
    Ok((meta, header, rows))
}

fn field<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T> {
    raw.trim().parse().map_err(|_| Error::Parse(format!("line {line}: bad {name} {raw:?}")))
}

/// Reads a grid file. Parameters come from the metadata; each row must carry the
/// order `γ_k = ρ + ikΔ` those parameters imply.
pub fn read_grid(r: impl BufRead) -> Result<GridFile> {
    let (meta, header, rows) = split_header(r)?;
    if header.replace(' ', "") != GRID_HEADER {
        return Err(Error::Parse(format!("expected header `{GRID_HEADER}`, found `{header}`")));
    }
    let params = meta.grid_params()?;
    if rows.len() != params.len() {
        return Err(Error::Parse(format!("m = {} needs {} rows, found {}", params.m, params.len(), rows.len())));
    }
    let mut values = Vec::with_capacity(rows.len());
    for ((line, row), k) in rows.iter().zip(params.ks()) {
        let cols: Vec<&str> = row.split(',').collect();
        if cols.len() != 5 {
            return Err(Error::Parse(format!("line {line}: expected 5 columns, found {}", cols.len())));
        }
        let kk: i64 = field(*line, "k", cols[0])?;
        let rho: f64 = field(*line, "rho", cols[1])?;
        let eta: f64 = field(*line, "eta", cols[2])?;
        let g = params.gamma(k);
        if kk != k || (rho - g.rho).abs() > 1e-12 || (eta - g.eta).abs() > 1e-9 * (1.0 + eta.abs()) {
            return Err(Error::Parse(format!("line {line}: row ({kk}, {rho}, {eta}) does not match k = {k} of the stated grid")));
        }
        values.push(Complex64::new(field(*line, "re", cols[3])?, field(*line, "im", cols[4])?));
    }
    Ok(GridFile { meta, grid: MomentGrid::from_values(params, values)? })
}

/// Writes a sampled curve. Summary lines for the maximum error and the PDF
/// realness residual are appended to `meta` when present.
pub fn write_curve<W: Write + ?Sized>(w: &mut W, curve: &CurveResult, meta: &Metadata) -> Result<()> {
    let mut meta = meta.clone();
    meta.0.retain(|(k, _)| k != "kind");
    meta.0.insert(0, ("kind".into(), curve.kind.to_string()));
    if let Some(e) = curve.max_abs_err() {
        meta.push("max_abs_err", format!("{e:?}"));
    }
    if let Some(r) = &curve.imag_residual {
        meta.push("max_imag_residual", format!("{:?}", r.iter().fold(0.0f64, |a, b| a.max(b.abs()))));
    }
    meta.write_to(w)?;
    writeln!(w, "{CURVE_HEADER}")?;
    for i in 0..curve.len() {
        let v = curve.values[i];
        write!(w, "{:?},{:?},{:?},", curve.abscissae[i], v.re, v.im)?;
        match (&curve.exact, &curve.abs_err) {
            (Some(ex), Some(err)) => writeln!(w, "{:?},{:?},{:?}", ex[i].re, ex[i].im, err[i])?,
            _ => writeln!(w, ",,")?,
        }
    }
    Ok(())
}

/// One row of a curve file; the exact columns are `None` when they were left empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub x: f64,
    pub value: Complex64,
    pub exact: Option<Complex64>,
    pub abs_err: Option<f64>,
}

pub fn read_curve(r: impl BufRead) -> Result<(Metadata, Vec<CurveRow>)> {
    let (meta, header, rows) = split_header(r)?;
    if header.replace(' ', "") != CURVE_HEADER {
        return Err(Error::Parse(format!("expected header `{CURVE_HEADER}`, found `{header}`")));
    }
    let opt = |line: usize, name: &str, raw: &str| -> Result<Option<f64>> {
        if raw.trim().is_empty() {
            Ok(None)
        } else {
            field(line, name, raw).map(Some)
        }
    };
    let mut out = Vec::with_capacity(rows.len());
    for (line, row) in &rows {
        let c: Vec<&str> = row.split(',').collect();
        if c.len() != 6 {
            return Err(Error::Parse(format!("line {line}: expected 6 columns, found {}", c.len())));
        }
        let exact = match (opt(*line, "exact_re", c[3])?, opt(*line, "exact_im", c[4])?) {
            (Some(re), Some(im)) => Some(Complex64::new(re, im)),
            (None, None) => None,
            _ => return Err(Error::Parse(format!("line {line}: half-empty exact columns"))),
        };
        out.push(CurveRow {
            x: field(*line, "x", c[0])?,
            value: Complex64::new(field(*line, "re", c[1])?, field(*line, "im", c[2])?),
            exact,
            abs_err: opt(*line, "abs_err", c[5])?,
        });
    }
    Ok((meta, out))
}
