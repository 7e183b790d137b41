use super::curve::ClosedCurve;
use super::point::Point2;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

#[derive(Serialize, Deserialize)]
struct XyRow {
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    vertices: Vec<[f64; 2]>,
}

pub fn read_curve_csv<R: Read>(r: R) -> Result<ClosedCurve> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["x", "y"] {
        return Err(Error::InvalidCurve(format!("expected header `x,y`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut v = Vec::new();
    for row in rdr.deserialize::<XyRow>() {
        let row = row?;
        v.push(Point2::new(row.x, row.y));
    }
    ClosedCurve::new(v)
}

pub fn write_curve_csv<W: Write>(curve: &ClosedCurve, w: W) -> Result<()> {
    write_points_csv(curve.vertices(), w)
}

pub(crate) fn write_points_csv<W: Write>(pts: &[Point2], w: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    wtr.write_record(["x", "y"])?;
    for p in pts {
        wtr.write_record([fmt_f64(p.x), fmt_f64(p.y)])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_curve_json<R: Read>(r: R) -> Result<ClosedCurve> {
    let c: CurveJson = serde_json::from_reader(r)?;
    ClosedCurve::new(c.vertices.into_iter().map(|[x, y]| Point2::new(x, y)).collect())
}

pub fn write_curve_json<W: Write>(curve: &ClosedCurve, w: W) -> Result<()> {
    let c = CurveJson { vertices: curve.vertices().iter().map(|p| [p.x, p.y]).collect() };
    serde_json::to_writer(w, &c)?;
    Ok(())
}

/// Reads a curve, choosing the format from the file extension (`.json` or CSV otherwise).
pub fn read_curve_file(path: &Path) -> Result<ClosedCurve> {
    let f = std::fs::File::open(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => read_curve_json(f),
        _ => read_curve_csv(f),
    }
}

/// Round-trip exact decimal with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.16e}")
}
