use crate::error::{Error, Result};
use crate::field::AmbientField;
use crate::flow::{FlowParams, SeriesRow, Snapshot, StopReason, Trajectory};
use crate::geometry::io::{fmt_f64, read_curve_csv, write_curve_csv};
use crate::geometry::ClosedCurve;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

/// Writes `bytes` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path.file_name().ok_or_else(|| Error::Config(format!("bad output path {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// A CSV table of floats (17 significant digits, LF line endings).
/// Named column extractor for [`table_csv`].
pub type Column<'a, T> = (&'a str, &'a dyn Fn(&T) -> f64);

pub fn table_csv<T>(rows: &[T], cols: &[Column<'_, T>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(cols.iter().map(|c| c.0))?;
    for r in rows {
        w.write_record(cols.iter().map(|c| fmt_f64((c.1)(r))))?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

pub fn bool_f(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Everything besides the curves needed to reload a trajectory directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub params: FlowParams,
    pub field: AmbientField,
    pub stop_reason: StopReason,
    pub nonconvex_time: Option<f64>,
    pub steps: usize,
    pub resample_every: usize,
    pub region: Option<f64>,
    pub m_theta: usize,
}

pub fn series_csv(series: &[SeriesRow]) -> Result<Vec<u8>> {
    table_csv(
        series,
        &[
            ("t", &|r: &SeriesRow| r.t),
            ("L", &|r| r.length),
            ("A", &|r| r.area),
            ("W", &|r| r.winding),
            ("kmin", &|r| r.kmin),
            ("kmax", &|r| r.kmax),
            ("Fmin", &|r| r.fmin),
        ],
    )
}

/// `series.csv`, `snapshots/index.csv` and one `snapshots/sNNNNNN.csv` per
/// snapshot. Returns the written paths relative to `dir`.
pub fn write_trajectory(dir: &Path, traj: &Trajectory) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir.join("snapshots"))?;
    let mut files = vec!["series.csv".to_string(), "snapshots/index.csv".to_string()];
    write_atomic(&dir.join("series.csv"), &series_csv(&traj.series)?)?;
    let mut idx = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    idx.write_record(["index", "t", "file"])?;
    for (i, s) in traj.snapshots.iter().enumerate() {
        let name = format!("s{i:06}.csv");
        let mut buf = Vec::new();
        write_curve_csv(&s.curve, &mut buf)?;
        write_atomic(&dir.join("snapshots").join(&name), &buf)?;
        idx.write_record([i.to_string(), fmt_f64(s.t), name.clone()])?;
        files.push(format!("snapshots/{name}"));
    }
    let bytes = idx.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    write_atomic(&dir.join("snapshots/index.csv"), &bytes)?;
    Ok(files)
}

/// Reads `series.csv` and the snapshots back; `resample_every` restores the
/// per-row resampling flags.
pub fn read_trajectory(dir: &Path, meta: &TrajectoryMeta) -> Result<Trajectory> {
    let mut rdr = csv::Reader::from_path(dir.join("series.csv"))?;
    let mut series: Vec<SeriesRow> = rdr.deserialize().collect::<std::result::Result<_, _>>()?;
    for (j, r) in series.iter_mut().enumerate() {
        r.resampled = j > 0 && meta.resample_every > 0 && j % meta.resample_every == 0;
    }
    #[derive(Deserialize)]
    struct IndexRow {
        #[allow(dead_code)]
        index: usize,
        t: f64,
        file: String,
    }
    let mut rdr = csv::Reader::from_path(dir.join("snapshots/index.csv"))?;
    let mut snapshots = Vec::new();
    for row in rdr.deserialize::<IndexRow>() {
        let row = row?;
        let f = std::fs::File::open(dir.join("snapshots").join(&row.file))?;
        let curve: ClosedCurve = read_curve_csv(f)?;
        snapshots.push(Snapshot { t: row.t, curve });
    }
    if snapshots.is_empty() {
        return Err(Error::InsufficientData(format!("no snapshots under {}", dir.display())));
    }
    Ok(Trajectory {
        params: meta.params,
        field: meta.field.clone(),
        snapshots,
        series,
        stop_reason: meta.stop_reason,
        nonconvex_time: meta.nonconvex_time,
        steps: meta.steps,
    })
}
