//! CSV tables and metadata sidecars.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::nambu::{ScanResult, TensorIndex};
use crate::dynamics::DiagnosticsRecord;
use crate::error::{Error, Result};
use crate::field::{ModeField, PhysicalField};
use crate::grid::{TruncationGrid, WaveVector};

#[derive(Serialize, Deserialize)]
struct ModeRow {
    i1: i64,
    i2: i64,
    re: f64,
    im: f64,
}

pub fn write_mode_field(writer: impl Write, field: &ModeField) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for (k, c) in field.grid().modes().zip(field.coefficients()) {
        w.serialize(ModeRow {
            i1: k.i1,
            i2: k.i2,
            re: c.re,
            im: c.im,
        })?;
    }
    w.flush().map_err(|e| Error::io("<mode field>", e))?;
    Ok(())
}

/// Reads `i1,i2,re,im` rows. Rows may come in any order; missing modes are
/// zero. The grid is inferred from the row count unless given.
pub fn read_mode_field(reader: impl Read, grid: Option<TruncationGrid>) -> Result<ModeField> {
    let mut rows = Vec::new();
    for row in csv::Reader::from_reader(reader).deserialize() {
        let row: ModeRow = row?;
        rows.push(row);
    }
    let grid = match grid {
        Some(g) => g,
        None => {
            let n = ((rows.len() + 1) as f64).sqrt().round() as i64;
            if (n * n - 1) as usize != rows.len() {
                return Err(Error::Config(format!(
                    "{} mode rows do not fill any grid; pass the grid size explicitly",
                    rows.len()
                )));
            }
            TruncationGrid::new(n)?
        }
    };
    let mut field = ModeField::zeros(grid);
    for r in rows {
        field.set(WaveVector::new(r.i1, r.i2), Complex64::new(r.re, r.im))?;
    }
    Ok(field)
}

/// `side` rows of `side` comma-separated samples, no header.
pub fn write_physical_field(writer: impl Write, field: &PhysicalField) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    for row in field.samples().chunks(field.side()) {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io("<physical field>", e))?;
    Ok(())
}

pub fn read_physical_field(reader: impl Read) -> Result<PhysicalField> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(reader);
    let mut samples = Vec::new();
    let mut rows = 0;
    for rec in r.deserialize() {
        let row: Vec<f64> = rec?;
        samples.extend(row);
        rows += 1;
    }
    PhysicalField::new(rows, samples)
}

#[derive(Serialize)]
struct DiagnosticsRow {
    time: f64,
    #[serde(rename = "H")]
    energy: f64,
    #[serde(rename = "E")]
    enstrophy: f64,
    #[serde(rename = "drift_H")]
    drift_energy: f64,
    #[serde(rename = "drift_E")]
    drift_enstrophy: f64,
}

pub fn write_diagnostics(writer: impl Write, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(DiagnosticsRow {
            time: r.time,
            energy: r.energy,
            enstrophy: r.enstrophy,
            drift_energy: r.drift_energy,
            drift_enstrophy: r.drift_enstrophy,
        })?;
    }
    w.flush().map_err(|e| Error::io("<diagnostics>", e))?;
    Ok(())
}

/// Wave-vector tuples as `i1,i2,...,q1,q2,residual`; basis tuples as
/// `i,j,k,l,p,q,residual`.
pub fn write_violations(writer: impl Write, scan: &ScanResult) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let labels = ["i", "j", "k", "l", "p", "q"];
    let modes = scan
        .violations
        .first()
        .is_none_or(|v| matches!(v.tuple[0], TensorIndex::Mode(_)));
    let mut header: Vec<String> = if modes {
        labels
            .iter()
            .flat_map(|l| [format!("{l}1"), format!("{l}2")])
            .collect()
    } else {
        labels.iter().map(|l| l.to_string()).collect()
    };
    header.push("residual".into());
    w.write_record(&header)?;
    for v in &scan.violations {
        let mut rec: Vec<String> = Vec::with_capacity(13);
        for t in &v.tuple {
            match t {
                TensorIndex::Mode(k) => {
                    rec.push(k.i1.to_string());
                    rec.push(k.i2.to_string());
                }
                TensorIndex::Basis(b) => rec.push(b.to_string()),
            }
        }
        rec.push(format!("{:e}", v.residual));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io("<violations>", e))?;
    Ok(())
}

/// Sidecar written next to every output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub file: String,
    pub version: String,
    pub config_sha256: String,
    pub seed: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Hash of the canonical JSON encoding of `config`.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    Ok(sha256_hex(&serde_json::to_vec(config)?))
}

pub fn metadata_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Creates `path` through `write`, then its `.meta.json` sidecar.
pub fn write_with_metadata(
    path: &Path,
    config_sha256: &str,
    seed: Option<u64>,
    write: impl FnOnce(&mut BufWriter<File>) -> Result<()>,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write(&mut out)?;
    out.flush().map_err(|e| Error::io(path, e))?;
    let meta = Metadata {
        file: path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
        version: env!("CARGO_PKG_VERSION").into(),
        config_sha256: config_sha256.into(),
        seed,
    };
    write_json(&metadata_path(path), &meta)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nambu::{scan_gen_jacobi_with, JacobiForm, NambuTensor};
    use crate::algebra::DenseTensor;
    use crate::dynamics::random_shell_field;
    use crate::field::to_physical;
    use crate::grid::build_grid;

    #[test]
    fn mode_field_round_trip() {
        let g = build_grid(5).unwrap();
        let f = random_shell_field(g, 1, 8, 1.0, 9);
        let mut buf = Vec::new();
        write_mode_field(&mut buf, &f).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("i1,i2,re,im\n-2,-2,"));
        assert_eq!(read_mode_field(&buf[..], None).unwrap(), f);
        assert_eq!(read_mode_field(&buf[..], Some(g)).unwrap(), f);
    }

    #[test]
    fn mode_field_rejects_off_grid() {
        let text = "i1,i2,re,im\n3,0,1,0\n";
        let g = build_grid(5).unwrap();
        assert!(read_mode_field(text.as_bytes(), Some(g)).is_err());
        assert!(read_mode_field(text.as_bytes(), None).is_err());
    }

    #[test]
    fn physical_round_trip() {
        let g = build_grid(5).unwrap();
        let p = to_physical(&random_shell_field(g, 1, 8, 1.0, 9));
        let mut buf = Vec::new();
        write_physical_field(&mut buf, &p).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap().lines().count(), 5);
        assert_eq!(read_physical_field(&buf[..]).unwrap(), p);
    }

    #[test]
    fn diagnostics_header() {
        let mut buf = Vec::new();
        let r = DiagnosticsRecord {
            time: 0.5,
            energy: 1.0,
            enstrophy: 2.0,
            drift_energy: 0.0,
            drift_enstrophy: 1e-12,
        };
        write_diagnostics(&mut buf, &[r]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "time,H,E,drift_H,drift_E\n0.5,1.0,2.0,0.0,1e-12\n"
        );
    }

    #[test]
    fn violation_headers() {
        let g = build_grid(5).unwrap();
        let scan =
            scan_gen_jacobi_with(&NambuTensor::Zeitlin(g), None, JacobiForm::Literal).unwrap();
        let mut buf = Vec::new();
        write_violations(&mut buf, &scan).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("i1,i2,j1,j2,k1,k2,l1,l2,p1,p2,q1,q2,residual\n"));
        assert_eq!(text.lines().count(), scan.violations.len() + 1);

        let mut d = DenseTensor::zeros(3);
        d.set(0, 1, 2, 1.0);
        d.set(1, 0, 2, -1.0);
        let scan = scan_gen_jacobi_with(&NambuTensor::Dense(d), None, JacobiForm::Literal).unwrap();
        let mut buf = Vec::new();
        write_violations(&mut buf, &scan).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("i,j,k,l,p,q,residual\n"), "{text}");
    }

    #[test]
    fn metadata_sidecar() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.csv");
        let hash = config_hash(&serde_json::json!({"n": 5})).unwrap();
        assert_eq!(hash.len(), 64);
        write_with_metadata(&path, &hash, Some(3), |w| {
            w.write_all(b"x\n").map_err(|e| Error::io("buf", e))
        })
        .unwrap();
        let meta: Metadata = read_json(&metadata_path(&path)).unwrap();
        assert_eq!(meta.file, "state.csv");
        assert_eq!(meta.seed, Some(3));
        assert_eq!(meta.config_sha256, hash);
    }

    #[test]
    fn sha256_known_value() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
