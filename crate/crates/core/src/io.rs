//! Matrix files.
//!
//! * CSV: one matrix row per line, comma separated, `.` decimal point, no
//!   header. An optional `# n d` comment line declares the shape. Values are
//!   written with 17 significant digits.
//! * Binary (`.pcpm`): magic `PCPM`, version `u32` = 1, `n: u64`, `d: u64`,
//!   then `n·d` IEEE-754 doubles in row-major order, all little-endian.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{PcpError, Result};
use crate::matcore::Matrix;
use crate::Real;

pub const MAGIC: &[u8; 4] = b"PCPM";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Binary,
}

impl MatrixFormat {
    /// `.pcpm`/`.bin` select the binary format, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("pcpm") | Some("bin") => MatrixFormat::Binary,
            _ => MatrixFormat::Csv,
        }
    }
}

pub fn to_csv<T: Real>(m: &Matrix<T>) -> String {
    let mut out = format!("# {} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m
            .row(i)
            .iter()
            .map(|x| format!("{:.16e}", x.to_f64_lossy()))
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn from_csv<T: Real>(text: &str) -> Result<Matrix<T>> {
    let mut declared: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let dims: Vec<usize> = comment
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .unwrap_or_default();
            if dims.len() == 2 && declared.is_none() {
                declared = Some((dims[0], dims[1]));
            }
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map(T::lit).map_err(|e| {
                    PcpError::Format(format!("line {}: `{}`: {e}", lineno + 1, tok.trim()))
                })
            })
            .collect::<Result<Vec<T>>>()?;
        rows.push(row);
    }
    let m = Matrix::from_rows(&rows)?;
    if let Some(shape) = declared {
        if shape != m.shape() {
            return Err(PcpError::Format(format!(
                "header declares {}x{}, data is {}x{}",
                shape.0,
                shape.1,
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(m)
}

pub fn to_binary<T: Real>(m: &Matrix<T>) -> Vec<u8> {
    let mut out = Vec::with_capacity(24 + 8 * m.as_slice().len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(m.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u64).to_le_bytes());
    for x in m.as_slice() {
        out.extend_from_slice(&x.to_f64_lossy().to_le_bytes());
    }
    out
}

pub fn from_binary<T: Real>(bytes: &[u8]) -> Result<Matrix<T>> {
    if bytes.len() < 24 || &bytes[..4] != MAGIC {
        return Err(PcpError::Format("missing PCPM header".into()));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(PcpError::Format(format!(
            "unsupported PCPM version {version}"
        )));
    }
    let n = u64::from_le_bytes(bytes[8..16].try_into().expect("8 bytes")) as usize;
    let d = u64::from_le_bytes(bytes[16..24].try_into().expect("8 bytes")) as usize;
    let body = &bytes[24..];
    let expected = n.checked_mul(d).and_then(|x| x.checked_mul(8));
    if expected != Some(body.len()) {
        return Err(PcpError::Format(format!(
            "PCPM body has {} bytes, expected {n}x{d} doubles",
            body.len()
        )));
    }
    let data = body
        .chunks_exact(8)
        .map(|c| T::lit(f64::from_le_bytes(c.try_into().expect("8 bytes"))))
        .collect();
    Matrix::from_vec(n, d, data)
}

pub fn load_matrix<T: Real>(path: &Path) -> Result<Matrix<T>> {
    let bytes = fs::read(path).map_err(|e| PcpError::Io(format!("{}: {e}", path.display())))?;
    if bytes.starts_with(MAGIC) {
        return from_binary(&bytes);
    }
    let text = String::from_utf8(bytes).map_err(|e| PcpError::Format(e.to_string()))?;
    from_csv(&text)
}

pub fn save_matrix<T: Real>(path: &Path, m: &Matrix<T>) -> Result<()> {
    let bytes = match MatrixFormat::from_path(path) {
        MatrixFormat::Csv => to_csv(m).into_bytes(),
        MatrixFormat::Binary => to_binary(m),
    };
    let mut f =
        fs::File::create(path).map_err(|e| PcpError::Io(format!("{}: {e}", path.display())))?;
    f.write_all(&bytes)?;
    Ok(())
}
