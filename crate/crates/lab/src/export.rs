//! Coordinate-list operator export.
//!
//! ```text
//! dim n_modes n_max
//! row col re im
//! ...
//! ```
//!
//! Entries are sorted row-major and every float is written in shortest
//! round-trip form, so reading the file back reproduces the matrix bit for bit.

use std::io::{self, BufRead, Write};

use photonfield_core::fock::FockBasis;
use photonfield_core::operator::SparseOperator;
use photonfield_core::Complex64;

use crate::tables::format_float;

pub fn write_operator<W: Write>(out: &mut W, op: &SparseOperator, basis: &FockBasis) -> io::Result<()> {
    writeln!(out, "{} {} {}", op.dim(), basis.mode_count(), basis.n_max())?;
    for (row, col, v) in op.triplets() {
        writeln!(out, "{row} {col} {} {}", format_float(v.re), format_float(v.im))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportedOperator {
    pub dim: usize,
    pub n_modes: usize,
    pub n_max: u32,
    pub entries: Vec<(usize, usize, Complex64)>,
}

fn invalid(line: usize, what: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, format!("line {line}: {what}"))
}

pub fn read_operator<R: BufRead>(input: R) -> io::Result<ExportedOperator> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| invalid(1, "missing header"))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(invalid(1, "header must be `dim n_modes n_max`"));
    }
    let dim = fields[0].parse().map_err(|_| invalid(1, "bad dim"))?;
    let n_modes = fields[1].parse().map_err(|_| invalid(1, "bad n_modes"))?;
    let n_max = fields[2].parse().map_err(|_| invalid(1, "bad n_max"))?;
    let mut entries = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 2;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(invalid(lineno, "entry must be `row col re im`"));
        }
        let row = f[0].parse().map_err(|_| invalid(lineno, "bad row"))?;
        let col = f[1].parse().map_err(|_| invalid(lineno, "bad col"))?;
        let re = f[2].parse().map_err(|_| invalid(lineno, "bad re"))?;
        let im = f[3].parse().map_err(|_| invalid(lineno, "bad im"))?;
        entries.push((row, col, Complex64::new(re, im)));
    }
    Ok(ExportedOperator {
        dim,
        n_modes,
        n_max,
        entries,
    })
}
