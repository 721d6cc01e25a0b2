//! CSV output for expectation grids and vacuum scans.

use std::io::Write;

use photonfield_core::ensembles::GridRow;

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    ryu::Buffer::new().format(x).to_string()
}

pub const GRID_HEADER: [&str; 7] = ["t", "x", "y", "z", "Fx", "Fy", "Fz"];
pub const SCAN_HEADER: [&str; 2] = ["cutoff", "E2"];

pub fn write_grid<W: Write>(out: W, rows: &[GridRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(GRID_HEADER)?;
    for row in rows {
        w.write_record(row.columns().iter().map(|&v| format_float(v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_scan<W: Write>(out: W, rows: &[(u32, f64)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for (cutoff, value) in rows {
        w.write_record([cutoff.to_string(), format_float(*value)])?;
    }
    w.flush()?;
    Ok(())
}
