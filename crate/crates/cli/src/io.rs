//! CSV interchange: histogram matrices (header `bin_0..bin_{q-1}`) and
//! single-column label files (header `label`). Floats are written with 17
//! significant digits so a read back is bit-exact.

use std::path::Path;

use crate::error::{CliError, Result};

fn float_field(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes one row per histogram/mode with a `bin_i` header.
pub fn write_matrix(path: &Path, rows: &[Vec<f64>]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    let width = rows.first().map_or(0, Vec::len);
    let header: Vec<String> = (0..width).map(|i| format!("bin_{i}")).collect();
    writer.write_record(&header)?;
    for row in rows {
        let record: Vec<String> = row.iter().map(|&v| float_field(v)).collect();
        writer.write_record(&record)?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Reads a rectangular float matrix, skipping the header row. Ragged rows
/// and non-numeric fields are parse errors.
pub fn read_matrix(path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let mut row = Vec::with_capacity(record.len());
        for (j, field) in record.iter().enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| {
                CliError::Parse(format!(
                    "{}: row {}, column {}: not a number: {field:?}",
                    path.display(),
                    i + 1,
                    j
                ))
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Parse(format!("{}: no data rows", path.display())));
    }
    Ok(rows)
}

pub fn write_labels(path: &Path, labels: &[i64]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["label"])?;
    for &label in labels {
        writer.write_record([label.to_string()])?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

pub fn read_labels(path: &Path) -> Result<Vec<i64>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 1 {
            return Err(CliError::Parse(format!(
                "{}: row {}: expected a single label column, got {} fields",
                path.display(),
                i + 1,
                record.len()
            )));
        }
        let label: i64 = record[0].trim().parse().map_err(|_| {
            CliError::Parse(format!(
                "{}: row {}: not an integer label: {:?}",
                path.display(),
                i + 1,
                &record[0]
            ))
        })?;
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(CliError::Parse(format!(
            "{}: no label rows",
            path.display()
        )));
    }
    Ok(labels)
}
