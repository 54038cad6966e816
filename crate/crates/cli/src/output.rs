//! Table emission in CSV or JSON with numbers rounded to 12 significant
//! digits, so both formats carry identical values.

use std::path::Path;

use crate::commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Str(String),
    Num(f64),
    OptNum(Option<f64>),
    Bool(bool),
    Empty,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Round to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - magnitude);
    (x * factor).round() / factor
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Write to the given path, or to stdout when no path is given.
    pub fn emit(&self, format: OutputFormat, output: Option<&Path>) -> Result<(), CliError> {
        let text = match format {
            OutputFormat::Csv => self.to_csv()?,
            OutputFormat::Json => self.to_json()?,
        };
        match output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.columns)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        for row in &self.rows {
            writer
                .write_record(row.iter().map(cell_text))
                .map_err(|e| CliError::Internal(e.to_string()))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }

    fn to_json(&self) -> Result<String, CliError> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (column, cell) in self.columns.iter().zip(row) {
                    object.insert(column.to_string(), cell_value(cell));
                }
                serde_json::Value::Object(object)
            })
            .collect();
        serde_json::to_string_pretty(&rows)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::Internal(e.to_string()))
    }
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Str(s) => s.clone(),
        Cell::Num(x) => sig12(*x).to_string(),
        Cell::OptNum(Some(x)) => sig12(*x).to_string(),
        Cell::OptNum(None) | Cell::Empty => String::new(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn cell_value(cell: &Cell) -> serde_json::Value {
    let num = |x: f64| {
        serde_json::Number::from_f64(sig12(x))
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    };
    match cell {
        Cell::Str(s) => serde_json::Value::String(s.clone()),
        Cell::Num(x) => num(*x),
        Cell::OptNum(Some(x)) => num(*x),
        Cell::OptNum(None) | Cell::Empty => serde_json::Value::Null,
        Cell::Bool(b) => serde_json::Value::Bool(*b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_rounds_to_twelve_digits() {
        assert_eq!(sig12(0.21052631578947367), 0.210526315789);
        assert_eq!(sig12(0.375), 0.375);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(123456.789012349), 123456.789012);
        assert_eq!(sig12(-0.21052631578947367), -0.210526315789);
    }
}
