//! Population file ingestion and emission.
//!
//! CSV files carry the header `id,a,b,z,y` with `z` (protected) and `y`
//! (qualified) as 0/1. JSON files carry `{"individuals": [...]}` with
//! booleans. Identifiers must be unique.

use std::collections::HashSet;
use std::path::Path;

use alphafair_core::Individual;
use serde::{Deserialize, Serialize};

use crate::commands::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct CsvRecord {
    id: String,
    a: f64,
    b: f64,
    z: u8,
    y: u8,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRecord {
    id: String,
    a: f64,
    b: f64,
    z: bool,
    y: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct PopulationFile {
    individuals: Vec<JsonRecord>,
}

pub fn read_population(path: &Path) -> Result<Vec<Individual>, CliError> {
    let records: Vec<(String, f64, f64, bool, bool)> = if is_json(path) {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let file: PopulationFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        file.individuals
            .into_iter()
            .map(|r| (r.id, r.a, r.b, r.z, r.y))
            .collect()
    } else {
        let mut reader = csv::Reader::from_path(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let mut rows = Vec::new();
        for record in reader.deserialize::<CsvRecord>() {
            let r = record.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            if r.z > 1 || r.y > 1 {
                return Err(CliError::Parse(format!(
                    "{}: z and y must be 0 or 1, got z={} y={} for id {:?}",
                    path.display(),
                    r.z,
                    r.y,
                    r.id
                )));
            }
            rows.push((r.id, r.a, r.b, r.z == 1, r.y == 1));
        }
        rows
    };

    let mut seen = HashSet::new();
    let mut population = Vec::with_capacity(records.len());
    for (id, a, b, z, y) in records {
        if !seen.insert(id.clone()) {
            return Err(CliError::Parse(format!(
                "{}: duplicate id {id:?}",
                path.display()
            )));
        }
        population.push(Individual::new(id, a, b, z, y).map_err(CliError::from)?);
    }
    if population.is_empty() {
        return Err(CliError::Parse(format!(
            "{}: population file contains no individuals",
            path.display()
        )));
    }
    Ok(population)
}

pub fn write_population(path: &Path, population: &[Individual]) -> Result<(), CliError> {
    if is_json(path) {
        let file = PopulationFile {
            individuals: population
                .iter()
                .map(|i| JsonRecord {
                    id: i.id.clone(),
                    a: i.utility.benefit(),
                    b: i.utility.baseline(),
                    z: i.protected,
                    y: i.qualified,
                })
                .collect(),
        };
        let text = serde_json::to_string_pretty(&file)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    } else {
        let mut writer = csv::Writer::from_path(path)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        for i in population {
            writer
                .serialize(CsvRecord {
                    id: i.id.clone(),
                    a: i.utility.benefit(),
                    b: i.utility.baseline(),
                    z: u8::from(i.protected),
                    y: u8::from(i.qualified),
                })
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        writer.flush().map_err(|e| CliError::Io(e.to_string()))
    }
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .map(|e| e.eq_ignore_ascii_case("json"))
        .unwrap_or(false)
}
