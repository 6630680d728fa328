use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cyclo::{parse_rational, Cyclotomic};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Exceptional group data file.
///
/// Every generator is a list of rows; every entry is the coefficient list,
/// as `"a/b"` strings, of a polynomial in `ζ_conductor`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalRecord {
    pub name: String,
    pub declared_order: u64,
    pub conductor: u32,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl ExceptionalRecord {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut rec: ExceptionalRecord = serde_json::from_str(&text)?;
        if rec.source.is_none() {
            rec.source = Some(path.display().to_string());
        }
        Ok(rec)
    }

    /// Looks up `<dir>/<name>.json`.
    pub fn load_named(dir: &Path, name: &str) -> Result<Self> {
        let path = dir.join(format!("{name}.json"));
        if !path.exists() {
            return Err(Error::Data(format!(
                "no data file for {name} in {}",
                dir.display()
            )));
        }
        Self::load(&path)
    }

    pub fn generator_matrices(&self) -> Result<Vec<Matrix>> {
        if self.conductor == 0 {
            return Err(Error::Data("conductor must be positive".into()));
        }
        self.generators
            .iter()
            .map(|rows| {
                if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                    return Err(Error::Data(format!(
                        "{}: generator is not {}x{}",
                        self.name, self.rank, self.rank
                    )));
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|coeffs| {
                        let q = coeffs
                            .iter()
                            .map(|s| parse_rational(s))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Cyclotomic::canonicalize(self.conductor, &q))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::new(self.rank, entries))
            })
            .collect()
    }

    /// Record for a list of generator matrices in a common conductor.
    pub fn from_matrices(name: &str, declared_order: u64, conductor: u32, gens: &[Matrix]) -> Self {
        let rank = gens.first().map_or(0, Matrix::dim);
        let generators = gens
            .iter()
            .map(|g| {
                let g = g.embed(conductor);
                (0..rank)
                    .map(|i| {
                        (0..rank)
                            .map(|j| g.get(i, j).coeffs().iter().map(|q| q.to_string()).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ExceptionalRecord {
            name: name.to_string(),
            declared_order,
            conductor,
            rank,
            generators,
            source: None,
        }
    }
}
