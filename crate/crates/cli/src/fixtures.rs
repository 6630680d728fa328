//! Checked-in claim tables under `data/fixtures`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::config::Analysis;

#[derive(Clone, Debug, Deserialize)]
pub struct RamificationRow {
    pub group: String,
    pub e: Vec<u32>,
    pub f: Vec<u32>,
    pub d: Vec<u32>,
}

impl RamificationRow {
    /// `(e, f, d)` per class, sorted.
    pub fn multiset(&self) -> Vec<(u32, u32, u32)> {
        let mut v: Vec<_> = (0..self.e.len())
            .map(|i| (self.e[i], self.f[i], self.d[i]))
            .collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug, Deserialize)]
struct RamificationTable {
    rows: Vec<RamificationRow>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassRef {
    pub group: String,
    pub reference_class: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExactnessClaims {
    pub exceptional: Vec<String>,
    pub series: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Claims {
    pub exactness_failures: ExactnessClaims,
    pub commuting_orbit_mismatch: Vec<ClassRef>,
    pub noncommuting_orbit_mismatch: Vec<ClassRef>,
    pub unramified_non_coxeter: Vec<String>,
    pub coxeter: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    pub ramification: Vec<RamificationRow>,
    pub claims: Claims,
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

impl Fixtures {
    pub fn load(dir: &Path) -> Result<Self> {
        let table: RamificationTable = read(&dir.join("ramification.json"))?;
        let claims: Claims = read(&dir.join("claims.json"))?;
        Ok(Fixtures {
            ramification: table.rows,
            claims,
        })
    }

    pub fn row(&self, group: &str) -> Option<&RamificationRow> {
        self.ramification.iter().find(|r| r.group == group)
    }

    /// `(e, f)` of the given 1-based reference class.
    pub fn signature(&self, class: &ClassRef) -> Option<(u32, u32)> {
        let row = self.row(&class.group)?;
        let k = class.reference_class.checked_sub(1)?;
        Some((*row.e.get(k)?, *row.f.get(k)?))
    }

    /// Computed class index matching a reference class by its `(e, f)` signature.
    pub fn map_class(&self, a: &Analysis, class: &ClassRef) -> Result<usize> {
        let Some(sig) = self.signature(class) else {
            bail!(
                "no reference class {} for {}",
                class.reference_class,
                class.group
            );
        };
        let matches: Vec<usize> = (0..a.classes.len())
            .filter(|&c| {
                let rec = a.arrangement.record(a.classes[c][0]);
                (rec.e, rec.stab().f) == sig
            })
            .collect();
        match matches.as_slice() {
            [c] => Ok(*c),
            _ => bail!(
                "reference class {} of {} (e = {}, f = {}) matches {} computed classes",
                class.reference_class,
                class.group,
                sig.0,
                sig.1,
                matches.len()
            ),
        }
    }
}
