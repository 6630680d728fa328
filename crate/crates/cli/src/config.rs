use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use crg_core::group::DEFAULT_ORDER_BOUND;
use crg_core::{Arrangement, ExceptionalRecord, ReflectionGroup};

use crate::render::Format;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Series { d: u32, e: u32, r: usize },
    Exceptional(String),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub selector: Selector,
    pub data_dir: PathBuf,
    pub fixtures_dir: PathBuf,
    pub format: Format,
    pub order_bound: u64,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(selector: Selector) -> Self {
        RunConfig {
            selector,
            data_dir: PathBuf::from("data/exceptional"),
            fixtures_dir: PathBuf::from("data/fixtures"),
            format: Format::Md,
            order_bound: DEFAULT_ORDER_BOUND,
            jobs: None,
        }
    }

    pub fn selector_from_flags(
        d: Option<u32>,
        e: Option<u32>,
        r: Option<usize>,
        exceptional: Option<String>,
    ) -> Result<Selector> {
        let series = d.is_some() || e.is_some() || r.is_some();
        match (series, exceptional) {
            (true, Some(_)) => bail!("give either --d/--e/--r or --exceptional, not both"),
            (false, None) => bail!("a group is required: --d D --e E --r R or --exceptional NAME"),
            (false, Some(name)) => Ok(Selector::Exceptional(normalize_name(&name))),
            (true, None) => {
                let (Some(d), Some(r)) = (d, r) else {
                    bail!("--d and --r are required for the infinite series (--e defaults to 1)");
                };
                let e = e.unwrap_or(1);
                if d == 0 || e == 0 || r == 0 {
                    bail!("d, e and r must be positive");
                }
                Ok(Selector::Series { d, e, r })
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order_bound == 0 {
            bail!("the order bound must be at least 1");
        }
        if self.jobs == Some(0) {
            bail!("--jobs must be at least 1");
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Analysis> {
        self.validate()?;
        let group = match &self.selector {
            Selector::Series { d, e, r } => {
                ReflectionGroup::build_gde(*d, *e, *r, self.order_bound)?
            }
            Selector::Exceptional(name) => {
                let record = ExceptionalRecord::load_named(&self.data_dir, name)?;
                ReflectionGroup::build_from_matrices(&record, self.order_bound)
                    .with_context(|| format!("building {name}"))?
            }
        };
        let arrangement = Arrangement::complete(&group)?;
        Ok(Analysis::new(group, arrangement))
    }
}

/// `g4`, `4` and `G4` all name the same group.
fn normalize_name(name: &str) -> String {
    let trimmed = name.trim();
    let digits = trimmed.trim_start_matches(['G', 'g']);
    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
        format!("G{digits}")
    } else {
        trimmed.to_string()
    }
}

/// A group with its completed arrangement and hyperplane classes.
pub struct Analysis {
    pub group: ReflectionGroup,
    pub arrangement: Arrangement,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Analysis {
    pub fn new(group: ReflectionGroup, arrangement: Arrangement) -> Self {
        let classes = arrangement.classes(&group);
        let mut class_of = vec![0; arrangement.len()];
        for (c, orbit) in classes.iter().enumerate() {
            for &h in orbit {
                class_of[h] = c;
            }
        }
        Analysis {
            group,
            arrangement,
            classes,
            class_of,
        }
    }

    pub fn hyperplane_name(&self, h: usize) -> String {
        self.arrangement.record(h).hyperplane.display_name(h)
    }

    pub fn class_name(c: usize) -> String {
        format!("C{}", c + 1)
    }

    /// Preferred representative: `H_1` or `H_{1,2,1}` style labels first.
    pub fn representative(&self, c: usize) -> usize {
        let orbit = &self.classes[c];
        orbit
            .iter()
            .copied()
            .min_by_key(|&h| {
                label_key(self.arrangement.record(h).hyperplane.label.as_deref())
                    .unwrap_or((2, h, 0, 0))
            })
            .unwrap()
    }

    /// A hyperplane by label (`H_1`, `H_{1,2,1}`), by `H#k` or by 1-based index.
    pub fn find_hyperplane(&self, key: &str) -> Result<usize> {
        if let Some(h) = self.arrangement.index_of_label(key) {
            return Ok(h);
        }
        let digits = key.trim_start_matches("H#");
        if let Ok(k) = digits.parse::<usize>() {
            if (1..=self.arrangement.len()).contains(&k) {
                return Ok(k - 1);
            }
        }
        bail!(
            "unknown hyperplane {key:?} (use a label such as H_1 or an index 1..={})",
            self.arrangement.len()
        )
    }
}

/// `(0, i)` for `H_i`, `(1, i, j, k)` for `H_{i,j,ζ^k}`.
pub fn label_key(label: Option<&str>) -> Option<(usize, usize, usize, usize)> {
    let label = label?;
    let body = label.strip_prefix("H_")?;
    if let Ok(i) = body.parse::<usize>() {
        return Some((0, i, 0, 0));
    }
    let inner = body.strip_prefix('{')?.strip_suffix('}')?;
    let parts: Vec<&str> = inner.split(',').collect();
    let [i, j, z] = parts.as_slice() else {
        return None;
    };
    let k = match *z {
        "1" => 0,
        "ζ" => 1,
        other => other.strip_prefix("ζ^")?.parse().ok()?,
    };
    Some((1, i.parse().ok()?, j.parse().ok()?, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(
            RunConfig::selector_from_flags(Some(3), None, Some(2), None).unwrap(),
            Selector::Series { d: 3, e: 1, r: 2 }
        );
        assert_eq!(
            RunConfig::selector_from_flags(None, None, None, Some("g25".into())).unwrap(),
            Selector::Exceptional("G25".into())
        );
        assert!(
            RunConfig::selector_from_flags(Some(1), Some(1), Some(2), Some("G4".into())).is_err()
        );
        assert!(RunConfig::selector_from_flags(None, None, None, None).is_err());
        assert!(RunConfig::selector_from_flags(Some(1), None, None, None).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(label_key(Some("H_3")), Some((0, 3, 0, 0)));
        assert_eq!(label_key(Some("H_{1,2,1}")), Some((1, 1, 2, 0)));
        assert_eq!(label_key(Some("H_{2,3,ζ}")), Some((1, 2, 3, 1)));
        assert_eq!(label_key(Some("H_{1,3,ζ^5}")), Some((1, 1, 3, 5)));
        assert_eq!(label_key(None), None);
    }
}
