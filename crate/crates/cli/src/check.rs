//! Comparison of computed invariants with the closed forms for the infinite
//! series and with the claim fixtures for exceptional groups.

use std::collections::BTreeSet;

use anyhow::Result;
use crg_core::abelian::exactness_report;
use crg_core::braid::{closed_form_kappa, kappa};
use crg_core::invariants::check_all;
use crg_core::Family;

use crate::config::{label_key, Analysis};
use crate::fixtures::Fixtures;
use crate::render::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Ramification,
    Exactness,
    Orbits,
    Kappa,
    Properties,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A known disagreement between two stated formulas, reported not failed.
    Flagged,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Flagged => "flagged",
        }
    }
}

pub struct CheckOutcome {
    pub table: Table,
    pub failures: usize,
}

struct Report {
    table: Table,
    failures: usize,
}

impl Report {
    fn add(
        &mut self,
        check: &str,
        subject: String,
        expected: String,
        computed: String,
        status: Status,
    ) {
        if status == Status::Fail {
            self.failures += 1;
        }
        self.table.push(vec![
            check.into(),
            subject,
            expected,
            computed,
            status.as_str().into(),
        ]);
    }

    fn compare(&mut self, check: &str, subject: String, expected: String, computed: String) {
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        self.add(check, subject, expected, computed, status);
    }
}

/// Closed-form `(e_H, f_H)` for a labelled hyperplane of `G(de, e, r)`:
///
/// | hyperplane | condition | f | e_H |
/// |---|---|---|---|
/// | `z_1 = 0` | `r = 1` | `d` | `d` |
/// | `z_1 = 0` | `r ≥ 2`, `d ≠ 1` | `de` | `d` |
/// | `z_2 = z_1` | `r ≥ 3`, `de` odd | `2de` | 2 |
/// | `z_2 = z_1` | `r ≥ 3`, `de` even | `de` | 2 |
/// | `z_2 = z_1` | `r = 2`, `e` odd and `d` even | `d` | 2 |
/// | `z_2 = z_1` | `r = 2`, `e` even or `d` odd | `2d` | 2 |
/// | `z_2 = ζ z_1` | `r = 2`, `e` even | `2d` | 2 |
pub fn series_expectation(d: u32, e: u32, r: usize, label: &str) -> Option<(u32, u32)> {
    let (kind, _, _, k) = label_key(Some(label))?;
    let de = d * e;
    Some(if kind == 0 {
        if r == 1 {
            (d, d)
        } else {
            (d, de)
        }
    } else if r >= 3 {
        (2, if de % 2 == 1 { 2 * de } else { de })
    } else if e.is_multiple_of(2) && k % 2 == 1 {
        (2, 2 * d)
    } else if e % 2 == 1 && d.is_multiple_of(2) {
        (2, d)
    } else {
        (2, 2 * d)
    })
}

/// Injectivity of `C_H^ab → N_H^ab` for the infinite series: fails exactly on
/// `H_i` when `r = 3` and `e` is even.
pub fn series_injective(e: u32, r: usize, label: &str) -> bool {
    let kind = label_key(Some(label)).map(|k| k.0);
    !(kind == Some(0) && r == 3 && e.is_multiple_of(2))
}

/// Equality of `N_H`- and `C_H`-orbits on all hyperplanes for the infinite series.
pub fn series_full_orbits(d: u32, e: u32, r: usize, label: &str) -> bool {
    let kind = label_key(Some(label)).map(|k| k.0);
    if kind == Some(0) {
        !((r == 3 && e.is_multiple_of(2)) || (r == 2 && e >= 3))
    } else {
        let de = d * e;
        (de.is_multiple_of(2) && (r != 3 || e == 1 || e == 3)) || (r == 2 && d == 1 && e == 1)
    }
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn triples(list: &[(u32, u32, u32)]) -> String {
    list.iter()
        .map(|(e, f, d)| format!("({e},{f},{d})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn series_params(a: &Analysis) -> Option<(u32, u32, usize)> {
    match a.group.family() {
        Family::Imprimitive { d, e, r } => Some((*d, *e, *r)),
        Family::Exceptional { .. } => None,
    }
}

fn subject(a: &Analysis, c: usize) -> String {
    format!(
        "{} {}",
        Analysis::class_name(c),
        a.hyperplane_name(a.representative(c))
    )
}

fn check_ramification(a: &Analysis, fx: &Fixtures, rep: &mut Report) {
    let arr = &a.arrangement;
    if let Some((d, e, r)) = series_params(a) {
        for (c, orbit) in a.classes.iter().enumerate() {
            let mut expected = BTreeSet::new();
            let mut computed = BTreeSet::new();
            for &h in orbit {
                let rec = arr.record(h);
                let label = rec.hyperplane.label.as_deref().unwrap_or("");
                match series_expectation(d, e, r, label) {
                    Some((ee, ff)) => expected.insert(format!("e={ee} f={ff}")),
                    None => expected.insert(format!("unlabelled {label}")),
                };
                computed.insert(format!("e={} f={}", rec.e, rec.stab().f));
            }
            let join = |s: BTreeSet<String>| s.into_iter().collect::<Vec<_>>().join("; ");
            rep.compare("f-table", subject(a, c), join(expected), join(computed));
        }
        return;
    }
    let name = a.group.name();
    let mut computed: Vec<(u32, u32, u32)> = a
        .classes
        .iter()
        .map(|o| {
            let rec = arr.record(o[0]);
            (rec.e, rec.stab().f, rec.stab().ramification)
        })
        .collect();
    computed.sort_unstable();
    match fx.row(&name) {
        Some(row) => rep.compare(
            "ramification table",
            name.clone(),
            triples(&row.multiset()),
            triples(&computed),
        ),
        None => rep.add(
            "ramification table",
            name.clone(),
            "no row".into(),
            triples(&computed),
            Status::Fail,
        ),
    }
    let unramified = computed.iter().all(|t| t.2 == 1);
    let claimed =
        fx.claims.unramified_non_coxeter.contains(&name) || fx.claims.coxeter.contains(&name);
    rep.compare(
        "all hyperplanes unramified",
        name,
        yes(claimed),
        yes(unramified),
    );
}

fn check_exactness(a: &Analysis, fx: &Fixtures, rep: &mut Report) -> Result<()> {
    let name = a.group.name();
    for c in 0..a.classes.len() {
        let h = a.representative(c);
        let report = exactness_report(&a.group, &a.arrangement, h)?;
        let expected = match series_params(a) {
            Some((_, e, r)) => series_injective(e, r, &a.hyperplane_name(h)),
            None => !fx.claims.exactness_failures.exceptional.contains(&name),
        };
        rep.compare(
            "injective",
            subject(a, c),
            yes(expected),
            yes(report.injective),
        );
    }
    Ok(())
}

fn check_orbits(a: &Analysis, fx: &Fixtures, rep: &mut Report) -> Result<()> {
    let name = a.group.name();
    let mapped = |list: &[crate::fixtures::ClassRef]| -> Result<Vec<usize>> {
        list.iter()
            .filter(|r| r.group == name)
            .map(|r| fx.map_class(a, r))
            .collect()
    };
    let commuting_claims = mapped(&fx.claims.commuting_orbit_mismatch)?;
    let noncommuting_claims = mapped(&fx.claims.noncommuting_orbit_mismatch)?;
    for c in 0..a.classes.len() {
        let h = a.representative(c);
        let report = exactness_report(&a.group, &a.arrangement, h)?;
        match series_params(a) {
            Some((d, e, r)) => {
                let expected = series_full_orbits(d, e, r, &a.hyperplane_name(h));
                rep.compare(
                    "same orbits on all hyperplanes",
                    subject(a, c),
                    yes(expected),
                    yes(report.orbit_criterion_full),
                );
            }
            None => {
                rep.compare(
                    "same orbits on commuting hyperplanes",
                    subject(a, c),
                    yes(!commuting_claims.contains(&c)),
                    yes(report.orbit_criterion_commuting),
                );
                rep.compare(
                    "same orbits on non-commuting hyperplanes",
                    subject(a, c),
                    yes(!noncommuting_claims.contains(&c)),
                    yes(report.orbit_criterion_noncommuting),
                );
            }
        }
    }
    Ok(())
}

fn check_kappa(a: &Analysis, fx: &Fixtures, rep: &mut Report) -> Result<()> {
    let report = kappa(&a.group, &a.arrangement)?;
    let name = a.group.name();
    match series_params(a) {
        Some((d, e, r)) => match closed_form_kappa(d, e, r) {
            Some(x) => {
                let status = if x == report.kappa {
                    Status::Pass
                } else if r == 2 && d % 2 == 1 && e % 2 == 1 {
                    Status::Flagged
                } else {
                    Status::Fail
                };
                rep.add(
                    "kappa (closed form)",
                    name,
                    x.to_string(),
                    report.kappa.to_string(),
                    status,
                );
            }
            None => rep.add(
                "kappa (lcm of class orders)",
                name,
                "-".into(),
                report.kappa.to_string(),
                Status::Pass,
            ),
        },
        None => match fx.row(&name) {
            Some(row) => {
                let expected = row
                    .f
                    .iter()
                    .fold(1u64, |acc, &f| num_integer::lcm(acc, f as u64));
                rep.compare(
                    "kappa (ramification table)",
                    name,
                    expected.to_string(),
                    report.kappa.to_string(),
                );
            }
            None => rep.add(
                "kappa (ramification table)",
                name,
                "no row".into(),
                report.kappa.to_string(),
                Status::Fail,
            ),
        },
    }
    Ok(())
}

fn check_properties(a: &Analysis, rep: &mut Report) {
    let results = check_all(&a.group, &a.arrangement);
    let mut names: Vec<&str> = Vec::new();
    for r in &results {
        if !names.contains(&r.name) {
            names.push(r.name);
        }
    }
    for name in names {
        let of_name: Vec<_> = results.iter().filter(|r| r.name == name).collect();
        let failed: Vec<_> = of_name.iter().filter(|r| !r.ok).collect();
        let computed = if failed.is_empty() {
            format!("{} of {}", of_name.len(), of_name.len())
        } else {
            let first = failed[0];
            let at = first
                .hyperplane
                .map(|h| a.hyperplane_name(h))
                .unwrap_or_default();
            format!(
                "{} of {}; first failure {at} {}",
                of_name.len() - failed.len(),
                of_name.len(),
                first.detail
            )
        };
        let status = if failed.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        rep.add(
            "property",
            name.into(),
            format!("{} of {}", of_name.len(), of_name.len()),
            computed,
            status,
        );
    }
}

pub fn run_checks(a: &Analysis, fx: &Fixtures, kind: CheckKind) -> Result<CheckOutcome> {
    let mut rep = Report {
        table: Table::new(
            format!("checks for {}", a.group.name()),
            &["check", "subject", "expected", "computed", "status"],
        ),
        failures: 0,
    };
    let all = kind == CheckKind::All;
    if all || kind == CheckKind::Ramification {
        check_ramification(a, fx, &mut rep);
    }
    if all || kind == CheckKind::Exactness {
        check_exactness(a, fx, &mut rep)?;
    }
    if all || kind == CheckKind::Orbits {
        check_orbits(a, fx, &mut rep)?;
    }
    if all || kind == CheckKind::Kappa {
        check_kappa(a, fx, &mut rep)?;
    }
    if all || kind == CheckKind::Properties {
        check_properties(a, &mut rep);
    }
    let failures = rep.failures;
    rep.table.notes.push(if failures == 0 {
        "all checks passed".into()
    } else {
        format!("{failures} check(s) failed")
    });
    Ok(CheckOutcome {
        table: rep.table,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(series_expectation(3, 1, 2, "H_1"), Some((3, 3)));
        assert_eq!(series_expectation(3, 1, 2, "H_{1,2,1}"), Some((2, 6)));
        assert_eq!(series_expectation(2, 1, 2, "H_{1,2,1}"), Some((2, 2)));
        assert_eq!(series_expectation(1, 1, 3, "H_{1,3,1}"), Some((2, 2)));
        assert_eq!(series_expectation(2, 2, 2, "H_{1,2,ζ}"), Some((2, 4)));
        assert_eq!(series_expectation(4, 1, 1, "H_1"), Some((4, 4)));
        assert!(!series_injective(2, 3, "H_2"));
        assert!(series_injective(2, 3, "H_{1,2,1}"));
        assert!(!series_full_orbits(1, 1, 3, "H_{1,2,1}"));
        assert!(series_full_orbits(2, 1, 4, "H_{1,2,1}"));
    }
}
