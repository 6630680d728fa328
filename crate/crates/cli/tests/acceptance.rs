//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use crg_cli::check::series_expectation;
use crg_cli::config::{label_key, Analysis, RunConfig, Selector};
use crg_cli::fixtures::Fixtures;
use crg_core::abelian::{abelian_invariants, derived_subgroup, exactness_report};
use crg_core::braid::{closed_form_kappa, kappa};
use crg_core::group::imprimitive_order;
use crg_core::invariants::check_all;
use crg_core::{Cyclotomic, Family, ReflectionGroup, Subgroup};

const GRID_BOUND: u64 = 100_000;
const ORACLE_BOUND: usize = 200;

fn data(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(sub)
}

fn build(selector: Selector, bound: u64) -> Analysis {
    let mut config = RunConfig::new(selector);
    config.data_dir = data("exceptional");
    config.order_bound = bound;
    config.build().expect("group builds")
}

fn grid() -> Vec<Analysis> {
    let mut out = Vec::new();
    for d in 1..=4u32 {
        for e in 1..=4u32 {
            for r in 1..=4usize {
                if imprimitive_order(d, e, r) <= GRID_BOUND as u128 {
                    out.push(build(Selector::Series { d, e, r }, GRID_BOUND));
                }
            }
        }
    }
    out
}

fn exceptionals() -> Vec<Analysis> {
    (4..=28)
        .map(|k| build(Selector::Exceptional(format!("G{k}")), 1_000_000))
        .collect()
}

fn params(a: &Analysis) -> (u32, u32, usize) {
    match a.group.family() {
        Family::Imprimitive { d, e, r } => (*d, *e, *r),
        Family::Exceptional { .. } => unreachable!("series group expected"),
    }
}

fn label(a: &Analysis, h: usize) -> String {
    a.hyperplane_name(h)
}

type Verdict = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Verdict + 'a>);

fn ramification_table(ex: &[Analysis], fx: &Fixtures) -> Verdict {
    let mut classes = 0;
    let mut bad = Vec::new();
    for a in ex {
        let name = a.group.name();
        let Some(row) = fx.row(&name) else {
            bad.push(format!("{name}: no reference row"));
            continue;
        };
        let mut computed: Vec<(u32, u32, u32)> = a
            .classes
            .iter()
            .map(|o| {
                let rec = a.arrangement.record(o[0]);
                (rec.e, rec.stab().f, rec.stab().f / rec.e)
            })
            .collect();
        computed.sort_unstable();
        classes += computed.len();
        if computed != row.multiset() {
            bad.push(format!(
                "{name}: expected {:?}, computed {computed:?}",
                row.multiset()
            ));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} groups, {classes} classes", ex.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn ftable(grid: &[Analysis]) -> Verdict {
    let mut n = 0;
    let mut bad = Vec::new();
    for a in grid {
        let (d, e, r) = params(a);
        for (h, rec) in a.arrangement.records().iter().enumerate() {
            n += 1;
            let expected = series_expectation(d, e, r, &label(a, h));
            let computed = Some((rec.e, rec.stab().f));
            if expected != computed {
                bad.push(format!(
                    "{} {}: expected {expected:?}, computed {computed:?}",
                    a.group.name(),
                    label(a, h)
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{} groups, {n} hyperplanes", grid.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn kappas(grid: &[Analysis], ex: &[Analysis], fx: &Fixtures) -> Verdict {
    let mut bad = Vec::new();
    let mut flagged = Vec::new();
    for a in grid {
        let (d, e, r) = params(a);
        let k = kappa(&a.group, &a.arrangement).map_err(|e| e.to_string())?;
        let lcm = a
            .arrangement
            .records()
            .iter()
            .fold(1u64, |acc, rec| num_integer::lcm(acc, rec.stab().f as u64));
        if k.kappa != lcm {
            bad.push(format!(
                "{}: kappa {} is not the lcm {lcm}",
                a.group.name(),
                k.kappa
            ));
        }
        let de = (d * e) as u64;
        if r >= 3 {
            let expected = if de % 2 == 1 { 2 * de } else { de };
            if k.kappa != expected || closed_form_kappa(d, e, r) != Some(expected) {
                bad.push(format!(
                    "{}: kappa {} expected {expected}",
                    a.group.name(),
                    k.kappa
                ));
            }
        } else if r == 2
            && d != 1
            && d % 2 == 1
            && e % 2 == 1
            && closed_form_kappa(d, e, r) != Some(k.kappa)
        {
            flagged.push(format!("{} lcm {} vs {}", a.group.name(), k.kappa, de));
        }
    }
    for a in ex {
        let name = a.group.name();
        let k = kappa(&a.group, &a.arrangement).map_err(|e| e.to_string())?;
        let expected = fx.row(&name).map(|row| {
            row.f
                .iter()
                .fold(1u64, |acc, &f| num_integer::lcm(acc, f as u64))
        });
        if Some(k.kappa) != expected {
            bad.push(format!("{name}: kappa {} expected {expected:?}", k.kappa));
        }
    }
    let named = |n: &str| {
        ex.iter()
            .find(|a| a.group.name() == n)
            .map(|a| kappa(&a.group, &a.arrangement).map(|k| k.kappa))
    };
    let g4 = named("G4").and_then(|r| r.ok());
    let g13 = named("G13").and_then(|r| r.ok());
    if g4 != Some(6) || g13 != Some(8) {
        bad.push(format!("kappa(G4) = {g4:?}, kappa(G13) = {g13:?}"));
    }
    if bad.is_empty() {
        Ok(format!(
            "kappa(G4) = 6, kappa(G13) = 8; flagged r = 2 discrepancies: {}",
            if flagged.is_empty() {
                "none".into()
            } else {
                flagged.join(", ")
            }
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn exactness_census(grid: &[Analysis], ex: &[Analysis], fx: &Fixtures) -> Verdict {
    let mut computed = BTreeSet::new();
    let mut expected = BTreeSet::new();
    for a in grid.iter().chain(ex) {
        let name = a.group.name();
        let series = match a.group.family() {
            Family::Imprimitive { d, e, r } => Some((*d, *e, *r)),
            Family::Exceptional { .. } => None,
        };
        for h in 0..a.arrangement.len() {
            let report =
                exactness_report(&a.group, &a.arrangement, h).map_err(|e| e.to_string())?;
            if !report.injective {
                computed.insert(format!("{name} {}", label(a, h)));
            }
            let fails = match series {
                Some((d, e, r)) => {
                    let is_coordinate = label_key(Some(&label(a, h))).map(|k| k.0) == Some(0);
                    is_coordinate && r == 3 && e % 2 == 0 && d != 1
                }
                None => fx.claims.exactness_failures.exceptional.contains(&name),
            };
            if fails {
                expected.insert(format!("{name} {}", label(a, h)));
            }
        }
    }
    if computed == expected {
        Ok(format!(
            "{} non-injective hyperplanes, as predicted",
            computed.len()
        ))
    } else {
        let missing: Vec<_> = expected.difference(&computed).collect();
        let extra: Vec<_> = computed.difference(&expected).collect();
        Err(format!("missing {missing:?}, unexpected {extra:?}"))
    }
}

fn orbit_census(ex: &[Analysis], fx: &Fixtures) -> Verdict {
    let mut commuting = BTreeSet::new();
    let mut noncommuting = BTreeSet::new();
    for a in ex {
        for c in 0..a.classes.len() {
            let report = exactness_report(&a.group, &a.arrangement, a.classes[c][0])
                .map_err(|e| e.to_string())?;
            if !report.orbit_criterion_commuting {
                commuting.insert((a.group.name(), c));
            }
            if !report.orbit_criterion_noncommuting {
                noncommuting.insert((a.group.name(), c));
            }
        }
    }
    let expect =
        |list: &[crg_cli::fixtures::ClassRef]| -> Result<BTreeSet<(String, usize)>, String> {
            list.iter()
                .map(|r| {
                    let a = ex
                        .iter()
                        .find(|a| a.group.name() == r.group)
                        .ok_or(format!("{} not shipped", r.group))?;
                    fx.map_class(a, r)
                        .map(|c| (r.group.clone(), c))
                        .map_err(|e| e.to_string())
                })
                .collect()
        };
    let ec = expect(&fx.claims.commuting_orbit_mismatch)?;
    let en = expect(&fx.claims.noncommuting_orbit_mismatch)?;
    if commuting == ec && noncommuting == en {
        Ok(format!(
            "commuting mismatch {commuting:?}; non-commuting mismatch {noncommuting:?}"
        ))
    } else {
        Err(format!(
            "commuting: expected {ec:?}, computed {commuting:?}; non-commuting: expected {en:?}, computed {noncommuting:?}"
        ))
    }
}

fn properties(grid: &[Analysis]) -> Verdict {
    let mut n = 0;
    let mut bad = Vec::new();
    for a in grid {
        for r in check_all(&a.group, &a.arrangement) {
            n += 1;
            if !r.ok {
                let at = r.hyperplane.map(|h| label(a, h)).unwrap_or_default();
                bad.push(format!("{} {at}: {} {}", a.group.name(), r.name, r.detail));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{n} property checks over {} groups", grid.len()))
    } else {
        Err(bad.join("; "))
    }
}

/// Exhaustive computations from the generator matrices alone.
struct Oracle {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    keys: HashMap<Vec<Cyclotomic>, usize>,
}

impl Oracle {
    fn new(g: &ReflectionGroup) -> Self {
        let gens: Vec<_> = g.generators().iter().map(|&i| g.matrix(i)).collect();
        let one = crg_core::Matrix::identity(g.rank(), g.conductor());
        let mut elements = vec![one.clone()];
        let mut keys = HashMap::new();
        keys.insert(one.entries().to_vec(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = elements[x].mul(s);
                let key = y.entries().to_vec();
                if let std::collections::hash_map::Entry::Vacant(e) = keys.entry(key) {
                    e.insert(elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = keys[elements[i].mul(&elements[j]).entries()];
            }
        }
        Oracle {
            n,
            table,
            identity: 0,
            keys,
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    fn inverse(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.mul(a, b) == self.identity)
            .unwrap()
    }

    fn index(&self, g: &ReflectionGroup, i: usize) -> usize {
        self.keys[g.matrix(i).entries()]
    }

    fn close(&self, seed: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = seed.to_vec();
        while let Some(x) = frontier.pop() {
            if !set.insert(x) {
                continue;
            }
            let current: Vec<usize> = set.iter().copied().collect();
            for y in current {
                frontier.push(self.mul(x, y));
                frontier.push(self.mul(y, x));
            }
        }
        set
    }

    fn derived(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut comms = BTreeSet::new();
        for &a in s {
            for &b in s {
                let c = self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b));
                comms.insert(c);
            }
        }
        self.close(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Invariant factors of `s / k` by repeatedly splitting off a cyclic
    /// subgroup of maximal order.
    fn quotient_factors(&self, s: &BTreeSet<usize>, k: &BTreeSet<usize>) -> Vec<u64> {
        let mut k = k.clone();
        let mut out = Vec::new();
        while k.len() < s.len() {
            let order_mod = |x: usize, k: &BTreeSet<usize>| {
                let mut m = 1;
                let mut cur = x;
                while !k.contains(&cur) {
                    cur = self.mul(cur, x);
                    m += 1;
                }
                m
            };
            let (x, m) = s
                .iter()
                .map(|&x| (x, order_mod(x, &k)))
                .max_by_key(|p| p.1)
                .unwrap();
            out.push(m as u64);
            let mut seed: Vec<usize> = k.iter().copied().collect();
            seed.push(x);
            k = self.close(&seed);
        }
        out.reverse();
        out
    }
}

fn oracle(grid: &[Analysis]) -> Verdict {
    let mut subgroups = 0;
    let mut groups = 0;
    let mut bad = Vec::new();
    for a in grid.iter().filter(|a| a.group.order() <= ORACLE_BOUND) {
        groups += 1;
        let g = &a.group;
        let o = Oracle::new(g);
        if o.n != g.order() {
            bad.push(format!("{}: oracle closure has {} elements", g.name(), o.n));
            continue;
        }
        let mut candidates: Vec<(String, Subgroup)> = vec![("W".into(), g.whole())];
        for c in 0..a.classes.len() {
            let data = a.arrangement.record(a.classes[c][0]).stab();
            let h = label(a, a.classes[c][0]);
            candidates.push((format!("N({h})"), data.stabilizer.clone()));
            candidates.push((format!("C({h})"), data.parabolic.clone()));
        }
        for (what, s) in candidates {
            subgroups += 1;
            let gens: Vec<usize> = s.generators().iter().map(|&i| o.index(g, i)).collect();
            let os = o.close(&gens);
            let main_members: BTreeSet<usize> =
                s.members().iter().map(|&i| o.index(g, i)).collect();
            if os != main_members {
                bad.push(format!("{} {what}: closure differs", g.name()));
                continue;
            }
            let od = o.derived(&os);
            let main_derived: BTreeSet<usize> = derived_subgroup(g, &s)
                .members()
                .iter()
                .map(|&i| o.index(g, i))
                .collect();
            if od != main_derived {
                bad.push(format!("{} {what}: derived subgroup differs", g.name()));
            }
            let of = o.quotient_factors(&os, &od);
            let mf = abelian_invariants(g, &s).factors;
            if of != mf {
                bad.push(format!("{} {what}: oracle {of:?}, main {mf:?}", g.name()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{subgroups} subgroups of {groups} groups"))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fx = Fixtures::load(&data("fixtures")).expect("fixtures load");
    let grid = grid();
    let ex = exceptionals();
    let criteria: Vec<Criterion> = vec![
        (
            "exceptional ramification table",
            Box::new(|| ramification_table(&ex, &fx)),
        ),
        ("infinite-series f-table", Box::new(|| ftable(&grid))),
        ("kappa", Box::new(|| kappas(&grid, &ex, &fx))),
        (
            "exactness-failure census",
            Box::new(|| exactness_census(&grid, &ex, &fx)),
        ),
        (
            "orbit-coincidence census",
            Box::new(|| orbit_census(&ex, &fx)),
        ),
        ("property suite", Box::new(|| properties(&grid))),
        ("brute-force oracle", Box::new(|| oracle(&grid))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!(
                "criterion {} {name}: PASS ({detail}) [{:.1?}]",
                i + 1,
                t.elapsed()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {} {name}: FAIL ({detail}) [{:.1?}]",
                    i + 1,
                    t.elapsed()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
