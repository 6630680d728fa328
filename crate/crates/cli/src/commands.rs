use anyhow::Result;
use crg_core::abelian::{abelian_invariants, exactness_report};
use crg_core::braid::{kappa as kappa_report, stabilizer_braid_rank};
use crg_core::Family;

use crate::config::Analysis;
use crate::render::Table;

fn join_names(a: &Analysis, hs: &[usize]) -> String {
    hs.iter()
        .map(|&h| a.hyperplane_name(h))
        .collect::<Vec<_>>()
        .join(" ")
}

fn factors(f: &[u64]) -> String {
    if f.is_empty() {
        "1".into()
    } else {
        f.iter()
            .map(|x| format!("Z/{x}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

pub fn group_info(a: &Analysis) -> Table {
    let g = &a.group;
    let mut t = Table::new(format!("group {}", g.name()), &["property", "value"]);
    let source = match g.family() {
        Family::Imprimitive { d, e, r } => format!("imprimitive series, d = {d}, e = {e}, r = {r}"),
        Family::Exceptional { source, .. } => {
            source.clone().unwrap_or_else(|| "exceptional".into())
        }
    };
    let ab = abelian_invariants(g, &g.whole());
    let rows = [
        ("name", g.name()),
        ("source", source),
        ("rank", g.rank().to_string()),
        ("conductor", g.conductor().to_string()),
        ("order", g.order().to_string()),
        ("reflections", g.reflections().len().to_string()),
        ("hyperplanes", a.arrangement.len().to_string()),
        ("hyperplane classes", a.classes.len().to_string()),
        ("abelianization", factors(&ab.factors)),
    ];
    for (k, v) in rows {
        t.push(vec![k.into(), v]);
    }
    t
}

pub fn hyperplanes(a: &Analysis) -> Table {
    let mut t = Table::new(
        format!("hyperplanes of {}", a.group.name()),
        &["index", "hyperplane", "class", "e_H", "normal"],
    );
    for (h, rec) in a.arrangement.records().iter().enumerate() {
        let normal = rec
            .hyperplane
            .normal
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        t.push(vec![
            (h + 1).to_string(),
            a.hyperplane_name(h),
            Analysis::class_name(a.class_of[h]),
            rec.e.to_string(),
            format!("({normal})"),
        ]);
    }
    t
}

fn selection(a: &Analysis, hyperplane: Option<&str>) -> Result<Vec<usize>> {
    Ok(match hyperplane {
        Some(key) => vec![a.find_hyperplane(key)?],
        None => (0..a.arrangement.len()).collect(),
    })
}

pub fn stabilizer(a: &Analysis, hyperplane: Option<&str>) -> Result<Table> {
    let mut t = Table::new(
        format!("hyperplane stabilizers of {}", a.group.name()),
        &[
            "hyperplane",
            "class",
            "e_H",
            "f_H",
            "d_H",
            "|N_H|",
            "|C_H|",
            "N_H^ab",
            "C_H^ab",
            "injective",
            "commuting",
        ],
    );
    for h in selection(a, hyperplane)? {
        let rec = a.arrangement.record(h);
        let data = rec.stab();
        let rep = exactness_report(&a.group, &a.arrangement, h)?;
        t.push(vec![
            a.hyperplane_name(h),
            Analysis::class_name(a.class_of[h]),
            rec.e.to_string(),
            data.f.to_string(),
            data.ramification.to_string(),
            data.stabilizer.order().to_string(),
            data.parabolic.order().to_string(),
            factors(&rep.n_ab.factors),
            factors(&rep.c_ab.factors),
            rep.injective.to_string(),
            join_names(a, &data.commuting),
        ]);
    }
    Ok(t)
}

/// Orbits of `N_H` and `C_H` on commuting and non-commuting hyperplanes,
/// or the hyperplane classes when no hyperplane is given.
pub fn orbits(a: &Analysis, hyperplane: Option<&str>) -> Result<Table> {
    let Some(key) = hyperplane else {
        let mut t = Table::new(
            format!("hyperplane classes of {}", a.group.name()),
            &["class", "size", "hyperplanes"],
        );
        for (c, orbit) in a.classes.iter().enumerate() {
            t.push(vec![
                Analysis::class_name(c),
                orbit.len().to_string(),
                join_names(a, orbit),
            ]);
        }
        return Ok(t);
    };
    let h = a.find_hyperplane(key)?;
    let arr = &a.arrangement;
    let data = arr.record(h).stab();
    let commuting: Vec<usize> = data.commuting.iter().copied().filter(|&k| k != h).collect();
    let noncommuting: Vec<usize> = (0..arr.len())
        .filter(|k| !data.commuting.contains(k))
        .collect();
    let mut t = Table::new(
        format!(
            "orbits around {} in {}",
            a.hyperplane_name(h),
            a.group.name()
        ),
        &["subgroup", "hyperplanes", "orbit"],
    );
    for (sub, s) in [("N_H", &data.stabilizer), ("C_H", &data.parabolic)] {
        for (kind, set) in [("commuting", &commuting), ("non-commuting", &noncommuting)] {
            for orbit in arr.orbit_decomposition(s, set)? {
                t.push(vec![sub.into(), kind.into(), join_names(a, &orbit)]);
            }
        }
    }
    let br = stabilizer_braid_rank(arr, h)?;
    t.notes.push(match br.rank {
        Some(r) => format!(
            "orbits of all hyperplanes under N_H and C_H agree; braid rank of p^-1(N_H)^ab = {r}"
        ),
        None => "orbits of all hyperplanes under N_H and C_H differ".into(),
    });
    Ok(t)
}

pub fn table_ramification(a: &Analysis) -> Table {
    let mut t = Table::new(
        format!("ramification of {}", a.group.name()),
        &["class", "representative", "size", "e_H", "f_H", "d_H"],
    );
    for (c, orbit) in a.classes.iter().enumerate() {
        let h = a.representative(c);
        let rec = a.arrangement.record(h);
        let data = rec.stab();
        t.push(vec![
            Analysis::class_name(c),
            a.hyperplane_name(h),
            orbit.len().to_string(),
            rec.e.to_string(),
            data.f.to_string(),
            data.ramification.to_string(),
        ]);
    }
    t
}

pub fn kappa(a: &Analysis) -> Result<Table> {
    let rep = kappa_report(&a.group, &a.arrangement)?;
    let mut t = Table::new(
        format!("natural characters of {}", a.group.name()),
        &["class", "representative", "size", "f"],
    );
    for (c, o) in rep.orbits.iter().enumerate() {
        t.push(vec![
            Analysis::class_name(c),
            a.hyperplane_name(a.representative(c)),
            o.size.to_string(),
            o.f.to_string(),
        ]);
    }
    t.notes.push(format!("kappa = {}", rep.kappa));
    if let Some(x) = rep.closed_form {
        t.notes.push(if x == rep.kappa {
            format!("closed form {x} agrees")
        } else {
            format!("closed form {x} differs from the lcm of class orders")
        });
    }
    Ok(t)
}
