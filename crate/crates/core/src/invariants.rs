//! Structural identities that every completed arrangement must satisfy.

use serde::Serialize;

use crate::abelian::{
    abelian_invariants_with, all_scalars_one, derived_subgroup, exactness_report,
    semi_invariance_check, subgroup_exponent_a, LinearFormProduct,
};
use crate::braid::{braid_abelianization_rank, kappa, stabilizer_braid_rank};
use crate::group::{Family, ReflectionGroup, Subgroup};
use crate::reflection::Arrangement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantResult {
    pub name: &'static str,
    pub hyperplane: Option<usize>,
    pub ok: bool,
    pub detail: String,
}

struct Collector {
    out: Vec<InvariantResult>,
}

impl Collector {
    fn push(
        &mut self,
        name: &'static str,
        hyperplane: Option<usize>,
        ok: bool,
        detail: impl Into<String>,
    ) {
        self.out.push(InvariantResult {
            name,
            hyperplane,
            ok,
            detail: detail.into(),
        });
    }
}

fn abelian_order_identity(g: &ReflectionGroup, s: &Subgroup) -> (bool, String) {
    let derived = derived_subgroup(g, s);
    let ab = abelian_invariants_with(g, s, &derived);
    let chain =
        ab.factors.windows(2).all(|w| w[1] % w[0] == 0) && ab.factors.iter().all(|&x| x > 1);
    let product: u64 = ab.factors.iter().product();
    let ok = chain && product == ab.order && s.order() as u64 == derived.order() as u64 * ab.order;
    (
        ok,
        format!(
            "|S| = {}, |[S,S]| = {}, S^ab = {:?}",
            s.order(),
            derived.order(),
            ab.factors
        ),
    )
}

/// Products `Π α_H^{e_H / a_H}` over the orbits of `c`, checked for invariance under `c`.
fn lemma_products_invariant(
    g: &ReflectionGroup,
    arr: &Arrangement,
    c: &Subgroup,
) -> crate::Result<bool> {
    let all: Vec<usize> = (0..arr.len()).collect();
    for orbit in arr.orbit_decomposition(c, &all)? {
        let factors = orbit
            .iter()
            .map(|&h| {
                let rec = arr.record(h);
                (h, rec.e / subgroup_exponent_a(c, rec))
            })
            .collect();
        let q = LinearFormProduct::new(factors, g.conductor());
        if !all_scalars_one(&semi_invariance_check(g, arr, c, &q)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs every identity; a computation error is reported as a failed entry.
pub fn check_all(g: &ReflectionGroup, arr: &Arrangement) -> Vec<InvariantResult> {
    let mut c = Collector { out: Vec::new() };
    let whole = g.whole();

    let (ok, detail) = abelian_order_identity(g, &whole);
    c.push("abelianization order", None, ok, detail);

    let classes = arr.classes(g);
    let springer: u64 = classes.iter().map(|o| arr.record(o[0]).e as u64).product();
    let ab = crate::abelian::abelian_invariants(g, &whole);
    c.push(
        "Stanley-Springer order",
        None,
        ab.order == springer,
        format!(
            "|W^ab| = {}, product of e over classes = {springer}",
            ab.order
        ),
    );

    match lemma_products_invariant(g, arr, &whole) {
        Ok(ok) => c.push("semi-invariance for W-orbit products", None, ok, ""),
        Err(e) => c.push(
            "semi-invariance for W-orbit products",
            None,
            false,
            e.to_string(),
        ),
    }

    let coxeter = matches!(
        g.family(),
        Family::Imprimitive { d: 1, e: 1, .. }
            | Family::Imprimitive { d: 2, e: 1, .. }
            | Family::Imprimitive { d: 1, e: 2, .. }
    );
    if coxeter {
        let unramified = arr.records().iter().all(|r| r.stab().ramification == 1);
        c.push("Coxeter groups are unramified", None, unramified, "");
    }

    match kappa(g, arr) {
        Ok(rep) => {
            let all_f = arr
                .records()
                .iter()
                .fold(1u64, |acc, r| num_integer::lcm(acc, r.stab().f as u64));
            c.push(
                "kappa is the lcm of all f_H",
                None,
                rep.kappa == all_f,
                format!("kappa = {}, lcm f = {all_f}", rep.kappa),
            );
            if coxeter && !arr.is_empty() {
                c.push(
                    "Coxeter kappa",
                    None,
                    rep.kappa == 2,
                    format!("kappa = {}", rep.kappa),
                );
            }
        }
        Err(e) => c.push("kappa is the lcm of all f_H", None, false, e.to_string()),
    }

    let whole_rank = braid_abelianization_rank(g, arr, &whole);
    let trivial_rank = braid_abelianization_rank(g, arr, &g.trivial());
    c.push(
        "braid rank of W and of the trivial group",
        None,
        whole_rank.as_ref().ok() == Some(&classes.len())
            && trivial_rank.as_ref().ok() == Some(&arr.len()),
        format!("{whole_rank:?}, {trivial_rank:?}"),
    );

    for h in 0..arr.len() {
        check_hyperplane(g, arr, h, &whole_rank, &mut c);
    }
    c.out
}

fn check_hyperplane(
    g: &ReflectionGroup,
    arr: &Arrangement,
    h: usize,
    whole_rank: &crate::Result<usize>,
    c: &mut Collector,
) {
    let rec = arr.record(h);
    let data = rec.stab();
    let at = Some(h);
    c.push(
        "e divides f",
        at,
        data.f.is_multiple_of(rec.e),
        format!("e = {}, f = {}", rec.e, data.f),
    );
    c.push(
        "|N| = f |C|",
        at,
        data.stabilizer.order() == data.f as usize * data.parabolic.order(),
        format!(
            "|N| = {}, f = {}, |C| = {}",
            data.stabilizer.order(),
            data.f,
            data.parabolic.order()
        ),
    );
    let centralizer = g.centralizer(rec.distinguished);
    c.push(
        "N = centralizer of s_H",
        at,
        centralizer.members() == data.stabilizer.members(),
        "",
    );
    c.push(
        "C and W_H lie in N",
        at,
        data.parabolic.is_subgroup_of(&data.stabilizer)
            && rec.fixator.is_subgroup_of(&data.stabilizer),
        "",
    );
    let regenerated = arr.reflection_subgroup_of(g, &data.parabolic);
    c.push(
        "C is generated by its reflections",
        at,
        regenerated.members() == data.parabolic.members(),
        "",
    );
    if data.ramification == 1 {
        let common = rec
            .fixator
            .members()
            .iter()
            .filter(|&&x| data.parabolic.contains(x))
            .count();
        c.push(
            "unramified: W_H meets C trivially",
            at,
            common == 1 && data.stabilizer.order() == rec.e as usize * data.parabolic.order(),
            "",
        );
    }
    let mut equivalent = true;
    for k in 0..arr.len() {
        let ch = arr.commuting_characterizations(g, h, k);
        if ch.iter().any(|&x| x != ch[0]) || ch[0] != data.commuting.contains(&k) {
            equivalent = false;
        }
    }
    c.push("commuting characterizations agree", at, equivalent, "");

    for (name, s) in [("N", &data.stabilizer), ("C", &data.parabolic)] {
        let (ok, detail) = abelian_order_identity(g, s);
        c.push(
            if name == "N" {
                "abelianization order of N"
            } else {
                "abelianization order of C"
            },
            at,
            ok,
            detail,
        );
    }

    match exactness_report(g, arr, h) {
        Ok(rep) => {
            let same_derived = derived_subgroup(g, &data.stabilizer).members()
                == derived_subgroup(g, &data.parabolic).members();
            c.push(
                "count criterion matches orbit criterion",
                at,
                rep.injective == same_derived,
                format!("injective = {}", rep.injective),
            );
        }
        Err(e) => c.push(
            "count criterion matches orbit criterion",
            at,
            false,
            e.to_string(),
        ),
    }

    let q = LinearFormProduct::new(vec![(h, data.f)], g.conductor());
    match semi_invariance_check(g, arr, &data.stabilizer, &q) {
        Ok(s) => c.push("alpha_H^f is N-invariant", at, all_scalars_one(&s), ""),
        Err(e) => c.push("alpha_H^f is N-invariant", at, false, e.to_string()),
    }
    match lemma_products_invariant(g, arr, &data.parabolic) {
        Ok(ok) => c.push("semi-invariance for C-orbit products", at, ok, ""),
        Err(e) => c.push(
            "semi-invariance for C-orbit products",
            at,
            false,
            e.to_string(),
        ),
    }

    let c_rank = braid_abelianization_rank(g, arr, &data.parabolic);
    let antitone = match (&c_rank, whole_rank) {
        (Ok(a), Ok(b)) => a >= b && *a <= arr.len(),
        _ => false,
    };
    c.push(
        "braid rank is antitone",
        at,
        antitone,
        format!("{c_rank:?}"),
    );
    match stabilizer_braid_rank(arr, h) {
        Ok(br) => {
            let ok = match (br.rank, &c_rank) {
                (Some(r), Ok(cr)) => r == *cr,
                (None, _) => !br.full_criterion,
                _ => false,
            };
            c.push(
                "stabilizer braid rank consistency",
                at,
                ok,
                format!("{:?}", br.rank),
            );
        }
        Err(e) => c.push(
            "stabilizer braid rank consistency",
            at,
            false,
            e.to_string(),
        ),
    }
}
