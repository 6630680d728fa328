//! Finite invariants attached to braid groups of reflection groups.
//!
//! Nothing here builds braids. Each output is the number the braid-theoretic
//! statement reduces to:
//!
//! * [`braid_abelianization_rank`]: `p⁻¹(C)^ab` is free abelian over `Hyp/C`
//!   for a reflection subgroup `C`;
//! * [`stabilizer_braid_rank`]: when `N_H` and `C_H` have the same orbits on
//!   `Hyp`, `p⁻¹(N_H)^ab` is free abelian with basis a lift of a witness,
//!   one generator per orbit in `H'_H/C_H` and one per orbit in
//!   `(Hyp ∖ H_H)/C_H`;
//! * [`kappa`]: the extension `1 → P^ab → B/[P,P] → W → 1` has order
//!   `κ(W) = lcm f_H` over hyperplane classes, each class contributing the
//!   natural character `r_C ∈ Hom(N_C, Q/Z)` of order `f_C`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Family, ReflectionGroup, Subgroup};
use crate::reflection::{Arrangement, Hyperplane};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCharacter {
    pub representative: Hyperplane,
    pub representative_index: usize,
    pub size: usize,
    pub e: u32,
    pub f: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub orbits: Vec<OrbitCharacter>,
    pub kappa: u64,
    /// Closed-form value for the infinite series, when one is stated.
    pub closed_form: Option<u64>,
    pub closed_form_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidRank {
    pub rank: Option<usize>,
    pub full_criterion: bool,
    pub commuting_orbits: usize,
    pub noncommuting_orbits: usize,
}

/// `|Hyp/C|` for a reflection subgroup `C`.
pub fn braid_abelianization_rank(
    g: &ReflectionGroup,
    arr: &Arrangement,
    c: &Subgroup,
) -> Result<usize> {
    let regenerated = arr.reflection_subgroup_of(g, c);
    if regenerated.members() != c.members() {
        return Err(Error::NotReflectionSubgroup);
    }
    let all: Vec<usize> = (0..arr.len()).collect();
    Ok(arr.orbit_decomposition(c, &all)?.len())
}

/// `1 + |H'_H/C_H| + |(Hyp ∖ H_H)/C_H|` when `N_H` and `C_H` have the same
/// orbits on all hyperplanes.
pub fn stabilizer_braid_rank(arr: &Arrangement, h: usize) -> Result<BraidRank> {
    let data = arr.record(h).stab();
    let commuting: Vec<usize> = data.commuting.iter().copied().filter(|&k| k != h).collect();
    let noncommuting: Vec<usize> = (0..arr.len())
        .filter(|k| !data.commuting.contains(k))
        .collect();
    let all: Vec<usize> = (0..arr.len()).collect();
    let full_criterion = arr.orbit_decomposition(&data.stabilizer, &all)?
        == arr.orbit_decomposition(&data.parabolic, &all)?;
    let commuting_orbits = arr.orbit_decomposition(&data.parabolic, &commuting)?.len();
    let noncommuting_orbits = arr
        .orbit_decomposition(&data.parabolic, &noncommuting)?
        .len();
    Ok(BraidRank {
        rank: full_criterion.then_some(1 + commuting_orbits + noncommuting_orbits),
        full_criterion,
        commuting_orbits,
        noncommuting_orbits,
    })
}

/// Closed forms for `κ(G(de,e,r))`: `2de` for odd `de`, `de` for even `de`
/// when `r ≥ 3`, and `de` when `d ≠ 1`, `r = 2`.
pub fn closed_form_kappa(d: u32, e: u32, r: usize) -> Option<u64> {
    let de = (d * e) as u64;
    if r >= 3 {
        Some(if de % 2 == 1 { 2 * de } else { de })
    } else if r == 2 && d != 1 {
        Some(de)
    } else {
        None
    }
}

/// Class characters and `κ = lcm f` over hyperplane classes.
pub fn kappa(g: &ReflectionGroup, arr: &Arrangement) -> Result<ExtensionReport> {
    let mut orbits = Vec::new();
    let mut kappa = 1u64;
    for orbit in arr.classes(g) {
        let rep = orbit[0];
        let rec = arr.record(rep);
        let f = rec.stab().f;
        for &k in &orbit {
            let found = arr.record(k).stab().f;
            if found != f {
                return Err(Error::OrbitInconsistent {
                    representative: rep,
                    expected: f as u64,
                    found: found as u64,
                });
            }
        }
        kappa = num_integer::lcm(kappa, f as u64);
        orbits.push(OrbitCharacter {
            representative: rec.hyperplane.clone(),
            representative_index: rep,
            size: orbit.len(),
            e: rec.e,
            f,
        });
    }
    let closed_form = match g.family() {
        Family::Imprimitive { d, e, r } => closed_form_kappa(*d, *e, *r),
        Family::Exceptional { .. } => None,
    };
    Ok(ExtensionReport {
        orbits,
        kappa,
        closed_form,
        closed_form_agrees: closed_form.map(|x| x == kappa),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_BOUND;

    fn setup(d: u32, e: u32, r: usize) -> (ReflectionGroup, Arrangement) {
        let g = ReflectionGroup::build_gde(d, e, r, DEFAULT_ORDER_BOUND).unwrap();
        let arr = Arrangement::complete(&g).unwrap();
        (g, arr)
    }

    #[test]
    fn ranks_in_s3() {
        let (g, arr) = setup(1, 1, 3);
        assert_eq!(
            braid_abelianization_rank(&g, &arr, &g.trivial()).unwrap(),
            3
        );
        assert_eq!(braid_abelianization_rank(&g, &arr, &g.whole()).unwrap(), 1);
        let h = arr.index_of_label("H_{1,2,1}").unwrap();
        let c = g.subgroup_generated(&[arr.record(h).distinguished]);
        assert_eq!(braid_abelianization_rank(&g, &arr, &c).unwrap(), 2);
        let rot = g.mul(arr.record(0).distinguished, arr.record(1).distinguished);
        let c3 = g.subgroup_generated(&[rot]);
        assert!(matches!(
            braid_abelianization_rank(&g, &arr, &c3),
            Err(Error::NotReflectionSubgroup)
        ));
    }

    #[test]
    fn stabilizer_ranks() {
        let (_, arr) = setup(3, 1, 1);
        assert_eq!(stabilizer_braid_rank(&arr, 0).unwrap().rank, Some(1));
        let (_, arr) = setup(2, 1, 4);
        let h = arr.index_of_label("H_{1,2,1}").unwrap();
        assert_eq!(stabilizer_braid_rank(&arr, h).unwrap().rank, Some(6));
    }

    #[test]
    fn kappa_values() {
        let (g, arr) = setup(1, 1, 3);
        assert_eq!(kappa(&g, &arr).unwrap().kappa, 2);
        let (g, arr) = setup(3, 1, 2);
        let rep = kappa(&g, &arr).unwrap();
        assert_eq!(rep.kappa, 6);
        assert_eq!(rep.closed_form, Some(3));
        assert_eq!(rep.closed_form_agrees, Some(false));
        let (g, arr) = setup(1, 3, 1);
        assert_eq!(kappa(&g, &arr).unwrap().kappa, 1);
    }
}
