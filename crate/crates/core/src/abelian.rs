//! Derived subgroups, abelianizations and the injectivity criteria for
//! `C_H^ab → N_H^ab`.

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ReflectionGroup, Subgroup};
use crate::reflection::{Arrangement, Hyperplane, HyperplaneRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    /// Invariant factors `d₁ | d₂ | …`, each greater than 1.
    pub factors: Vec<u64>,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub hyperplane: Hyperplane,
    pub c_ab: AbelianInvariants,
    pub n_ab: AbelianInvariants,
    pub f: u32,
    pub injective: bool,
    pub orbit_criterion_commuting: bool,
    pub orbit_criterion_noncommuting: bool,
    pub orbit_criterion_full: bool,
}

/// `scalar · Π α_H^k` over canonical normals.
#[derive(Clone, Debug, Serialize)]
pub struct LinearFormProduct {
    pub scalar: Cyclotomic,
    pub factors: Vec<(usize, u32)>,
}

impl LinearFormProduct {
    pub fn new(factors: Vec<(usize, u32)>, conductor: u32) -> Self {
        LinearFormProduct {
            scalar: Cyclotomic::one(conductor),
            factors,
        }
    }
}

fn commutator_generators(s: &Subgroup) -> Vec<usize> {
    if s.generators().is_empty() && s.order() > 1 {
        s.members().to_vec()
    } else {
        s.generators().to_vec()
    }
}

/// Normal closure in `s` of the commutators of its generators.
pub fn derived_subgroup(g: &ReflectionGroup, s: &Subgroup) -> Subgroup {
    let gens = commutator_generators(s);
    let mut kgens: Vec<usize> = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.commutator(a, b);
            if c != g.identity() && !kgens.contains(&c) {
                kgens.push(c);
            }
        }
    }
    let mut members = g.closure(&kgens);
    let mut inside = vec![false; g.order()];
    for &x in &members {
        inside[x] = true;
    }
    let mut i = 0;
    while i < kgens.len() {
        let k = kgens[i];
        for &t in &gens {
            let c = g.conjugate(k, t);
            if !inside[c] {
                kgens.push(c);
                members = g.closure(&kgens);
                for &x in &members {
                    inside[x] = true;
                }
            }
        }
        i += 1;
    }
    g.subgroup_generated(&kgens)
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors from the `p`-primary partitions (as descending part lists).
fn invariant_factors(partitions: &[(u64, Vec<u32>)]) -> Vec<u64> {
    let len = partitions.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| {
            partitions
                .iter()
                .map(|(p, parts)| parts.get(i).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

/// Invariant factors of `s / [s, s]`, from counting cosets `x` with
/// `x^{p^k}` in the derived subgroup.
pub fn abelian_invariants(g: &ReflectionGroup, s: &Subgroup) -> AbelianInvariants {
    let derived = derived_subgroup(g, s);
    abelian_invariants_with(g, s, &derived)
}

pub(crate) fn abelian_invariants_with(
    g: &ReflectionGroup,
    s: &Subgroup,
    derived: &Subgroup,
) -> AbelianInvariants {
    let q = (s.order() / derived.order()) as u64;
    let in_derived = derived.mask(g.order());
    let mut labelled = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in s.members() {
        if labelled[x] {
            continue;
        }
        reps.push(x);
        for &d in derived.members() {
            labelled[g.mul(x, d)] = true;
        }
    }
    let mut partitions = Vec::new();
    for (p, a) in prime_powers(q) {
        // counts[k] = #{cosets x : x^{p^k} ∈ [s,s]}
        let mut powers = reps.clone();
        let mut log_counts = vec![0u32];
        for _ in 1..=a {
            for y in powers.iter_mut() {
                *y = g.power(*y, p);
            }
            let n = powers.iter().filter(|&&y| in_derived[y]).count() as u64;
            let mut l = 0;
            let mut m = n;
            while m > 1 {
                m /= p;
                l += 1;
            }
            log_counts.push(l);
        }
        // number of parts of size ≥ k is s_k − s_{k−1}
        let at_least: Vec<u32> = (1..=a as usize)
            .map(|k| log_counts[k] - log_counts[k - 1])
            .collect();
        let mut parts = Vec::new();
        let count = at_least.first().copied().unwrap_or(0);
        for i in 0..count {
            let size = at_least.iter().filter(|&&c| c > i).count() as u32;
            parts.push(size);
        }
        partitions.push((p, parts));
    }
    let factors = invariant_factors(&partitions);
    AbelianInvariants { factors, order: q }
}

fn same_orbits(
    arr: &Arrangement,
    big: &Subgroup,
    small: &Subgroup,
    hyps: &[usize],
) -> Result<bool> {
    Ok(arr.orbit_decomposition(big, hyps)? == arr.orbit_decomposition(small, hyps)?)
}

/// Both sides of the count criterion and the three orbit criteria.
pub fn exactness_report(
    g: &ReflectionGroup,
    arr: &Arrangement,
    h: usize,
) -> Result<ExactnessReport> {
    let rec = arr.record(h);
    let data = rec.stab();
    let n_derived = derived_subgroup(g, &data.stabilizer);
    let c_derived = derived_subgroup(g, &data.parabolic);
    let n_ab = abelian_invariants_with(g, &data.stabilizer, &n_derived);
    let c_ab = abelian_invariants_with(g, &data.parabolic, &c_derived);
    let injective = c_ab.order * data.f as u64 == n_ab.order;
    debug_assert_eq!(injective, n_derived.members() == c_derived.members());

    let commuting: Vec<usize> = data.commuting.iter().copied().filter(|&k| k != h).collect();
    let noncommuting: Vec<usize> = (0..arr.len())
        .filter(|k| !data.commuting.contains(k))
        .collect();
    let all: Vec<usize> = (0..arr.len()).collect();
    let orbit_criterion_commuting =
        same_orbits(arr, &data.stabilizer, &data.parabolic, &commuting)?;
    let orbit_criterion_noncommuting =
        same_orbits(arr, &data.stabilizer, &data.parabolic, &noncommuting)?;
    let orbit_criterion_full = same_orbits(arr, &data.stabilizer, &data.parabolic, &all)?;
    if injective != orbit_criterion_commuting {
        return Err(Error::CriterionMismatch {
            hyperplane: h,
            count: injective,
            orbits: orbit_criterion_commuting,
        });
    }
    Ok(ExactnessReport {
        hyperplane: rec.hyperplane.clone(),
        c_ab,
        n_ab,
        f: data.f,
        injective,
        orbit_criterion_commuting,
        orbit_criterion_noncommuting,
        orbit_criterion_full,
    })
}

/// `a_H` with `C ∩ W_H = ⟨s_H^{a_H}⟩`; `e_H` when the intersection is trivial.
pub fn subgroup_exponent_a(c: &Subgroup, rec: &HyperplaneRecord) -> u32 {
    let common = rec
        .fixator
        .members()
        .iter()
        .filter(|&&x| c.contains(x))
        .count() as u32;
    rec.e / common
}

/// Scalars `λ_g` with `g·Q = λ_g Q` for the generators of `s`, where `g`
/// acts on linear forms by precomposition with `g⁻¹`.
pub fn semi_invariance_check(
    g: &ReflectionGroup,
    arr: &Arrangement,
    s: &Subgroup,
    q: &LinearFormProduct,
) -> Result<Vec<(usize, Cyclotomic)>> {
    let mut exps = vec![0u32; arr.len()];
    for &(h, k) in &q.factors {
        exps[h] += k;
    }
    let mut out = Vec::with_capacity(s.generators().len());
    for &w in s.generators() {
        let inv = g.matrix(g.inverse(w));
        let mut lambda = Cyclotomic::one(g.conductor());
        for (h, &k) in exps.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let t = arr.act(w, h);
            if exps[t] != k {
                return Err(Error::NotStable { generator: w });
            }
            let image = inv.apply_row(&arr.record(h).hyperplane.normal);
            let target = &arr.record(t).hyperplane.normal;
            let c = crate::matrix::proportionality(&image, target)
                .ok_or(Error::NotStable { generator: w })?;
            lambda = &lambda * &c.pow(k as u64);
        }
        out.push((w, lambda));
    }
    Ok(out)
}

pub fn all_scalars_one(scalars: &[(usize, Cyclotomic)]) -> bool {
    scalars.iter().all(|(_, c)| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_BOUND;

    fn gde(d: u32, e: u32, r: usize) -> ReflectionGroup {
        ReflectionGroup::build_gde(d, e, r, DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn derived_examples() {
        let s3 = gde(1, 1, 3);
        let w = s3.whole();
        assert_eq!(derived_subgroup(&s3, &w).order(), 3);
        assert_eq!(abelian_invariants(&s3, &w).factors, vec![2]);

        let b2 = gde(2, 1, 2);
        let d = derived_subgroup(&b2, &b2.whole());
        assert_eq!(d.order(), 2);
        let z = d.members().iter().find(|&&x| x != b2.identity()).unwrap();
        assert_eq!(b2.centralizer(*z).order(), 8);

        let c6 = gde(6, 1, 1);
        assert_eq!(derived_subgroup(&c6, &c6.whole()).order(), 1);
        assert_eq!(abelian_invariants(&c6, &c6.whole()).factors, vec![6]);
    }

    #[test]
    fn invariant_factor_assembly() {
        assert_eq!(
            invariant_factors(&[(2, vec![2, 1]), (3, vec![1])]),
            vec![2, 12]
        );
        assert_eq!(invariant_factors(&[]), Vec::<u64>::new());
        let g = gde(1, 2, 2);
        assert_eq!(abelian_invariants(&g, &g.whole()).factors, vec![2, 2]);
        let g = gde(2, 2, 2);
        assert_eq!(abelian_invariants(&g, &g.whole()).factors, vec![2, 2, 2]);
        let g = gde(4, 1, 2);
        // |G^ab| = 4 · 2 from two hyperplane classes
        assert_eq!(abelian_invariants(&g, &g.whole()).factors, vec![2, 4]);
    }

    #[test]
    fn exactness_examples() {
        let g = gde(2, 1, 3);
        let arr = Arrangement::complete(&g).unwrap();
        for h in 0..arr.len() {
            assert!(exactness_report(&g, &arr, h).unwrap().injective);
        }
        let g = gde(1, 2, 3);
        let arr = Arrangement::complete(&g).unwrap();
        assert!(arr.index_of_label("H_1").is_none());
        let g = gde(4, 2, 3);
        let arr = Arrangement::complete(&g).unwrap();
        let h1 = arr.index_of_label("H_1").unwrap();
        let rep = exactness_report(&g, &arr, h1).unwrap();
        assert!(!rep.injective);
        assert!(!rep.orbit_criterion_commuting);
    }

    #[test]
    fn exponent_a() {
        let g = gde(4, 1, 1);
        let arr = Arrangement::complete(&g).unwrap();
        let rec = arr.record(0);
        assert_eq!(subgroup_exponent_a(&g.whole(), rec), 1);
        assert_eq!(subgroup_exponent_a(&g.trivial(), rec), 4);
        let s2 = g.power(rec.distinguished, 2);
        assert_eq!(subgroup_exponent_a(&g.subgroup_generated(&[s2]), rec), 2);
    }

    #[test]
    fn semi_invariants() {
        let g = gde(3, 1, 2);
        let arr = Arrangement::complete(&g).unwrap();
        let h = arr.index_of_label("H_1").unwrap();
        let rec = arr.record(h);
        let q = LinearFormProduct::new(vec![(h, 1)], g.conductor());
        let scalars = semi_invariance_check(&g, &arr, &rec.fixator, &q).unwrap();
        let zeta = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(scalars, vec![(rec.distinguished, zeta.inverse().unwrap())]);

        let data = rec.stab();
        let q = LinearFormProduct::new(vec![(h, data.f)], g.conductor());
        assert!(all_scalars_one(
            &semi_invariance_check(&g, &arr, &data.stabilizer, &q).unwrap()
        ));
        let q = LinearFormProduct::new(vec![(h, 1)], g.conductor());
        assert!(matches!(
            semi_invariance_check(&g, &arr, &g.whole(), &q),
            Err(Error::NotStable { .. })
        ));
    }
}
