//! Reflections, hyperplanes and the per-hyperplane subgroups.
//!
//! For a hyperplane `H` with distinguished reflection `s_H`:
//!
//! * `W_H` is the pointwise stabilizer of `H`, cyclic of order `e_H`;
//! * `D` is the line `image(s_H - id)`;
//! * `N_H` is the setwise stabilizer of `H` (equivalently of `D`);
//! * `C_H` is the pointwise stabilizer of `D`;
//! * `N_H` acts on `D` through a cyclic group of order `f_H`, and
//!   `d_H = f_H / e_H` is the ramification index.
//!
//! The action of the whole group on hyperplanes is tabulated once per
//! [`Arrangement`]: generator actions are computed exactly, and every other
//! element's action is composed along a breadth-first tree.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ReflectionGroup, Subgroup};
use crate::matrix::{self, normalize_projective, proportionality, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    /// Coefficients of a linear form with kernel `H`, first nonzero entry 1.
    pub normal: Vector,
    pub label: Option<String>,
}

impl Hyperplane {
    pub fn display_name(&self, index: usize) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("H#{}", index + 1))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerData {
    pub stabilizer: Subgroup,
    pub parabolic: Subgroup,
    pub f: u32,
    pub ramification: u32,
    /// An element of `N_H` acting on `D` by `exp(2iπ/f)`.
    pub witness: usize,
    /// Hyperplanes commuting with this one (including itself).
    pub commuting: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneRecord {
    pub hyperplane: Hyperplane,
    pub fixator: Subgroup,
    pub e: u32,
    pub distinguished: usize,
    pub line: Vector,
    pub stabilizer_data: Option<StabilizerData>,
}

impl HyperplaneRecord {
    pub fn stab(&self) -> &StabilizerData {
        self.stabilizer_data
            .as_ref()
            .expect("stabilizer data not computed for this hyperplane")
    }
}

type NormalKey = Vec<Vec<BigRational>>;

fn key(v: &[Cyclotomic], conductor: u32) -> NormalKey {
    v.iter()
        .map(|x| {
            if x.conductor() == conductor {
                x.coeffs()
            } else {
                x.embed(conductor).coeffs()
            }
        })
        .collect()
}

/// Hyperplanes of a reflection group with the tabulated permutation action.
pub struct Arrangement {
    records: Vec<HyperplaneRecord>,
    conductor: u32,
    index: HashMap<NormalKey, usize>,
    /// `action[g * m + h]` is the index of `g(H_h)`, `m` hyperplanes.
    action: Vec<u16>,
}

/// Reflections grouped by hyperplane, with `W_H`, `e_H`, `s_H` and `D`.
pub fn find_hyperplanes(g: &ReflectionGroup) -> Result<Vec<HyperplaneRecord>> {
    let mut groups: HashMap<NormalKey, (Vector, Vec<usize>)> = HashMap::new();
    for s in g.reflections() {
        let m = g.matrix(s).minus_identity();
        let row = (0..g.rank())
            .map(|i| m.row(i))
            .find(|r| r.iter().any(|x| !x.is_zero()))
            .expect("a reflection differs from the identity");
        let normal = normalize_projective(&row).unwrap();
        groups
            .entry(key(&normal, g.conductor()))
            .or_insert_with(|| (normal, Vec::new()))
            .1
            .push(s);
    }
    let mut planes: Vec<(Vector, Vec<usize>)> = groups.into_values().collect();
    planes.sort_by(|a, b| matrix::cmp_vectors(&a.0, &b.0));

    let r = g.rank() as i64;
    let mut records = Vec::with_capacity(planes.len());
    for (idx, (normal, mut refl)) in planes.into_iter().enumerate() {
        refl.sort_unstable();
        let e = refl.len() as u32 + 1;
        // a reflection has eigenvalues 1 (r-1 times) and det = trace - (r-1)
        let mut exps = Vec::with_capacity(refl.len());
        let mut distinguished = None;
        let mut modulus = 0;
        for &s in &refl {
            let det = &g.matrix(s).trace() - &Cyclotomic::from_integer(g.conductor(), r - 1);
            let (j, l) = det
                .root_of_unity_exponent()
                .ok_or(Error::NotCyclicFixator { hyperplane: idx })?;
            modulus = l;
            if l % e != 0 {
                return Err(Error::NotCyclicFixator { hyperplane: idx });
            }
            if j == l / e {
                distinguished = Some(s);
            }
            exps.push(j);
        }
        exps.sort_unstable();
        let expected: Vec<u32> = (1..e).map(|k| k * (modulus / e.max(1))).collect();
        if exps != expected {
            return Err(Error::NotCyclicFixator { hyperplane: idx });
        }
        let distinguished = distinguished.ok_or(Error::NotCyclicFixator { hyperplane: idx })?;
        let ds = g.matrix(distinguished).minus_identity();
        let col = (0..g.rank())
            .map(|j| ds.column(j))
            .find(|c| c.iter().any(|x| !x.is_zero()))
            .unwrap();
        let line = normalize_projective(&col).unwrap();
        let mut members = refl.clone();
        members.push(g.identity());
        members.sort_unstable();
        let label = monomial_label(g, &normal);
        records.push(HyperplaneRecord {
            hyperplane: Hyperplane { normal, label },
            fixator: Subgroup::from_parts(members, vec![distinguished]),
            e,
            distinguished,
            line,
            stabilizer_data: None,
        });
    }
    Ok(records)
}

/// `H_i` for `z_i = 0` and `H_{i,j,ζ^k}` for `z_i = ζ^k z_j`, `ζ = exp(2iπ/de)`.
fn monomial_label(g: &ReflectionGroup, normal: &[Cyclotomic]) -> Option<String> {
    if !g.is_monomial() {
        return None;
    }
    let nz: Vec<usize> = (0..normal.len())
        .filter(|&i| !normal[i].is_zero())
        .collect();
    match nz.as_slice() {
        [i] => Some(format!("H_{}", i + 1)),
        [i, j] => {
            let m = g.conductor();
            let target = -&normal[*j];
            let k = (0..m).find(|&k| Cyclotomic::root_of_unity(m, k as i64) == target)?;
            Some(match k {
                0 => format!("H_{{{},{},1}}", i + 1, j + 1),
                1 => format!("H_{{{},{},ζ}}", i + 1, j + 1),
                _ => format!("H_{{{},{},ζ^{}}}", i + 1, j + 1, k),
            })
        }
        _ => None,
    }
}

impl Arrangement {
    pub fn new(g: &ReflectionGroup) -> Result<Self> {
        let records = find_hyperplanes(g)?;
        let index: HashMap<NormalKey, usize> = records
            .iter()
            .enumerate()
            .map(|(i, r)| (key(&r.hyperplane.normal, g.conductor()), i))
            .collect();
        let m = records.len();
        let n = g.order();
        if m > u16::MAX as usize {
            return Err(Error::Data("too many hyperplanes".into()));
        }

        let mut gen_actions = Vec::with_capacity(g.generators().len());
        for &s in g.generators() {
            let inv = g.matrix(g.inverse(s));
            let mut act = Vec::with_capacity(m);
            for (h, rec) in records.iter().enumerate() {
                // (s·α)(x) = α(s⁻¹x)
                let row = inv.apply_row(&rec.hyperplane.normal);
                let img = normalize_projective(&row).unwrap();
                let t = *index
                    .get(&key(&img, g.conductor()))
                    .ok_or(Error::OrbitEscape {
                        element: s,
                        hyperplane: h,
                    })?;
                act.push(t as u16);
            }
            gen_actions.push(act);
        }

        let mut action = vec![u16::MAX; n * m];
        let mut done = vec![false; n];
        let id = g.identity();
        for h in 0..m {
            action[id * m + h] = h as u16;
        }
        done[id] = true;
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in g.generators().iter().enumerate() {
                let y = g.mul(x, s);
                if !done[y] {
                    done[y] = true;
                    for h in 0..m {
                        let via = gen_actions[k][h] as usize;
                        action[y * m + h] = action[x * m + via];
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Arrangement {
            records,
            conductor: g.conductor(),
            index,
            action,
        })
    }

    /// Builds the arrangement and fills stabilizer data for every hyperplane.
    pub fn complete(g: &ReflectionGroup) -> Result<Self> {
        let mut arr = Self::new(g)?;
        let data: Vec<StabilizerData> = (0..arr.len())
            .into_par_iter()
            .map(|h| arr.stabilizer_data(g, h))
            .collect::<Result<_>>()?;
        for (rec, d) in arr.records.iter_mut().zip(data) {
            rec.stabilizer_data = Some(d);
        }
        Ok(arr)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[HyperplaneRecord] {
        &self.records
    }

    pub fn record(&self, h: usize) -> &HyperplaneRecord {
        &self.records[h]
    }

    pub fn index_of(&self, normal: &[Cyclotomic]) -> Option<usize> {
        let n = normalize_projective(normal)?;
        self.index.get(&key(&n, self.conductor)).copied()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.records
            .iter()
            .position(|r| r.hyperplane.label.as_deref() == Some(label))
    }

    /// Index of `w(H_h)`.
    pub fn act(&self, w: usize, h: usize) -> usize {
        self.action[w * self.records.len() + h] as usize
    }

    /// Fills `N_H`, `C_H`, `f_H`, `d_H` and the commuting set for hyperplane `h`.
    pub fn stabilizer_data(&self, g: &ReflectionGroup, h: usize) -> Result<StabilizerData> {
        let rec = &self.records[h];
        let members: Vec<usize> = (0..g.order()).filter(|&w| self.act(w, h) == h).collect();
        let stabilizer = g.subgroup_from_members(members);

        // eigenvalue of each generator on D, as an exponent modulo L
        let l = num_integer::lcm(2, g.conductor());
        let mut gen_exp = Vec::with_capacity(stabilizer.generators().len());
        for &w in stabilizer.generators() {
            let img = g.element(w).apply(&rec.line);
            let c = proportionality(&img, &rec.line).ok_or(Error::EigenvalueNotRootOfUnity {
                hyperplane: h,
                element: w,
            })?;
            let (j, lj) = c
                .root_of_unity_exponent()
                .ok_or(Error::EigenvalueNotRootOfUnity {
                    hyperplane: h,
                    element: w,
                })?;
            debug_assert_eq!(lj, l);
            gen_exp.push(j);
        }

        // extend the character along a spanning tree of N_H, checking every edge
        let mut chi = vec![u32::MAX; g.order()];
        chi[g.identity()] = 0;
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in stabilizer.generators().iter().enumerate() {
                let y = g.mul(x, s);
                let v = (chi[x] + gen_exp[k]) % l;
                if chi[y] == u32::MAX {
                    chi[y] = v;
                    queue.push_back(y);
                } else if chi[y] != v {
                    return Err(Error::EigenvalueNotRootOfUnity {
                        hyperplane: h,
                        element: y,
                    });
                }
            }
        }
        let g_exp = gen_exp.iter().fold(l, |acc, &j| acc.gcd(&j));
        let f = l / g_exp;
        let parabolic_members: Vec<usize> = stabilizer
            .members()
            .iter()
            .copied()
            .filter(|&w| chi[w] == 0)
            .collect();
        let parabolic = g.subgroup_from_members(parabolic_members);
        let witness = *stabilizer
            .members()
            .iter()
            .find(|&&w| chi[w] == l / f)
            .expect("the character is onto μ_f");
        if !f.is_multiple_of(rec.e) {
            return Err(Error::Data(format!(
                "e_H = {} does not divide f_H = {f} at hyperplane {h}",
                rec.e
            )));
        }
        Ok(StabilizerData {
            stabilizer,
            parabolic,
            f,
            ramification: f / rec.e,
            witness,
            commuting: self.commuting_set(g, h),
        })
    }

    /// Hyperplanes `H'` whose distinguished reflection commutes with `s_H`.
    pub fn commuting_set(&self, g: &ReflectionGroup, h: usize) -> Vec<usize> {
        let s = self.records[h].distinguished;
        (0..self.len())
            .filter(|&k| {
                let t = self.records[k].distinguished;
                g.mul(s, t) == g.mul(t, s)
            })
            .collect()
    }

    /// The four characterizations of commuting hyperplanes: distinguished
    /// reflections commute; `H = H'` or `D ⊂ H'`; every pair of reflections
    /// commutes; some pair commutes.
    pub fn commuting_characterizations(
        &self,
        g: &ReflectionGroup,
        h: usize,
        k: usize,
    ) -> [bool; 4] {
        let (a, b) = (&self.records[h], &self.records[k]);
        let commute = |x: usize, y: usize| g.mul(x, y) == g.mul(y, x);
        let first = commute(a.distinguished, b.distinguished);
        let second = h == k || matrix::dot(&b.hyperplane.normal, &a.line).is_zero();
        let refl = |r: &HyperplaneRecord| -> Vec<usize> {
            r.fixator
                .members()
                .iter()
                .copied()
                .filter(|&x| x != g.identity())
                .collect()
        };
        let (ra, rb) = (refl(a), refl(b));
        let every = ra.iter().all(|&x| rb.iter().all(|&y| commute(x, y)));
        let some = ra.iter().any(|&x| rb.iter().any(|&y| commute(x, y)));
        [first, second, every, some]
    }

    /// Orbits of `s` on `hyps`, each sorted, ordered by least element.
    pub fn orbit_decomposition(&self, s: &Subgroup, hyps: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut inside = vec![false; self.len()];
        for &h in hyps {
            inside[h] = true;
        }
        let mut seen = vec![false; self.len()];
        let mut sorted = hyps.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut orbits = Vec::new();
        for &start in &sorted {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let h = orbit[i];
                for &w in s.generators() {
                    let t = self.act(w, h);
                    if !inside[t] {
                        return Err(Error::OrbitEscape {
                            element: w,
                            hyperplane: h,
                        });
                    }
                    if !seen[t] {
                        seen[t] = true;
                        orbit.push(t);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Orbits of the whole group on all hyperplanes.
    pub fn classes(&self, g: &ReflectionGroup) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.orbit_decomposition(&g.whole(), &all)
            .expect("the arrangement is stable under the group")
    }

    /// Subgroup generated by the reflections lying in `s`.
    pub fn reflection_subgroup_of(&self, g: &ReflectionGroup, s: &Subgroup) -> Subgroup {
        let refl: Vec<usize> = s
            .members()
            .iter()
            .copied()
            .filter(|&x| g.is_reflection(x))
            .collect();
        let members = g.closure(&refl);
        g.subgroup_from_members(members)
    }
}
