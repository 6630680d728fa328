//! Construction of generating matrices for the exceptional groups G4–G28.
//!
//! Rank 2 groups are found inside `μ_n · T`, `μ_n · O` and `μ_n · I` (binary
//! polyhedral groups as unit quaternions) as the normal reflection
//! subgroups with the full projective image. Higher rank groups come from
//! root systems. Every group is closed exactly and reduced to a small
//! generating set of reflections.

use std::collections::{HashMap, HashSet};

use crg_core::group::ReflectionGroup;
use crg_core::matrix::{dot, Matrix, Vector};
use crg_core::modp::ModField;
use crg_core::{Arrangement, Cyclotomic, Error, ExceptionalRecord, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Upper bound for closures performed while generating.
const SEARCH_LIMIT: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct Generated {
    pub name: String,
    pub order: u64,
    pub conductor: u32,
    pub generators: Vec<Matrix>,
}

impl Generated {
    pub fn record(&self) -> ExceptionalRecord {
        ExceptionalRecord::from_matrices(&self.name, self.order, self.conductor, &self.generators)
    }
}

fn z(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(n, k)
}

fn q(n: u32, a: i64, b: i64) -> Cyclotomic {
    Cyclotomic::from_rational(n, &BigRational::new(BigInt::from(a), BigInt::from(b)))
}

fn int(n: u32, a: i64) -> Cyclotomic {
    Cyclotomic::from_integer(n, a)
}

fn matrix(rows: Vec<Vec<Cyclotomic>>) -> Matrix {
    let n = rows.len();
    Matrix::new(n, rows.into_iter().flatten().collect())
}

fn scalar(n: usize, c: &Cyclotomic) -> Matrix {
    let mut rows = vec![vec![Cyclotomic::zero(c.conductor()); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = c.clone();
    }
    matrix(rows)
}

/// `a + b i + c j + d k` as `[[a + bi, c + di], [-c + di, a - bi]]`.
fn quaternion(n: u32, a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic, d: &Cyclotomic) -> Matrix {
    let i = z(n, (n / 4) as i64);
    matrix(vec![
        vec![a + &(b * &i), c + &(d * &i)],
        vec![&(-c) + &(d * &i), a - &(b * &i)],
    ])
}

fn hermitian(x: &[Cyclotomic], y: &[Cyclotomic]) -> Cyclotomic {
    let conj: Vector = y.iter().map(Cyclotomic::conj).collect();
    dot(x, &conj)
}

/// `x ↦ x - (1 - λ) ⟨x, a⟩ / ⟨a, a⟩ a`.
pub fn unitary_reflection(a: &[Cyclotomic], lambda: &Cyclotomic) -> Matrix {
    let n = a.len();
    let c = lambda.conductor();
    let norm = hermitian(a, a).inverse().expect("nonzero root");
    let k = &(&int(c, 1) - lambda) * &norm;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { int(c, 1) } else { int(c, 0) };
            entries.push(&delta - &(&k * &(&a[i] * &a[j].conj())));
        }
    }
    Matrix::new(n, entries)
}

/// Order of the group generated by `gens`, computed on images in `F_p`.
/// `None` once more than `limit` elements appear.
pub fn modular_order(gens: &[Matrix], conductor: u32, limit: usize) -> Option<usize> {
    let field = ModField::new(conductor, 0);
    let n = gens.first()?.dim();
    let images: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| field.matrix_image(&g.embed(conductor)))
        .collect::<Option<_>>()?;
    let id = field.matrix_image(&Matrix::identity(n, conductor))?;
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    let mut i = 0;
    let mut out = Vec::new();
    while i < queue.len() {
        for g in &images {
            field.mul(&queue[i], g, n, &mut out);
            if !seen.contains(&out) {
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(out.clone());
                queue.push(out.clone());
            }
        }
        i += 1;
    }
    Some(seen.len())
}

/// Reflections of `g` chosen greedily, each maximizing the closure so far.
pub fn reflection_generators(g: &ReflectionGroup, members: &[usize]) -> Vec<usize> {
    let inside: HashSet<usize> = members.iter().copied().collect();
    let refl: Vec<usize> = g
        .reflections()
        .into_iter()
        .filter(|x| inside.contains(x))
        .collect();
    let mut gens: Vec<usize> = Vec::new();
    let mut size = 1;
    while size < members.len() {
        let mut best = None;
        for &s in &refl {
            if gens.contains(&s) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(s);
            let n = g.closure(&trial).len();
            if best.is_none_or(|(_, m)| n > m) {
                best = Some((s, n));
            }
        }
        let (s, n) = best.expect("reflections generate the group");
        gens.push(s);
        size = n;
    }
    gens
}

fn finish(name: &str, order: u64, g: &ReflectionGroup, members: &[usize]) -> Result<Generated> {
    let gens = reflection_generators(g, members);
    let generated = Generated {
        name: name.to_string(),
        order,
        conductor: g.conductor(),
        generators: gens.iter().map(|&x| g.matrix(x)).collect(),
    };
    let check = ReflectionGroup::build_from_matrices(&generated.record(), SEARCH_LIMIT)?;
    if check.order() as u64 != order {
        return Err(Error::ClosureMismatch {
            name: name.into(),
            declared: order,
            computed: check.order() as u64,
        });
    }
    Ok(generated)
}

/// Expected rank 2 group: name, order, distinct `e_H` values.
struct Target {
    name: &'static str,
    order: u64,
    orders: &'static [u32],
}

fn rank_two_family(
    conductor: u32,
    binary: Vec<Matrix>,
    ambient_order: u64,
    projective: usize,
    targets: &[Target],
) -> Result<Vec<Generated>> {
    let mut gens = binary;
    gens.push(scalar(2, &z(conductor, 1)));
    let ambient = ReflectionGroup::generated_by("ambient", 2, conductor, gens, ambient_order)?;
    if ambient.order() as u64 != ambient_order {
        return Err(Error::ClosureMismatch {
            name: "ambient".into(),
            declared: ambient_order,
            computed: ambient.order() as u64,
        });
    }
    let arr = Arrangement::new(&ambient)?;
    let classes = arr.classes(&ambient);
    let is_scalar: Vec<bool> = (0..ambient.order())
        .map(|x| {
            let m = ambient.matrix(x);
            m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1)
        })
        .collect();

    // a divisor of e_H per class of the ambient arrangement
    let choices: Vec<Vec<u32>> = classes
        .iter()
        .map(|c| {
            let e = arr.record(c[0]).e;
            (1..=e).filter(|k| e % k == 0).collect()
        })
        .collect();
    let mut found: HashMap<&'static str, Generated> = HashMap::new();
    let mut pick = vec![0usize; classes.len()];
    loop {
        let mut gens = Vec::new();
        for (ci, class) in classes.iter().enumerate() {
            let k = choices[ci][pick[ci]];
            if k == 1 {
                continue;
            }
            for &h in class {
                let rec = arr.record(h);
                gens.push(ambient.power(rec.distinguished, (rec.e / k) as u64));
            }
        }
        let members = ambient.closure(&gens);
        let scalars = members.iter().filter(|&&x| is_scalar[x]).count();
        if members.len() / scalars == projective {
            let mut orders: Vec<u32> = classes
                .iter()
                .map(|c| {
                    let rec = arr.record(c[0]);
                    rec.fixator
                        .members()
                        .iter()
                        .filter(|x| members.binary_search(x).is_ok())
                        .count() as u32
                })
                .filter(|&e| e > 1)
                .collect();
            orders.sort_unstable();
            orders.dedup();
            for t in targets {
                if t.order == members.len() as u64
                    && t.orders == orders.as_slice()
                    && !found.contains_key(t.name)
                {
                    found.insert(t.name, finish(t.name, t.order, &ambient, &members)?);
                }
            }
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return targets
                    .iter()
                    .map(|t| {
                        found
                            .remove(t.name)
                            .ok_or_else(|| Error::Data(format!("{} not found", t.name)))
                    })
                    .collect();
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

pub fn tetrahedral_family() -> Result<Vec<Generated>> {
    let n = 12;
    let (zero, one, half, mhalf) = (int(n, 0), int(n, 1), q(n, 1, 2), q(n, -1, 2));
    let binary = vec![
        quaternion(n, &zero, &one, &zero, &zero),
        quaternion(n, &zero, &zero, &one, &zero),
        quaternion(n, &mhalf, &half, &half, &half),
    ];
    rank_two_family(
        n,
        binary,
        144,
        12,
        &[
            Target {
                name: "G4",
                order: 24,
                orders: &[3],
            },
            Target {
                name: "G5",
                order: 72,
                orders: &[3],
            },
            Target {
                name: "G6",
                order: 48,
                orders: &[2, 3],
            },
            Target {
                name: "G7",
                order: 144,
                orders: &[2, 3],
            },
        ],
    )
}

pub fn octahedral_family() -> Result<Vec<Generated>> {
    let n = 24;
    let (zero, one, half, mhalf) = (int(n, 0), int(n, 1), q(n, 1, 2), q(n, -1, 2));
    let mut binary = vec![
        quaternion(n, &zero, &one, &zero, &zero),
        quaternion(n, &zero, &zero, &one, &zero),
        quaternion(n, &mhalf, &half, &half, &half),
    ];
    binary.push(matrix(vec![
        vec![z(n, 3), zero.clone()],
        vec![zero.clone(), z(n, -3)],
    ]));
    rank_two_family(
        n,
        binary,
        576,
        24,
        &[
            Target {
                name: "G8",
                order: 96,
                orders: &[4],
            },
            Target {
                name: "G9",
                order: 192,
                orders: &[2, 4],
            },
            Target {
                name: "G10",
                order: 288,
                orders: &[3, 4],
            },
            Target {
                name: "G11",
                order: 576,
                orders: &[2, 3, 4],
            },
            Target {
                name: "G12",
                order: 48,
                orders: &[2],
            },
            Target {
                name: "G13",
                order: 96,
                orders: &[2],
            },
            Target {
                name: "G14",
                order: 144,
                orders: &[2, 3],
            },
            Target {
                name: "G15",
                order: 288,
                orders: &[2, 3],
            },
        ],
    )
}

pub fn icosahedral_family() -> Result<Vec<Generated>> {
    let n = 60;
    let (zero, one, half, mhalf) = (int(n, 0), int(n, 1), q(n, 1, 2), q(n, -1, 2));
    // τ = -(ζ5² + ζ5³), the golden ratio
    let tau = -&(&z(n, 24) + &z(n, 36));
    let tau_inv = &tau - &one;
    let binary = vec![
        quaternion(n, &zero, &one, &zero, &zero),
        quaternion(n, &zero, &zero, &one, &zero),
        quaternion(n, &mhalf, &half, &half, &half),
        quaternion(n, &(&tau * &half), &(&tau_inv * &half), &half, &zero),
    ];
    rank_two_family(
        n,
        binary,
        3600,
        60,
        &[
            Target {
                name: "G16",
                order: 600,
                orders: &[5],
            },
            Target {
                name: "G17",
                order: 1200,
                orders: &[2, 5],
            },
            Target {
                name: "G18",
                order: 1800,
                orders: &[3, 5],
            },
            Target {
                name: "G19",
                order: 3600,
                orders: &[2, 3, 5],
            },
            Target {
                name: "G20",
                order: 360,
                orders: &[3],
            },
            Target {
                name: "G21",
                order: 720,
                orders: &[2, 3],
            },
            Target {
                name: "G22",
                order: 240,
                orders: &[2],
            },
        ],
    )
}

fn from_reflections(
    name: &str,
    order: u64,
    conductor: u32,
    rank: usize,
    gens: Vec<Matrix>,
) -> Result<Generated> {
    let g = ReflectionGroup::generated_by(name, rank, conductor, gens, order)?;
    if g.order() as u64 != order {
        return Err(Error::ClosureMismatch {
            name: name.into(),
            declared: order,
            computed: g.order() as u64,
        });
    }
    let all: Vec<usize> = (0..g.order()).collect();
    finish(name, order, &g, &all)
}

/// Geometric representation on simple roots: `s_i(a_j) = a_j + 2cos(π/m_ij) a_i`.
#[allow(clippy::needless_range_loop)]
fn coxeter(name: &str, order: u64, conductor: u32, m: &[Vec<u32>]) -> Result<Generated> {
    let r = m.len();
    let gens = (0..r)
        .map(|i| {
            let mut rows = Vec::with_capacity(r);
            for a in 0..r {
                let mut row = Vec::with_capacity(r);
                for j in 0..r {
                    let x = if a != i {
                        int(conductor, (a == j) as i64)
                    } else if j == i {
                        int(conductor, -1)
                    } else if m[i][j] == 2 {
                        int(conductor, 0)
                    } else if m[i][j] == 3 {
                        int(conductor, 1)
                    } else {
                        let k = conductor as i64 / (2 * m[i][j] as i64);
                        &z(conductor, k) + &z(conductor, -k)
                    };
                    row.push(x);
                }
                rows.push(row);
            }
            matrix(rows)
        })
        .collect();
    from_reflections(name, order, conductor, r, gens)
}

pub fn g23() -> Result<Generated> {
    coxeter(
        "G23",
        120,
        10,
        &[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]],
    )
}

pub fn g28() -> Result<Generated> {
    coxeter(
        "G28",
        1152,
        8,
        &[
            vec![1, 3, 2, 2],
            vec![3, 1, 4, 2],
            vec![2, 4, 1, 3],
            vec![2, 2, 3, 1],
        ],
    )
}

fn hessian_roots() -> Vec<Vector> {
    let n = 3;
    let mut roots = Vec::new();
    for i in 0..3 {
        let mut v = vec![int(n, 0); 3];
        v[i] = int(n, 1);
        roots.push(v);
    }
    for a in 0..3 {
        for b in 0..3 {
            roots.push(vec![int(n, 1), z(n, a), z(n, b)]);
        }
    }
    roots
}

pub fn g25() -> Result<Generated> {
    let omega = z(3, 1);
    let gens = hessian_roots()
        .iter()
        .map(|a| unitary_reflection(a, &omega))
        .collect();
    from_reflections("G25", 648, 3, 3, gens)
}

pub fn g26() -> Result<Generated> {
    let n = 3;
    let omega = z(n, 1);
    let mut gens: Vec<Matrix> = hessian_roots()
        .iter()
        .map(|a| unitary_reflection(a, &omega))
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 0..3 {
                let mut v = vec![int(n, 0); 3];
                v[i] = int(n, 1);
                v[j] = -&z(n, k);
                gens.push(unitary_reflection(&v, &int(n, -1)));
            }
        }
    }
    from_reflections("G26", 1296, 3, 3, gens)
}

pub fn g24() -> Result<Generated> {
    let n = 7;
    // α = (-1 + √-7) / 2 = ζ + ζ² + ζ⁴
    let alpha = &(&z(n, 1) + &z(n, 2)) + &z(n, 4);
    let alpha_bar = alpha.conj();
    let (zero, one, two) = (int(n, 0), int(n, 1), int(n, 2));
    let mut roots: Vec<Vector> = Vec::new();
    for i in 0..3 {
        let mut v = vec![zero.clone(); 3];
        v[i] = two.clone();
        roots.push(v);
    }
    for i in 0..3 {
        for s in [1i64, -1] {
            let mut v = vec![alpha.clone(); 3];
            v[i] = zero.clone();
            let last = (i + 2) % 3;
            v[last] = &v[last] * &int(n, s);
            roots.push(v);
        }
    }
    for i in 0..3 {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let mut v = vec![one.clone(); 3];
                v[i] = alpha_bar.clone();
                v[(i + 1) % 3] = int(n, s1);
                v[(i + 2) % 3] = int(n, s2);
                roots.push(v);
            }
        }
    }
    let minus = int(n, -1);
    let gens: Vec<Matrix> = roots
        .iter()
        .map(|a| unitary_reflection(a, &minus))
        .collect();
    from_reflections("G24", 336, n, 3, gens)
}

fn h3_roots(n: u32, tau: &Cyclotomic) -> Vec<Vector> {
    let half = q(n, 1, 2);
    let tau_inv = tau - &int(n, 1);
    let base = [&half * tau, half.clone(), &half * &tau_inv];
    let mut roots = Vec::new();
    for i in 0..3 {
        let mut v = vec![int(n, 0); 3];
        v[i] = int(n, 1);
        roots.push(v);
    }
    for shift in 0..3 {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let signs = [int(n, 1), int(n, s1), int(n, s2)];
                let mut v = vec![int(n, 0); 3];
                for k in 0..3 {
                    v[(k + shift) % 3] = &base[k] * &signs[k];
                }
                roots.push(v);
            }
        }
    }
    roots
}

pub fn g27() -> Result<Generated> {
    let n = 15;
    let tau = -&(&z(n, 6) + &z(n, 9));
    let tau_inv = &tau - &int(n, 1);
    let half = q(n, 1, 2);
    let minus = int(n, -1);
    let roots = h3_roots(n, &tau);
    let h3: Vec<Matrix> = roots
        .iter()
        .map(|a| unitary_reflection(a, &minus))
        .collect();
    if modular_order(&h3, n, 200) != Some(120) {
        return Err(Error::Data("H3 root system is not closed".into()));
    }
    // |⟨u, v⟩|² for unit roots generating a finite dihedral group
    let allowed: Vec<Cyclotomic> = vec![
        int(n, 0),
        q(n, 1, 4),
        q(n, 1, 2),
        q(n, 3, 4),
        &(&tau * &tau) * &q(n, 1, 4),
        &(&tau_inv * &tau_inv) * &q(n, 1, 4),
    ];
    let entries = [&half * &tau, half.clone(), &half * &tau_inv];
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p in perms {
        for e2 in 0..6 {
            for e3 in 0..6 {
                let eps = [int(n, 1), sixth(n, e2), sixth(n, e3)];
                let mut v = vec![int(n, 0); 3];
                for k in 0..3 {
                    v[p[k]] = &entries[k] * &eps[k];
                }
                let ok = roots.iter().all(|a| {
                    let h = hermitian(&v, a);
                    let m = &h * &h.conj();
                    allowed.contains(&m)
                });
                if !ok {
                    continue;
                }
                let mut gens = h3.clone();
                gens.push(unitary_reflection(&v, &minus));
                if modular_order(&gens, n, 2161) == Some(2160) {
                    return from_reflections("G27", 2160, n, 3, gens);
                }
            }
        }
    }
    Err(Error::Data("no root extends H3 to G27".into()))
}

/// `exp(2iπ k/6)` in conductor `n` (a multiple of 3).
fn sixth(n: u32, k: i64) -> Cyclotomic {
    let w = z(n, (n / 3) as i64);
    let minus = int(n, -1);
    // ζ6 = -ω²
    let zeta6 = &minus * &(&w * &w);
    zeta6.pow(k as u64)
}

/// Every exceptional group shipped with the repository, by name.
pub fn all() -> Result<Vec<Generated>> {
    let mut out = Vec::new();
    out.extend(tetrahedral_family()?);
    out.extend(octahedral_family()?);
    out.extend(icosahedral_family()?);
    out.push(g23()?);
    out.push(g24()?);
    out.push(g25()?);
    out.push(g26()?);
    out.push(g27()?);
    out.push(g28()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_fix_the_orthogonal_hyperplane() {
        let a = vec![int(3, 1), z(3, 1)];
        let s = unitary_reflection(&a, &z(3, 1));
        let fixed = vec![&int(3, 0) - &z(3, 2), int(3, 1)];
        assert_eq!(hermitian(&fixed, &a), int(3, 0));
        assert_eq!(s.apply(&fixed), fixed);
        assert_eq!(
            s.apply(&a),
            a.iter().map(|x| x * &z(3, 1)).collect::<Vec<_>>()
        );
        assert_eq!(modular_order(&[s], 3, 10), Some(3));
    }

    #[test]
    fn modular_order_respects_limit() {
        let s = unitary_reflection(&[int(1, 1), int(1, -1)], &int(1, -1));
        let t = unitary_reflection(&[int(1, 0), int(1, 1)], &int(1, -1));
        assert_eq!(modular_order(&[s.clone(), t.clone()], 1, 100), Some(8));
        assert_eq!(modular_order(&[s, t], 1, 4), None);
    }
}
