//! Finite reflection groups with an indexed element table.
//!
//! The infinite series `G(de,e,r)` is enumerated directly in monomial form;
//! exceptional groups are closed from generator matrices. Either way the
//! group ends up as a canonically sorted table, and all subgroup machinery
//! works with indices into it.

mod data;
mod monomial;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

pub use data::ExceptionalRecord;
pub use monomial::MonomialElement;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::modp::ModField;
use monomial::{perm_rank, permutations};

pub const DEFAULT_ORDER_BOUND: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Imprimitive {
        d: u32,
        e: u32,
        r: usize,
    },
    Exceptional {
        name: String,
        source: Option<String>,
    },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Imprimitive { d, e, r } => write!(f, "G({},{},{})", d * e, e, r),
            Family::Exceptional { name, .. } => write!(f, "{name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    Monomial(MonomialElement),
    Dense(Matrix),
}

impl GroupElement {
    pub fn to_matrix(&self) -> Matrix {
        match self {
            GroupElement::Monomial(m) => m.to_matrix(),
            GroupElement::Dense(m) => m.clone(),
        }
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vector {
        match self {
            GroupElement::Monomial(m) => m.apply(v),
            GroupElement::Dense(m) => m.apply(v),
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialElement> {
        match self {
            GroupElement::Monomial(m) => Some(m),
            GroupElement::Dense(_) => None,
        }
    }
}

enum Engine {
    Monomial {
        d: u32,
        e: u32,
        modulus: u32,
        per_perm: usize,
    },
    Modular {
        field: ModField,
        images: Vec<u32>,
        index: HashMap<Box<[u32]>, u32>,
    },
}

/// Closed finite matrix group stored as a sorted element table.
pub struct ReflectionGroup {
    family: Family,
    rank: usize,
    conductor: u32,
    elements: Vec<GroupElement>,
    generators: Vec<usize>,
    identity: usize,
    inverses: Vec<u32>,
    engine: Engine,
}

/// Members are sorted indices into the parent's element table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_parts(members: Vec<usize>, generators: Vec<usize>) -> Self {
        Subgroup {
            members,
            generators,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

fn factorial(r: usize) -> u128 {
    (1..=r as u128).product()
}

/// `(de)^r · r! / e`.
pub fn imprimitive_order(d: u32, e: u32, r: usize) -> u128 {
    (d as u128 * e as u128).pow(r as u32) * factorial(r) / e as u128
}

impl ReflectionGroup {
    /// Enumerates `G(de, e, r)`: monomial matrices over `μ_de` whose nonzero
    /// entries multiply to an element of `μ_d`.
    pub fn build_gde(d: u32, e: u32, r: usize, bound: u64) -> Result<Self> {
        if d == 0 || e == 0 || r == 0 {
            return Err(Error::Data("d, e and r must be positive".into()));
        }
        let order = imprimitive_order(d, e, r);
        if order > bound as u128 {
            return Err(Error::GroupTooLarge { order, bound });
        }
        let m = d * e;
        let per_perm = (m as usize).pow(r as u32 - 1) * d as usize;
        let mut elements = Vec::with_capacity(order as usize);
        for perm in permutations(r) {
            for prefix in 0..(m as usize).pow(r as u32 - 1) {
                let mut exps = vec![0u32; r];
                let mut rest = prefix;
                for k in (0..r - 1).rev() {
                    exps[k] = (rest % m as usize) as u32;
                    rest /= m as usize;
                }
                let partial: u32 = exps[..r - 1].iter().sum();
                let c = (e - partial % e) % e;
                for k in 0..d {
                    exps[r - 1] = c + k * e;
                    elements.push(GroupElement::Monomial(MonomialElement::new(
                        perm.clone(),
                        exps.clone(),
                        m,
                    )));
                }
            }
        }
        debug_assert_eq!(elements.len() as u128, order);

        let engine = Engine::Monomial {
            d,
            e,
            modulus: m,
            per_perm,
        };
        let mut group = ReflectionGroup {
            family: Family::Imprimitive { d, e, r },
            rank: r,
            conductor: m,
            elements,
            generators: Vec::new(),
            identity: 0,
            inverses: Vec::new(),
            engine,
        };
        group.identity = group
            .monomial_index(&MonomialElement::identity(r, m))
            .expect("identity belongs to the group");
        let gens = standard_generators(d, e, r);
        group.generators = gens
            .iter()
            .map(|g| {
                group
                    .monomial_index(g)
                    .expect("generator belongs to the group")
            })
            .collect();
        group.finish()?;
        Ok(group)
    }

    /// Closes the generators of an exceptional record and checks the order.
    pub fn build_from_matrices(record: &ExceptionalRecord, bound: u64) -> Result<Self> {
        if record.declared_order > bound {
            return Err(Error::GroupTooLarge {
                order: record.declared_order as u128,
                bound,
            });
        }
        let gens = record.generator_matrices()?;
        let family = Family::Exceptional {
            name: record.name.clone(),
            source: record.source.clone(),
        };
        let group = Self::close(
            family,
            record.rank,
            record.conductor,
            gens,
            record.declared_order,
        )?;
        if group.order() as u64 != record.declared_order {
            return Err(Error::ClosureMismatch {
                name: record.name.clone(),
                declared: record.declared_order,
                computed: group.order() as u64,
            });
        }
        Ok(group)
    }

    /// Breadth-first closure of arbitrary generator matrices, stopping with
    /// `ClosureMismatch` once more than `limit` elements appear.
    pub fn generated_by(
        name: &str,
        rank: usize,
        conductor: u32,
        gens: Vec<Matrix>,
        limit: u64,
    ) -> Result<Self> {
        let family = Family::Exceptional {
            name: name.to_string(),
            source: None,
        };
        Self::close(family, rank, conductor, gens, limit)
    }

    fn close(
        family: Family,
        rank: usize,
        conductor: u32,
        gens: Vec<Matrix>,
        limit: u64,
    ) -> Result<Self> {
        let gens: Vec<Matrix> = gens.into_iter().map(|g| g.embed(conductor)).collect();
        if gens.iter().any(|g| g.dim() != rank) {
            return Err(Error::Data("generator size does not match rank".into()));
        }
        for attempt in 0..8 {
            let field = ModField::new(conductor, attempt);
            match close_with(&family, rank, conductor, &gens, limit, &field)? {
                Some(group) => return Ok(group),
                None => continue,
            }
        }
        Err(Error::NoPrime(conductor))
    }

    fn finish(&mut self) -> Result<()> {
        let n = self.order();
        // inverses from the BFS tree: (x g)^-1 = g^-1 x^-1
        let gen_inv: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| self.inverse_by_powers(g))
            .collect();
        let mut inverses = vec![u32::MAX; n];
        inverses[self.identity] = self.identity as u32;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if inverses[y] == u32::MAX {
                    inverses[y] = self.mul(gen_inv[k], inverses[x] as usize) as u32;
                    queue.push_back(y);
                }
            }
        }
        if inverses.contains(&u32::MAX) {
            return Err(Error::Data(format!(
                "generators of {} do not generate the element table",
                self.family
            )));
        }
        self.inverses = inverses;
        Ok(())
    }

    fn inverse_by_powers(&self, g: usize) -> usize {
        let mut prev = self.identity;
        let mut cur = g;
        while cur != self.identity {
            prev = cur;
            cur = self.mul(cur, g);
        }
        prev
    }

    fn monomial_index(&self, g: &MonomialElement) -> Option<usize> {
        let Engine::Monomial {
            d,
            e,
            modulus,
            per_perm,
        } = &self.engine
        else {
            return None;
        };
        let r = g.rank();
        let exps = g.exps();
        if g.modulus() != *modulus || r != self.rank || !g.pi_exponent().is_multiple_of(*e) {
            return None;
        }
        let mut prefix = 0usize;
        for &x in &exps[..r - 1] {
            prefix = prefix * *modulus as usize + x as usize;
        }
        let partial: u32 = exps[..r - 1].iter().sum();
        let c = (e - partial % e) % e;
        let k = (exps[r - 1] - c) / e;
        debug_assert!(k < *d);
        Some(perm_rank(g.perm()) * per_perm + prefix * *d as usize + k as usize)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.engine, Engine::Monomial { .. })
    }

    /// Index of the product `a · b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.engine {
            Engine::Monomial { .. } => {
                let (GroupElement::Monomial(x), GroupElement::Monomial(y)) =
                    (&self.elements[a], &self.elements[b])
                else {
                    unreachable!()
                };
                self.monomial_index(&x.compose(y))
                    .expect("monomial group is closed")
            }
            Engine::Modular {
                field,
                images,
                index,
            } => {
                let s = self.rank * self.rank;
                let mut out = Vec::with_capacity(s);
                field.mul(
                    &images[a * s..(a + 1) * s],
                    &images[b * s..(b + 1) * s],
                    self.rank,
                    &mut out,
                );
                *index.get(out.as_slice()).expect("group is closed") as usize
            }
        }
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        // by^-1 x by
        self.mul(self.mul(self.inverse(by), x), by)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // a^-1 b^-1 a b
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverse(ba), ab)
    }

    pub fn power(&self, x: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut cur = x;
        while cur != self.identity {
            cur = self.mul(cur, x);
            k += 1;
        }
        k
    }

    pub fn matrix(&self, i: usize) -> Matrix {
        self.elements[i].to_matrix()
    }

    /// `π(g)`, defined for the monomial series.
    pub fn pi(&self, i: usize) -> Option<Cyclotomic> {
        self.elements[i].as_monomial().map(MonomialElement::pi)
    }

    /// Index of an element given as a matrix, if it belongs to the group.
    pub fn index_of_matrix(&self, m: &Matrix) -> Option<usize> {
        match &self.engine {
            Engine::Monomial { .. } => self.elements.iter().position(|g| g.to_matrix() == *m),
            Engine::Modular { field, index, .. } => {
                let img = field.matrix_image(&m.embed(self.conductor))?;
                let i = *index.get(img.as_slice())? as usize;
                (self.matrix(i) == m.embed(self.conductor)).then_some(i)
            }
        }
    }

    /// Breadth-first closure of `gens` inside the table; sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A small generating set of a closed member set, chosen greedily in
    /// table order.
    pub fn small_generating_set(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut count = 1;
        for &m in members {
            if count == members.len() {
                break;
            }
            if inside[m] {
                continue;
            }
            gens.push(m);
            let closed = self.closure(&gens);
            count = closed.len();
            for x in closed {
                inside[x] = true;
            }
        }
        gens
    }

    pub fn subgroup_from_members(&self, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let generators = self.small_generating_set(&members);
        Subgroup {
            members,
            generators,
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let members = self.closure(gens);
        let mut generators: Vec<usize> = gens
            .iter()
            .copied()
            .filter(|&g| g != self.identity)
            .collect();
        generators.sort_unstable();
        generators.dedup();
        Subgroup {
            members,
            generators,
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
            generators: self.generators.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            members: vec![self.identity],
            generators: Vec::new(),
        }
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&w| self.mul(w, g) == self.mul(g, w))
            .collect();
        self.subgroup_from_members(members)
    }

    /// Reflection test on a single element.
    pub fn is_reflection(&self, i: usize) -> bool {
        if i == self.identity {
            return false;
        }
        match &self.elements[i] {
            GroupElement::Monomial(m) => m.is_reflection(),
            GroupElement::Dense(m) => m.minus_identity().rank_at_most_one(),
        }
    }

    pub fn reflections(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.is_reflection(i))
            .collect()
    }
}

/// `t = diag(ζ^e, 1, …)` when `d > 1`, `s' = [[0, ζ^-1], [ζ, 0]]` when
/// `e > 1`, and the adjacent transpositions.
fn standard_generators(d: u32, e: u32, r: usize) -> Vec<MonomialElement> {
    let m = d * e;
    let id_perm: Vec<u8> = (0..r as u8).collect();
    let mut gens = Vec::new();
    if d > 1 {
        let mut exps = vec![0; r];
        exps[0] = e;
        gens.push(MonomialElement::new(id_perm.clone(), exps, m));
    }
    if r >= 2 {
        if e > 1 {
            let mut perm = id_perm.clone();
            perm.swap(0, 1);
            let mut exps = vec![0; r];
            exps[0] = 1;
            exps[1] = m - 1;
            gens.push(MonomialElement::new(perm, exps, m));
        }
        for i in 0..r - 1 {
            let mut perm = id_perm.clone();
            perm.swap(i, i + 1);
            gens.push(MonomialElement::new(perm, vec![0; r], m));
        }
    }
    gens
}

/// One closure attempt; `Ok(None)` means the prime collided and another
/// should be tried.
fn close_with(
    family: &Family,
    rank: usize,
    conductor: u32,
    gens: &[Matrix],
    limit: u64,
    field: &ModField,
) -> Result<Option<ReflectionGroup>> {
    let ident = Matrix::identity(rank, conductor);
    let mut elems: Vec<Matrix> = vec![ident.clone()];
    let mut keys: HashMap<Box<[u32]>, u32> = HashMap::new();
    let Some(k) = field.matrix_image(&ident) else {
        return Ok(None);
    };
    keys.insert(k.into_boxed_slice(), 0);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = elems[i].mul(g);
            let Some(k) = field.matrix_image(&y) else {
                return Ok(None);
            };
            match keys.get(k.as_slice()) {
                Some(&j) => {
                    if elems[j as usize] != y {
                        return Ok(None);
                    }
                }
                None => {
                    if elems.len() as u64 >= limit {
                        return Err(Error::ClosureMismatch {
                            name: family.to_string(),
                            declared: limit,
                            computed: elems.len() as u64 + 1,
                        });
                    }
                    keys.insert(k.into_boxed_slice(), elems.len() as u32);
                    elems.push(y);
                }
            }
        }
        i += 1;
    }

    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by(|&a, &b| elems[a].cmp_canonical(&elems[b]));
    let sorted: Vec<Matrix> = order.iter().map(|&k| elems[k].clone()).collect();
    let s = rank * rank;
    let mut images = Vec::with_capacity(sorted.len() * s);
    let mut index = HashMap::with_capacity(sorted.len());
    for (pos, m) in sorted.iter().enumerate() {
        let img = field.matrix_image(m).expect("checked during closure");
        images.extend_from_slice(&img);
        index.insert(img.into_boxed_slice(), pos as u32);
    }
    let identity = sorted.iter().position(Matrix::is_identity).unwrap();
    let generators = gens
        .iter()
        .map(|g| {
            let img = field.matrix_image(g).unwrap();
            index[img.as_slice()] as usize
        })
        .collect();
    let mut group = ReflectionGroup {
        family: family.clone(),
        rank,
        conductor,
        elements: sorted.into_iter().map(GroupElement::Dense).collect(),
        generators,
        identity,
        inverses: Vec::new(),
        engine: Engine::Modular {
            field: field.clone(),
            images,
            index,
        },
    };
    group.finish()?;
    Ok(Some(group))
}
