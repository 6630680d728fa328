use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::matrix::{Matrix, Vector};

/// Monomial matrix with entries in `μ_m`: column `i` carries `ζ_m^exps[i]`
/// in row `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialElement {
    perm: Vec<u8>,
    exps: Vec<u32>,
    modulus: u32,
}

impl MonomialElement {
    pub fn new(perm: Vec<u8>, exps: Vec<u32>, modulus: u32) -> Self {
        assert_eq!(perm.len(), exps.len());
        let exps = exps.into_iter().map(|x| x % modulus).collect();
        MonomialElement {
            perm,
            exps,
            modulus,
        }
    }

    pub fn identity(r: usize, modulus: u32) -> Self {
        MonomialElement {
            perm: (0..r as u8).collect(),
            exps: vec![0; r],
            modulus,
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j as usize]).collect();
        let exps = other
            .perm
            .iter()
            .zip(&other.exps)
            .map(|(&j, &b)| (b + self.exps[j as usize]) % self.modulus)
            .collect();
        MonomialElement {
            perm,
            exps,
            modulus: self.modulus,
        }
    }

    pub fn inverse(&self) -> Self {
        let r = self.rank();
        let mut perm = vec![0u8; r];
        let mut exps = vec![0u32; r];
        for i in 0..r {
            let j = self.perm[i] as usize;
            perm[j] = i as u8;
            exps[j] = (self.modulus - self.exps[i]) % self.modulus;
        }
        MonomialElement {
            perm,
            exps,
            modulus: self.modulus,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
            && self.exps.iter().all(|&x| x == 0)
    }

    /// Exponent `k` with `π(g) = ζ_m^k`, the product of the nonzero entries.
    pub fn pi_exponent(&self) -> u32 {
        self.exps.iter().sum::<u32>() % self.modulus
    }

    pub fn pi(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.modulus, self.pi_exponent() as i64)
    }

    /// Reflection test from the shape of the matrix: either a single
    /// non-trivial diagonal entry, or a transposition block `[[0, ζ^b], [ζ^a, 0]]`
    /// with `a + b ≡ 0` and identity elsewhere.
    pub fn is_reflection(&self) -> bool {
        let moved: Vec<usize> = (0..self.rank())
            .filter(|&i| self.perm[i] as usize != i)
            .collect();
        match moved.as_slice() {
            [] => self.exps.iter().filter(|&&x| x != 0).count() == 1,
            &[i, j] => {
                self.exps
                    .iter()
                    .enumerate()
                    .all(|(k, &x)| k == i || k == j || x == 0)
                    && (self.exps[i] + self.exps[j]).is_multiple_of(self.modulus)
            }
            _ => false,
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let r = self.rank();
        let m = self.modulus;
        let mut entries = vec![Cyclotomic::zero(m); r * r];
        for i in 0..r {
            entries[self.perm[i] as usize * r + i] =
                Cyclotomic::root_of_unity(m, self.exps[i] as i64);
        }
        Matrix::new(r, entries)
    }

    /// `g v` for a column vector.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vector {
        let mut out = vec![Cyclotomic::zero(self.modulus); v.len()];
        for i in 0..self.rank() {
            if v[i].is_zero() {
                continue;
            }
            out[self.perm[i] as usize] =
                &v[i] * &Cyclotomic::root_of_unity(self.modulus, self.exps[i] as i64);
        }
        out
    }
}

/// Lexicographic rank of a permutation.
pub(crate) fn perm_rank(perm: &[u8]) -> usize {
    let r = perm.len();
    let mut rank = 0;
    for i in 0..r {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (r - i) + smaller;
    }
    rank
}

/// All permutations of `0..r` in lexicographic order.
pub(crate) fn permutations(r: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..r as u8).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..r).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..r).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_ranks_are_lexicographic() {
        for r in 1..=5 {
            for (k, p) in permutations(r).iter().enumerate() {
                assert_eq!(perm_rank(p), k);
            }
        }
    }

    #[test]
    fn composition_matches_matrices() {
        let a = MonomialElement::new(vec![1, 2, 0], vec![1, 0, 5], 6);
        let b = MonomialElement::new(vec![2, 0, 1], vec![3, 4, 0], 6);
        assert_eq!(a.compose(&b).to_matrix(), a.to_matrix().mul(&b.to_matrix()));
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn pi_examples() {
        assert!(MonomialElement::identity(3, 4).pi().is_one());
        let t = MonomialElement::new(vec![0, 1, 2], vec![1, 0, 0], 4);
        assert_eq!(t.pi(), Cyclotomic::root_of_unity(4, 1));
        let s = MonomialElement::new(vec![1, 0, 2], vec![0, 0, 0], 4);
        assert!(s.pi().is_one());
    }

    #[test]
    fn reflection_shapes() {
        assert!(MonomialElement::new(vec![1, 0, 2], vec![2, 1, 0], 3).is_reflection());
        assert!(!MonomialElement::new(vec![1, 0, 2], vec![1, 1, 0], 3).is_reflection());
        assert!(MonomialElement::new(vec![0, 1], vec![0, 2], 3).is_reflection());
        assert!(!MonomialElement::new(vec![0, 1], vec![1, 2], 3).is_reflection());
        assert!(!MonomialElement::identity(2, 3).is_reflection());
        for g in [
            MonomialElement::new(vec![1, 0, 2], vec![2, 1, 0], 3),
            MonomialElement::new(vec![1, 2, 0], vec![0, 0, 0], 3),
            MonomialElement::new(vec![0, 1, 2], vec![0, 2, 0], 3),
        ] {
            let rank = g.to_matrix().minus_identity().rank().unwrap();
            assert_eq!(g.is_reflection(), rank == 1);
        }
    }
}
