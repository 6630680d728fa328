//! Small dense square matrices and vectors over a cyclotomic field.

use std::cmp::Ordering;

use crate::cyclo::Cyclotomic;
use crate::error::Result;

/// Row vector or column vector; which one is clear from context.
pub type Vector = Vec<Cyclotomic>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn new(n: usize, entries: Vec<Cyclotomic>) -> Self {
        assert_eq!(entries.len(), n * n);
        Matrix { n, entries }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Cyclotomic::one(conductor)
                } else {
                    Cyclotomic::zero(conductor)
                }
            })
            .collect();
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn conductor(&self) -> u32 {
        self.entries.first().map_or(1, Cyclotomic::conductor)
    }

    /// Re-expresses all entries in conductor `m`.
    pub fn embed(&self, m: u32) -> Self {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x.embed(m)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<Cyclotomic> = None;
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                entries.push(acc.unwrap_or_else(|| Cyclotomic::zero(self.conductor())));
            }
        }
        Matrix { n, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vector {
        let n = self.n;
        (0..n)
            .map(|i| dot(&self.entries[i * n..(i + 1) * n], v))
            .collect()
    }

    /// `a M` for a row vector `a`.
    pub fn apply_row(&self, a: &[Cyclotomic]) -> Vector {
        let n = self.n;
        (0..n)
            .map(|j| {
                let col: Vec<Cyclotomic> = (0..n).map(|i| self.get(i, j).clone()).collect();
                dot(a, &col)
            })
            .collect()
    }

    pub fn minus_identity(&self) -> Matrix {
        let n = self.n;
        let c = self.conductor();
        let one = Cyclotomic::one(c);
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, x)| if k / n == k % n { x - &one } else { x.clone() })
            .collect();
        Matrix { n, entries }
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.n).fold(Cyclotomic::zero(self.conductor()), |acc, i| {
            &acc + self.get(i, i)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, x)| {
            if k / self.n == k % self.n {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    pub fn row(&self, i: usize) -> Vector {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// True when the rank is at most one, i.e. every 2×2 minor vanishes.
    pub fn rank_at_most_one(&self) -> bool {
        let n = self.n;
        for i1 in 0..n {
            for i2 in i1 + 1..n {
                for j1 in 0..n {
                    for j2 in j1 + 1..n {
                        let a = self.get(i1, j1) * self.get(i2, j2);
                        let b = self.get(i1, j2) * self.get(i2, j1);
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> Result<usize> {
        let n = self.n;
        let mut rows: Vec<Vector> = (0..n).map(|i| self.row(i)).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].inverse()?;
            let pivot: Vector = rows[rank].iter().map(|x| x * &inv).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        Ok(rank)
    }

    pub fn determinant(&self) -> Result<Cyclotomic> {
        let n = self.n;
        let c = self.conductor();
        let mut rows: Vec<Vector> = (0..n).map(|i| self.row(i)).collect();
        let mut det = Cyclotomic::one(c);
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
                return Ok(Cyclotomic::zero(c));
            };
            if p != col {
                rows.swap(col, p);
                det = -det;
            }
            det = &det * &rows[col][col];
            let inv = rows[col][col].inverse()?;
            for i in col + 1..n {
                if !rows[i][col].is_zero() {
                    let f = &rows[i][col] * &inv;
                    let pivot = rows[col].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot) {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Lexicographic comparison of the entries' canonical coefficients.
    pub fn cmp_canonical(&self, other: &Matrix) -> Ordering {
        cmp_vectors(&self.entries, &other.entries)
    }
}

pub fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let c = a.first().map_or(1, Cyclotomic::conductor);
    a.iter().zip(b).fold(Cyclotomic::zero(c), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            &acc + &(x * y)
        }
    })
}

pub fn cmp_vectors(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.cmp_coeffs(y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Scales `v` so that its first nonzero coordinate is 1. Returns `None` for
/// the zero vector.
pub fn normalize_projective(v: &[Cyclotomic]) -> Option<Vector> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    if lead.is_one() {
        return Some(v.to_vec());
    }
    let inv = lead.inverse().ok()?;
    Some(v.iter().map(|x| x * &inv).collect())
}

/// The scalar `c` with `u = c v`, if `u` is a multiple of `v` (`v` nonzero).
pub fn proportionality(u: &[Cyclotomic], v: &[Cyclotomic]) -> Option<Cyclotomic> {
    let k = v.iter().position(|x| !x.is_zero())?;
    let c = &u[k] * &v[k].inverse().ok()?;
    u.iter().zip(v).all(|(a, b)| *a == &c * b).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, c: u32, v: &[i64]) -> Matrix {
        Matrix::new(
            n,
            v.iter().map(|&a| Cyclotomic::from_integer(c, a)).collect(),
        )
    }

    #[test]
    fn rank_and_det() {
        let a = m(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]);
        assert_eq!(a.rank().unwrap(), 2);
        assert!(a.determinant().unwrap().is_zero());
        let b = m(2, 4, &[0, 1, 1, 0]);
        assert_eq!(b.determinant().unwrap(), Cyclotomic::from_integer(4, -1));
        assert!(b.minus_identity().rank_at_most_one());
        assert!(!m(2, 1, &[2, 0, 0, 3]).minus_identity().rank_at_most_one());
    }

    #[test]
    fn projective_helpers() {
        let v = vec![
            Cyclotomic::zero(4),
            Cyclotomic::root_of_unity(4, 1),
            Cyclotomic::one(4),
        ];
        let n = normalize_projective(&v).unwrap();
        assert!(n[1].is_one());
        assert_eq!(n[2], Cyclotomic::root_of_unity(4, 3));
        let c = proportionality(&v, &n).unwrap();
        assert_eq!(c, Cyclotomic::root_of_unity(4, 1));
    }
}
