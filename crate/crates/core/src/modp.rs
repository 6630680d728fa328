//! Reduction of cyclotomic matrices into a prime field `F_p` with
//! `p ≡ 1 (mod n)`, sending `ζ_n` to a primitive n-th root of unity.
//!
//! The reduction is a ring homomorphism on elements whose denominators are
//! prime to `p`. Groups use it as a hashing and multiplication shortcut and
//! compare every hash hit with the exact matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::Cyclotomic;
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct ModField {
    p: u64,
    conductor: u32,
    /// `root_powers[j] = w^j` for the chosen primitive root `w`.
    root_powers: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ModField {
    /// The `skip`-th prime below 2^31 that is `≡ 1 (mod conductor)`.
    pub fn new(conductor: u32, skip: usize) -> Self {
        let n = conductor as u64;
        let mut k = ((1u64 << 31) - 1) / n;
        let mut seen = 0;
        let p = loop {
            let cand = k * n + 1;
            if cand < (1u64 << 31) && is_prime(cand) {
                if seen == skip {
                    break cand;
                }
                seen += 1;
            }
            k -= 1;
        };
        let factors = prime_factors(n);
        let w = (2..p)
            .map(|g| pow_mod(g, (p - 1) / n, p))
            .find(|&w| factors.iter().all(|&q| pow_mod(w, n / q, p) != 1))
            .expect("a primitive root exists");
        let root_powers = (0..n).map(|j| pow_mod(w, j, p)).collect();
        ModField {
            p,
            conductor,
            root_powers,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn reduce(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Image of `x`, or `None` when its denominator vanishes mod p.
    pub fn image(&self, x: &Cyclotomic) -> Option<u64> {
        let x = if x.conductor() == self.conductor {
            x.clone()
        } else {
            x.embed(self.conductor)
        };
        let (num, den) = x.numerators();
        let d = self.reduce(den);
        if d == 0 {
            return None;
        }
        let mut acc = 0u64;
        for (c, w) in num.iter().zip(&self.root_powers) {
            if !c.is_zero() {
                acc = (acc + self.reduce(c) * w) % self.p;
            }
        }
        Some(acc * pow_mod(d, self.p - 2, self.p) % self.p)
    }

    pub fn matrix_image(&self, m: &Matrix) -> Option<Vec<u32>> {
        m.entries()
            .iter()
            .map(|x| self.image(x).map(|v| v as u32))
            .collect()
    }

    /// Product of two row-major square matrices of side `n`.
    pub fn mul(&self, a: &[u32], b: &[u32], n: usize, out: &mut Vec<u32>) {
        out.clear();
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += a[i * n + k] as u64 * b[k * n + j] as u64 % self.p;
                }
                out.push((acc % self.p) as u32);
            }
        }
    }
}
