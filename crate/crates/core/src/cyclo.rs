//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^(φ(n)-1)` as integer
//! numerators over one positive common denominator, reduced so that the
//! numerators and the denominator are coprime. Reduction modulo the n-th
//! cyclotomic polynomial uses a per-conductor table of reduced powers of ζ,
//! built once and shared.
//!
//! Operands of different conductors are embedded into the lcm conductor.
//! Results are never shrunk back; [`Cyclotomic::minimize`] does that on
//! request and is what equality and hashing use across conductors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduction data for one conductor.
pub(crate) struct FieldData {
    n: u32,
    phi: usize,
    /// `powers[j]` is `ζ^j` in the power basis, for `0 <= j < n`.
    powers: Vec<Vec<BigInt>>,
}

fn field(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    let data = Arc::new(FieldData::build(n));
    cache.write().unwrap().entry(n).or_insert(data).clone()
}

impl FieldData {
    fn build(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then subtract top * Φ_n (monic)
            let top = cur[phi - 1].clone();
            let mut next = vec![BigInt::zero(); phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in next.iter_mut().enumerate() {
                    *c -= &top * poly[i];
                }
            }
            cur = next;
        }
        FieldData { n, phi, powers }
    }
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = divide_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    cache.write().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Element of `Q(ζ_n)` in canonical power-basis form.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<FieldData>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        let field = field(n);
        let num = vec![BigInt::zero(); field.phi];
        Cyclotomic {
            field,
            num,
            den: BigInt::one(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_integer(n, 1)
    }

    pub fn from_integer(n: u32, k: i64) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = BigInt::from(k);
        z.normalize();
        z
    }

    pub fn from_rational(n: u32, q: &BigRational) -> Self {
        let mut z = Self::zero(n);
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let field = field(n);
        let j = k.rem_euclid(n as i64) as usize;
        let num = field.powers[j].clone();
        Cyclotomic {
            field,
            num,
            den: BigInt::one(),
        }
    }

    /// Canonical representative of `Σ raw[j] ζ_n^j`; `raw` may have any length.
    pub fn canonicalize(n: u32, raw: &[BigRational]) -> Self {
        let den = raw.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = raw.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Self::from_raw_integers(field(n), &ints, den)
    }

    /// Builds from power-basis coefficients of length `φ(n)`.
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> Result<Self> {
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(Error::Data(format!(
                "conductor {n} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::canonicalize(n, coeffs))
    }

    fn from_raw_integers(field: Arc<FieldData>, raw: &[BigInt], den: BigInt) -> Self {
        let phi = field.phi;
        let n = field.n as usize;
        let mut num = vec![BigInt::zero(); phi];
        for (j, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let jj = j % n;
            if jj < phi {
                num[jj] += c;
            } else {
                for (acc, p) in num.iter_mut().zip(&field.powers[jj]) {
                    if !p.is_zero() {
                        *acc += c * p;
                    }
                }
            }
        }
        let mut z = Cyclotomic { field, num, den };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Re-expresses `self` in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u32) -> Self {
        let n = self.field.n;
        if m == n {
            return self.clone();
        }
        assert!(m.is_multiple_of(n), "cannot embed conductor {n} into {m}");
        let step = (m / n) as usize;
        let mut raw = vec![BigInt::zero(); (n as usize - 1) * step + 1];
        for (i, c) in self.num.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::from_raw_integers(field(m), &raw, self.den.clone())
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.conductor(), b.conductor());
        (a.embed(m), b.embed(m))
    }

    /// Galois automorphism `ζ ↦ ζ^k`, `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.field.n as i64;
        let mut raw = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let j = (i as i64 * k).rem_euclid(n) as usize;
            raw[j] += c;
        }
        Self::from_raw_integers(self.field.clone(), &raw, self.den.clone())
    }

    pub fn conj(&self) -> Self {
        self.galois(self.field.n as i64 - 1)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.n;
        // product of all non-trivial conjugates, then divide by the norm
        let mut others = Self::one(n);
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k as i64);
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        let inv_norm = Self::from_rational(n, &norm.recip());
        Ok(&others * &inv_norm)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Writes a root of unity as `ζ_L^j` with `L = lcm(2, n)`.
    ///
    /// Roots of unity in `Q(ζ_n)` are exactly `±ζ_n^j`, so comparing with the
    /// reduced powers is a complete test. Returns `(j, L)`.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        if !self.den.is_one() {
            return None;
        }
        let n = self.field.n;
        let l = lcm(2, n);
        for (j, p) in self.field.powers.iter().enumerate() {
            let j = j as u32;
            if *p == self.num {
                let e = if n.is_multiple_of(2) { j } else { 2 * j };
                return Some((e % l, l));
            }
            if p.iter().zip(&self.num).all(|(a, b)| *a == -b) {
                let e = if n.is_multiple_of(2) {
                    j + n / 2
                } else {
                    2 * j + n
                };
                return Some((e % l, l));
            }
        }
        None
    }

    /// Multiplicative order if `self` is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        self.root_of_unity_exponent().map(|(j, l)| l / j.gcd(&l))
    }

    /// Smallest conductor whose field contains `self`, with coordinates there.
    pub fn minimize(&self) -> Self {
        let n = self.field.n;
        if self.is_rational() {
            return Self::from_rational(1, &self.as_rational().unwrap());
        }
        for m in 2..n {
            if !n.is_multiple_of(m) || m % 4 == 2 {
                continue;
            }
            if let Some(c) = self.preimage(m) {
                return c;
            }
        }
        self.clone()
    }

    /// Solves for `c` in `Q(ζ_m)` with `c.embed(n) == self`.
    fn preimage(&self, m: u32) -> Option<Self> {
        let pm = euler_phi(m) as usize;
        let pn = self.field.phi;
        let cols: Vec<Vec<BigRational>> = (0..pm)
            .map(|j| {
                Self::root_of_unity(m, j as i64)
                    .embed(self.field.n)
                    .coeffs()
            })
            .collect();
        let target = self.coeffs();
        // augmented rows: pn equations in pm unknowns
        let mut rows: Vec<Vec<BigRational>> = (0..pn)
            .map(|i| {
                let mut r: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
                r.push(target[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pm {
            let Some(p) = (row..pn).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(row, p);
            let inv = rows[row][col].recip();
            for v in rows[row].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..pn {
                if i != row && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    let pivot_row = rows[row].clone();
                    for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                        *v = &*v - &(&f * pv);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| !r[pm].is_zero()) {
            return None;
        }
        let mut sol = vec![BigRational::zero(); pm];
        for (i, &c) in pivots.iter().enumerate() {
            sol[c] = rows[i][pm].clone();
        }
        Some(Self::canonicalize(m, &sol))
    }

    /// Lexicographic order on canonical coefficient sequences.
    ///
    /// Only meaningful between elements of the same conductor; operands of
    /// different conductors are first embedded into the lcm.
    pub fn cmp_coeffs(&self, other: &Self) -> Ordering {
        if self.conductor() != other.conductor() {
            let (a, b) = Self::unify(self, other);
            return a.cmp_coeffs(&b);
        }
        for (a, b) in self.num.iter().zip(&other.num) {
            let ord = (a * &other.den).cmp(&(b * &self.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    /// Residues of numerators and denominator, used for modular images.
    pub(crate) fn numerators(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = (self.minimize(), other.minimize());
        a.conductor() == b.conductor() && a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let m = self.minimize();
        m.conductor().hash(state);
        m.num.hash(state);
        m.den.hash(state);
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::unify(self, rhs);
            return &a + &b;
        }
        let num = if self.den == rhs.den {
            self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect()
        } else {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| a * &rhs.den + b * &self.den)
                .collect()
        };
        let den = if self.den == rhs.den {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        let mut z = Cyclotomic {
            field: self.field.clone(),
            num,
            den,
        };
        z.normalize();
        z
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::unify(self, rhs);
            return &a * &b;
        }
        let phi = self.field.phi;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_raw_integers(self.field.clone(), &raw, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.coeffs().into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let term = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, neg) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}](z = ζ_{})", self, self.conductor())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Data(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Wire form: `{"conductor": n, "coeffs": ["a/b", ...]}`.
#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr {
            conductor: self.conductor(),
            coeffs: self.coeffs().iter().map(|q| q.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Cyclotomic::canonicalize(repr.conductor, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn raw(n: u32, v: &[i64]) -> Cyclotomic {
        let v: Vec<_> = v.iter().map(|&a| q(a, 1)).collect();
        Cyclotomic::canonicalize(n, &v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15).len(), 9);
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn canonicalize_examples() {
        assert!(raw(3, &[1, 1, 1]).is_zero());
        assert_eq!(raw(4, &[0, 0, 1, 0]), Cyclotomic::from_integer(4, -1));
        let z = raw(6, &[0, 0, 1, 0, 0, 0]);
        assert_eq!(z.coeffs(), vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn field_op_examples() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert!((&z3 * &z3.pow(2)).is_one());
        assert_eq!(
            Cyclotomic::root_of_unity(5, 1).conj(),
            Cyclotomic::root_of_unity(5, 4)
        );
        let a = raw(4, &[1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeffs(), vec![q(1, 2), q(-1, 2)]);
        assert!((&a * &inv).is_one());
        assert!(matches!(
            Cyclotomic::zero(7).inverse(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn mixed_conductors() {
        // ζ_3 = ζ_6^2, and i * i = -1 computed across conductors 4 and 12
        let a = Cyclotomic::root_of_unity(3, 1);
        let b = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(a, b);
        let i = Cyclotomic::root_of_unity(4, 1);
        let s = &i * &Cyclotomic::root_of_unity(12, 3);
        assert_eq!(s.conductor(), 12);
        assert_eq!(s, Cyclotomic::from_integer(1, -1));
        assert_eq!(s.minimize().conductor(), 1);
    }

    #[test]
    fn minimize_finds_subfield() {
        let x = Cyclotomic::root_of_unity(5, 2).embed(60);
        let m = x.minimize();
        assert_eq!(m.conductor(), 5);
        assert_eq!(m, Cyclotomic::root_of_unity(5, 2));
        // -ζ_3 = ζ_6^5 is a sixth root living in Q(ζ_3)
        let y = Cyclotomic::root_of_unity(12, 10);
        assert_eq!(y.minimize().conductor(), 3);
    }

    #[test]
    fn root_orders() {
        assert_eq!(
            Cyclotomic::root_of_unity(5, 1).root_of_unity_order(),
            Some(5)
        );
        assert_eq!(
            Cyclotomic::from_integer(1, -1).root_of_unity_order(),
            Some(2)
        );
        assert_eq!(Cyclotomic::one(7).root_of_unity_order(), Some(1));
        // 1 + ζ_3 = -ζ_3^2 has order 6
        assert_eq!(raw(3, &[1, 1]).root_of_unity_order(), Some(6));
        // 1 + i has absolute value √2
        assert_eq!(raw(4, &[1, 1]).root_of_unity_order(), None);
        assert_eq!(raw(5, &[2]).root_of_unity_order(), None);
        for n in 1..=24u32 {
            for k in 1..n {
                let z = Cyclotomic::root_of_unity(n, k as i64);
                assert_eq!(z.root_of_unity_order(), Some(n / n.gcd(&k)), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn display_and_json() {
        let x = Cyclotomic::canonicalize(5, &[q(1, 2), q(-1, 1), q(0, 1), q(3, 4)]);
        assert_eq!(x.to_string(), "1/2 - z + 3/4*z^3");
        assert_eq!(Cyclotomic::zero(3).to_string(), "0");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"conductor":5,"coeffs":["1/2","-1","0","3/4"]}"#);
        let back: Cyclotomic = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
