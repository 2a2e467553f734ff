use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::GfError;

/// Largest modulus accepted; products of two residues must fit in a `u64`.
pub const MAX_MODULUS: u32 = (1 << 31) - 1;

/// A prime field `F_q` with `q` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    q: u32,
}

impl Field {
    pub fn new(q: u32) -> Result<Self, GfError> {
        if !(3..=MAX_MODULUS).contains(&q) || q % 2 == 0 || !is_prime(q) {
            return Err(GfError::InvalidModulus(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.q
    }

    /// Number of field elements, as a `u64` for domain-size arithmetic.
    #[inline]
    pub fn order(&self) -> u64 {
        self.q as u64
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe { v: 0, q: self.q }
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe { v: 1, q: self.q }
    }

    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe { v: (v % self.q as u64) as u32, q: self.q }
    }

    /// Maps a signed integer to its canonical residue, so `-1` becomes `q - 1`.
    #[inline]
    pub fn from_i64(&self, v: i64) -> Fe {
        let q = self.q as i64;
        Fe { v: v.rem_euclid(q) as u32, q: self.q }
    }

    /// Uniform over `F_q`, or over `F_q^×` when `nonzero` is set.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, nonzero: bool) -> Fe {
        let lo = u32::from(nonzero);
        Fe { v: rng.gen_range(lo..self.q), q: self.q }
    }

    pub fn sample_vec<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Vec<Fe> {
        (0..len).map(|_| self.sample(rng, false)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        let q = self.q;
        (0..q).map(move |v| Fe { v, q })
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + Clone {
        let q = self.q;
        (1..q).map(move |v| Fe { v, q })
    }

    /// `⌈log₂ q⌉`, the bits charged for one uniform element.
    pub fn element_bits(&self) -> u32 {
        ceil_log2(self.q as u64)
    }

    /// `⌈log₂ (q−1)⌉`, the bits charged for one uniform nonzero element.
    pub fn nonzero_bits(&self) -> u32 {
        ceil_log2(self.q as u64 - 1)
    }

    pub fn zeros(&self, len: usize) -> Vec<Fe> {
        vec![self.zero(); len]
    }
}

impl TryFrom<u32> for Field {
    type Error = GfError;
    fn try_from(q: u32) -> Result<Self, GfError> {
        Field::new(q)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.q
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A canonical residue in `[0, q−1]`, tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    v: u32,
    q: u32,
}

impl Fe {
    #[inline]
    pub fn value(self) -> u32 {
        self.v
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn field(self) -> Field {
        Field { q: self.q }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn pow(self, mut e: u64) -> Fe {
        let mut base = self;
        let mut acc = Fe { v: 1, q: self.q };
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(self) -> Result<Fe, GfError> {
        if self.v == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.q as u64 - 2))
    }

    pub fn checked_div(self, rhs: Fe) -> Result<Fe, GfError> {
        Ok(self * rhs.inv()?)
    }

    /// Centered representative in `(-q/2, q/2]`, used for printing colors.
    pub fn signed(self) -> i64 {
        if self.v > self.q / 2 {
            self.v as i64 - self.q as i64
        } else {
            self.v as i64
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        debug_assert_eq!(self.q, rhs.q);
        let s = self.v as u64 + rhs.v as u64;
        let q = self.q as u64;
        Fe { v: if s >= q { (s - q) as u32 } else { s as u32 }, q: self.q }
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, rhs: Fe) -> Fe {
        debug_assert_eq!(self.q, rhs.q);
        let v = if self.v >= rhs.v { self.v - rhs.v } else { self.q - (rhs.v - self.v) };
        Fe { v, q: self.q }
    }
}

impl Mul for Fe {
    type Output = Fe;
    #[inline]
    fn mul(self, rhs: Fe) -> Fe {
        debug_assert_eq!(self.q, rhs.q);
        Fe { v: ((self.v as u64 * rhs.v as u64) % self.q as u64) as u32, q: self.q }
    }
}

impl Neg for Fe {
    type Output = Fe;
    #[inline]
    fn neg(self) -> Fe {
        Fe { v: if self.v == 0 { 0 } else { self.q - self.v }, q: self.q }
    }
}

impl AddAssign for Fe {
    #[inline]
    fn add_assign(&mut self, rhs: Fe) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fe {
    #[inline]
    fn sub_assign(&mut self, rhs: Fe) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fe {
    #[inline]
    fn mul_assign(&mut self, rhs: Fe) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for Fe {
    /// Panics on an empty iterator, since the modulus is unknown there.
    fn sum<I: Iterator<Item = Fe>>(mut iter: I) -> Fe {
        let first = iter.next().expect("sum of empty field-element iterator");
        iter.fold(first, |a, b| a + b)
    }
}
