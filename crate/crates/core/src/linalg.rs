//! Exact dense linear algebra over the rationals and prime fields.
//!
//! Matrices carry integer entries. Over a prime field `GF(p)` every entry is
//! read through its residue; over the rationals the integers are used as is
//! (a rational matrix can always be brought to this form by scaling rows,
//! which leaves the rank unchanged).
//!
//! Three elimination kernels sit behind [`ExactMatrix::rank`]:
//!
//! - `GF(2)`: rows packed into `u64` words, elimination by word-level XOR;
//! - `GF(p)`, `p` odd: residues in machine words, modular inverses;
//! - `Q`: fraction-free (Bareiss) elimination on `i128`, restarted on
//!   arbitrary-precision integers if an intermediate value overflows.
//!
//! Pivots are always the first nonzero entry in column order, so two runs on
//! the same input perform the same row operations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: the rationals (characteristic 0) or `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u64,
}

/// Largest accepted prime (exclusive); keeps residue products inside `u64`.
const PRIME_LIMIT: u64 = 1 << 31;

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };
    pub const GF2: FieldSpec = FieldSpec { characteristic: 2 };
    pub const GF3: FieldSpec = FieldSpec { characteristic: 3 };

    /// Builds a field from its characteristic, checking primality.
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic < PRIME_LIMIT && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidField(0));
        }
        Self::new(p)
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub fn is_rationals(self) -> bool {
        self.characteristic == 0
    }

    /// Short tag used in rendered output: `q` or the prime.
    pub fn tag(self) -> String {
        self.to_string()
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self::RATIONALS
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => f.write_str("q"),
            p => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`/`Q`/`0` for the rationals, or a prime.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Self::RATIONALS);
        }
        let p: u64 = s.parse().map_err(|_| Error::InconsistentInput(format!("field '{s}' is neither 'q' nor a prime")))?;
        Self::new(p)
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<FieldSpec> for u64 {
    fn from(value: FieldSpec) -> Self {
        value.characteristic
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::InconsistentInput(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        Ok(ExactMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Integer matrix product; `None` on dimension mismatch or overflow.
    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cell = &mut out.entries[i * rhs.cols + j];
                    *cell = cell.checked_add(a.checked_mul(rhs.get(k, j))?)?;
                }
            }
        }
        Some(out)
    }

    /// Rank over `field`.
    pub fn rank(&self, field: FieldSpec) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match field.characteristic() {
            0 => rank_rational(self),
            2 => rank_gf2(self),
            p => rank_mod_p(self, p),
        }
    }
}

fn rank_gf2(m: &ExactMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<u64> = vec![0; m.rows * words];
    for r in 0..m.rows {
        for (c, &e) in m.row(r).iter().enumerate() {
            if e & 1 != 0 {
                rows[r * words + c / 64] |= 1 << (c % 64);
            }
        }
    }
    if words == 1 {
        return rank_gf2_single_word(&mut rows);
    }
    let mut rank = 0;
    for c in 0..m.cols {
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.rows).find(|&r| rows[r * words + w] & bit != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..words {
                rows.swap(p * words + k, rank * words + k);
            }
        }
        for r in rank + 1..m.rows {
            if rows[r * words + w] & bit != 0 {
                for k in w..words {
                    let v = rows[rank * words + k];
                    rows[r * words + k] ^= v;
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

fn rank_gf2_single_word(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    let n = rows.len();
    while rank < n {
        // First nonzero column among the remaining rows.
        let Some(low) = rows[rank..].iter().filter(|&&r| r != 0).map(|r| r.trailing_zeros()).min() else {
            break;
        };
        let bit = 1u64 << low;
        let p = (rank..n).find(|&r| rows[r] & bit != 0).unwrap();
        rows.swap(p, rank);
        let pivot = rows[rank];
        for r in rows[rank + 1..].iter_mut() {
            if *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod_p(m: &ExactMatrix, p: u64) -> usize {
    let pi = p as i64;
    let mut a: Vec<u64> = m.entries.iter().map(|&e| e.rem_euclid(pi) as u64).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for k in 0..cols {
                a.swap(piv * cols + k, rank * cols + k);
            }
        }
        let inv = mod_pow(a[rank * cols + c], p - 2, p);
        for k in c..cols {
            a[rank * cols + k] = a[rank * cols + k] * inv % p;
        }
        for r in rank + 1..rows {
            let f = a[r * cols + c];
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let sub = f * a[rank * cols + k] % p;
                a[r * cols + k] = (a[r * cols + k] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_rational(m: &ExactMatrix) -> usize {
    let small: Vec<i128> = m.entries.iter().map(|&e| e as i128).collect();
    match bareiss_i128(small, m.rows, m.cols) {
        Some(rank) => rank,
        None => {
            let big: Vec<BigInt> = m.entries.iter().map(|&e| BigInt::from(e)).collect();
            bareiss_big(big, m.rows, m.cols)
        }
    }
}

/// Fraction-free elimination; every intermediate entry is a minor of the input,
/// so the division by the previous pivot is exact. `None` on overflow.
fn bareiss_i128(mut a: Vec<i128>, rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for k in 0..cols {
                a.swap(piv * cols + k, rank * cols + k);
            }
        }
        let pv = a[rank * cols + c];
        for r in rank + 1..rows {
            let f = a[r * cols + c];
            for k in c + 1..cols {
                let lhs = pv.checked_mul(a[r * cols + k])?;
                let rhs = f.checked_mul(a[rank * cols + k])?;
                a[r * cols + k] = lhs.checked_sub(rhs)? / prev;
            }
            a[r * cols + c] = 0;
        }
        prev = pv;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut a: Vec<BigInt>, rows: usize, cols: usize) -> usize {
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if piv != rank {
            for k in 0..cols {
                a.swap(piv * cols + k, rank * cols + k);
            }
        }
        let pv = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let f = a[r * cols + c].clone();
            for k in c + 1..cols {
                let v = (&pv * &a[r * cols + k] - &f * &a[rank * cols + k]) / &prev;
                a[r * cols + k] = v;
            }
            a[r * cols + c] = BigInt::zero();
        }
        prev = pv;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
