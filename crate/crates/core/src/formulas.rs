//! Closed-form Betti numbers and numerical identities, evaluated exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::betti::BettiTable;
use crate::error::{Error, Result};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * big(n - i) / big(i + 1))
}

fn to_count(value: &BigRational, what: impl Fn() -> String) -> Result<u64> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegralBetti(format!("{} = {value}", what())));
    }
    value.to_integer().to_u64().ok_or_else(|| Error::NonIntegralBetti(format!("{} = {value} overflows", what())))
}

/// `Σ_{i=0}^{d-1} (-1)^{d+i-1} C(n,i)`.
fn alternating_sum(n: u64, d: u64) -> BigInt {
    (0..d).map(|i| if (d + i - 1).is_multiple_of(2) { binom(n, i) } else { -binom(n, i) }).sum()
}

/// Betti table forced on a clutter that is minimal to linearity, from
/// `n`, `d` and the number of minimal generators `mu` (so `e = C(n,d) - mu`):
///
/// * `β_{i,i+d} = C(n-d,i) (d/(d+i) C(n,d) - e)` for `0 <= i <= n-d-1`,
/// * `β_{n-d-1,n} = 1`,
/// * `β_{n-d,n} = 1 - e + Σ_{i<d} (-1)^{d+i-1} C(n,i)`.
pub fn minimal_resolution_formula(n: u32, d: u32, mu: u64) -> Result<BettiTable> {
    let (n64, d64) = (n as u64, d as u64);
    if d == 0 || d >= n {
        return Err(Error::InconsistentInput(format!("need 1 <= d < n, got n={n} d={d}")));
    }
    let total = binom(n64, d64);
    if mu == 0 || big(mu) > total {
        return Err(Error::InconsistentInput(format!("mu={mu} outside 1..=C({n},{d})={total}")));
    }
    let e = &total - big(mu);
    let mut entries: Vec<((usize, usize), u64)> = Vec::new();
    for i in 0..=(n64 - d64 - 1) {
        let value = BigRational::from(binom(n64 - d64, i))
            * (BigRational::new(big(d64), big(d64 + i)) * BigRational::from(total.clone())
                - BigRational::from(e.clone()));
        let count = to_count(&value, || format!("beta_{{{i},{}}}", i + d64))?;
        entries.push(((i as usize, (i + d64) as usize), count));
    }
    entries.push((((n - d - 1) as usize, n as usize), 1));
    let top = BigRational::from(BigInt::one() - &e + alternating_sum(n64, d64));
    let top = to_count(&top, || format!("beta_{{{},{n}}}", n - d))?;
    entries.push((((n - d) as usize, n as usize), top));
    let e = e.to_u64().expect("bounded by C(n,d)");
    BettiTable::from_entries(None, n, d, entries, e)
}

/// Betti table of the `n`-cycle graph: `β_{i,i+2} = n C(n-2,i) (n-3-i)/(2+i)`
/// for `0 <= i <= n-4`, and `β_{n-3,n} = 1`.
pub fn cycle_betti(n: u32) -> Result<BettiTable> {
    if n < 4 {
        return Err(Error::InconsistentInput(format!("cycle formula needs n >= 4, got {n}")));
    }
    let n64 = n as u64;
    let mut entries = Vec::new();
    for i in 0..=(n64 - 4) {
        let value = BigRational::new(big(n64) * binom(n64 - 2, i) * big(n64 - 3 - i), big(2 + i));
        let count = to_count(&value, || format!("beta_{{{i},{}}}", i + 2))?;
        entries.push(((i as usize, (i + 2) as usize), count));
    }
    entries.push((((n - 3) as usize, n as usize), 1));
    BettiTable::from_entries(None, n, 2, entries, n64)
}

/// `Σ_{i=0}^{d-1} (-1)^{d+i-1} C(n,i) - e`, which equals
/// `dim H̃_{d-2}(Δ) - dim H̃_{d-1}(Δ)` when `dim Δ = d-1`.
pub fn homology_difference_identity(n: u32, d: u32, e: u64) -> Result<i64> {
    if d == 0 || d > n {
        return Err(Error::InconsistentInput(format!("need 1 <= d <= n, got n={n} d={d}")));
    }
    (alternating_sum(n as u64, d as u64) - big(e))
        .to_i64()
        .ok_or_else(|| Error::InconsistentInput("identity value does not fit in 64 bits".into()))
}

/// The three shapes of resolution covered by the Herzog-Kuhl type equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HerzogKuhlCase {
    /// Cohen-Macaulay, `β_{ρ,d_{ρ+1}} = 0`.
    CohenMacaulay,
    /// Cohen-Macaulay, `β_{ρ,d_{ρ+1}} ≠ 0`, `d_0 = 0`.
    CohenMacaulayExtraTail,
    /// Depth one less than dimension, `β_{ρ,d_{ρ+1}} = 0`, `d_0 = 0`.
    AlmostCohenMacaulay,
}

fn product(values: impl Iterator<Item = BigRational>) -> BigRational {
    values.fold(BigRational::one(), |acc, v| acc * v)
}

/// Evaluates `β'_i = β_{i,d_i} - β_{i-1,d_i}` from the displayed closed forms.
///
/// `d_vec` is `(d_0, ..., d_ρ)` or `(d_0, ..., d_{ρ+1})`; the extra-tail case
/// needs the latter. `β_0` is `beta0[d_0]`. Results are indexed from `i = 1`.
pub fn herzog_kuhl_variant(
    case: HerzogKuhlCase,
    d_vec: &[u64],
    beta0: &BTreeMap<u64, u64>,
    e: u64,
    rho: usize,
) -> Result<Vec<i64>> {
    let inconsistent = |m: String| Err(Error::InconsistentInput(m));
    if rho == 0 {
        return Ok(Vec::new());
    }
    if d_vec.windows(2).any(|w| w[0] >= w[1]) {
        return inconsistent(format!("degrees {d_vec:?} are not strictly increasing"));
    }
    let needed = if case == HerzogKuhlCase::CohenMacaulayExtraTail { rho + 2 } else { rho + 1 };
    if d_vec.len() < needed || d_vec.len() > rho + 2 {
        return inconsistent(format!("expected {needed} or {} degrees for rho={rho}, got {}", rho + 2, d_vec.len()));
    }
    if case != HerzogKuhlCase::CohenMacaulay && d_vec[0] != 0 {
        return inconsistent(format!("this case requires d_0 = 0, got {}", d_vec[0]));
    }
    let Some(&b0) = beta0.get(&d_vec[0]) else {
        return inconsistent(format!("beta0 has no entry for d_0 = {}", d_vec[0]));
    };
    let q = |v: u64| BigRational::from(big(v));
    let diff = |a: u64, b: u64| BigRational::from(BigInt::from(a) - BigInt::from(b));
    let factorial = |k: usize| (1..=k as u64).fold(BigInt::one(), |acc, x| acc * big(x));
    let sign = |k: usize| if k.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    let (top, fact) = match case {
        HerzogKuhlCase::CohenMacaulay => (rho, BigInt::zero()),
        HerzogKuhlCase::CohenMacaulayExtraTail => (rho + 1, factorial(rho)),
        HerzogKuhlCase::AlmostCohenMacaulay => (rho, factorial(rho - 1)),
    };
    let mut out = Vec::with_capacity(top);
    for i in 1..=top {
        let others = || (1..=top).filter(move |&k| k != i);
        let value = match case {
            HerzogKuhlCase::CohenMacaulay => {
                q(b0) * sign(i) * product(others().map(|k| diff(d_vec[k], d_vec[0]) / diff(d_vec[k], d_vec[i])))
            }
            _ => {
                let numerator = q(b0) * product(others().map(|k| q(d_vec[k]))) - BigRational::from(&fact * big(e));
                sign(i - 1) * numerator / product(others().map(|k| diff(d_vec[k], d_vec[i])))
            }
        };
        if !value.is_integer() {
            return Err(Error::NonIntegral(format!("beta'_{i} = {value}")));
        }
        out.push(value.to_integer().to_i64().ok_or_else(|| Error::NonIntegral(format!("beta'_{i} overflows")))?);
    }
    Ok(out)
}

/// Twists at each homological position, read off a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionShape {
    /// `positions[i]` lists `(j, β_{i,j})` in increasing `j`.
    pub positions: Vec<Vec<(usize, u64)>>,
}

impl ResolutionShape {
    pub fn of(table: &BettiTable) -> Self {
        let mut positions = vec![Vec::new(); table.projdim() + 1];
        for (&(i, j), &v) in table.entries() {
            positions[i].push((j, v));
        }
        ResolutionShape { positions }
    }

    /// Resolution written as `0 -> ... -> S^b(-j) + ... -> I -> 0`.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .positions
            .iter()
            .rev()
            .map(|twists| {
                let parts: Vec<String> = twists.iter().map(|&(j, b)| format!("S^{b}(-{j})")).collect();
                parts.join(" + ")
            })
            .collect();
        format!("0 -> {} -> I -> 0", terms.join(" -> "))
    }
}
