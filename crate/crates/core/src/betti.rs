//! Graded Betti numbers of circuit ideals through Hochster's formula.
//!
//! For a clutter `C` with clique complex `Δ`, the ideal generated by the
//! non-circuits is the Stanley-Reisner ideal of `Δ`, so
//! `β_{i,j} = Σ_{|W|=j} dim H̃_{j-i-2}(Δ_W)`. Since `Δ` contains every set with
//! fewer than `d` vertices, only degrees `d-2 ..= dim Δ_W` can contribute.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bits::{binomial, colex_rank, compress, iter_bits, low_bits};
use crate::clutter::Clutter;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Largest vertex count accepted by the full subset enumeration.
pub const DEFAULT_SUBSET_CAP: u32 = 20;

/// Induced pieces with more vertices than this are never cached.
const CACHE_MAX_VERTICES: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    /// `None` for characteristic-free closed forms.
    field: Option<FieldSpec>,
    n: u32,
    d: u32,
    entries: BTreeMap<(usize, usize), u64>,
    multiplicity: u64,
}

impl BettiTable {
    /// Builds a table, dropping zero entries. An all-zero table is the zero ideal.
    pub fn from_entries(
        field: Option<FieldSpec>,
        n: u32,
        d: u32,
        entries: impl IntoIterator<Item = ((usize, usize), u64)>,
        multiplicity: u64,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *map.entry(k).or_insert(0) += v;
            }
        }
        if map.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(BettiTable { field, n, d, entries: map, multiplicity })
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.field
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = Some(field);
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    /// `β_{i,j}`, zero when absent.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().expect("nonempty")
    }

    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().expect("nonempty")
    }

    /// Least degree of a minimal generator.
    pub fn indeg(&self) -> usize {
        self.entries.keys().filter(|&&(i, _)| i == 0).map(|&(_, j)| j).min().expect("ideal has generators")
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> u64 {
        self.entries.iter().filter(|(&(i, _), _)| i == 0).map(|(_, &v)| v).sum()
    }

    /// Number of top-dimensional faces of the clique complex.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn is_linear(&self) -> bool {
        self.regularity() == self.indeg()
    }

    /// Diagram with one row per value of `j - i`.
    pub fn to_text(&self) -> String {
        let pdim = self.projdim();
        let lo = self.entries.keys().map(|&(i, j)| j - i).min().expect("nonempty");
        let hi = self.regularity();
        let mut out = String::from("i:");
        for i in 0..=pdim {
            write!(out, " {i}").unwrap();
        }
        out.push('\n');
        for t in lo..=hi {
            write!(out, "{t}:").unwrap();
            for i in 0..=pdim {
                match self.get(i, i + t) {
                    0 => out.push_str(" ."),
                    v => write!(out, " {v}").unwrap(),
                }
            }
            out.push('\n');
        }
        writeln!(
            out,
            "reg={} pdim={} indeg={} field={}",
            hi,
            pdim,
            self.indeg(),
            self.field.map_or_else(|| "any".to_string(), FieldSpec::tag)
        )
        .unwrap();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let betti: serde_json::Map<String, serde_json::Value> =
            self.entries.iter().map(|(&(i, j), &v)| (format!("{i},{j}"), json!(v))).collect();
        json!({
            "field": self.field.map_or_else(|| "any".to_string(), FieldSpec::tag),
            "betti": betti,
            "reg": self.regularity(),
            "pdim": self.projdim(),
            "indeg": self.indeg(),
            "mu": self.mu(),
            "multiplicity": self.multiplicity,
        })
    }
}

/// Canonical form of an induced piece: its size and the colex ranks of its circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct PieceKey {
    m: u32,
    d: u32,
    circuits: u128,
}

/// Hochster-formula evaluator over a fixed field with a shared memo of
/// homology dimensions of induced pieces.
#[derive(Debug)]
pub struct HochsterEngine {
    field: FieldSpec,
    subset_cap: u32,
    homology_cache: DashMap<PieceKey, Vec<usize>>,
    linear_cache: DashMap<PieceKey, bool>,
}

impl HochsterEngine {
    pub fn new(field: FieldSpec) -> Self {
        HochsterEngine {
            field,
            subset_cap: DEFAULT_SUBSET_CAP,
            homology_cache: DashMap::new(),
            linear_cache: DashMap::new(),
        }
    }

    pub fn with_subset_cap(mut self, cap: u32) -> Self {
        self.subset_cap = cap.min(crate::clutter::MAX_VERTICES);
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn subset_cap(&self) -> u32 {
        self.subset_cap
    }

    fn check_capacity(&self, c: &Clutter) -> Result<()> {
        if c.n() > self.subset_cap {
            return Err(Error::CapacityExceeded(format!(
                "n={} exceeds the subset cap of {} for exhaustive enumeration",
                c.n(),
                self.subset_cap
            )));
        }
        Ok(())
    }

    fn key(c: &Clutter, w: u64) -> Option<PieceKey> {
        let m = w.count_ones();
        if m > CACHE_MAX_VERTICES || binomial(m as u64, c.d() as u64) > 128 {
            return None;
        }
        let mut circuits = 0u128;
        for &circuit in c.circuits() {
            if circuit & !w == 0 {
                circuits |= 1u128 << colex_rank(compress(circuit, w));
            }
        }
        Some(PieceKey { m, d: c.d(), circuits })
    }

    /// `dim H̃_k(Δ_W)` for `k = d-2 ..= dim Δ_W` (requires `|W| >= d`).
    fn piece_homology(&self, c: &Clutter, w: u64) -> Vec<usize> {
        let compute = || {
            let delta = SimplicialComplex::clique_complex(&c.induced(w).clutter);
            let lo = c.d() as i32 - 2;
            if delta.dim() < lo {
                return Vec::new();
            }
            delta.reduced_homology_dims(self.field, lo, delta.dim())
        };
        match Self::key(c, w) {
            Some(key) => {
                if let Some(hit) = self.homology_cache.get(&key) {
                    return hit.clone();
                }
                let dims = compute();
                self.homology_cache.insert(key, dims.clone());
                dims
            }
            None => compute(),
        }
    }

    /// The full graded Betti table of the ideal generated by the non-circuits.
    pub fn betti_table(&self, c: &Clutter) -> Result<BettiTable> {
        self.check_capacity(c)?;
        if c.is_maximal() {
            return Err(Error::ZeroIdeal);
        }
        let (n, d) = (c.n(), c.d());
        let offset = d as usize; // i = j - k - 2 with k = d - 2 + idx
        let counts = (0..=low_bits(n))
            .into_par_iter()
            .filter(|w| w.count_ones() >= d)
            .fold(HashMap::new, |mut acc: HashMap<(usize, usize), u64>, w| {
                let j = w.count_ones() as usize;
                for (idx, &h) in self.piece_homology(c, w).iter().enumerate() {
                    if h > 0 && j >= idx + offset {
                        *acc.entry((j - idx - offset, j)).or_insert(0) += h as u64;
                    }
                }
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        let multiplicity = SimplicialComplex::clique_complex(c).top_face_count() as u64;
        BettiTable::from_entries(Some(self.field), n, d, counts, multiplicity)
    }

    /// Whether every nonzero `β_{i,j}` has `j - i = d`. The zero ideal counts as linear.
    ///
    /// When `dim Δ = d-1` the top homology of `Δ` contains that of every
    /// induced piece, so a single homology group decides.
    pub fn has_linear_resolution(&self, c: &Clutter) -> Result<bool> {
        let delta = SimplicialComplex::clique_complex(c);
        let d = c.d() as i32;
        if delta.dim() == d - 1 {
            return Ok(delta.reduced_homology(self.field, d - 1) == 0);
        }
        if delta.dim() < d - 1 {
            return Ok(true);
        }
        self.has_linear_resolution_by_scan(c)
    }

    /// Linearity decided by checking `H̃_k(Δ_W) = 0` for all `W` and `k >= d-1`.
    pub fn has_linear_resolution_by_scan(&self, c: &Clutter) -> Result<bool> {
        self.check_capacity(c)?;
        let mut memo = HashMap::new();
        Ok(self.linear_on(c, c.universe(), &mut memo, true))
    }

    fn linear_on(&self, c: &Clutter, w: u64, memo: &mut HashMap<u64, bool>, top: bool) -> bool {
        if w.count_ones() <= c.d() {
            return true;
        }
        if let Some(&v) = memo.get(&w) {
            return v;
        }
        // The whole vertex set is rarely shared between calls, so it is not cached.
        let key = if top { None } else { Self::key(c, w) };
        if let Some(hit) = key.and_then(|k| self.linear_cache.get(&k).map(|v| *v)) {
            memo.insert(w, hit);
            return hit;
        }
        let mut ok = iter_bits(w).all(|v| self.linear_on(c, w & !(1 << v), memo, false));
        if ok {
            let delta = SimplicialComplex::clique_complex(&c.induced(w).clutter);
            let lo = c.d() as i32 - 1;
            ok = delta.dim() < lo || delta.reduced_homology_dims(self.field, lo, delta.dim()).iter().all(|&h| h == 0);
        }
        memo.insert(w, ok);
        if let Some(k) = key {
            self.linear_cache.insert(k, ok);
        }
        ok
    }
}

pub fn betti_hochster(c: &Clutter, field: FieldSpec) -> Result<BettiTable> {
    HochsterEngine::new(field).betti_table(c)
}

pub fn has_linear_resolution(c: &Clutter, field: FieldSpec) -> Result<bool> {
    HochsterEngine::new(field).has_linear_resolution(c)
}

fn require_top_dim(c: &Clutter) -> Result<SimplicialComplex> {
    let delta = SimplicialComplex::clique_complex(c);
    if delta.dim() != c.d() as i32 - 1 {
        return Err(Error::UnsupportedShape(format!(
            "clique complex has dimension {}, expected d-1 = {}",
            delta.dim(),
            c.d() as i32 - 1
        )));
    }
    Ok(delta)
}

/// Cohen-Macaulayness of the quotient, decided by `H̃_{d-2}(Δ) = 0`.
pub fn is_cohen_macaulay(c: &Clutter, field: FieldSpec) -> Result<bool> {
    let delta = require_top_dim(c)?;
    Ok(delta.reduced_homology(field, c.d() as i32 - 2) == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub reg: usize,
    pub projdim: usize,
    /// `d <= reg <= d+1`.
    pub reg_in_bounds: bool,
    /// `n-d-1 <= projdim <= n-d`.
    pub projdim_in_bounds: bool,
    /// Every entry has `d <= j-i <= d+1`.
    pub band_ok: bool,
    /// Every entry with `j-i = d+1` sits in degree `j = n`.
    pub nonlinear_only_at_top: bool,
}

impl ShapeReport {
    pub fn holds(&self) -> bool {
        self.reg_in_bounds && self.projdim_in_bounds && self.band_ok
    }
}

/// Computes the table and checks the regularity, projective dimension and
/// band constraints that hold when `dim Δ = d-1`.
pub fn verify_shape_bounds(c: &Clutter, field: FieldSpec) -> Result<ShapeReport> {
    require_top_dim(c)?;
    let table = betti_hochster(c, field)?;
    let (n, d) = (c.n() as usize, c.d() as usize);
    let (reg, projdim) = (table.regularity(), table.projdim());
    let keys = table.entries().keys();
    Ok(ShapeReport {
        reg,
        projdim,
        reg_in_bounds: (d..=d + 1).contains(&reg),
        projdim_in_bounds: n > d && (n - d - 1..=n - d).contains(&projdim),
        band_ok: keys.clone().all(|&(i, j)| (d..=d + 1).contains(&(j - i))),
        nonlinear_only_at_top: keys.filter(|&&(i, j)| j - i == d + 1).all(|&(_, j)| j == n),
    })
}
