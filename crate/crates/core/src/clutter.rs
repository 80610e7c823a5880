//! Uniform clutters and their combinatorics.
//!
//! A [`Clutter`] is a set of `d`-element subsets ("circuits") of the vertex
//! set `1..=n`, stored as sorted, duplicate-free bitmasks. Vertex counts are
//! limited to 63 so every vertex subset fits in one machine word.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::Rng;

use crate::bits::{self, binomial, facets_of, iter_bits, k_subsets, low_bits};
use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    n: u32,
    d: u32,
    circuits: Vec<u64>,
}

/// Degrees of submaximal circuits: `(d-1)`-subsets mapped to the number of
/// circuits containing them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubmaximalCircuitTable {
    degrees: BTreeMap<u64, usize>,
}

impl SubmaximalCircuitTable {
    pub fn degree(&self, e: u64) -> usize {
        self.degrees.get(&e).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.degrees.iter().map(|(&e, &deg)| (e, deg))
    }

    pub fn contains(&self, e: u64) -> bool {
        self.degrees.contains_key(&e)
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.values().sum()
    }
}

/// An induced subclutter with its vertices compacted to `1..=|W|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedClutter {
    pub clutter: Clutter,
    /// `labels[i]` is the original label of compacted vertex `i + 1`.
    pub labels: Vec<u32>,
}

impl Clutter {
    /// Validates and builds a clutter from circuit bitmasks (bit `v-1` for vertex `v`).
    pub fn from_masks(n: u32, d: u32, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_params(n, d)?;
        let universe = low_bits(n);
        let mut circuits: Vec<u64> = Vec::new();
        for m in masks {
            if m.count_ones() != d {
                return Err(Error::InvalidClutter(format!(
                    "circuit {:?} has {} vertices, expected {d}",
                    bits::vertices_of(m),
                    m.count_ones()
                )));
            }
            if m & !universe != 0 {
                return Err(Error::InvalidClutter(format!(
                    "circuit {:?} uses a vertex outside 1..={n}",
                    bits::vertices_of(m)
                )));
            }
            circuits.push(m);
        }
        circuits.sort_unstable();
        if let Some(w) = circuits.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidClutter(format!(
                "duplicate circuit {:?}",
                bits::vertices_of(w[0])
            )));
        }
        Ok(Clutter { n, d, circuits })
    }

    /// Builds a clutter from 1-based vertex lists.
    pub fn from_circuits<C: AsRef<[u32]>>(n: u32, d: u32, circuits: &[C]) -> Result<Self> {
        let mut masks = Vec::with_capacity(circuits.len());
        for c in circuits {
            let c = c.as_ref();
            if let Some(&v) = c.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::InvalidClutter(format!("vertex {v} outside 1..={n}")));
            }
            let m = bits::mask_of(c);
            if m.count_ones() as usize != c.len() {
                return Err(Error::InvalidClutter(format!("circuit {c:?} repeats a vertex")));
            }
            masks.push(m);
        }
        Self::from_masks(n, d, masks)
    }

    /// Internal constructor for masks already known to be valid; sorts and dedups.
    pub(crate) fn from_valid_masks(n: u32, d: u32, mut circuits: Vec<u64>) -> Self {
        circuits.sort_unstable();
        circuits.dedup();
        debug_assert!(circuits.iter().all(|c| c.count_ones() == d && c & !low_bits(n) == 0));
        Clutter { n, d, circuits }
    }

    /// The clutter of all `d`-subsets of `1..=n`.
    pub fn maximal(n: u32, d: u32) -> Result<Self> {
        if d < 1 || d > n {
            return Err(Error::InvalidClutter(format!("maximal clutter needs 1 <= d <= n, got n={n} d={d}")));
        }
        check_params(n, d)?;
        Ok(Clutter { n, d, circuits: k_subsets(n, d).collect() })
    }

    pub fn empty(n: u32, d: u32) -> Result<Self> {
        Self::from_masks(n, d, [])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn circuits(&self) -> &[u64] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn contains(&self, circuit: u64) -> bool {
        self.circuits.binary_search(&circuit).is_ok()
    }

    /// Circuits as sorted 1-based vertex lists.
    pub fn circuit_lists(&self) -> Vec<Vec<u32>> {
        self.circuits.iter().map(|&c| bits::vertices_of(c)).collect()
    }

    /// Mask of the full vertex set `1..=n`.
    pub fn universe(&self) -> u64 {
        low_bits(self.n)
    }

    /// Vertices covered by at least one circuit.
    pub fn support(&self) -> u64 {
        self.circuits.iter().fold(0, |a, &c| a | c)
    }

    /// Whether the complement (and so the circuit ideal) is empty.
    pub fn is_maximal(&self) -> bool {
        self.d <= self.n && self.circuits.len() as u64 == binomial(self.n as u64, self.d as u64)
    }

    /// All `d`-subsets of `1..=n` that are not circuits.
    pub fn complement(&self) -> Clutter {
        let circuits = if self.d > self.n {
            Vec::new()
        } else {
            k_subsets(self.n, self.d).filter(|m| !self.contains(*m)).collect()
        };
        Clutter { n: self.n, d: self.d, circuits }
    }

    pub fn submaximal_circuits(&self) -> SubmaximalCircuitTable {
        let mut degrees = BTreeMap::new();
        for &c in &self.circuits {
            for e in facets_of(c) {
                *degrees.entry(e).or_insert(0) += 1;
            }
        }
        SubmaximalCircuitTable { degrees }
    }

    /// Circuits contained in `w`, with `w` compacted to `1..=|w|`.
    pub fn induced(&self, w: u64) -> InducedClutter {
        let w = w & self.universe();
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| c & !w == 0)
            .map(|&c| bits::compress(c, w))
            .collect();
        InducedClutter {
            clutter: Clutter { n: w.count_ones(), d: self.d, circuits },
            labels: bits::vertices_of(w),
        }
    }

    /// Circuits contained in `w`, keeping the original labels and `n`.
    pub fn restrict(&self, w: u64) -> Clutter {
        Clutter {
            n: self.n,
            d: self.d,
            circuits: self.circuits.iter().copied().filter(|&c| c & !w == 0).collect(),
        }
    }

    /// The subclutter made of the circuits whose indices are set in `selection`.
    pub fn select(&self, selection: u64) -> Clutter {
        Clutter {
            n: self.n,
            d: self.d,
            circuits: iter_bits(selection).map(|i| self.circuits[i as usize]).collect(),
        }
    }

    /// Same vertex set, circuits replaced by a subset of the current ones.
    pub fn with_circuits(&self, circuits: Vec<u64>) -> Clutter {
        debug_assert!(circuits.iter().all(|c| self.contains(*c)));
        Clutter::from_valid_masks(self.n, self.d, circuits)
    }

    pub fn without(&self, circuit: u64) -> Clutter {
        Clutter {
            n: self.n,
            d: self.d,
            circuits: self.circuits.iter().copied().filter(|&c| c != circuit).collect(),
        }
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Clutter> {
        if perm.len() != self.n as usize || bits::mask_of(perm) != self.universe() {
            return Err(Error::InvalidClutter("relabeling is not a permutation of 1..=n".into()));
        }
        let masks = self
            .circuits
            .iter()
            .map(|&c| iter_bits(c).fold(0u64, |m, b| m | 1 << (perm[b as usize] - 1)))
            .collect();
        Ok(Clutter::from_valid_masks(self.n, self.d, masks))
    }

    /// Connected components of the circuit graph where circuits are adjacent
    /// when `adjacent` holds. Components are ordered by their smallest circuit
    /// index and hold circuit indices.
    pub(crate) fn circuit_components(&self, adjacent: impl Fn(u64, u64) -> bool) -> Vec<Vec<usize>> {
        let m = self.circuits.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..m {
            for j in i + 1..m {
                if adjacent(self.circuits[i], self.circuits[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..m {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Components under "share a (d-1)-subset".
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let d = self.d;
        self.circuit_components(|a, b| (a & b).count_ones() + 1 == d)
    }

    /// Connected in codimension one. Empty and single-circuit clutters count as connected.
    pub fn strongly_connected(&self) -> bool {
        self.strong_components().len() <= 1
    }

    /// Components under "share at least one vertex".
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.circuit_components(|a, b| a & b != 0)
    }

    pub fn connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Repeatedly removes circuits that contain a submaximal circuit of degree one.
    pub fn peel_core(&self) -> Clutter {
        let mut containing: HashMap<u64, Vec<usize>> = HashMap::new();
        for (i, &c) in self.circuits.iter().enumerate() {
            for e in facets_of(c) {
                containing.entry(e).or_default().push(i);
            }
        }
        let mut degree: HashMap<u64, usize> = containing.iter().map(|(&e, v)| (e, v.len())).collect();
        let mut alive = vec![true; self.circuits.len()];
        let mut queue: VecDeque<u64> = degree.iter().filter(|(_, &d)| d == 1).map(|(&e, _)| e).collect();
        while let Some(e) = queue.pop_front() {
            if degree[&e] != 1 {
                continue;
            }
            let i = containing[&e].iter().copied().find(|&i| alive[i]).expect("degree one");
            alive[i] = false;
            for f in facets_of(self.circuits[i]) {
                let deg = degree.get_mut(&f).expect("facet registered");
                *deg -= 1;
                if *deg == 1 {
                    queue.push_back(f);
                }
            }
        }
        Clutter {
            n: self.n,
            d: self.d,
            circuits: self.circuits.iter().zip(&alive).filter(|(_, &a)| a).map(|(&c, _)| c).collect(),
        }
    }

    /// Peeling with a random choice among the removable circuits at every step.
    pub fn peel_core_random<R: Rng + ?Sized>(&self, rng: &mut R) -> Clutter {
        let mut current = self.circuits.clone();
        loop {
            let table = Clutter { n: self.n, d: self.d, circuits: current.clone() }.submaximal_circuits();
            let removable: Vec<usize> = current
                .iter()
                .enumerate()
                .filter(|(_, &c)| facets_of(c).any(|e| table.degree(e) == 1))
                .map(|(i, _)| i)
                .collect();
            if removable.is_empty() {
                break;
            }
            current.remove(removable[rng.gen_range(0..removable.len())]);
        }
        Clutter { n: self.n, d: self.d, circuits: current }
    }

    /// Some submaximal circuit has degree exactly one.
    pub fn has_free_submaximal(&self) -> bool {
        self.submaximal_circuits().iter().any(|(_, deg)| deg == 1)
    }

    pub fn is_forest(&self) -> bool {
        self.peel_core().is_empty()
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.connected()
    }
}

fn check_params(n: u32, d: u32) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::InvalidClutter(format!("n={n} exceeds the supported maximum of {MAX_VERTICES} vertices")));
    }
    if d < 1 {
        return Err(Error::InvalidClutter("uniformity d must be at least 1".into()));
    }
    Ok(())
}

impl fmt::Display for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .circuits
            .iter()
            .map(|&c| bits::vertices_of(c).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "n={} d={} {{{}}}", self.n, self.d, parts.join(", "))
    }
}
