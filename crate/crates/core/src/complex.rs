//! Simplicial complexes, clique complexes and reduced homology.
//!
//! Faces are bitmasks over `0..m` stored per size in ascending numeric order.
//! The empty face is always present. Orientation follows ascending vertex
//! labels: the `j`-th smallest vertex of a face is removed with sign `(-1)^j`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::bits::{self, binomial, iter_bits, k_subsets, low_bits};
use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: u32,
    /// `faces[s]` holds the faces with `s` vertices.
    faces: Vec<Vec<u64>>,
}

/// Face counts `f_{-1}, f_0, ..., f_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i` for `i >= -1`; zero beyond the dimension.
    pub fn get(&self, i: i32) -> u64 {
        if i < -1 {
            return 0;
        }
        self.0.get((i + 1) as usize).copied().unwrap_or(0)
    }
}

impl SimplicialComplex {
    /// The complex generated by `facets` on vertices `0..vertex_count`.
    pub fn from_facets(vertex_count: u32, facets: &[u64]) -> Result<Self> {
        if vertex_count > crate::clutter::MAX_VERTICES {
            return Err(Error::CapacityExceeded(format!("{vertex_count} vertices")));
        }
        let universe = low_bits(vertex_count);
        let mut by_size: Vec<BTreeSet<u64>> = vec![BTreeSet::from([0])];
        let mut stack: Vec<u64> = Vec::new();
        for &f in facets {
            if f & !universe != 0 {
                return Err(Error::InconsistentInput(format!("facet {f:#b} outside the vertex set")));
            }
            stack.push(f);
            while let Some(face) = stack.pop() {
                let s = face.count_ones() as usize;
                if by_size.len() <= s {
                    by_size.resize(s + 1, BTreeSet::new());
                }
                if by_size[s].insert(face) {
                    stack.extend(bits::facets_of(face));
                }
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            faces: by_size.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Every subset of `0..m`.
    pub fn full_simplex(m: u32) -> Self {
        SimplicialComplex { vertex_count: m, faces: (0..=m).map(|s| k_subsets(m, s).collect()).collect() }
    }

    /// Faces are the cliques of `c`: all sets with fewer than `d` vertices, the
    /// circuits, and larger sets all of whose `d`-subsets are circuits.
    pub fn clique_complex(c: &Clutter) -> Self {
        let (n, d) = (c.n(), c.d());
        let mut faces: Vec<Vec<u64>> = (0..d.min(n + 1)).map(|s| k_subsets(n, s).collect()).collect();
        if d > n {
            return SimplicialComplex { vertex_count: n, faces };
        }
        if c.is_empty() {
            return SimplicialComplex { vertex_count: n, faces };
        }
        faces.push(c.circuits().to_vec());
        // link[T] = vertices v with T + v a circuit, for (d-1)-sets T.
        let mut link: HashMap<u64, u64> = HashMap::new();
        for &circuit in c.circuits() {
            for b in iter_bits(circuit) {
                *link.entry(circuit & !(1 << b)).or_insert(0) |= 1 << b;
            }
        }
        loop {
            let last = faces.last().expect("nonempty");
            let mut next = Vec::new();
            for &q in last {
                let top = 63 - q.leading_zeros();
                let above = !low_bits(top + 1) & low_bits(n);
                let mut candidates = above;
                for t in bits::k_subsets_of(q, d - 1) {
                    candidates &= link.get(&t).copied().unwrap_or(0);
                    if candidates == 0 {
                        break;
                    }
                }
                next.extend(iter_bits(candidates).map(|v| q | 1 << v));
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            faces.push(next);
        }
        SimplicialComplex { vertex_count: n, faces }
    }

    /// The complex generated by the circuits of `c` (only their subsets are faces).
    pub fn generated_by(c: &Clutter) -> Self {
        Self::from_facets(c.n(), c.circuits()).expect("circuits lie in the vertex set")
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    /// Dimension; `-1` for the complex holding only the empty face.
    pub fn dim(&self) -> i32 {
        self.faces.len() as i32 - 2
    }

    /// Faces of dimension `i` (with `i + 1` vertices).
    pub fn faces(&self, i: i32) -> &[u64] {
        if i < -1 {
            return &[];
        }
        self.faces.get((i + 1) as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn face_count(&self, i: i32) -> usize {
        self.faces(i).len()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.faces(face.count_ones() as i32 - 1).binary_search(&face).is_ok()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (s, level) in self.faces.iter().enumerate() {
            let above = self.faces.get(s + 1);
            for &f in level {
                let covered = above.is_some_and(|up| up.iter().any(|&g| g & f == f));
                if !covered {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Checks closure under subsets.
    pub fn is_closed(&self) -> bool {
        self.faces(-1) == [0]
            && self.faces.iter().flatten().all(|&f| bits::facets_of(f).all(|g| self.contains(g)))
    }

    /// Faces contained in `w`, with `w` compacted to `0..|w|`.
    pub fn induced_subcomplex(&self, w: u64) -> Self {
        let w = w & low_bits(self.vertex_count);
        let mut faces: Vec<Vec<u64>> = self
            .faces
            .iter()
            .map(|level| level.iter().filter(|&&f| f & !w == 0).map(|&f| bits::compress(f, w)).collect())
            .collect();
        while faces.len() > 1 && faces.last().is_some_and(|l: &Vec<u64>| l.is_empty()) {
            faces.pop();
        }
        SimplicialComplex { vertex_count: w.count_ones(), faces }
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(|l| l.len() as u64).collect())
    }

    /// `sum_{i >= 0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .skip(1)
            .map(|(s, l)| if s % 2 == 1 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Number of faces of top dimension.
    pub fn top_face_count(&self) -> usize {
        self.faces.last().map_or(0, Vec::len)
    }

    /// Matrix of `∂_i`: rows are the `(i-1)`-faces, columns the `i`-faces.
    pub fn boundary_matrix(&self, i: i32) -> ExactMatrix {
        let rows = self.faces(i - 1);
        let cols = self.faces(i);
        let mut m = ExactMatrix::zeros(rows.len(), cols.len());
        for (c, &face) in cols.iter().enumerate() {
            for (j, b) in iter_bits(face).enumerate() {
                let r = rows.binary_search(&(face & !(1 << b))).expect("complex is closed");
                m.set(r, c, if j % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// Level with `s` vertices holds every `s`-subset of the vertex set.
    fn level_complete(&self, s: usize) -> bool {
        self.faces.get(s).is_some_and(|l| l.len() as u64 == binomial(self.vertex_count as u64, s as u64))
    }

    /// Rank of `∂_i` over `field`.
    ///
    /// When both levels touched by `∂_i` are complete the map is the boundary
    /// of the full simplex, whose rank is `C(m-1, i)` in every characteristic.
    pub fn boundary_rank(&self, i: i32, field: FieldSpec) -> usize {
        if i < 0 {
            return 0;
        }
        if i == 0 {
            return usize::from(!self.faces(0).is_empty());
        }
        let s = i as usize;
        if self.vertex_count > 0 && self.level_complete(s) && self.level_complete(s + 1) {
            return binomial(self.vertex_count as u64 - 1, i as u64) as usize;
        }
        if self.faces(i).is_empty() || self.faces(i - 1).is_empty() {
            return 0;
        }
        self.boundary_matrix(i).rank(field)
    }

    /// `dim H̃_i(Δ; K)`.
    pub fn reduced_homology(&self, field: FieldSpec, i: i32) -> usize {
        self.reduced_homology_dims(field, i, i)[0]
    }

    /// `dim H̃_i` for every `i` in `lo..=hi`.
    pub fn reduced_homology_dims(&self, field: FieldSpec, lo: i32, hi: i32) -> Vec<usize> {
        assert!(lo <= hi, "empty dimension range {lo}..={hi}");
        let ranks: Vec<usize> = (lo..=hi + 1).map(|i| self.boundary_rank(i, field)).collect();
        (lo..=hi)
            .enumerate()
            .map(|(k, i)| {
                let f = self.face_count(i);
                f - ranks[k] - ranks[k + 1]
            })
            .collect()
    }
}
