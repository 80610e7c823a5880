//! Decision procedures for the structural classes of clutters.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::betti::HochsterEngine;
use crate::bits::{self, iter_bits, k_subsets_of};
use crate::clutter::Clutter;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Largest number of circuits for which all subclutters are enumerated.
pub const MAX_EXHAUSTIVE_CIRCUITS: usize = 16;

/// Every `d`-subset of `v` is a circuit. Sets smaller than `d` qualify vacuously.
pub fn is_clique(c: &Clutter, v: u64) -> bool {
    k_subsets_of(v, c.d()).all(|s| c.contains(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionKind {
    /// The two parts share only a clique.
    CliqueIntersection,
    /// The two parts have no submaximal circuit in common.
    ScDisjoint,
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecompositionKind::CliqueIntersection => "clique-intersection",
            DecompositionKind::ScDisjoint => "sc-disjoint",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    /// The separating clique for the clique kind.
    pub separator: Option<u64>,
    pub first: Clutter,
    pub second: Clutter,
}

impl Decomposition {
    /// Checks the parts are proper, cover `c`, and satisfy the claimed condition.
    pub fn is_valid_for(&self, c: &Clutter) -> bool {
        let (a, b) = (&self.first, &self.second);
        let covers = c.circuits().iter().all(|&x| a.contains(x) || b.contains(x))
            && a.circuits().iter().chain(b.circuits()).all(|&x| c.contains(x));
        let proper = !a.is_empty() && !b.is_empty() && a.len() < c.len() && b.len() < c.len();
        let condition = match self.kind {
            DecompositionKind::CliqueIntersection => is_clique(c, a.support() & b.support()),
            DecompositionKind::ScDisjoint => {
                let sa = a.submaximal_circuits();
                b.submaximal_circuits().iter().all(|(e, _)| !sa.contains(e))
            }
        };
        covers && proper && condition
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSearch {
    pub witness: Option<Decomposition>,
    /// False when no witness was found but larger separators were not tried.
    pub complete: bool,
}

/// Searches with separators of at most `d + 2` vertices.
pub fn decompose(c: &Clutter) -> DecompositionSearch {
    decompose_with_cap(c, c.d() + 2)
}

/// Tries an sc-disjoint split first, then clique separators by increasing size.
pub fn decompose_with_cap(c: &Clutter, separator_cap: u32) -> DecompositionSearch {
    let pick = |idx: &[usize]| c.with_circuits(idx.iter().map(|&i| c.circuits()[i]).collect());
    if c.len() < 2 {
        return DecompositionSearch { witness: None, complete: true };
    }
    let strong = c.strong_components();
    if strong.len() >= 2 {
        let rest: Vec<usize> = strong[1..].concat();
        let witness = Decomposition {
            kind: DecompositionKind::ScDisjoint,
            separator: None,
            first: pick(&strong[0]),
            second: pick(&rest),
        };
        return DecompositionSearch { witness: Some(witness), complete: true };
    }
    let delta = SimplicialComplex::clique_complex(c);
    let largest_clique = (delta.dim() + 1) as u32;
    for size in 0..=separator_cap.min(largest_clique) {
        for &s in delta.faces(size as i32 - 1) {
            let (inside, outside): (Vec<usize>, Vec<usize>) = (0..c.len()).partition(|&i| c.circuits()[i] & !s == 0);
            if outside.len() < 2 {
                continue;
            }
            let outer = c.with_circuits(outside.iter().map(|&i| c.circuits()[i]).collect());
            let groups = outer.circuit_components(|a, b| a & b & !s != 0);
            if groups.len() < 2 {
                continue;
            }
            let first: Vec<usize> = groups[0].iter().map(|&k| outside[k]).chain(inside.iter().copied()).collect();
            let second: Vec<usize> =
                groups[1..].iter().flatten().map(|&k| outside[k]).chain(inside.iter().copied()).collect();
            let witness = Decomposition {
                kind: DecompositionKind::CliqueIntersection,
                separator: Some(s),
                first: pick(&first),
                second: pick(&second),
            };
            return DecompositionSearch { witness: Some(witness), complete: true };
        }
    }
    DecompositionSearch { witness: None, complete: separator_cap >= largest_clique }
}

/// Strongly connected with every submaximal circuit in exactly two circuits.
pub fn is_pseudo_manifold(c: &Clutter) -> bool {
    !c.is_empty() && c.strongly_connected() && c.submaximal_circuits().iter().all(|(_, deg)| deg == 2)
}

/// Top rational homology of the complex generated by the circuits is one-dimensional.
///
/// The generated complex is used rather than the clique complex, which may
/// fill in the whole pseudo-manifold (as for the boundary of a simplex).
pub fn is_orientable(c: &Clutter) -> Result<bool> {
    if !is_pseudo_manifold(c) {
        return Err(Error::NotPseudoManifold);
    }
    let top = SimplicialComplex::generated_by(c).reduced_homology(FieldSpec::RATIONALS, c.d() as i32 - 1);
    Ok(top == 1)
}

/// Orientability by propagating signs across shared submaximal circuits.
pub fn orientable_by_sign_propagation(c: &Clutter) -> Result<bool> {
    if !is_pseudo_manifold(c) {
        return Err(Error::NotPseudoManifold);
    }
    // Induced sign of circuit `f` on its facet missing vertex `b`.
    let induced = |f: u64, b: u32| if (f & bits::low_bits(b)).count_ones().is_multiple_of(2) { 1i8 } else { -1 };
    let mut owners: HashMap<u64, Vec<(usize, i8)>> = HashMap::new();
    for (i, &f) in c.circuits().iter().enumerate() {
        for b in iter_bits(f) {
            owners.entry(f & !(1 << b)).or_default().push((i, induced(f, b)));
        }
    }
    let mut sign = vec![0i8; c.len()];
    sign[0] = 1;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let f = c.circuits()[i];
        for b in iter_bits(f) {
            let e = f & !(1 << b);
            let here = sign[i] * induced(f, b);
            for &(j, s) in &owners[&e] {
                if j == i {
                    continue;
                }
                let wanted = -here * s;
                if sign[j] == 0 {
                    sign[j] = wanted;
                    stack.push(j);
                } else if sign[j] != wanted {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_circuit_cap(c: &Clutter) -> Result<()> {
    if c.len() > MAX_EXHAUSTIVE_CIRCUITS {
        return Err(Error::CapacityExceeded(format!(
            "{} circuits exceed the cap of {MAX_EXHAUSTIVE_CIRCUITS} for subclutter enumeration",
            c.len()
        )));
    }
    Ok(())
}

/// Not linear, while every proper subclutter (any subset of circuits) is.
pub fn is_obstruction(c: &Clutter, field: FieldSpec) -> Result<bool> {
    is_obstruction_with(c, &HochsterEngine::new(field))
}

/// As [`is_obstruction`], reusing the caches of `engine`.
///
/// Pseudo-manifolds whose clique complex has dimension `d-1` are answered
/// directly: orientable ones always qualify, the others exactly in
/// characteristic 2.
pub fn is_obstruction_with(c: &Clutter, engine: &HochsterEngine) -> Result<bool> {
    check_circuit_cap(c)?;
    if is_pseudo_manifold(c) && SimplicialComplex::clique_complex(c).dim() == c.d() as i32 - 1 {
        return Ok(is_orientable(c)? || engine.field().characteristic() == 2);
    }
    is_obstruction_exhaustive_with(c, engine)
}

/// Checks every proper subclutter, with no shortcuts.
pub fn is_obstruction_exhaustive(c: &Clutter, field: FieldSpec) -> Result<bool> {
    is_obstruction_exhaustive_with(c, &HochsterEngine::new(field))
}

pub fn is_obstruction_exhaustive_with(c: &Clutter, engine: &HochsterEngine) -> Result<bool> {
    check_circuit_cap(c)?;
    if engine.has_linear_resolution(c)? {
        return Ok(false);
    }
    let full = bits::low_bits(c.len() as u32);
    let failure = (0..full).into_par_iter().find_map_any(|s| match engine.has_linear_resolution(&c.select(s)) {
        Ok(true) => None,
        Ok(false) => Some(Ok(())),
        Err(e) => Some(Err(e)),
    });
    match failure {
        None => Ok(true),
        Some(Ok(())) => Ok(false),
        Some(Err(e)) => Err(e),
    }
}

/// An obstruction whose clique complex has dimension `d-1`.
pub fn is_minimal_to_linearity(c: &Clutter, field: FieldSpec) -> Result<bool> {
    is_minimal_to_linearity_with(c, &HochsterEngine::new(field))
}

pub fn is_minimal_to_linearity_with(c: &Clutter, engine: &HochsterEngine) -> Result<bool> {
    if SimplicialComplex::clique_complex(c).dim() != c.d() as i32 - 1 {
        check_circuit_cap(c)?;
        return Ok(false);
    }
    is_obstruction_with(c, engine)
}

/// Not linear, and removing any single circuit leaves a forest.
///
/// Proper subclutters are only required to be forests (trees component by
/// component), so cycles qualify.
pub fn is_almost_tree(c: &Clutter, field: FieldSpec) -> Result<bool> {
    is_almost_tree_with(c, &HochsterEngine::new(field))
}

pub fn is_almost_tree_with(c: &Clutter, engine: &HochsterEngine) -> Result<bool> {
    if c.is_empty() || engine.has_linear_resolution(c)? {
        return Ok(false);
    }
    Ok(c.circuits().iter().all(|&f| c.without(f).is_forest()))
}

/// Chordality of a graph by repeated removal of simplicial vertices.
pub fn is_chordal_graph(c: &Clutter) -> Result<bool> {
    if c.d() != 2 {
        return Err(Error::UnsupportedShape(format!("chordality needs a graph, got d={}", c.d())));
    }
    let n = c.n() as usize;
    let mut adj = vec![0u64; n];
    for &e in c.circuits() {
        let (a, b) = (e.trailing_zeros() as usize, 63 - e.leading_zeros() as usize);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut alive = bits::low_bits(c.n());
    while alive != 0 {
        let simplicial = iter_bits(alive).find(|&v| {
            let nb = adj[v as usize] & alive;
            iter_bits(nb).all(|u| nb & !(1 << u) & !adj[u as usize] == 0)
        });
        match simplicial {
            Some(v) => alive &= !(1 << v),
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientability {
    Yes,
    No,
    NotApplicable,
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientability::Yes => "yes",
            Orientability::No => "no",
            Orientability::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionWitness {
    pub kind: DecompositionKind,
    pub separator: Option<Vec<u32>>,
    pub first: Vec<Vec<u32>>,
    pub second: Vec<Vec<u32>>,
}

impl From<&Decomposition> for DecompositionWitness {
    fn from(d: &Decomposition) -> Self {
        DecompositionWitness {
            kind: d.kind,
            separator: d.separator.map(bits::vertices_of),
            first: d.first.circuit_lists(),
            second: d.second.circuit_lists(),
        }
    }
}

/// All verdicts for one clutter. Homological entries are `None` when the
/// input exceeds the enumeration caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub field: String,
    pub n: u32,
    pub d: u32,
    pub circuits: usize,
    pub clique_complex_dim: i32,
    pub is_clique_complex_dim_ok: bool,
    pub has_linear_resolution: Option<bool>,
    pub decomposable: bool,
    pub decomposition: Option<DecompositionWitness>,
    pub decomposition_search_complete: bool,
    pub strongly_connected: bool,
    pub connected: bool,
    pub pseudo_manifold: bool,
    pub orientable: Orientability,
    pub forest: bool,
    pub tree: bool,
    pub almost_tree: Option<bool>,
    pub almost_tree_reading: &'static str,
    pub obstruction: Option<bool>,
    pub minimal_to_linearity: Option<bool>,
    pub chordal: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub separator_cap: Option<u32>,
    pub subset_cap: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { separator_cap: None, subset_cap: crate::betti::DEFAULT_SUBSET_CAP }
    }
}

fn within_caps<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::CapacityExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn classify(c: &Clutter, field: FieldSpec, options: ClassifyOptions) -> Result<ClassificationReport> {
    let engine = HochsterEngine::new(field).with_subset_cap(options.subset_cap);
    let dim = SimplicialComplex::clique_complex(c).dim();
    let dim_ok = dim == c.d() as i32 - 1;
    let search = decompose_with_cap(c, options.separator_cap.unwrap_or(c.d() + 2));
    let pseudo_manifold = is_pseudo_manifold(c);
    let orientable = if pseudo_manifold {
        if is_orientable(c)? {
            Orientability::Yes
        } else {
            Orientability::No
        }
    } else {
        Orientability::NotApplicable
    };
    let obstruction = within_caps(is_obstruction_with(c, &engine))?;
    Ok(ClassificationReport {
        field: field.tag(),
        n: c.n(),
        d: c.d(),
        circuits: c.len(),
        clique_complex_dim: dim,
        is_clique_complex_dim_ok: dim_ok,
        has_linear_resolution: within_caps(engine.has_linear_resolution(c))?,
        decomposable: search.witness.is_some(),
        decomposition: search.witness.as_ref().map(DecompositionWitness::from),
        decomposition_search_complete: search.complete,
        strongly_connected: c.strongly_connected(),
        connected: c.connected(),
        pseudo_manifold,
        orientable,
        forest: c.is_forest(),
        tree: c.is_tree(),
        almost_tree: within_caps(is_almost_tree_with(c, &engine))?,
        almost_tree_reading: "forest",
        obstruction,
        minimal_to_linearity: obstruction.map(|o| o && dim_ok),
        chordal: (c.d() == 2).then(|| is_chordal_graph(c)).transpose()?,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn maybe(b: Option<bool>) -> &'static str {
    b.map_or("unknown", yes_no)
}

fn circuit_list(circuits: &[Vec<u32>]) -> String {
    let parts: Vec<String> = circuits
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    parts.join(" ")
}

impl ClassificationReport {
    /// One `key: value` line per verdict.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("field: {}", self.field),
            format!("n: {}", self.n),
            format!("d: {}", self.d),
            format!("circuits: {}", self.circuits),
            format!("clique_complex_dim: {}", self.clique_complex_dim),
            format!("is_clique_complex_dim_ok: {}", yes_no(self.is_clique_complex_dim_ok)),
            format!("has_linear_resolution: {}", maybe(self.has_linear_resolution)),
            format!("decomposable: {}", yes_no(self.decomposable)),
        ];
        if let Some(w) = &self.decomposition {
            lines.push(format!("decomposition_kind: {}", w.kind));
            if let Some(s) = &w.separator {
                lines.push(format!("decomposition_separator: {}", circuit_list(std::slice::from_ref(s))));
            }
            lines.push(format!("decomposition_first: {}", circuit_list(&w.first)));
            lines.push(format!("decomposition_second: {}", circuit_list(&w.second)));
        }
        lines.extend([
            format!("decomposition_search_complete: {}", yes_no(self.decomposition_search_complete)),
            format!("strongly_connected: {}", yes_no(self.strongly_connected)),
            format!("connected: {}", yes_no(self.connected)),
            format!("pseudo_manifold: {}", yes_no(self.pseudo_manifold)),
            format!("orientable: {}", self.orientable),
            format!("forest: {}", yes_no(self.forest)),
            format!("tree: {}", yes_no(self.tree)),
            format!("almost_tree ({} reading): {}", self.almost_tree_reading, maybe(self.almost_tree)),
            format!("obstruction: {}", maybe(self.obstruction)),
            format!("minimal_to_linearity: {}", maybe(self.minimal_to_linearity)),
            format!("chordal: {}", self.chordal.map_or("not-applicable", yes_no)),
        ]);
        lines.join("\n") + "\n"
    }
}
