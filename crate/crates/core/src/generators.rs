//! Named fixtures, parametric families, gluing and random generalized chordal clutters.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{self, iter_bits, k_subsets, k_subsets_of};
use crate::classify::{self, DecompositionKind};
use crate::clutter::{Clutter, MAX_VERTICES};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

/// Graph cycle `{i, i+1}` on `1..=n`, closed by `{n, 1}`.
pub fn cycle(n: u32) -> Result<Clutter> {
    if !(3..=MAX_VERTICES).contains(&n) {
        return Err(Error::InvalidClutter(format!("a cycle needs 3..={MAX_VERTICES} vertices, got {n}")));
    }
    Clutter::from_masks(n, 2, (0..n).map(|i| 1u64 << i | 1u64 << ((i + 1) % n)))
}

/// Boundary of the `d`-dimensional cross-polytope. The pair `{i+, i-}` is
/// labelled `{2i-1, 2i}`; circuits pick one vertex from every pair.
pub fn cross_polytope_boundary(d: u32) -> Result<Clutter> {
    if !(2..=16).contains(&d) {
        return Err(Error::InvalidClutter(format!("cross-polytope dimension must be in 2..=16, got {d}")));
    }
    let circuits = (0..1u64 << d).map(|choice| (0..d).fold(0u64, |m, i| m | 1 << (2 * i + (choice >> i & 1) as u32)));
    Clutter::from_masks(2 * d, d, circuits)
}

fn from_words(n: u32, d: u32, words: &[&str], label: impl Fn(char) -> u32) -> Clutter {
    let circuits: Vec<Vec<u32>> = words.iter().map(|w| w.chars().map(&label).collect()).collect();
    Clutter::from_circuits(n, d, &circuits).expect("embedded fixture is a valid clutter")
}

fn digit(ch: char) -> u32 {
    ch.to_digit(10).expect("digit label")
}

/// The 11-circuit clutter on 7 vertices that glues two pieces along `{3,4,5}`.
pub fn example_4_9() -> Clutter {
    from_words(7, 3, &["123", "124", "134", "235", "245", "345", "347", "367", "467", "356", "456"], digit)
}

/// Vertex names of [`example_6_6`] with their integer labels.
pub const EXAMPLE_6_6_LABELS: [(char, u32); 10] =
    [('a', 1), ('b', 2), ('1', 3), ('2', 4), ('3', 5), ('4', 6), ('5', 7), ('6', 8), ('7', 9), ('8', 10)];

/// A 20-circuit almost tree on `a, b, 1..8` whose edge `ab` lies in four circuits.
pub fn example_6_6() -> Clutter {
    let words = [
        "a23", "b14", "ab1", "a12", "ab4", "a34", "236", "367", "125", "256", "145", "458", "348", "378", "a67", "b58",
        "ab5", "a56", "ab8", "a78",
    ];
    let label = |ch| EXAMPLE_6_6_LABELS.iter().find(|(c, _)| *c == ch).expect("known vertex name").1;
    from_words(10, 3, &words, label)
}

fn validation(name: &'static str, checks: &[(bool, &str)]) -> Result<()> {
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, reason)) => Err(Error::FixtureValidationFailed { name, reason: reason.to_string() }),
        None => Ok(()),
    }
}

/// Six-vertex triangulation of the real projective plane, checked on construction.
pub fn rp2_six() -> Result<Clutter> {
    let c = from_words(6, 3, &["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"], digit);
    let pm = classify::is_pseudo_manifold(&c);
    let generated = SimplicialComplex::generated_by(&c);
    let delta = SimplicialComplex::clique_complex(&c);
    validation(
        "rp2_six",
        &[
            (pm, "not a pseudo-manifold"),
            (generated.euler_characteristic() == 1, "Euler characteristic is not 1"),
            (delta.reduced_homology(FieldSpec::GF2, 1) == 1, "first homology over GF(2) is not one-dimensional"),
            (pm && !classify::is_orientable(&c)?, "orientable"),
        ],
    )?;
    Ok(c)
}

/// Seven-vertex triangulation of the torus, checked on construction.
pub fn torus_seven() -> Result<Clutter> {
    let circuits = (0..7u32).flat_map(|i| {
        [[i, i + 1, i + 3], [i, i + 2, i + 3]].map(|t| t.iter().fold(0u64, |m, &v| m | 1 << (v % 7)))
    });
    let c = Clutter::from_masks(7, 3, circuits)?;
    let pm = classify::is_pseudo_manifold(&c);
    let generated = SimplicialComplex::generated_by(&c);
    let delta = SimplicialComplex::clique_complex(&c);
    validation(
        "torus_seven",
        &[
            (pm, "not a pseudo-manifold"),
            (generated.f_vector().0 == [1, 7, 21, 14], "f-vector is not (7, 21, 14)"),
            (generated.euler_characteristic() == 0, "Euler characteristic is not 0"),
            (delta.reduced_homology(FieldSpec::RATIONALS, 1) == 2, "first rational homology is not two-dimensional"),
            (pm && classify::is_orientable(&c)?, "not orientable"),
        ],
    )?;
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSpec {
    pub mode: DecompositionKind,
    /// Pairs `(vertex of the second part, vertex of the first part)` to identify.
    pub identify: Vec<(u32, u32)>,
}

/// Union of two clutters on `1..=n1` and `1..=n2`. Identified vertices of the
/// second part take the label of their partner; the others become
/// `n1 + 1, n1 + 2, ...` in increasing order.
pub fn glue(c1: &Clutter, c2: &Clutter, spec: &GlueSpec) -> Result<Clutter> {
    let bad = |msg: String| Err(Error::InvalidGlue(msg));
    if c1.d() != c2.d() {
        return bad(format!("uniformities differ: {} and {}", c1.d(), c2.d()));
    }
    let (n1, n2) = (c1.n(), c2.n());
    let mut map = vec![0u32; n2 as usize + 1];
    let (mut seen1, mut seen2) = (0u64, 0u64);
    for &(v2, v1) in &spec.identify {
        if !(1..=n2).contains(&v2) || !(1..=n1).contains(&v1) {
            return bad(format!("identification {v2}->{v1} is out of range"));
        }
        if seen2 >> (v2 - 1) & 1 == 1 || seen1 >> (v1 - 1) & 1 == 1 {
            return bad(format!("vertex identified twice in {v2}->{v1}"));
        }
        seen1 |= 1 << (v1 - 1);
        seen2 |= 1 << (v2 - 1);
        map[v2 as usize] = v1;
    }
    let n = n1 + n2 - spec.identify.len() as u32;
    if n > MAX_VERTICES {
        return bad(format!("glued clutter would have {n} vertices"));
    }
    let mut next = n1;
    for slot in map.iter_mut().skip(1).filter(|s| **s == 0) {
        next += 1;
        *slot = next;
    }
    let relabel = |m: u64| iter_bits(m).fold(0u64, |acc, b| acc | 1 << (map[b as usize + 1] - 1));
    let second: Vec<u64> = c2.circuits().iter().map(|&m| relabel(m)).collect();
    match spec.mode {
        DecompositionKind::CliqueIntersection => {
            if !classify::is_clique(c1, seen1) || !classify::is_clique(c2, seen2) {
                return bad("identified vertices do not form a clique in both parts".into());
            }
        }
        DecompositionKind::ScDisjoint => {
            let sc1 = c1.submaximal_circuits();
            let shared = second.iter().any(|&f| bits::facets_of(f).any(|e| sc1.contains(e)));
            if shared {
                return bad("the parts share a submaximal circuit".into());
            }
        }
    }
    let mut all: Vec<u64> = c1.circuits().to_vec();
    all.extend(second);
    all.sort_unstable();
    all.dedup();
    Clutter::from_masks(n, c1.d(), all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChordalParams {
    pub d: u32,
    pub max_n: u32,
    pub steps: u32,
    /// Lets an added circuit use one new vertex.
    pub allow_fresh_vertex: bool,
}

impl Default for ChordalParams {
    fn default() -> Self {
        ChordalParams { d: 3, max_n: 10, steps: 6, allow_fresh_vertex: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum ChordalStep {
    /// Start from the complete clutter on `m` vertices.
    Start { m: u32 },
    /// Glue a complete clutter on `m` vertices along `shared` (labels in the result).
    Glue { m: u32, shared: Vec<u32> },
    /// Add a circuit with a submaximal set not covered so far.
    AddCircuit { circuit: Vec<u32>, fresh_vertex: bool },
    Skipped { rule: char, reason: String },
}

impl fmt::Display for ChordalStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        match self {
            ChordalStep::Start { m } => write!(f, "start complete m={m}"),
            ChordalStep::Glue { m, shared } => write!(f, "glue complete m={m} along [{}]", list(shared)),
            ChordalStep::AddCircuit { circuit, fresh_vertex } => {
                write!(f, "add circuit [{}]{}", list(circuit), if *fresh_vertex { " fresh" } else { "" })
            }
            ChordalStep::Skipped { rule, reason } => write!(f, "skip rule {rule}: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedChordal {
    pub seed: u64,
    pub clutter: Clutter,
    pub trace: Vec<ChordalStep>,
}

/// Random generalized chordal clutter, reproducible from `seed` (ChaCha8).
///
/// Starts from a complete clutter on `d..=d+2` vertices, then for each step
/// picks one of two rules with equal odds: glue a complete clutter on
/// `m` vertices along a random clique of size `i < m`, or add a non-circuit
/// `d`-set that has a `(d-1)`-subset not contained in any circuit.
pub fn generalized_chordal(seed: u64, params: ChordalParams) -> Result<GeneratedChordal> {
    let ChordalParams { d, max_n, steps, allow_fresh_vertex } = params;
    if d == 0 || max_n < d || max_n > MAX_VERTICES {
        return Err(Error::InvalidClutter(format!("need 1 <= d <= max_n <= {MAX_VERTICES}, got d={d} max_n={max_n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m0 = rng.gen_range(d..=(d + 2).min(max_n));
    let mut g = Clutter::maximal(m0, d)?;
    let mut trace = vec![ChordalStep::Start { m: m0 }];
    for _ in 0..steps {
        let step = if rng.gen_bool(0.5) {
            glue_step(&mut g, &mut rng, max_n)?
        } else {
            add_step(&mut g, &mut rng, max_n, allow_fresh_vertex)?
        };
        trace.push(step);
    }
    Ok(GeneratedChordal { seed, clutter: g, trace })
}

fn glue_step(g: &mut Clutter, rng: &mut ChaCha8Rng, max_n: u32) -> Result<ChordalStep> {
    let (n, d) = (g.n(), g.d());
    let m = rng.gen_range(d..=d + 2);
    // At least one new vertex is needed.
    let min_shared = (n + m).saturating_sub(max_n);
    if min_shared >= m {
        return Ok(ChordalStep::Skipped { rule: 'b', reason: format!("no room for m={m}") });
    }
    let delta = SimplicialComplex::clique_complex(g);
    let sizes: Vec<u32> = (min_shared..m).filter(|&i| !delta.faces(i as i32 - 1).is_empty()).collect();
    let Some(&i) = sizes.choose(rng) else {
        return Ok(ChordalStep::Skipped { rule: 'b', reason: format!("no clique of size {min_shared}..{m}") });
    };
    let clique = *delta.faces(i as i32 - 1).choose(rng).expect("nonempty level");
    let mut targets = bits::vertices_of(clique);
    targets.shuffle(rng);
    let identify: Vec<(u32, u32)> = targets.iter().enumerate().map(|(k, &v)| (k as u32 + 1, v)).collect();
    let block = Clutter::maximal(m, d)?;
    *g = glue(g, &block, &GlueSpec { mode: DecompositionKind::CliqueIntersection, identify })?;
    Ok(ChordalStep::Glue { m, shared: bits::vertices_of(clique) })
}

fn add_step(g: &mut Clutter, rng: &mut ChaCha8Rng, max_n: u32, allow_fresh: bool) -> Result<ChordalStep> {
    let (n, d) = (g.n(), g.d());
    let fresh = allow_fresh && n < max_n;
    let universe = n + u32::from(fresh);
    let sc = g.submaximal_circuits();
    let candidates: Vec<u64> = k_subsets(universe, d)
        .filter(|&v| !g.contains(v) && k_subsets_of(v, d - 1).any(|e| !sc.contains(e)))
        .collect();
    let Some(&v) = candidates.choose(rng) else {
        return Ok(ChordalStep::Skipped { rule: 'c', reason: "no admissible circuit".into() });
    };
    let uses_fresh = v >> n & 1 == 1;
    let mut circuits = g.circuits().to_vec();
    circuits.push(v);
    *g = Clutter::from_masks(if uses_fresh { n + 1 } else { n }, d, circuits)?;
    Ok(ChordalStep::AddCircuit { circuit: bits::vertices_of(v), fresh_vertex: uses_fresh })
}
