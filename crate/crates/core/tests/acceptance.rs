//! End-to-end checks of the published computations. Runs as a plain binary
//! so each check prints one PASS/FAIL line.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use hochster_core::bits::{k_subsets, low_bits};
use hochster_core::classify::{is_obstruction_exhaustive_with, is_minimal_to_linearity_with};
use hochster_core::generators::{self, cross_polytope_boundary, cycle, rp2_six, torus_seven};
use hochster_core::{
    betti_hochster, decompose, glue, is_almost_tree, is_chordal_graph, minimal_resolution_formula, verify_shape_bounds,
    BettiTable, ChordalParams, Clutter, DecompositionKind, FieldSpec, GlueSpec, HochsterEngine, SimplicialComplex,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const Q: FieldSpec = FieldSpec::RATIONALS;
const GF2: FieldSpec = FieldSpec::GF2;
const GF3: FieldSpec = FieldSpec::GF3;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: hochster_core::Error) -> String {
    e.to_string()
}

fn table(pairs: &[((usize, usize), u64)]) -> BTreeMap<(usize, usize), u64> {
    pairs.iter().copied().collect()
}

fn same_entries(a: &BettiTable, b: &BettiTable, what: &str) -> Check {
    ensure(a.entries() == b.entries(), || format!("{what}: {:?} != {:?}", a.entries(), b.entries()))
}

/// A clutter on its own vertex set (the support, relabelled `1..`).
fn on_support(c: &Clutter) -> Clutter {
    c.induced(c.support()).clutter
}

/// Each `d`-subset is kept with a probability drawn from `density`.
fn random_clutter(rng: &mut ChaCha8Rng, n: u32, d: u32, density: std::ops::Range<f64>) -> Clutter {
    let p = rng.gen_range(density);
    let masks: Vec<u64> = k_subsets(n, d).filter(|_| rng.gen_bool(p)).collect();
    Clutter::from_masks(n, d, masks).expect("valid masks")
}

fn worked_example() -> Check {
    let t = betti_hochster(&generators::example_4_9(), Q).map_err(err)?;
    let expected = table(&[
        ((0, 3), 24),
        ((1, 4), 61),
        ((1, 5), 2),
        ((2, 5), 62),
        ((2, 6), 4),
        ((3, 6), 30),
        ((3, 7), 2),
        ((4, 7), 6),
    ]);
    ensure(t.entries() == &expected, || format!("table {:?}", t.entries()))?;
    ensure(t.regularity() == 4 && t.projdim() == 4, || format!("reg {} pdim {}", t.regularity(), t.projdim()))
}

fn worked_example_strictness() -> Check {
    let c = generators::example_4_9();
    let first = Clutter::from_circuits(7, 3, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]])
        .map_err(err)?;
    let second = Clutter::from_circuits(7, 3, &[[3, 4, 5], [3, 4, 7], [3, 6, 7], [4, 6, 7], [3, 5, 6], [4, 5, 6]])
        .map_err(err)?;
    let w = decompose(&c).witness.ok_or("no decomposition found")?;
    ensure(w.first == first && w.second == second, || format!("unexpected parts {} / {}", w.first, w.second))?;
    let b1 = betti_hochster(&on_support(&first), Q).map_err(err)?.get(2, 6);
    let b2 = betti_hochster(&on_support(&second), Q).map_err(err)?.get(2, 6);
    let b = betti_hochster(&c, Q).map_err(err)?.get(2, 6);
    ensure((b1, b2, b) == (0, 0, 4), || format!("beta_2,6: parts {b1}, {b2}, union {b}"))
}

/// Random part on exactly `n` vertices whose ideal is nonzero.
fn random_part(rng: &mut ChaCha8Rng, d: u32) -> Clutter {
    loop {
        let n = rng.gen_range(d + 1..=6);
        let c = random_clutter(rng, n, d, 0.3..0.8);
        if c.support() == c.universe() && !c.is_maximal() {
            return c;
        }
    }
}

fn random_glue(rng: &mut ChaCha8Rng, mode: DecompositionKind) -> (Clutter, Clutter, Clutter) {
    loop {
        let d = rng.gen_range(2..=3);
        let (c1, c2) = (random_part(rng, d), random_part(rng, d));
        let max_shared = match mode {
            DecompositionKind::CliqueIntersection => c1.n().min(c2.n()),
            DecompositionKind::ScDisjoint => d - 1,
        };
        let k = rng.gen_range(0..=max_shared);
        if c1.n() + c2.n() - k > 10 {
            continue;
        }
        let pick = |c: &Clutter, rng: &mut ChaCha8Rng| -> Option<Vec<u32>> {
            let faces = SimplicialComplex::clique_complex(c).faces(k as i32 - 1).to_vec();
            faces.choose(rng).map(|&f| hochster_core::bits::vertices_of(f))
        };
        let (Some(s1), Some(mut s2)) = (pick(&c1, rng), pick(&c2, rng)) else { continue };
        s2.shuffle(rng);
        let identify = s2.into_iter().zip(s1).collect();
        if let Ok(union) = glue(&c1, &c2, &GlueSpec { mode, identify }) {
            return (c1, c2, union);
        }
    }
}

fn union_regularity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let engines = [HochsterEngine::new(Q), HochsterEngine::new(GF2)];
    for k in 0..50 {
        let mode = if k % 2 == 0 { DecompositionKind::CliqueIntersection } else { DecompositionKind::ScDisjoint };
        let (c1, c2, union) = random_glue(&mut rng, mode);
        let d = union.d() as usize;
        for engine in &engines {
            let t1 = engine.betti_table(&c1).map_err(err)?;
            let t2 = engine.betti_table(&c2).map_err(err)?;
            let t = engine.betti_table(&union).map_err(err)?;
            let want = t1.regularity().max(t2.regularity());
            ensure(t.regularity() == want, || {
                format!("instance {k} ({mode}): reg {} vs max {want} for {union}", t.regularity())
            })?;
            for (&(i, j), _) in t1.entries().iter().chain(t2.entries()) {
                if j - i > d {
                    ensure(t.get(i, j) >= t1.get(i, j) + t2.get(i, j), || {
                        format!("instance {k}: beta_{i},{j} below the sum of the parts")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn cycle_formulas() -> Check {
    for n in 4..=8 {
        let c = cycle(n).map_err(err)?;
        let formula = hochster_core::cycle_betti(n).map_err(err)?;
        for f in [Q, GF2] {
            let t = betti_hochster(&c, f).map_err(err)?;
            same_entries(&t, &formula, &format!("cycle {n} over {f}"))?;
            ensure(t.regularity() == 3, || format!("cycle {n}: reg {}", t.regularity()))?;
        }
    }
    Ok(())
}

fn projective_plane() -> Check {
    let c = rp2_six().map_err(err)?;
    let (q, two) = (HochsterEngine::new(Q), HochsterEngine::new(GF2));
    ensure(q.has_linear_resolution(&c).map_err(err)?, || "not linear over Q".into())?;
    ensure(!two.has_linear_resolution(&c).map_err(err)?, || "linear over GF(2)".into())?;
    let t = two.betti_table(&c).map_err(err)?;
    ensure(t.regularity() == 4, || format!("reg over GF(2) is {}", t.regularity()))?;
    ensure(is_minimal_to_linearity_with(&c, &two).map_err(err)?, || "not minimal over GF(2)".into())?;
    ensure(is_obstruction_exhaustive_with(&c, &two).map_err(err)?, || "exhaustive check disagrees".into())?;
    same_entries(&minimal_resolution_formula(6, 3, 10).map_err(err)?, &t, "formula vs GF(2) table")
}

fn oriented_pseudo_manifolds() -> Check {
    let cases = [
        (
            "octahedron",
            cross_polytope_boundary(3).map_err(err)?,
            table(&[((0, 3), 12), ((1, 4), 21), ((2, 5), 12), ((2, 6), 1), ((3, 6), 3)]),
        ),
        (
            "torus",
            torus_seven().map_err(err)?,
            table(&[((0, 3), 21), ((1, 4), 49), ((2, 5), 42), ((3, 6), 14), ((3, 7), 1), ((4, 7), 2)]),
        ),
    ];
    for (name, c, expected) in cases {
        let mu = c.complement().len() as u64;
        let formula = minimal_resolution_formula(c.n(), c.d(), mu).map_err(err)?;
        ensure(formula.entries() == &expected, || format!("{name}: formula {:?}", formula.entries()))?;
        for f in [Q, GF2] {
            let engine = HochsterEngine::new(f);
            ensure(is_minimal_to_linearity_with(&c, &engine).map_err(err)?, || format!("{name} not minimal over {f}"))?;
            ensure(is_obstruction_exhaustive_with(&c, &engine).map_err(err)?, || {
                format!("{name}: exhaustive check disagrees over {f}")
            })?;
            same_entries(&engine.betti_table(&c).map_err(err)?, &formula, &format!("{name} over {f}"))?;
        }
    }
    Ok(())
}

fn top_homology_of_minimal(c: &Clutter, f: FieldSpec) -> Check {
    let delta = SimplicialComplex::clique_complex(c);
    let top = c.d() as i32 - 1;
    ensure(delta.reduced_homology(f, top) == 1, || format!("top homology of {c} over {f} is not 1"))?;
    for w in 0..c.universe() {
        let h = delta.induced_subcomplex(w).reduced_homology(f, top);
        ensure(h == 0, || format!("{c}: proper piece {w:#b} has top homology {h} over {f}"))?;
    }
    Ok(())
}

fn minimal_top_homology() -> Check {
    let mut instances: Vec<(Clutter, FieldSpec)> = Vec::new();
    for n in 4..=8 {
        instances.extend([(cycle(n).map_err(err)?, Q), (cycle(n).map_err(err)?, GF2)]);
    }
    for c in [cross_polytope_boundary(2).map_err(err)?, cross_polytope_boundary(3).map_err(err)?, torus_seven().map_err(err)?] {
        instances.extend([(c.clone(), Q), (c, GF2)]);
    }
    instances.push((rp2_six().map_err(err)?, GF2));
    let engines = [HochsterEngine::new(Q), HochsterEngine::new(GF2)];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut found = 0;
    for _ in 0..400 {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(d + 2..=7);
        let c = random_clutter(&mut rng, n, d, 0.2..0.6);
        if c.len() > 12 {
            continue;
        }
        for engine in &engines {
            if is_minimal_to_linearity_with(&c, engine).map_err(err)? {
                instances.push((c.clone(), engine.field()));
                found += 1;
            }
        }
    }
    ensure(found > 0, || "random search found no minimal instance".into())?;
    for (c, f) in &instances {
        ensure(is_minimal_to_linearity_with(c, &HochsterEngine::new(*f)).map_err(err)?, || {
            format!("{c} is not minimal over {f}")
        })?;
        top_homology_of_minimal(c, *f)?;
    }
    Ok(())
}

fn shape_bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut checked = 0;
    while checked < 100 {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(d + 1..=8);
        let c = random_clutter(&mut rng, n, d, 0.1..0.7);
        if c.is_maximal() || SimplicialComplex::clique_complex(&c).dim() != d as i32 - 1 {
            continue;
        }
        checked += 1;
        for f in [Q, GF2] {
            let report = verify_shape_bounds(&c, f).map_err(err)?;
            ensure(report.holds(), || format!("{c} over {f}: {report:?}"))?;
            let cm = hochster_core::is_cohen_macaulay(&c, f).map_err(err)?;
            let by_projdim = report.projdim + 1 == (n - d) as usize;
            ensure(cm == by_projdim, || format!("{c} over {f}: CM {cm} but projdim {}", report.projdim))?;
        }
    }
    Ok(())
}

fn chordal_graphs() -> Check {
    let engines = [HochsterEngine::new(Q), HochsterEngine::new(GF2)];
    for n in 2..=7u32 {
        let edges: Vec<u64> = k_subsets(n, 2).collect();
        for selection in 0..=low_bits(edges.len() as u32) {
            let masks = hochster_core::bits::iter_bits(selection).map(|i| edges[i as usize]);
            let g = Clutter::from_masks(n, 2, masks).map_err(err)?;
            let chordal = is_chordal_graph(&g).map_err(err)?;
            for engine in &engines {
                let linear = engine.has_linear_resolution(&g).map_err(err)?;
                ensure(chordal == linear, || format!("{g}: chordal {chordal}, linear {linear} over {}", engine.field()))?;
            }
        }
    }
    Ok(())
}

fn generalized_chordal_linearity() -> Check {
    let engines = [HochsterEngine::new(Q), HochsterEngine::new(GF2), HochsterEngine::new(GF3)];
    let params = ChordalParams { d: 3, max_n: 10, steps: 8, allow_fresh_vertex: true };
    for seed in 0..100 {
        let g = generators::generalized_chordal(seed, params).map_err(err)?;
        ensure(g.clutter.n() <= 10, || format!("seed {seed}: n = {}", g.clutter.n()))?;
        for engine in &engines {
            ensure(engine.has_linear_resolution(&g.clutter).map_err(err)?, || {
                format!("seed {seed} over {}: {} not linear", engine.field(), g.clutter)
            })?;
        }
    }
    Ok(())
}

fn every_subclutter_has_free_face(c: &Clutter, proper_only: bool) -> bool {
    let full = low_bits(c.len() as u32);
    (1..=full).filter(|&s| !(proper_only && s == full)).all(|s| c.select(s).has_free_submaximal())
}

fn peeling_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut family: Vec<Clutter> = vec![
        cycle(5).map_err(err)?,
        cycle(8).map_err(err)?,
        cross_polytope_boundary(3).map_err(err)?,
        rp2_six().map_err(err)?,
        generators::example_4_9(),
    ];
    for base in family.clone() {
        for _ in 0..10 {
            let keep = rng.gen_range(1..=base.len());
            let mut circuits = base.circuits().to_vec();
            circuits.shuffle(&mut rng);
            circuits.truncate(keep);
            family.push(base.with_circuits(circuits));
        }
    }
    while family.len() < 400 {
        let d = rng.gen_range(2..=3);
        let n = rng.gen_range(d + 1..=7);
        let c = random_clutter(&mut rng, n, d, 0.1..0.5);
        if !c.is_empty() && c.len() <= 12 {
            family.push(c);
        }
    }
    let (mut forests, mut almost_trees) = (0, 0);
    let engine = HochsterEngine::new(Q);
    for c in &family {
        let brute = every_subclutter_has_free_face(c, false);
        ensure(c.is_forest() == brute, || format!("{c}: peeling {} vs brute force {brute}", c.is_forest()))?;
        forests += usize::from(brute);
        let linear = engine.has_linear_resolution(c).map_err(err)?;
        let brute_almost = !linear && every_subclutter_has_free_face(c, true);
        let fast = is_almost_tree(c, Q).map_err(err)?;
        ensure(fast == brute_almost, || format!("{c}: almost tree {fast} vs brute force {brute_almost}"))?;
        almost_trees += usize::from(brute_almost);
    }
    ensure(forests > 0 && forests < family.len() && almost_trees > 0, || {
        format!("degenerate family: {forests} forests, {almost_trees} almost trees")
    })
}

fn torus_and_projective_plane() -> Check {
    let (torus, rp2) = (torus_seven().map_err(err)?, rp2_six().map_err(err)?);
    let spec = GlueSpec { mode: DecompositionKind::CliqueIntersection, identify: vec![(1, 1), (2, 2), (4, 4)] };
    let union = glue(&torus, &rp2, &spec).map_err(err)?;
    ensure(union.n() == 10 && union.len() == 23, || format!("unexpected union {union}"))?;
    for f in [Q, GF2, GF3] {
        let t = betti_hochster(&union, f).map_err(err)?;
        ensure(t.regularity() == 4, || format!("reg over {f} is {}", t.regularity()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let checks: [Criterion; 12] = [
        ("worked example Betti table over Q, reg 4, projdim 4", worked_example),
        ("worked example: beta_2,6 is 0 and 0 on the parts, 4 on the union", worked_example_strictness),
        ("regularity of glued unions is the max of the parts (50 instances, Q and GF(2))", union_regularity),
        ("cycle Betti formula equals Hochster for n = 4..8 over Q and GF(2)", cycle_formulas),
        ("projective plane: linear over Q, minimal over GF(2) with reg 4 and the closed form", projective_plane),
        ("octahedron and torus are minimal over Q and GF(2) and match the closed form", oriented_pseudo_manifolds),
        ("minimal clutters have one-dimensional top homology vanishing on proper pieces", minimal_top_homology),
        ("shape bounds and Cohen-Macaulay criterion on 100 random clutters", shape_bounds),
        ("all graphs on at most 7 vertices: chordal iff linear over Q and GF(2)", chordal_graphs),
        ("100 generalized chordal clutters are linear over Q, GF(2), GF(3)", generalized_chordal_linearity),
        ("peeling and almost-tree tests agree with brute force", peeling_equivalence),
        ("torus glued to the projective plane along a triangle has reg 4 over Q, GF(2), GF(3)", torus_and_projective_plane),
    ];
    let mut failed = 0;
    for (idx, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {} {name} ({secs:.1}s)", idx + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name} ({secs:.1}s): {why}", idx + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
