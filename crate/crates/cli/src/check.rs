//! Cross-validation ledger: each check recomputes a quantity two ways, or
//! tests a known identity, and reports PASS, FAIL or SKIP.

use hochster_core::classify::{
    decompose_with_cap, is_minimal_to_linearity_with, is_obstruction_exhaustive_with,
    orientable_by_sign_propagation,
};
use hochster_core::{
    cycle_betti, homology_difference_identity, is_cohen_macaulay, is_orientable,
    is_pseudo_manifold, minimal_resolution_formula, verify_shape_bounds, BettiTable, Clutter,
    Error, HochsterEngine, SimplicialComplex,
};
use serde_json::{json, Value};

/// Largest circuit count for which peeling is compared against brute force.
const PEELING_BRUTE_FORCE_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

pub struct Entry {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

pub struct Ledger {
    pub entries: Vec<Entry>,
}

impl Ledger {
    fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{} {}: {}\n", e.status.label(), e.name, e.detail));
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        ));
        out
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({"name": e.name, "status": e.status.label(), "detail": e.detail}))
            .collect();
        json!({
            "checks": checks,
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "skipped": self.count(Status::Skip),
        })
    }
}

type Outcome = Result<(Status, String), Error>;

type CheckFn<'a> = &'a dyn Fn(&Context) -> Outcome;

fn verdict(ok: bool, detail: String) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail))
}

fn skip(detail: impl Into<String>) -> Outcome {
    Ok((Status::Skip, detail.into()))
}

fn tables_equal(a: &BettiTable, b: &BettiTable) -> bool {
    a.entries() == b.entries()
}

struct Context<'a> {
    c: &'a Clutter,
    engine: &'a HochsterEngine,
    delta: SimplicialComplex,
    top_dim: bool,
    table: Result<BettiTable, Error>,
}

impl Context<'_> {
    fn table(&self) -> Result<&BettiTable, Error> {
        self.table.as_ref().map_err(Clone::clone)
    }
}

pub fn run(c: &Clutter, engine: &HochsterEngine, separator_cap: Option<u32>) -> Ledger {
    let delta = SimplicialComplex::clique_complex(c);
    let top_dim = delta.dim() == c.d() as i32 - 1;
    let ctx = Context {
        c,
        engine,
        top_dim,
        table: engine.betti_table(c),
        delta,
    };
    let checks: [(&'static str, CheckFn); 13] = [
        ("betti-table", &|x| {
            x.table().map(|t| {
                (
                    Status::Pass,
                    format!("reg={} pdim={}", t.regularity(), t.projdim()),
                )
            })
        }),
        ("low-homology-vanishes", &low_homology),
        ("euler-poincare", &euler_poincare),
        ("top-degree-column", &top_degree_column),
        ("shape-bounds", &shape_bounds),
        ("linearity-paths-agree", &linearity_paths),
        ("cohen-macaulay-projdim", &cohen_macaulay),
        ("homology-difference", &homology_difference),
        ("minimal-resolution-formula", &minimal_formula),
        ("cycle-formula", &cycle_formula),
        ("peeling-core", &peeling),
        ("orientation-methods-agree", &orientation),
        ("decomposition-regularity", &|x| {
            decomposition(x, separator_cap)
        }),
    ];
    let entries = checks
        .iter()
        .map(|(name, f)| {
            let (status, detail) = match f(&ctx) {
                Ok(r) => r,
                Err(Error::ZeroIdeal) => (Status::Skip, Error::ZeroIdeal.to_string()),
                Err(e @ Error::CapacityExceeded(_)) => (Status::Skip, e.to_string()),
                Err(e) => (Status::Fail, e.to_string()),
            };
            Entry {
                name,
                status,
                detail,
            }
        })
        .collect();
    Ledger { entries }
}

fn low_homology(x: &Context) -> Outcome {
    let d = x.c.d() as i32;
    if d < 3 {
        return skip("no degrees below d-2");
    }
    let dims = x.delta.reduced_homology_dims(x.engine.field(), -1, d - 3);
    verdict(
        dims.iter().all(|&h| h == 0),
        format!("dims below {}: {dims:?}", d - 2),
    )
}

fn euler_poincare(x: &Context) -> Outcome {
    let f = x.delta.f_vector().0;
    let chi: i64 = (-1..)
        .zip(&f)
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum();
    let dims = x
        .delta
        .reduced_homology_dims(x.engine.field(), -1, x.delta.dim().max(-1));
    let alt: i64 = (-1..)
        .zip(&dims)
        .map(|(k, &h)| if k % 2 == 0 { h as i64 } else { -(h as i64) })
        .sum();
    verdict(
        chi == alt,
        format!("reduced euler characteristic {chi}, alternating homology sum {alt}"),
    )
}

fn top_degree_column(x: &Context) -> Outcome {
    let t = x.table()?;
    let n = x.c.n() as usize;
    let field = x.engine.field();
    let mismatch = (0..n.saturating_sub(1)).find(|&i| {
        let k = n as i32 - i as i32 - 2;
        t.get(i, n) as usize != x.delta.reduced_homology(field, k)
    });
    match mismatch {
        None => verdict(
            true,
            format!("beta_(i,{n}) matches the homology of the whole complex"),
        ),
        Some(i) => verdict(
            false,
            format!("beta_({i},{n}) = {} disagrees with homology", t.get(i, n)),
        ),
    }
}

fn shape_bounds(x: &Context) -> Outcome {
    if !x.top_dim {
        return skip("clique complex dimension exceeds d-1");
    }
    let r = verify_shape_bounds(x.c, x.engine.field())?;
    verdict(
        r.holds(),
        format!("reg={} pdim={} band={}", r.reg, r.projdim, r.band_ok),
    )
}

fn linearity_paths(x: &Context) -> Outcome {
    let fast = x.engine.has_linear_resolution(x.c)?;
    let scan = x.engine.has_linear_resolution_by_scan(x.c)?;
    let from_table = match &x.table {
        Ok(t) => t.is_linear(),
        Err(Error::ZeroIdeal) => true,
        Err(e) => return Err(e.clone()),
    };
    verdict(
        fast == scan && scan == from_table,
        format!("direct={fast} scan={scan} table={from_table}"),
    )
}

fn cohen_macaulay(x: &Context) -> Outcome {
    if !x.top_dim {
        return skip("clique complex dimension exceeds d-1");
    }
    let t = x.table()?;
    let cm = is_cohen_macaulay(x.c, x.engine.field())?;
    let expected = (x.c.n() - x.c.d() - 1) as usize;
    verdict(
        cm == (t.projdim() == expected),
        format!("cohen-macaulay={cm} pdim={} n-d-1={expected}", t.projdim()),
    )
}

fn homology_difference(x: &Context) -> Outcome {
    if !x.top_dim {
        return skip("clique complex dimension exceeds d-1");
    }
    let d = x.c.d() as i32;
    let predicted = homology_difference_identity(x.c.n(), x.c.d(), x.c.len() as u64)?;
    let field = x.engine.field();
    let actual = x.delta.reduced_homology(field, d - 2) as i64
        - x.delta.reduced_homology(field, d - 1) as i64;
    verdict(
        predicted == actual,
        format!("formula {predicted}, computed {actual}"),
    )
}

fn minimal_formula(x: &Context) -> Outcome {
    if x.table()?.is_linear() {
        return skip("resolution is linear");
    }
    if !is_minimal_to_linearity_with(x.c, x.engine)? {
        return skip("not minimal to linearity");
    }
    let t = x.table()?;
    let f = minimal_resolution_formula(x.c.n(), x.c.d(), t.mu())?;
    verdict(tables_equal(t, &f), format!("formula {:?}", f.entries()))
}

fn is_cycle_graph(c: &Clutter) -> bool {
    let n = c.n();
    if c.d() != 2 || n < 4 || c.len() != n as usize || !c.connected() {
        return false;
    }
    (0..n).all(|v| c.circuits().iter().filter(|&&e| e >> v & 1 == 1).count() == 2)
}

fn cycle_formula(x: &Context) -> Outcome {
    if !is_cycle_graph(x.c) {
        return skip("not a cycle of length at least 4");
    }
    let t = x.table()?;
    let f = cycle_betti(x.c.n())?;
    verdict(tables_equal(t, &f), format!("formula {:?}", f.entries()))
}

/// Largest set of circuits in which every submaximal circuit lies in at
/// least two members, by trying every subset.
fn brute_force_core(c: &Clutter) -> Vec<u64> {
    let circuits = c.circuits();
    let mut best: Vec<u64> = Vec::new();
    for s in 0u64..1 << circuits.len() {
        if (s.count_ones() as usize) <= best.len() {
            continue;
        }
        let sub = c.select(s);
        if !sub.has_free_submaximal() {
            best = sub.circuits().to_vec();
        }
    }
    best
}

fn peeling(x: &Context) -> Outcome {
    if x.c.len() > PEELING_BRUTE_FORCE_MAX {
        return skip(format!("more than {PEELING_BRUTE_FORCE_MAX} circuits"));
    }
    let peeled = x.c.peel_core();
    let brute = brute_force_core(x.c);
    verdict(
        peeled.circuits() == brute.as_slice(),
        format!(
            "core has {} circuits, brute force {}",
            peeled.len(),
            brute.len()
        ),
    )
}

fn orientation(x: &Context) -> Outcome {
    if !is_pseudo_manifold(x.c) {
        return skip("not a pseudo-manifold");
    }
    let by_homology = is_orientable(x.c)?;
    let by_signs = orientable_by_sign_propagation(x.c)?;
    let mut detail = format!("homology={by_homology} signs={by_signs}");
    let mut ok = by_homology == by_signs;
    if x.top_dim {
        match is_obstruction_exhaustive_with(x.c, x.engine) {
            Ok(exhaustive) => {
                let shortcut = by_homology || x.engine.field().characteristic() == 2;
                ok &= shortcut == exhaustive;
                detail.push_str(&format!(
                    " obstruction shortcut={shortcut} exhaustive={exhaustive}"
                ));
            }
            Err(Error::CapacityExceeded(_)) => detail.push_str(" obstruction exhaustion skipped"),
            Err(e) => return Err(e),
        }
    }
    verdict(ok, detail)
}

fn regularity_on_support(c: &Clutter, engine: &HochsterEngine) -> Result<Option<usize>, Error> {
    match engine.betti_table(&c.induced(c.support()).clutter) {
        Ok(t) => Ok(Some(t.regularity())),
        Err(Error::ZeroIdeal) => Ok(None),
        Err(e) => Err(e),
    }
}

fn decomposition(x: &Context, separator_cap: Option<u32>) -> Outcome {
    let search = decompose_with_cap(x.c, separator_cap.unwrap_or(x.c.d() + 2));
    let Some(w) = search.witness else {
        return skip("no decomposition found");
    };
    if !w.is_valid_for(x.c) {
        return verdict(false, format!("{} witness is not valid", w.kind));
    }
    let whole = x.table()?.regularity();
    let d = x.c.d() as usize;
    let parts = [
        regularity_on_support(&w.first, x.engine)?,
        regularity_on_support(&w.second, x.engine)?,
    ];
    let max = parts.iter().flatten().copied().max().unwrap_or(d).max(d);
    verdict(
        whole == max,
        format!("{}: reg {whole}, parts {parts:?}", w.kind),
    )
}
