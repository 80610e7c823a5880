use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use hochster_core::classify::{decompose_with_cap, DecompositionWitness};
use hochster_core::format::{to_json, to_text};
use hochster_core::generators::{self, GeneratedChordal};
use hochster_core::{
    classify, cycle_betti, minimal_resolution_formula, parse_clutter, BettiTable, ChordalParams,
    ClassifyOptions, Clutter, FieldSpec, HochsterEngine, SimplicialComplex,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Family, FormulaSource, GenerateArgs, GlobalOpts, OutputFormat};
use crate::{check, Failure};

pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Clutter, Failure> {
    Ok(parse_clutter(&read_input(path)?)?)
}

fn engine(g: &GlobalOpts) -> HochsterEngine {
    HochsterEngine::new(g.field).with_subset_cap(g.subset_cap)
}

fn render(format: OutputFormat, text: String, value: Value) -> String {
    match format {
        OutputFormat::Text => text,
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_table(format: OutputFormat, table: &BettiTable) -> String {
    render(format, table.to_text(), table.to_json())
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    let format = g.format;
    match &cli.command {
        Command::Betti(a) => {
            let table = engine(g).betti_table(&load(&a.input)?)?;
            Ok(Outcome::ok(render_table(format, &table)))
        }
        Command::Reg(a) => {
            let reg = engine(g).betti_table(&load(&a.input)?)?.regularity();
            let field = g.field.tag();
            Ok(Outcome::ok(render(
                format,
                format!("reg: {reg}\nfield: {field}\n"),
                json!({"reg": reg, "field": field}),
            )))
        }
        Command::Linearity(a) => {
            let linear = engine(g).has_linear_resolution(&load(&a.input)?)?;
            let field = g.field.tag();
            let text = format!("linear: {}\nfield: {field}\n", yes_no(linear));
            Ok(Outcome::ok(render(
                format,
                text,
                json!({"linear": linear, "field": field}),
            )))
        }
        Command::Classify(a) => {
            let options = ClassifyOptions {
                separator_cap: g.separator_cap,
                subset_cap: g.subset_cap,
            };
            let report = classify(&load(&a.input)?, g.field, options)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok(Outcome::ok(render(format, report.to_text(), value)))
        }
        Command::Decompose(a) => Ok(Outcome::ok(decomposition(&load(&a.input)?, g))),
        Command::Homology(a) => Ok(Outcome::ok(homology(&load(&a.input)?, g.field, format))),
        Command::ResolutionFormula(a) => {
            let table = formula_table(&a.source)?.with_field(g.field);
            Ok(Outcome::ok(render_table(format, &table)))
        }
        Command::Generate(a) => Ok(Outcome::ok(generate(a, g)?)),
        Command::Check(a) => {
            let ledger = check::run(&load(&a.input)?, &engine(g), g.separator_cap);
            let code = if ledger.failed() > 0 { 1 } else { 0 };
            Ok(Outcome {
                output: render(format, ledger.to_text(), ledger.to_json()),
                code,
            })
        }
    }
}

fn decomposition(c: &Clutter, g: &GlobalOpts) -> String {
    let search = decompose_with_cap(c, g.separator_cap.unwrap_or(c.d() + 2));
    let witness = search.witness.as_ref().map(DecompositionWitness::from);
    let mut text = format!(
        "decomposable: {}\nsearch_complete: {}\n",
        yes_no(witness.is_some()),
        yes_no(search.complete)
    );
    if let Some(w) = &witness {
        let list = |cs: &[Vec<u32>]| {
            cs.iter()
                .map(|c| format!("{{{}}}", join(c, ",")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        text.push_str(&format!("kind: {}\n", w.kind));
        if let Some(s) = &w.separator {
            text.push_str(&format!("separator: {{{}}}\n", join(s, ",")));
        }
        text.push_str(&format!(
            "first: {}\nsecond: {}\n",
            list(&w.first),
            list(&w.second)
        ));
    }
    let value = json!({
        "decomposable": witness.is_some(),
        "search_complete": search.complete,
        "witness": witness,
    });
    render(g.format, text, value)
}

fn join(v: &[u32], sep: &str) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn homology(c: &Clutter, field: FieldSpec, format: OutputFormat) -> String {
    let delta = SimplicialComplex::clique_complex(c);
    let top = delta.dim().max(-1);
    let dims = delta.reduced_homology_dims(field, -1, top);
    let f = delta.f_vector().0;
    let mut text = format!(
        "field: {}\nf_vector: {}\n",
        field.tag(),
        f.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    );
    let mut map = BTreeMap::new();
    for (k, &h) in (-1..).zip(&dims) {
        text.push_str(&format!("dim H~_{k}: {h}\n"));
        map.insert(k, h);
    }
    // JSON object keys must be strings; keep them in numeric order.
    let dims_obj: serde_json::Map<String, Value> =
        map.iter().map(|(k, h)| (k.to_string(), json!(h))).collect();
    render(
        format,
        text,
        json!({"field": field.tag(), "dims": dims_obj, "f_vector": f}),
    )
}

fn formula_table(source: &FormulaSource) -> Result<BettiTable, Failure> {
    if let Some(n) = source.cycle {
        return Ok(cycle_betti(n)?);
    }
    if let Some((n, d, mu)) = source.params {
        return Ok(minimal_resolution_formula(n, d, mu)?);
    }
    let path = source
        .input
        .as_deref()
        .ok_or_else(|| Failure::domain("no input given"))?;
    let c = load(path)?;
    let mu = c.complement().len() as u64;
    Ok(minimal_resolution_formula(c.n(), c.d(), mu)?)
}

fn size_arg(a: &GenerateArgs, what: &str) -> Result<u32, Failure> {
    a.size
        .ok_or_else(|| Failure::domain(format!("{what} needs a size argument")))
}

fn generate(a: &GenerateArgs, g: &GlobalOpts) -> Result<String, Failure> {
    let mut comments = Vec::new();
    let c = match a.family {
        Family::Cycle => generators::cycle(size_arg(a, "cycle")?)?,
        Family::CrossPolytope => {
            generators::cross_polytope_boundary(size_arg(a, "cross-polytope")?)?
        }
        Family::Example49 => generators::example_4_9(),
        Family::Example66 => generators::example_6_6(),
        Family::Rp2 => generators::rp2_six()?,
        Family::Torus => generators::torus_seven()?,
        Family::GeneralizedChordal => {
            let params = ChordalParams {
                d: a.d,
                max_n: a.max_n,
                steps: a.steps,
                allow_fresh_vertex: !a.no_fresh_vertex,
            };
            let GeneratedChordal {
                seed,
                clutter,
                trace,
            } = generators::generalized_chordal(g.seed, params)?;
            comments.push(format!("seed {seed}"));
            comments.extend(trace.iter().map(ToString::to_string));
            clutter
        }
    };
    Ok(match g.format {
        OutputFormat::Text => {
            let mut out: String = comments.iter().map(|line| format!("# {line}\n")).collect();
            out.push_str(&to_text(&c));
            out
        }
        OutputFormat::Json => to_json(&c) + "\n",
    })
}
