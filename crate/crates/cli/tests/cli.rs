use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hochster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochster")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hochster"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Writes generator output to a scratch file and returns its path.
fn fixture(name: &str, generate_args: &[&str]) -> PathBuf {
    let out = hochster(&[&["generate"], generate_args].concat());
    assert!(out.status.success(), "generate {generate_args:?}: {}", stderr(&out));
    let dir = std::env::temp_dir().join(format!("hochster-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, out.stdout).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn betti_of_seven_vertex_example_has_reg_four() {
    let f = fixture("e49", &["example-4-9"]);
    let out = hochster(&["betti", "--field", "q", path_str(&f)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(
        text,
        "i: 0 1 2 3 4\n3: 24 61 62 30 6\n4: . 2 4 2 .\nreg=4 pdim=4 indeg=3 field=q\n"
    );
}

#[test]
fn projective_plane_in_characteristic_two_is_minimal() {
    let f = fixture("rp2", &["rp2"]);
    let out = hochster(&["classify", "--field", "2", path_str(&f)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in ["pseudo_manifold: yes", "orientable: no", "minimal_to_linearity: yes"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
    let out = hochster(&["classify", "--field", "3", "--format", "json", path_str(&f)]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["minimal_to_linearity"], Value::Bool(false));
    assert_eq!(v["has_linear_resolution"], Value::Bool(true));
}

#[test]
fn complete_clutter_is_a_domain_error() {
    let mut input = String::from("n=5 d=3\n");
    for a in 1..=5 {
        for b in a + 1..=5 {
            for c in b + 1..=5 {
                input.push_str(&format!("{a} {b} {c}\n"));
            }
        }
    }
    let out = with_stdin(&["betti", "-"], &input);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("zero ideal (complement is empty)"));
    assert!(stdout(&out).is_empty());
    // Linearity is still defined for the zero ideal.
    let out = with_stdin(&["linearity", "-"], &input);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "linear: yes\nfield: q\n");
}

#[test]
fn parse_errors_exit_two_and_name_the_line() {
    let out = with_stdin(&["betti", "-"], "n=4 d=2\n1 2\n2 7\n");
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.starts_with("error: line 3:"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let out = with_stdin(&["reg", "-"], "n=4 d=2\n1 2 3\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn composite_field_is_rejected() {
    let f = fixture("c5-field", &["cycle", "5"]);
    let out = hochster(&["betti", "--field", "6", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("6"));
}

#[test]
fn missing_file_is_a_domain_error() {
    let out = hochster(&["betti", "/nonexistent/clutter.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: "));
}

#[test]
fn generated_fixtures_round_trip_through_every_reader() {
    let families: [&[&str]; 7] = [
        &["cycle", "6"],
        &["cross-polytope", "3"],
        &["example-4-9"],
        &["example-6-6"],
        &["rp2"],
        &["torus"],
        &["generalized-chordal", "--seed", "11", "--d", "3", "--max-n", "9"],
    ];
    for (k, fam) in families.iter().enumerate() {
        let text = fixture(&format!("rt{k}"), fam);
        let json = std::env::temp_dir().join(format!("hochster-cli-rt-{}-{k}.json", std::process::id()));
        let out = hochster(&[&["generate", "--format", "json"], *fam].concat());
        std::fs::write(&json, &out.stdout).unwrap();
        // Both encodings describe the same clutter, so every command agrees on them.
        for cmd in ["reg", "homology", "decompose", "linearity"] {
            let a = hochster(&[cmd, path_str(&text)]);
            let b = hochster(&[cmd, json.to_str().unwrap()]);
            assert!(a.status.success(), "{cmd} {fam:?}: {}", stderr(&a));
            assert_eq!(stdout(&a), stdout(&b), "{cmd} on {fam:?}");
        }
        // Text and JSON output carry the same header and circuit count.
        let lines: Vec<String> =
            std::fs::read_to_string(&text).unwrap().lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let circuits = v["circuits"].as_array().unwrap();
        assert_eq!(lines.len(), circuits.len() + 1, "{fam:?}");
        assert_eq!(lines[0], format!("n={} d={}", v["n"], v["d"]));
    }
}

#[test]
fn generator_is_reproducible_from_seed() {
    let args = ["generate", "generalized-chordal", "--seed", "42"];
    assert_eq!(hochster(&args).stdout, hochster(&args).stdout);
    let other = hochster(&["generate", "generalized-chordal", "--seed", "43"]);
    assert!(other.status.success());
}

fn text_numbers(text: &str) -> Vec<(usize, usize, u64)> {
    let mut lines = text.lines();
    let header: Vec<usize> = lines.next().unwrap()[2..].split_whitespace().map(|s| s.parse().unwrap()).collect();
    let mut out = Vec::new();
    for line in lines {
        let Some((t, cells)) = line.split_once(": ") else { continue };
        let Ok(t) = t.parse::<usize>() else { continue };
        for (&i, cell) in header.iter().zip(cells.split_whitespace()) {
            if cell != "." {
                out.push((i, i + t, cell.parse().unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn footer_value(text: &str, key: &str) -> String {
    let footer = text.lines().last().unwrap();
    footer.split_whitespace().find_map(|kv| kv.strip_prefix(&format!("{key}="))).unwrap().to_string()
}

#[test]
fn text_and_json_tables_agree() {
    for (name, fam, field) in [
        ("tj-e49", vec!["example-4-9"], "q"),
        ("tj-rp2", vec!["rp2"], "2"),
        ("tj-e66", vec!["example-6-6"], "3"),
        ("tj-gc", vec!["generalized-chordal", "--seed", "5"], "q"),
    ] {
        let f = fixture(name, &fam);
        let text = stdout(&hochster(&["betti", "--field", field, path_str(&f)]));
        let json: Value =
            serde_json::from_slice(&hochster(&["betti", "--field", field, "--format", "json", path_str(&f)]).stdout)
                .unwrap();
        let mut from_json: Vec<(usize, usize, u64)> = json["betti"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| {
                let (i, j) = k.split_once(',').unwrap();
                (i.parse().unwrap(), j.parse().unwrap(), v.as_u64().unwrap())
            })
            .collect();
        from_json.sort();
        assert_eq!(text_numbers(&text), from_json, "{name}");
        for key in ["reg", "pdim", "indeg"] {
            assert_eq!(footer_value(&text, key), json[key].to_string(), "{name} {key}");
        }
        assert_eq!(footer_value(&text, "field"), field);
    }
}

#[test]
fn homology_json_lists_dimensions_by_degree() {
    let f = fixture("hom-rp2", &["rp2"]);
    let v: Value = serde_json::from_slice(&hochster(&["homology", "--field", "2", "--format", "json", path_str(&f)]).stdout)
        .unwrap();
    assert_eq!(v["field"], "2");
    assert_eq!(v["dims"]["1"], 1);
    assert_eq!(v["dims"]["2"], 1);
    assert_eq!(v["dims"]["-1"], 0);
    assert_eq!(v["f_vector"], serde_json::json!([1, 6, 15, 10]));
}

#[test]
fn resolution_formula_matches_betti_on_minimal_input() {
    let f = fixture("rf-oct", &["cross-polytope", "3"]);
    let formula = hochster(&["resolution-formula", path_str(&f)]);
    let betti = hochster(&["betti", path_str(&f)]);
    assert!(formula.status.success());
    assert_eq!(stdout(&formula), stdout(&betti));

    let cycle = stdout(&hochster(&["resolution-formula", "--cycle", "5"]));
    assert_eq!(cycle, "i: 0 1 2\n2: 5 5 .\n3: . . 1\nreg=3 pdim=2 indeg=2 field=q\n");

    let params = hochster(&["resolution-formula", "--params", "6,3,12"]);
    assert!(params.status.success(), "{}", stderr(&params));
    assert_eq!(stdout(&params), stdout(&betti));
}

#[test]
fn decompose_reports_the_separator() {
    let f = fixture("dec-e49", &["example-4-9"]);
    let text = stdout(&hochster(&["decompose", path_str(&f)]));
    assert!(text.contains("decomposable: yes"));
    assert!(text.contains("kind: clique-intersection"));
    assert!(text.contains("separator: {3,4,5}"));
}

#[test]
fn check_ledger_passes_on_fixtures() {
    for (name, fam, field) in [
        ("ck-c6", vec!["cycle", "6"], "q"),
        ("ck-e49", vec!["example-4-9"], "q"),
        ("ck-rp2", vec!["rp2"], "2"),
        ("ck-rp2q", vec!["rp2"], "q"),
        ("ck-torus", vec!["torus"], "3"),
        ("ck-gc", vec!["generalized-chordal", "--seed", "3"], "q"),
    ] {
        let f = fixture(name, &fam);
        let out = hochster(&["check", "--field", field, "--threads", "2", path_str(&f)]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(0), "{name}:\n{text}");
        assert!(!text.contains("FAIL"), "{name}:\n{text}");
        assert!(text.lines().last().unwrap().starts_with("summary: "));
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let f = fixture("threads-e66", &["example-6-6"]);
    let one = hochster(&["betti", "--threads", "1", path_str(&f)]);
    let four = hochster(&["betti", "--threads", "4", path_str(&f)]);
    assert_eq!(one.stdout, four.stdout);
}
