//! Clutter file formats.
//!
//! Text format:
//!
//! ```text
//! # comment lines start with '#'
//! n=<int> d=<int>
//! <v1> <v2> ... <vd>
//! ```
//!
//! one circuit per line, 1-based vertices in any order. A `#` anywhere on a
//! line starts a comment. The JSON alternative is an object with keys `n`,
//! `d` and `circuits` (array of arrays of vertices).

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::clutter::Clutter;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClutterJson {
    pub n: u32,
    pub d: u32,
    pub circuits: Vec<Vec<u32>>,
}

impl From<&Clutter> for ClutterJson {
    fn from(c: &Clutter) -> Self {
        ClutterJson { n: c.n(), d: c.d(), circuits: c.circuit_lists() }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses the canonical text format.
pub fn parse_text(input: &str) -> Result<Clutter> {
    let mut header: Option<(u32, u32)> = None;
    let mut masks: Vec<(usize, u64)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((n, d)) = header else {
            header = Some(parse_header(line, line_no)?);
            continue;
        };
        let mut vertices = Vec::with_capacity(d as usize);
        for tok in line.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("'{tok}' is not a vertex number")))?;
            if v == 0 || v > n {
                return Err(parse_err(line_no, format!("vertex {v} outside 1..={n}")));
            }
            vertices.push(v);
        }
        let mask = bits::mask_of(&vertices);
        if mask.count_ones() as usize != vertices.len() {
            return Err(parse_err(line_no, format!("circuit {line:?} repeats a vertex")));
        }
        if vertices.len() != d as usize {
            return Err(parse_err(
                line_no,
                format!("circuit {line:?} has {} vertices, expected d={d}", vertices.len()),
            ));
        }
        if let Some((first, _)) = masks.iter().find(|(_, m)| *m == mask) {
            return Err(parse_err(line_no, format!("circuit {line:?} duplicates line {first}")));
        }
        masks.push((line_no, mask));
    }
    let (n, d) = header.ok_or_else(|| parse_err(0, "missing 'n=<int> d=<int>' header"))?;
    Clutter::from_masks(n, d, masks.into_iter().map(|(_, m)| m)).map_err(|e| parse_err(0, e.to_string()))
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, u32)> {
    let mut n = None;
    let mut d = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected 'n=<int> d=<int>', found {line:?}")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("'{value}' is not an integer")))?;
        match key {
            "n" => n = Some(value),
            "d" => d = Some(value),
            other => return Err(parse_err(line_no, format!("unknown header key '{other}'"))),
        }
    }
    match (n, d) {
        (Some(n), Some(d)) => {
            if n > crate::clutter::MAX_VERTICES {
                return Err(parse_err(line_no, format!("n={n} exceeds the supported maximum of 63")));
            }
            if d == 0 {
                return Err(parse_err(line_no, "d must be at least 1"));
            }
            Ok((n, d))
        }
        _ => Err(parse_err(line_no, "header must define both n and d")),
    }
}

/// Parses the JSON format.
pub fn parse_json(input: &str) -> Result<Clutter> {
    let raw: ClutterJson = serde_json::from_str(input).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if raw.n > crate::clutter::MAX_VERTICES || raw.d == 0 {
        return Err(parse_err(0, format!("unsupported parameters n={} d={}", raw.n, raw.d)));
    }
    Clutter::from_circuits(raw.n, raw.d, &raw.circuits).map_err(|e| parse_err(0, e.to_string()))
}

/// Chooses JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_clutter(input: &str) -> Result<Clutter> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn to_text(c: &Clutter) -> String {
    let mut out = format!("n={} d={}\n", c.n(), c.d());
    for circuit in c.circuit_lists() {
        let line: Vec<String> = circuit.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(c: &Clutter) -> String {
    serde_json::to_string(&ClutterJson::from(c)).expect("plain data serializes")
}
