//! Line-oriented Greechie diagram files:
//!
//! ```text
//! atom <id>
//! block <id> <id> ...
//! prob <id> <decimal>
//! vec <id> <v1> ... <vn>
//! ```
//!
//! `#` starts a comment. Atoms may be declared anywhere in the file; the
//! other directives must name declared atoms. `vec` entries are spanning
//! representatives and are normalized on load.

use std::collections::BTreeSet;

use gleason_core::greechie::{GreechieDiagram, ProbabilityAssignment, VectorRealization};

use crate::matrix_format::{content_lines, parse_decimal};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct GreechieFile {
    pub diagram: GreechieDiagram,
    pub probabilities: Option<ProbabilityAssignment>,
    pub realization: Option<VectorRealization>,
}

pub fn parse_greechie(text: &str) -> Result<GreechieFile, CliError> {
    let perr = |ln: usize, msg: String| CliError::Parse(format!("line {ln}: {msg}"));

    let mut atoms: Vec<String> = Vec::new();
    let mut declared = BTreeSet::new();
    for (ln, line) in content_lines(text) {
        let mut t = line.split_whitespace();
        let keyword = t.next().unwrap_or("");
        if !matches!(keyword, "atom" | "block" | "prob" | "vec") {
            return Err(perr(ln, format!("unknown directive `{keyword}`")));
        }
        if keyword == "atom" {
            let id = t.next().ok_or_else(|| perr(ln, "`atom` needs an id".into()))?;
            if t.next().is_some() {
                return Err(perr(ln, "`atom` takes exactly one id".into()));
            }
            if !declared.insert(id.to_string()) {
                return Err(perr(ln, format!("atom `{id}` declared twice")));
            }
            atoms.push(id.to_string());
        }
    }

    let known = |ln: usize, id: &str| -> Result<String, CliError> {
        if declared.contains(id) {
            Ok(id.to_string())
        } else {
            Err(perr(ln, format!("unknown atom `{id}`")))
        }
    };

    let mut blocks: Vec<Vec<String>> = Vec::new();
    let mut probs: Option<ProbabilityAssignment> = None;
    let mut vectors: Vec<(String, Vec<f64>)> = Vec::new();
    let mut vec_dim: Option<usize> = None;
    for (ln, line) in content_lines(text) {
        let mut t = line.split_whitespace();
        match t.next() {
            Some("block") => {
                let ids = t.map(|id| known(ln, id)).collect::<Result<Vec<_>, _>>()?;
                if ids.len() < 2 {
                    return Err(perr(ln, "a block needs at least 2 atoms".into()));
                }
                blocks.push(ids);
            }
            Some("prob") => {
                let id = known(ln, t.next().ok_or_else(|| perr(ln, "`prob` needs an id".into()))?)?;
                let v = parse_decimal(
                    t.next().ok_or_else(|| perr(ln, "`prob` needs a value".into()))?,
                    ln,
                )?;
                if t.next().is_some() {
                    return Err(perr(ln, "`prob` takes an id and one value".into()));
                }
                if probs.get_or_insert_with(ProbabilityAssignment::new).set(id.clone(), v).is_some() {
                    return Err(perr(ln, format!("duplicate `prob` for atom `{id}`")));
                }
            }
            Some("vec") => {
                let id = known(ln, t.next().ok_or_else(|| perr(ln, "`vec` needs an id".into()))?)?;
                let v = t.map(|x| parse_decimal(x, ln)).collect::<Result<Vec<f64>, _>>()?;
                if v.is_empty() {
                    return Err(perr(ln, "`vec` needs components".into()));
                }
                if *vec_dim.get_or_insert(v.len()) != v.len() {
                    return Err(perr(ln, "all `vec` lines must share one dimension".into()));
                }
                if vectors.iter().any(|(k, _)| *k == id) {
                    return Err(perr(ln, format!("duplicate `vec` for atom `{id}`")));
                }
                if v.iter().all(|x| *x == 0.0) {
                    return Err(perr(ln, "zero vector does not span a ray".into()));
                }
                vectors.push((id, v));
            }
            _ => {}
        }
    }

    let diagram =
        GreechieDiagram::new(atoms, blocks).map_err(|e| CliError::Parse(e.to_string()))?;
    let realization = match vec_dim {
        Some(dim) => Some(VectorRealization::from_spans(dim, vectors)?),
        None => None,
    };
    Ok(GreechieFile { diagram, probabilities: probs, realization })
}

/// Renders a diagram (and optional data) in the file format, numbers with
/// 17 significant digits.
pub fn write_greechie(file: &GreechieFile) -> String {
    let d = &file.diagram;
    let mut out = String::new();
    for a in d.atoms() {
        out.push_str(&format!("atom {a}\n"));
    }
    for b in 0..d.blocks().len() {
        out.push_str(&format!("block {}\n", d.block_names(b).join(" ")));
    }
    if let Some(p) = &file.probabilities {
        for a in d.atoms() {
            if let Some(v) = p.get(a) {
                out.push_str(&format!("prob {a} {v:.16e}\n"));
            }
        }
    }
    if let Some(r) = &file.realization {
        for a in d.atoms() {
            if let Some(v) = r.get(a) {
                let cells: Vec<String> = v.iter().map(|x| format!("{x:.16e}")).collect();
                out.push_str(&format!("vec {a} {}\n", cells.join(" ")));
            }
        }
    }
    out
}
