use std::fmt::Write as _;

use serde::Serialize;

use super::EnvelopeReport;
use crate::algebra::json::AlgebraDoc;
use crate::algebra::{format_element, render_table, IdentityReport};
use crate::symcore::format_rational;

/// One named verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, holds: bool, detail: Option<String>) -> Self {
        Check { name: name.to_string(), holds, detail }
    }

    pub fn pass(name: &str) -> Self {
        Self::new(name, true, None)
    }

    /// Witness triples are shown 1-based.
    pub fn from_identity(name: &str, r: &IdentityReport) -> Self {
        let detail = r.witness.map(|(i, j, k)| format!("triple ({}, {}, {})", i + 1, j + 1, k + 1));
        Self::new(name, r.holds, detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDoc {
    pub name: String,
    /// Coordinates against the ambient basis.
    pub coordinates: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeDoc {
    pub dimension: usize,
    pub ambient: AlgebraDoc,
    pub dropped: Vec<String>,
    pub generators: Vec<GeneratorDoc>,
    /// Closure basis rows in ambient coordinates.
    pub closure: Vec<Vec<String>>,
    pub envelope: AlgebraDoc,
    pub commutator: AlgebraDoc,
    /// The envelope carries the opposite of the field product.
    pub opposite_convention: bool,
    pub checks: Vec<Check>,
}

fn strings(v: &[crate::symcore::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl EnvelopeReport {
    pub fn to_doc(&self) -> EnvelopeDoc {
        EnvelopeDoc {
            dimension: self.dim(),
            ambient: AlgebraDoc::from_algebra(&self.ambient),
            dropped: self.dropped.clone(),
            generators: self
                .generator_names
                .iter()
                .zip(&self.generators)
                .map(|(n, v)| GeneratorDoc { name: n.clone(), coordinates: strings(v) })
                .collect(),
            closure: self.closure.basis().iter().map(|r| strings(r)).collect(),
            envelope: AlgebraDoc::from_algebra(&self.envelope),
            commutator: AlgebraDoc::from_algebra(self.commutator.as_sc()),
            opposite_convention: true,
            checks: self.checks.clone(),
        }
    }

    pub fn render_text(&self) -> String {
        let names = self.ambient.basis_names();
        let mut out = String::new();
        let _ = writeln!(out, "ambient dimension: {}", self.ambient.dim());
        if !self.dropped.is_empty() {
            let _ = writeln!(out, "dropped (dependent): {}", self.dropped.join(", "));
        }
        for (n, v) in self.generator_names.iter().zip(&self.generators) {
            let _ = writeln!(out, "generator {n} = {}", format_element(v, names));
        }
        let _ = writeln!(out, "envelope dimension: {}", self.dim());
        for (name, row) in self.envelope.basis_names().iter().zip(self.closure.basis()) {
            let _ = writeln!(out, "  {name} = {}", format_element(row, names));
        }
        out.push_str("ambient product (rows = left factor):\n");
        out.push_str(&render_table(&self.ambient));
        out.push_str("envelope product, opposite of the generated subalgebra (rows = left factor):\n");
        out.push_str(&render_table(&self.envelope));
        out.push_str("checks:\n");
        for c in &self.checks {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(out, "  {mark} {} ({d})", c.name);
                }
                None => {
                    let _ = writeln!(out, "  {mark} {}", c.name);
                }
            }
        }
        out
    }
}
