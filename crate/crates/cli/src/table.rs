//! Table emission, and the inverse parse of the text grid.

use flataffine::algebra::json::AlgebraDoc;
use flataffine::algebra::{render_table, SCAlgebra};
use flataffine::linalg::{self, Vector};
use flataffine::symcore::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
}

/// Renders a multiplication table, rows = left factor.
pub fn emit_table(alg: &SCAlgebra, format: TableFormat) -> String {
    match format {
        TableFormat::Text => render_table(alg),
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(&AlgebraDoc::from_algebra(alg)).expect("algebra docs serialize");
            s.push('\n');
            s
        }
    }
}

fn cells(line: &str) -> Vec<String> {
    line.split(" | ").map(|c| c.trim().to_string()).collect()
}

/// Parses `2e1 - 2C5`, `(1/2)e1`, `-e2` or `0` against the given names.
pub fn parse_element(s: &str, names: &[String]) -> Result<Vector, String> {
    let mut v = linalg::zero_vector(names.len());
    let s = s.trim();
    if s == "0" {
        return Ok(v);
    }
    let (mut rest, mut neg) = match s.strip_prefix('-') {
        Some(r) => (r, true),
        None => (s, false),
    };
    loop {
        let (term, tail, next_neg) = match (rest.find(" + "), rest.find(" - ")) {
            (None, None) => (rest, "", false),
            (p, m) => {
                let p = p.unwrap_or(usize::MAX);
                let m = m.unwrap_or(usize::MAX);
                let at = p.min(m);
                (&rest[..at], &rest[at + 3..], m < p)
            }
        };
        let (coeff, name) = split_term(term, names)?;
        let k = names.iter().position(|n| n == name).ok_or_else(|| format!("unknown basis element `{name}`"))?;
        v[k] += if neg { -coeff } else { coeff };
        if tail.is_empty() {
            return Ok(v);
        }
        rest = tail;
        neg = next_neg;
    }
}

fn split_term<'a>(term: &'a str, names: &[String]) -> Result<(Rational, &'a str), String> {
    if names.iter().any(|n| n == term) {
        return Ok((Rational::from_integer(1.into()), term));
    }
    if let Some(inner) = term.strip_prefix('(') {
        let close = inner.find(')').ok_or_else(|| format!("unbalanced parenthesis in `{term}`"))?;
        let q = parse_rational(&inner[..close]).map_err(|e| e.to_string())?;
        return Ok((q, &inner[close + 1..]));
    }
    let digits = term.chars().take_while(char::is_ascii_digit).count();
    if digits == 0 {
        return Err(format!("cannot read term `{term}`"));
    }
    let q = parse_rational(&term[..digits]).map_err(|e| e.to_string())?;
    Ok((q, &term[digits..]))
}

/// Reads back a grid produced by [`emit_table`] in text form.
pub fn parse_text_table(text: &str) -> Result<SCAlgebra, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty table")?;
    let names: Vec<String> = cells(header).into_iter().skip(1).collect();
    let n = names.len();
    lines.next().ok_or("missing rule line")?;
    let mut constants = Vec::with_capacity(n * n * n);
    for i in 0..n {
        let row = cells(lines.next().ok_or_else(|| format!("missing row {}", i + 1))?);
        if row.len() != n + 1 || row[0] != names[i] {
            return Err(format!("malformed row {}", i + 1));
        }
        for cell in &row[1..] {
            constants.extend(parse_element(cell, &names)?);
        }
    }
    SCAlgebra::new(names, constants).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use flataffine::symcore::{rat, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn elements_parse() {
        let n = names(&["e1-", "C5"]);
        assert_eq!(parse_element("2e1- - 2C5", &n).unwrap(), vec![rat(2), rat(-2)]);
        assert_eq!(parse_element("-e1- + (3/4)C5", &n).unwrap(), vec![rat(-1), ratio(3, 4)]);
        assert_eq!(parse_element("0", &n).unwrap(), vec![rat(0), rat(0)]);
        assert!(parse_element("2q", &n).is_err());
    }

    #[test]
    fn zero_algebra_is_a_grid_of_zeros() {
        let a = SCAlgebra::zero(names(&["a", "b"])).unwrap();
        assert_eq!(emit_table(&a, TableFormat::Text), "  | a | b\n--+---+--\na | 0 | 0\nb | 0 | 0\n");
        assert_eq!(parse_text_table(&emit_table(&a, TableFormat::Text)).unwrap(), a);
    }

    #[test]
    fn idempotent_line() {
        let a = SCAlgebra::new(names(&["e"]), vec![rat(1)]).unwrap();
        let text = emit_table(&a, TableFormat::Text);
        assert_eq!(text, "  | e\n--+--\ne | e\n");
        assert_eq!(parse_text_table(&text).unwrap(), a);
        let doc: AlgebraDoc = serde_json::from_str(&emit_table(&a, TableFormat::Json)).unwrap();
        assert_eq!(doc.to_algebra().unwrap(), a);
    }
}
