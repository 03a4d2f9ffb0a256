//! Plain-text multiplication tables, rows = left factor.

use num_traits::{One, Signed, Zero};

use super::SCAlgebra;
use crate::symcore::Rational;

/// `2e1 - 2C5`, `(1/2)e1`, `-e2`, `0`.
pub fn format_element(v: &[Rational], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
        } else if mag.is_integer() {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("({mag})"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Aligned grid with the basis as header row and column.
pub fn render_table(a: &SCAlgebra) -> String {
    let n = a.dim();
    let names = a.basis_names();
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(n + 1);
    let mut header = vec![String::new()];
    header.extend(names.iter().cloned());
    cells.push(header);
    for i in 0..n {
        let mut row = vec![names[i].clone()];
        row.extend((0..n).map(|j| format_element(&a.product(i, j), names)));
        cells.push(row);
    }
    let widths: Vec<usize> = (0..=n).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (r, row) in cells.iter().enumerate() {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}", w = *w)).collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
        if r == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&rule.join("-+-"));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::{aff_lsa, names, v};
    use super::*;
    use crate::symcore::ratio;

    #[test]
    fn element_formatting() {
        let n = names(&["e1", "C5"]);
        assert_eq!(format_element(&v(&[2, -2]), &n), "2e1 - 2C5");
        assert_eq!(format_element(&v(&[0, 0]), &n), "0");
        assert_eq!(format_element(&v(&[-1, 1]), &n), "-e1 + C5");
        assert_eq!(format_element(&[ratio(1, 2), ratio(-3, 4)], &n), "(1/2)e1 - (3/4)C5");
    }

    #[test]
    fn grid_layout() {
        let t = render_table(&aff_lsa());
        assert_eq!(t, "   | e1  | e2\n---+-----+---\ne1 | 2e1 | e2\ne2 | 0   | e1\n");
        let zero = SCAlgebra::zero(names(&["a", "b"])).unwrap();
        assert!(render_table(&zero).ends_with("a | 0 | 0\nb | 0 | 0\n"));
        let idem = SCAlgebra::from_products(names(&["e"]), [(0, 0, v(&[1]))]).unwrap();
        assert_eq!(render_table(&idem), "  | e\n--+--\ne | e\n");
    }
}
