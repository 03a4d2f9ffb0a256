//! Standard fields on the matrix chart of `GL_n`.
//!
//! Variables are `xab` for row `a` and column `b`, 1-based, in row-major
//! order. The chart is only offered for `n ≤ 9` so names stay unambiguous.

use super::VectorField;
use crate::symcore::{Chart, RationalFunction};

pub fn gl_chart(n: usize) -> Chart {
    assert!((1..=9).contains(&n), "matrix chart needs 1 <= n <= 9");
    let vars: Vec<String> = (1..=n).flat_map(|a| (1..=n).map(move |b| format!("x{a}{b}"))).collect();
    Chart::new(&format!("gl{n}"), vars).expect("valid names")
}

fn idx(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

fn field(chart: &Chart, terms: impl IntoIterator<Item = (usize, usize)>) -> VectorField {
    let mut coeffs = vec![RationalFunction::zero(chart); chart.dim()];
    for (var, slot) in terms {
        coeffs[slot] = &coeffs[slot] + &RationalFunction::var(chart, var);
    }
    VectorField::new(chart, coeffs).expect("same chart")
}

/// `E⁺ᵣₛ = Σᵢ xᵢᵣ ∂/∂xᵢₛ`, left-invariant, in order `(r, s)` row-major.
/// Returned with names `Lrs`.
pub fn left_invariant_fields(chart: &Chart, n: usize) -> Vec<(String, VectorField)> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in 0..n {
            let f = field(chart, (0..n).map(|i| (idx(n, i, r), idx(n, i, s))));
            out.push((format!("L{}{}", r + 1, s + 1), f));
        }
    }
    out
}

/// `E⁻ᵣₛ = Σᵢ xₛᵢ ∂/∂xᵣᵢ`, right-invariant, names `Rrs`.
pub fn right_invariant_fields(chart: &Chart, n: usize) -> Vec<(String, VectorField)> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in 0..n {
            let f = field(chart, (0..n).map(|i| (idx(n, s, i), idx(n, r, i))));
            out.push((format!("R{}{}", r + 1, s + 1), f));
        }
    }
    out
}

/// All `x_ab ∂/∂x_cd`, names `Xab_cd`, with `(a, b)` outer.
pub fn linear_fields(chart: &Chart, n: usize) -> Vec<(String, VectorField)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let f = field(chart, [(idx(n, a, b), idx(n, c, d))]);
                    out.push((format!("X{}{}_{}{}", a + 1, b + 1, c + 1, d + 1), f));
                }
            }
        }
    }
    out
}
