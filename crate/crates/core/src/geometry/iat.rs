use serde::Serialize;

use super::connection::{ensure_flat, nabla};
use super::{Connection, GeometryError, SpanSolver, VectorField};
use crate::linalg;
use crate::symcore::RationalFunction;

/// Outcome of the affine-transformation test for one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IatReport {
    pub holds: bool,
    /// First coordinate pair `(i, j)` with a nonzero residual, 0-based.
    pub witness: Option<(usize, usize)>,
    /// Residual at the witness pair, rendered.
    pub residual: Option<String>,
}

/// `∇_{∂ᵢ}∇_{∂ⱼ}X − ∇_{∇_{∂ᵢ}∂ⱼ}X` for every pair, row-major in `(i, j)`.
///
/// On a flat connection these vanish exactly when `X` preserves `∇`. No
/// flatness check is made here.
pub fn iat_residuals(conn: &Connection, x: &VectorField) -> Result<Vec<VectorField>, GeometryError> {
    x.ensure_chart(conn.chart())?;
    Ok(residuals(conn, x))
}

fn residuals(conn: &Connection, x: &VectorField) -> Vec<VectorField> {
    let n = conn.dim();
    let chart = conn.chart();
    let inner: Vec<VectorField> = (0..n).map(|j| nabla(conn, &VectorField::coordinate(chart, j), x)).collect();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let di = VectorField::coordinate(chart, i);
        for (j, nj) in inner.iter().enumerate() {
            let a = nabla(conn, &di, nj);
            let b = nabla(conn, &conn.nabla_coordinate(i, j), x);
            out.push(a.zip_with(&b, |p, q| p - q));
        }
    }
    out
}

pub(crate) fn iat_unchecked(conn: &Connection, x: &VectorField) -> IatReport {
    let n = conn.dim();
    match residuals(conn, x).iter().enumerate().find(|(_, r)| !r.is_zero()) {
        None => IatReport { holds: true, witness: None, residual: None },
        Some((f, r)) => IatReport { holds: false, witness: Some((f / n, f % n)), residual: Some(r.to_string()) },
    }
}

/// Errors with [`GeometryError::NotFlat`] unless `conn` is flat affine.
pub fn is_infinitesimal_affine(conn: &Connection, x: &VectorField) -> Result<IatReport, GeometryError> {
    x.ensure_chart(conn.chart())?;
    ensure_flat(conn)?;
    Ok(iat_unchecked(conn, x))
}

/// All affine-transformation fields of the form `Σₛ Σₜ aₛₜ termₜ ∂ₛ` with
/// rational constants `aₛₜ`, as a basis in reduced echelon order over the
/// unknowns `(s, t)`.
///
/// The terms must be linearly independent over ℚ.
pub fn solve_iat_ansatz(conn: &Connection, terms: &[RationalFunction]) -> Result<Vec<VectorField>, GeometryError> {
    let chart = conn.chart();
    for t in terms {
        chart.ensure_same(t.chart())?;
    }
    ensure_flat(conn)?;
    for k in 1..=terms.len() {
        let family: Vec<&[RationalFunction]> = terms[..k].iter().map(std::slice::from_ref).collect();
        if !SpanSolver::new(1, &family).is_independent() {
            return Err(GeometryError::DependentAnsatz(k - 1));
        }
    }
    let n = conn.dim();
    let mut unknowns = Vec::with_capacity(n * terms.len());
    for s in 0..n {
        for t in terms {
            let mut coeffs = vec![RationalFunction::zero(chart); n];
            coeffs[s] = t.clone();
            unknowns.push(VectorField::new(chart, coeffs)?);
        }
    }
    let flat: Vec<Vec<RationalFunction>> =
        unknowns.iter().map(|u| residuals(conn, u).into_iter().flat_map(|r| r.coeffs().to_vec()).collect()).collect();
    let family: Vec<&[RationalFunction]> = flat.iter().map(Vec::as_slice).collect();
    let mut rel = SpanSolver::new(n * n * n, &family).relations();
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    if !rel.is_empty() {
        linalg::rref(&mut rel);
    }
    Ok(rel.iter().map(|l| VectorField::linear_combination(chart, l, &unknowns)).collect())
}
