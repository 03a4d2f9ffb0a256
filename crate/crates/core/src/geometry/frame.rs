use num_traits::Zero;

use super::connection::nabla;
use super::{Connection, GeometryError, VectorField};
use crate::algebra::SCAlgebra;
use crate::symcore::{Chart, RationalFunction};

type RfMatrix = Vec<Vec<RationalFunction>>;

/// `n` pointwise independent fields on an `n`-dimensional chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    chart: Chart,
    fields: Vec<VectorField>,
    // rows are ∂ᵢ in terms of the frame: ∂ᵢ = Σₐ inverse[i][a] eₐ
    inverse: RfMatrix,
}

impl Frame {
    pub fn new(chart: &Chart, fields: Vec<VectorField>) -> Result<Self, GeometryError> {
        if fields.len() != chart.dim() {
            return Err(GeometryError::FrameSize { fields: fields.len(), dim: chart.dim() });
        }
        for f in &fields {
            f.ensure_chart(chart)?;
        }
        let m: RfMatrix = fields.iter().map(|f| f.coeffs().to_vec()).collect();
        let inverse = invert(chart, m).ok_or(GeometryError::SingularFrame)?;
        Ok(Frame { chart: chart.clone(), fields, inverse })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    /// `Gᵢₐ` with `∂ᵢ = Σₐ Gᵢₐ eₐ`.
    pub fn inverse(&self) -> &[Vec<RationalFunction>] {
        &self.inverse
    }

    /// Frame components of `x`: functions `fₐ` with `x = Σₐ fₐ eₐ`.
    pub fn components(&self, x: &VectorField) -> Result<Vec<RationalFunction>, GeometryError> {
        x.ensure_chart(&self.chart)?;
        let n = self.chart.dim();
        Ok((0..n)
            .map(|a| {
                let mut acc = RationalFunction::zero(&self.chart);
                for i in 0..n {
                    if !x.coeff(i).is_zero() && !self.inverse[i][a].is_zero() {
                        acc = &acc + &(x.coeff(i) * &self.inverse[i][a]);
                    }
                }
                acc
            })
            .collect())
    }

    /// `Σₐ fₐ eₐ`.
    pub fn combine(&self, f: &[RationalFunction]) -> VectorField {
        let mut acc = VectorField::zero(&self.chart);
        for (fa, ea) in f.iter().zip(&self.fields) {
            if fa.is_zero() {
                continue;
            }
            acc = acc.zip_with(ea, |p, q| p + &(fa * q));
        }
        acc
    }
}

/// Gauss-Jordan over the field of rational functions.
fn invert(chart: &Chart, mut m: RfMatrix) -> Option<RfMatrix> {
    let n = m.len();
    let mut inv: RfMatrix = (0..n)
        .map(|i| {
            (0..n).map(|j| if i == j { RationalFunction::one(chart) } else { RationalFunction::zero(chart) }).collect()
        })
        .collect();
    for col in 0..n {
        // prefer the simplest nonzero pivot to keep intermediate sizes down
        let p = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].numer().len() + m[r][col].denom().len())?;
        m.swap(col, p);
        inv.swap(col, p);
        let pinv = m[col][col].inv().ok()?;
        m[col] = m[col].iter().map(|x| x * &pinv).collect();
        inv[col] = inv[col].iter().map(|x| x * &pinv).collect();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..n {
                if !m[col][c].is_zero() {
                    m[r][c] = &m[r][c] - &(&factor * &m[col][c]);
                }
                if !inv[col][c].is_zero() {
                    inv[r][c] = &inv[r][c] - &(&factor * &inv[col][c]);
                }
            }
        }
    }
    Some(inv)
}

/// The unique connection with `∇_{eₐ}e_b = Σₖ cᵏₐ_b eₖ` for the frame `e`
/// and the constants of `alg` (basis element `a` paired with field `a`).
pub fn connection_from_frame(frame: &Frame, alg: &SCAlgebra) -> Result<Connection, GeometryError> {
    let n = frame.chart.dim();
    if alg.dim() != n {
        return Err(crate::algebra::AlgebraError::DimensionMismatch(alg.dim(), n).into());
    }
    let chart = &frame.chart;
    let g = &frame.inverse;
    let e = &frame.fields;
    // ∇_{eₐ}∂ⱼ in frame components: eₐ(Gⱼₖ) + Σ_b Gⱼ_b cᵏₐ_b
    let mut along: Vec<Vec<Vec<RationalFunction>>> = vec![Vec::with_capacity(n); n];
    for (a, ea) in e.iter().enumerate() {
        for gj in g {
            let w: Vec<RationalFunction> = (0..n)
                .map(|k| {
                    let mut acc = ea.apply_unchecked(&gj[k]);
                    for (b, gjb) in gj.iter().enumerate() {
                        let c = alg.constant(a, b, k);
                        if !c.is_zero() && !gjb.is_zero() {
                            acc = &acc + &gjb.scale(c);
                        }
                    }
                    acc
                })
                .collect();
            along[a].push(w);
        }
    }
    let mut entries = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let mut comps = vec![RationalFunction::zero(chart); n];
            for (a, gia) in g[i].iter().enumerate() {
                if gia.is_zero() {
                    continue;
                }
                for (k, w) in along[a][j].iter().enumerate() {
                    if !w.is_zero() {
                        comps[k] = &comps[k] + &(gia * w);
                    }
                }
            }
            let v = frame.combine(&comps);
            for (k, gamma) in v.coeffs().iter().enumerate() {
                entries.push((k, i, j, gamma.clone()));
            }
        }
    }
    let conn = Connection::from_christoffels(chart, entries)?;
    for a in 0..n {
        for b in 0..n {
            let want = VectorField::linear_combination(chart, &alg.product(a, b), e);
            if nabla(&conn, &e[a], &e[b]) != want {
                return Err(GeometryError::FrameRoundTrip(a, b));
            }
        }
    }
    Ok(conn)
}
