use std::fmt;

use super::{GeometryError, VectorField};
use crate::symcore::{Chart, RationalFunction};

/// Affine connection as Christoffel symbols on one chart.
#[derive(Clone, PartialEq, Eq)]
pub struct Connection {
    chart: Chart,
    // Γᵏᵢⱼ at (k*n + i)*n + j
    gamma: Vec<RationalFunction>,
}

impl Connection {
    /// The standard flat connection `Γ = 0`.
    pub fn zero(chart: &Chart) -> Self {
        let n = chart.dim();
        Connection { chart: chart.clone(), gamma: vec![RationalFunction::zero(chart); n * n * n] }
    }

    /// Builds from `(k, i, j, Γᵏᵢⱼ)` entries; unlisted symbols are zero and
    /// later entries overwrite earlier ones.
    pub fn from_christoffels(
        chart: &Chart,
        entries: impl IntoIterator<Item = (usize, usize, usize, RationalFunction)>,
    ) -> Result<Self, GeometryError> {
        let mut c = Self::zero(chart);
        let n = chart.dim();
        for (k, i, j, g) in entries {
            for index in [k, i, j] {
                if index >= n {
                    return Err(GeometryError::IndexOutOfRange { index, dim: n });
                }
            }
            chart.ensure_same(g.chart())?;
            c.gamma[(k * n + i) * n + j] = g;
        }
        Ok(c)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &RationalFunction {
        let n = self.dim();
        &self.gamma[(k * n + i) * n + j]
    }

    /// `∇_{∂ᵢ}∂ⱼ`.
    pub fn nabla_coordinate(&self, i: usize, j: usize) -> VectorField {
        let n = self.dim();
        let coeffs = (0..n).map(|k| self.christoffel(k, i, j).clone()).collect();
        VectorField::new(&self.chart, coeffs).expect("christoffels share the chart")
    }

    /// Nonzero symbols as `(k, i, j, Γᵏᵢⱼ)`.
    pub fn nonzero_christoffels(&self) -> Vec<(usize, usize, usize, &RationalFunction)> {
        let n = self.dim();
        let mut out = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let g = self.christoffel(k, i, j);
                    if !g.is_zero() {
                        out.push((k, i, j, g));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for (k, i, j, g) in self.nonzero_christoffels() {
            l.entry(&format_args!("G^{}_{}{} = {g}", k + 1, i + 1, j + 1));
        }
        l.finish()
    }
}

/// `(∇_X Y)ᵏ = X(Yᵏ) + Σᵢⱼ Γᵏᵢⱼ XⁱYʲ`.
pub fn covariant_derivative(conn: &Connection, x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
    x.ensure_chart(conn.chart())?;
    y.ensure_chart(conn.chart())?;
    Ok(nabla(conn, x, y))
}

pub(crate) fn nabla(conn: &Connection, x: &VectorField, y: &VectorField) -> VectorField {
    let n = conn.dim();
    let chart = conn.chart();
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = x.apply_unchecked(y.coeff(k));
        for i in 0..n {
            if x.coeff(i).is_zero() {
                continue;
            }
            let mut inner = RationalFunction::zero(chart);
            for j in 0..n {
                let g = conn.christoffel(k, i, j);
                if g.is_zero() || y.coeff(j).is_zero() {
                    continue;
                }
                inner = &inner + &(g * y.coeff(j));
            }
            if !inner.is_zero() {
                acc = &acc + &(x.coeff(i) * &inner);
            }
        }
        coeffs.push(acc);
    }
    VectorField::new(chart, coeffs).expect("same chart")
}

/// `[X, Y]ᵏ = X(Yᵏ) − Y(Xᵏ)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
    x.ensure_chart(y.chart())?;
    Ok(bracket(x, y))
}

pub(crate) fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let coeffs = (0..x.dim()).map(|k| &x.apply_unchecked(y.coeff(k)) - &y.apply_unchecked(x.coeff(k))).collect();
    VectorField::new(x.chart(), coeffs).expect("same chart")
}

/// Components of a tensor on an `n`-dimensional chart, row-major over its
/// `order` indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorReport {
    dim: usize,
    order: usize,
    components: Vec<RationalFunction>,
}

impl TensorReport {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn component(&self, idx: &[usize]) -> &RationalFunction {
        assert_eq!(idx.len(), self.order);
        let flat = idx.iter().fold(0, |acc, &i| acc * self.dim + i);
        &self.components[flat]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RationalFunction::is_zero)
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    /// Nonzero components in lexicographic index order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, &RationalFunction)> {
        self.components.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(f, c)| (self.unflatten(f), c)).collect()
    }

    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &RationalFunction)> {
        self.components.iter().position(|c| !c.is_zero()).map(|f| (self.unflatten(f), &self.components[f]))
    }
}

/// `Tᵏᵢⱼ = Γᵏᵢⱼ − Γᵏⱼᵢ`, indexed `[k, i, j]`.
pub fn torsion(conn: &Connection) -> TensorReport {
    let n = conn.dim();
    let mut components = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                components.push(conn.christoffel(k, i, j) - conn.christoffel(k, j, i));
            }
        }
    }
    TensorReport { dim: n, order: 3, components }
}

/// `Rˡᵢⱼₖ`, the `∂ₗ` component of `R(∂ᵢ, ∂ⱼ)∂ₖ = ∇ᵢ∇ⱼ∂ₖ − ∇ⱼ∇ᵢ∂ₖ`,
/// indexed `[l, i, j, k]`.
pub fn curvature(conn: &Connection) -> TensorReport {
    let n = conn.dim();
    let chart = conn.chart();
    let g = |l: usize, i: usize, j: usize| conn.christoffel(l, i, j);
    let mut components = Vec::with_capacity(n * n * n * n);
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = &g(l, j, k).differentiate(i) - &g(l, i, k).differentiate(j);
                    for m in 0..n {
                        let mut prod = RationalFunction::zero(chart);
                        if !g(l, i, m).is_zero() && !g(m, j, k).is_zero() {
                            prod = g(l, i, m) * g(m, j, k);
                        }
                        if !g(l, j, m).is_zero() && !g(m, i, k).is_zero() {
                            prod = &prod - &(g(l, j, m) * g(m, i, k));
                        }
                        if !prod.is_zero() {
                            r = &r + &prod;
                        }
                    }
                    components.push(r);
                }
            }
        }
    }
    TensorReport { dim: n, order: 4, components }
}

/// Torsion-free and curvature-free.
pub fn is_flat_affine(conn: &Connection) -> bool {
    flatness_witness(conn).is_none()
}

/// Describes the first nonzero torsion or curvature component by variable
/// names, or `None` when the connection is flat affine.
pub fn flatness_witness(conn: &Connection) -> Option<String> {
    let vars = conn.chart().variables();
    let name = |idx: &[usize]| idx.iter().map(|&i| vars[i].as_str()).collect::<Vec<_>>().join(",");
    if let Some((idx, c)) = torsion(conn).first_nonzero() {
        return Some(format!("torsion T[{}] = {c}", name(&idx)));
    }
    if let Some((idx, c)) = curvature(conn).first_nonzero() {
        return Some(format!("curvature R[{}] = {c}", name(&idx)));
    }
    None
}

pub(crate) fn ensure_flat(conn: &Connection) -> Result<(), GeometryError> {
    match flatness_witness(conn) {
        Some(msg) => Err(GeometryError::NotFlat(msg)),
        None => Ok(()),
    }
}
