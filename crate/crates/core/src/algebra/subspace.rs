use num_traits::{One, Zero};

use crate::linalg::{self, Matrix, Vector};
use crate::symcore::Rational;

/// Subspace of ℚⁿ held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Self {
        let mut rows = vectors;
        let pivots = if rows.is_empty() { Vec::new() } else { linalg::rref(&mut rows) };
        Subspace { ambient, rows, pivots }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, linalg::identity(ambient))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows in reduced row-echelon form.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` against the basis rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= c * y;
            }
        }
        linalg::is_zero_vector(&rest).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Ambient indices when every basis row is a standard unit vector.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .all(|(row, &p)| row.iter().enumerate().all(|(i, x)| if i == p { x.is_one() } else { x.is_zero() }))
            .then(|| self.pivots.clone())
    }
}
