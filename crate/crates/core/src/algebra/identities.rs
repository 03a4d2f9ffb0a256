use num_traits::Zero;
use serde::Serialize;

use super::{SCAlgebra, Triple};
use crate::linalg::{self, Vector};
use crate::symcore::Rational;

/// Outcome of an identity scan over basis triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub holds: bool,
    /// First failing triple in lexicographic order.
    pub witness: Option<Triple>,
}

impl IdentityReport {
    fn from_witness(witness: Option<Triple>) -> Self {
        IdentityReport { holds: witness.is_none(), witness }
    }
}

/// Nonzero entries of every basis product, `table[i·n + j] = [(k, cᵏᵢⱼ)]`.
pub(crate) struct SparseTable {
    n: usize,
    entries: Vec<Vec<(usize, Rational)>>,
}

impl SparseTable {
    pub(crate) fn new(a: &SCAlgebra) -> Self {
        let n = a.dim();
        let entries = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter_map(|k| {
                        let c = &a.constants()[ij * n + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        SparseTable { n, entries }
    }

    fn get(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.entries[i * self.n + j]
    }

    /// `(bᵢ bⱼ) bₖ`
    pub(crate) fn left_nested(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut out = linalg::zero_vector(self.n);
        for (m, c) in self.get(i, j) {
            for (l, d) in self.get(*m, k) {
                out[*l] += c * d;
            }
        }
        out
    }

    /// `bᵢ (bⱼ bₖ)`
    pub(crate) fn right_nested(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut out = linalg::zero_vector(self.n);
        for (m, c) in self.get(j, k) {
            for (l, d) in self.get(i, *m) {
                out[*l] += c * d;
            }
        }
        out
    }

    pub(crate) fn associator(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut out = self.left_nested(i, j, k);
        for (o, r) in out.iter_mut().zip(self.right_nested(i, j, k)) {
            *o -= r;
        }
        out
    }
}

fn first_failure(n: usize, mut fails: impl FnMut(usize, usize, usize) -> bool) -> Option<Triple> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if fails(i, j, k) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

impl SCAlgebra {
    /// `(xy)z − x(yz) = (yx)z − y(xz)` on all basis triples.
    pub fn check_left_symmetric(&self) -> IdentityReport {
        let t = SparseTable::new(self);
        IdentityReport::from_witness(first_failure(self.dim(), |i, j, k| {
            t.associator(i, j, k) != t.associator(j, i, k)
        }))
    }

    /// `(xy)z = x(yz)` on all basis triples.
    pub fn check_associative(&self) -> IdentityReport {
        let t = SparseTable::new(self);
        IdentityReport::from_witness(first_failure(self.dim(), |i, j, k| {
            t.left_nested(i, j, k) != t.right_nested(i, j, k)
        }))
    }
}
