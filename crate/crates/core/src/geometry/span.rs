//! Constant (ℚ-linear) spans of tuples of rational functions.
//!
//! Each slot is written over the lcm `D` of the slot's denominators across the
//! spanning family, and the numerator monomials become coordinates. A target
//! lies in the span only if each of its reduced denominators divides `D`,
//! so the same coordinates decide membership for it too.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{GeometryError, VectorField};
use crate::linalg::{self, Matrix, Vector};
use crate::symcore::{lcm, Monomial, Polynomial, Rational, RationalFunction};

#[derive(Clone, Debug)]
pub struct SpanSolver {
    slots: usize,
    members: usize,
    denominators: Vec<Polynomial>,
    columns: BTreeMap<(usize, Monomial), usize>,
    // rref of [coords | identity]; the right block records which members
    // combine into each row
    rows: Matrix,
    pivots: Vec<usize>,
}

impl SpanSolver {
    /// `family` is a list of tuples, each with `slots` entries on one chart.
    pub fn new(slots: usize, family: &[&[RationalFunction]]) -> Self {
        let mut denominators = Vec::with_capacity(slots);
        for s in 0..slots {
            let mut d: Option<Polynomial> = None;
            for item in family {
                let den = item[s].denom();
                d = Some(match d {
                    None => den.clone(),
                    Some(acc) => lcm(&acc, den),
                });
            }
            denominators.push(d);
        }
        let denominators: Vec<Polynomial> = match family.first() {
            None => Vec::new(),
            Some(first) => denominators
                .into_iter()
                .enumerate()
                .map(|(s, d)| d.unwrap_or_else(|| Polynomial::one(first[s].chart())))
                .collect(),
        };

        let mut columns = BTreeMap::new();
        let numerators: Vec<Vec<Polynomial>> =
            family.iter().map(|item| scaled_numerators(item, &denominators).expect("divides lcm")).collect();
        for nums in &numerators {
            for (s, p) in nums.iter().enumerate() {
                for (m, _) in p.terms() {
                    columns.entry((s, m.clone())).or_insert(0);
                }
            }
        }
        for (idx, v) in columns.values_mut().enumerate() {
            *v = idx;
        }
        let ncols = columns.len();
        let members = family.len();
        let mut rows: Matrix = numerators
            .iter()
            .enumerate()
            .map(|(a, nums)| {
                let mut row = linalg::zero_vector(ncols + members);
                for (s, p) in nums.iter().enumerate() {
                    for (m, c) in p.terms() {
                        row[columns[&(s, m.clone())]] = c.clone();
                    }
                }
                row[ncols + a] = Rational::one();
                row
            })
            .collect();
        let pivots = if rows.is_empty() { Vec::new() } else { linalg::rref(&mut rows) };
        SpanSolver { slots, members, denominators, columns, rows, pivots }
    }

    pub fn for_fields(fields: &[VectorField]) -> Self {
        let slots = fields.first().map_or(0, VectorField::dim);
        let family: Vec<&[RationalFunction]> = fields.iter().map(VectorField::coeffs).collect();
        Self::new(slots, &family)
    }

    fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|&&p| p < self.ncols()).count()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.members
    }

    /// Coordinates of the target in the admissible monomial basis, or `None`
    /// when some slot cannot be reached.
    fn coordinates(&self, target: &[RationalFunction]) -> Option<Vector> {
        if target.len() != self.slots {
            return None;
        }
        let nums = scaled_numerators(target, &self.denominators)?;
        let mut v = linalg::zero_vector(self.ncols());
        for (s, p) in nums.iter().enumerate() {
            for (m, c) in p.terms() {
                let col = self.columns.get(&(s, m.clone()))?;
                v[*col] = c.clone();
            }
        }
        Some(v)
    }

    /// Some `λ` with `target = Σ λₐ memberₐ`.
    pub fn express(&self, target: &[RationalFunction]) -> Option<Vector> {
        if self.members == 0 {
            return target.iter().all(RationalFunction::is_zero).then(Vec::new);
        }
        let mut rest = self.coordinates(target)?;
        let n = self.ncols();
        let mut lambda = linalg::zero_vector(self.members);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if p >= n {
                break;
            }
            let c = rest[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(&row[..n]) {
                *x -= &c * y;
            }
            for (l, y) in lambda.iter_mut().zip(&row[n..]) {
                *l += &c * y;
            }
        }
        linalg::is_zero_vector(&rest).then_some(lambda)
    }

    /// Linear relations `Σ λₐ memberₐ = 0`, as a basis of the relation space.
    pub fn relations(&self) -> Vec<Vector> {
        let n = self.ncols();
        self.rows.iter().filter(|row| linalg::is_zero_vector(&row[..n])).map(|row| row[n..].to_vec()).collect()
    }
}

fn scaled_numerators(item: &[RationalFunction], denominators: &[Polynomial]) -> Option<Vec<Polynomial>> {
    item.iter()
        .zip(denominators)
        .map(|(f, d)| {
            if f.is_zero() {
                return Some(Polynomial::zero(f.chart()));
            }
            let q = d.div_exact(f.denom())?;
            Some(f.numer() * &q)
        })
        .collect()
}

/// Constants `λ` with `target = Σ λᵢ basisᵢ`. With a dependent basis any
/// solution may be returned.
pub fn express_in_basis(target: &VectorField, basis: &[VectorField]) -> Result<Vector, GeometryError> {
    for b in basis {
        target.ensure_chart(b.chart())?;
    }
    let solver = SpanSolver::for_fields(basis);
    if basis.is_empty() {
        return if target.is_zero() { Ok(Vec::new()) } else { Err(GeometryError::NotInSpan) };
    }
    solver.express(target.coeffs()).ok_or(GeometryError::NotInSpan)
}

/// Indices of a greedy maximal independent subfamily: each field is kept
/// unless it is a constant combination of those already kept.
pub fn independent_subset(fields: &[VectorField]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..fields.len() {
        let mut trial: Vec<VectorField> = kept.iter().map(|&k| fields[k].clone()).collect();
        trial.push(fields[i].clone());
        if SpanSolver::for_fields(&trial).is_independent() {
            kept.push(i);
        }
    }
    kept
}
