//! Finite-dimensional algebras over ℚ given by structure constants.
//!
//! `bᵢ · bⱼ = Σₖ cᵏᵢⱼ bₖ`. Identity checks scan basis triples, which is
//! sufficient by multilinearity.

mod identities;
pub mod json;
mod lie;
mod render;
mod subspace;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix, Vector};
use crate::symcore::Rational;

pub use identities::IdentityReport;
pub use lie::LieAlgebraSC;
pub use render::{format_element, render_table};
pub use subspace::Subspace;

pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one basis element")]
    EmptyBasis,
    #[error("expected {expected} structure constants, got {got}")]
    ConstantCount { expected: usize, got: usize },
    #[error("duplicate basis name `{0}`")]
    DuplicateBasisName(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasisName(String),
    #[error("vector of length {got} in a {expected}-dimensional algebra")]
    VectorLength { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("Jacobi identity fails on basis triple {0:?}")]
    Jacobi(Triple),
    #[error("bracket is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("algebra has no designated unit")]
    NoUnit,
    #[error("basis element {0} is not a two-sided unit")]
    NotAUnit(usize),
    #[error("subspace is not closed: product of rows {0} and {1} leaves it")]
    NotClosed(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid rational `{0}`")]
    BadRational(String),
}

/// Algebra given by a basis and `n³` structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCAlgebra {
    basis: Vec<String>,
    /// `c[(i·n + j)·n + k] = cᵏᵢⱼ`
    constants: Vec<Rational>,
    unit: Option<usize>,
}

fn check_names(basis: &[String]) -> Result<(), AlgebraError> {
    if basis.is_empty() {
        return Err(AlgebraError::EmptyBasis);
    }
    for (i, b) in basis.iter().enumerate() {
        if basis[..i].contains(b) {
            return Err(AlgebraError::DuplicateBasisName(b.clone()));
        }
    }
    Ok(())
}

impl SCAlgebra {
    pub fn new(basis: Vec<String>, constants: Vec<Rational>) -> Result<Self, AlgebraError> {
        check_names(&basis)?;
        let n = basis.len();
        if constants.len() != n * n * n {
            return Err(AlgebraError::ConstantCount { expected: n * n * n, got: constants.len() });
        }
        Ok(SCAlgebra { basis, constants, unit: None })
    }

    pub fn zero(basis: Vec<String>) -> Result<Self, AlgebraError> {
        let n = basis.len();
        Self::new(basis, vec![Rational::zero(); n * n * n])
    }

    /// Builds from `(left, right, result)` entries; omitted products are zero.
    pub fn from_products(
        basis: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, AlgebraError> {
        let mut a = Self::zero(basis)?;
        let n = a.dim();
        for (i, j, v) in products {
            for idx in [i, j] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            a.check_len(&v)?;
            for (k, c) in v.into_iter().enumerate() {
                a.constants[(i * n + j) * n + k] = c;
            }
        }
        Ok(a)
    }

    /// Designates basis element `idx` as the unit after verifying it is one.
    pub fn with_unit(mut self, idx: usize) -> Result<Self, AlgebraError> {
        let n = self.dim();
        if idx >= n {
            return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
        }
        for x in 0..n {
            let e = linalg::unit_vector(n, x);
            if self.product(idx, x) != e || self.product(x, idx) != e {
                return Err(AlgebraError::NotAUnit(idx));
            }
        }
        self.unit = Some(idx);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    /// `cᵏᵢⱼ`
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim();
        &self.constants[(i * n + j) * n + k]
    }

    /// Coordinates of `bᵢ · bⱼ`.
    pub fn product(&self, i: usize, j: usize) -> Vector {
        let n = self.dim();
        self.constants[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    fn product_slice(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim();
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub(crate) fn check_len(&self, v: &[Rational]) -> Result<(), AlgebraError> {
        if v.len() != self.dim() {
            return Err(AlgebraError::VectorLength { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// Bilinear product of two coordinate vectors.
    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = linalg::zero_vector(n);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let s = ui * vj;
                for (o, c) in out.iter_mut().zip(self.product_slice(i, j)) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.product_slice(i, j) == self.product_slice(j, i)))
    }

    /// Same space with the product reversed: `c'ᵏᵢⱼ = cᵏⱼᵢ`.
    pub fn opposite(&self) -> SCAlgebra {
        let n = self.dim();
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                constants.extend_from_slice(self.product_slice(j, i));
            }
        }
        SCAlgebra { basis: self.basis.clone(), constants, unit: self.unit }
    }

    /// `A ⊕ ℚ1` with the new element appended last and designated as unit.
    pub fn adjoin_unit(&self) -> SCAlgebra {
        let n = self.dim();
        let m = n + 1;
        let mut name = "1".to_string();
        while self.basis.contains(&name) {
            name.push('\'');
        }
        let mut basis = self.basis.clone();
        basis.push(name);
        let mut constants = vec![Rational::zero(); m * m * m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants[(i * m + j) * m + k] = self.constant(i, j, k).clone();
                }
            }
        }
        for x in 0..m {
            constants[(n * m + x) * m + x] = Rational::one();
            constants[(x * m + n) * m + x] = Rational::one();
        }
        SCAlgebra { basis, constants, unit: Some(n) }
    }

    /// Matrix of `x ↦ v · x` in the basis (column `j` is `v · bⱼ`).
    pub fn left_mult_matrix(&self, v: &[Rational]) -> Result<Matrix, AlgebraError> {
        self.check_len(v)?;
        let n = self.dim();
        let mut m = vec![linalg::zero_vector(n); n];
        for (i, vi) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for j in 0..n {
                for (k, c) in self.product_slice(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m[k][j] += vi * c;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Whether `v` is invertible; requires a designated unit.
    pub fn is_unit(&self, v: &[Rational]) -> Result<bool, AlgebraError> {
        if self.unit.is_none() {
            return Err(AlgebraError::NoUnit);
        }
        let l = self.left_mult_matrix(v)?;
        Ok(!linalg::determinant(&l).is_zero())
    }

    pub fn unit_vector(&self) -> Result<Vector, AlgebraError> {
        let u = self.unit.ok_or(AlgebraError::NoUnit)?;
        Ok(linalg::unit_vector(self.dim(), u))
    }

    /// Product-closed subspace generated by `generators`.
    ///
    /// Each round adds every product of two current basis rows, taken in
    /// lexicographic row order, and re-reduces; the loop stops once the rank
    /// no longer grows, at which point the span is closed.
    pub fn subalgebra_closure(&self, generators: &[Vector]) -> Result<Subspace, AlgebraError> {
        for g in generators {
            self.check_len(g)?;
        }
        let mut span = Subspace::span(self.dim(), generators.to_vec());
        loop {
            let rows = span.basis();
            let mut next = rows.to_vec();
            for a in rows {
                for b in rows {
                    next.push(self.mul(a, b));
                }
            }
            let grown = Subspace::span(self.dim(), next);
            if grown.rank() == span.rank() {
                return Ok(span);
            }
            span = grown;
        }
    }

    /// The algebra carried by a product-closed subspace, in the subspace's
    /// row-echelon basis.
    pub fn restrict(&self, sub: &Subspace, names: Vec<String>) -> Result<SCAlgebra, AlgebraError> {
        if sub.ambient_dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch(sub.ambient_dim(), self.dim()));
        }
        let rows = sub.basis();
        let r = rows.len();
        let mut products = Vec::with_capacity(r * r);
        for (a, u) in rows.iter().enumerate() {
            for (b, v) in rows.iter().enumerate() {
                let p = self.mul(u, v);
                let coords = sub.coordinates(&p).ok_or(AlgebraError::NotClosed(a, b))?;
                products.push((a, b, coords));
            }
        }
        SCAlgebra::from_products(names, products)
    }

    /// Default names for the restriction: ambient names when the subspace is
    /// a coordinate subspace, `v1, v2, …` otherwise.
    pub fn subspace_names(&self, sub: &Subspace) -> Vec<String> {
        match sub.coordinate_indices() {
            Some(idx) => idx.iter().map(|&i| self.basis[i].clone()).collect(),
            None => (1..=sub.rank()).map(|i| format!("v{i}")).collect(),
        }
    }

    pub fn renamed(&self, basis: Vec<String>) -> Result<SCAlgebra, AlgebraError> {
        if basis.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch(basis.len(), self.dim()));
        }
        check_names(&basis)?;
        Ok(SCAlgebra { basis, ..self.clone() })
    }
}
