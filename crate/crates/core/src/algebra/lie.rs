use num_traits::Zero;

use super::identities::SparseTable;
use super::{AlgebraError, SCAlgebra, Triple};
use crate::linalg::{self, Vector};
use crate::symcore::Rational;

/// Lie algebra by bracket constants `[bᵢ, bⱼ] = Σₖ fᵏᵢⱼ bₖ`.
///
/// Antisymmetry and the Jacobi identity are verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSC {
    inner: SCAlgebra,
}

impl LieAlgebraSC {
    pub fn new(basis: Vec<String>, constants: Vec<Rational>) -> Result<Self, AlgebraError> {
        Self::from_sc(SCAlgebra::new(basis, constants)?)
    }

    /// Reads the structure constants of `bracket` as bracket constants.
    pub fn from_sc(bracket: SCAlgebra) -> Result<Self, AlgebraError> {
        let n = bracket.dim();
        for i in 0..n {
            for j in i..n {
                let a = bracket.product(i, j);
                let b = bracket.product(j, i);
                if a.iter().zip(&b).any(|(x, y)| *x != -y.clone()) {
                    return Err(AlgebraError::NotAntisymmetric(i, j));
                }
            }
        }
        if let Some(w) = jacobi_witness(&bracket) {
            return Err(AlgebraError::Jacobi(w));
        }
        Ok(LieAlgebraSC { inner: bracket })
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn basis_names(&self) -> &[String] {
        self.inner.basis_names()
    }

    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        self.inner.product(i, j)
    }

    pub fn bracket_vectors(&self, u: &[Rational], v: &[Rational]) -> Vector {
        self.inner.mul(u, v)
    }

    pub fn constants(&self) -> &[Rational] {
        self.inner.constants()
    }

    pub fn is_abelian(&self) -> bool {
        self.inner.constants().iter().all(Zero::is_zero)
    }

    /// The bracket table as a (non-associative) structure-constant algebra.
    pub fn as_sc(&self) -> &SCAlgebra {
        &self.inner
    }
}

/// First lexicographic triple where `[[i,j],k] + [[j,k],i] + [[k,i],j] ≠ 0`.
pub(crate) fn jacobi_witness(bracket: &SCAlgebra) -> Option<Triple> {
    let t = SparseTable::new(bracket);
    let n = bracket.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = t.left_nested(i, j, k);
                for (x, y) in s.iter_mut().zip(t.left_nested(j, k, i)) {
                    *x += y;
                }
                for (x, y) in s.iter_mut().zip(t.left_nested(k, i, j)) {
                    *x += y;
                }
                if !linalg::is_zero_vector(&s) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

impl SCAlgebra {
    /// The commutator algebra `[x, y] = xy − yx`.
    ///
    /// Fails with the first Jacobi-violating triple when the product is
    /// not Lie-admissible.
    pub fn commutator_algebra(&self) -> Result<LieAlgebraSC, AlgebraError> {
        let n = self.dim();
        let mut constants = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let a = self.product(i, j);
                let b = self.product(j, i);
                constants.extend(a.into_iter().zip(b).map(|(x, y)| x - y));
            }
        }
        let bracket = SCAlgebra::new(self.basis_names().to_vec(), constants)?;
        if let Some(w) = jacobi_witness(&bracket) {
            return Err(AlgebraError::Jacobi(w));
        }
        Ok(LieAlgebraSC { inner: bracket })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{aff_lsa, names, v};
    use super::*;

    #[test]
    fn aff_bracket() {
        let l = aff_lsa().commutator_algebra().unwrap();
        assert_eq!(l.bracket(0, 1), v(&[0, 1]));
        assert_eq!(l.bracket(1, 0), v(&[0, -1]));
        assert_eq!(l.bracket(0, 0), v(&[0, 0]));
    }

    #[test]
    fn commutative_gives_abelian() {
        let a =
            SCAlgebra::from_products(names(&["a", "b"]), [(0, 0, v(&[1, 1])), (0, 1, v(&[0, 3])), (1, 0, v(&[0, 3]))])
                .unwrap();
        assert!(a.commutator_algebra().unwrap().is_abelian());
    }

    #[test]
    fn jacobi_failure_is_an_error() {
        // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e1 is not a Lie bracket
        let a = SCAlgebra::from_products(
            names(&["e1", "e2", "e3"]),
            [(0, 1, v(&[0, 0, 1])), (1, 2, v(&[1, 0, 0])), (0, 2, v(&[1, 0, 0]))],
        )
        .unwrap();
        match a.commutator_algebra() {
            Err(AlgebraError::Jacobi(_)) => {}
            other => panic!("expected Jacobi error, got {other:?}"),
        }
    }

    #[test]
    fn lie_constructor_checks_antisymmetry() {
        let bad = SCAlgebra::from_products(names(&["a", "b"]), [(0, 1, v(&[1, 0]))]).unwrap();
        assert_eq!(LieAlgebraSC::from_sc(bad), Err(AlgebraError::NotAntisymmetric(0, 1)));
    }
}
