//! JSON form of structure constants.
//!
//! ```json
//! {"dim": 2, "basis": ["e1", "e2"],
//!  "products": [{"left": 1, "right": 1, "result": ["2", "0"]}]}
//! ```
//!
//! Indices are 1-based, rationals are `"p/q"` strings, omitted products are
//! zero. An optional `"unit"` names the designated unit element.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, SCAlgebra};
use crate::symcore::rational::serde_str;
use crate::symcore::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: usize,
    pub right: usize,
    #[serde(with = "serde_str::vec")]
    pub result: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: Vec<ProductDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &SCAlgebra) -> Self {
        let n = a.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let p = a.product(i, j);
                if p.iter().any(|c| !c.is_zero()) {
                    products.push(ProductDoc { left: i + 1, right: j + 1, result: p });
                }
            }
        }
        AlgebraDoc {
            dim: n,
            basis: a.basis_names().to_vec(),
            products,
            unit: a.unit().map(|u| a.basis_names()[u].clone()),
        }
    }

    pub fn to_algebra(&self) -> Result<SCAlgebra, AlgebraError> {
        if self.dim != self.basis.len() {
            return Err(AlgebraError::DimensionMismatch(self.dim, self.basis.len()));
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(self.products.len());
        for p in &self.products {
            for idx in [p.left, p.right] {
                if idx == 0 || idx > n {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
                }
            }
            entries.push((p.left - 1, p.right - 1, p.result.clone()));
        }
        let a = SCAlgebra::from_products(self.basis.clone(), entries)?;
        match &self.unit {
            None => Ok(a),
            Some(name) => {
                let idx = self
                    .basis
                    .iter()
                    .position(|b| b == name)
                    .ok_or_else(|| AlgebraError::UnknownBasisName(name.clone()))?;
                a.with_unit(idx)
            }
        }
    }
}
