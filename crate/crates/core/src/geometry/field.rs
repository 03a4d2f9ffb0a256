use std::fmt;

use super::GeometryError;
use crate::symcore::{parse_expr, Chart, Rational, RationalFunction};

/// `X = Σᵢ coeffᵢ ∂/∂xᵢ` with one normalized coefficient per chart variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    chart: Chart,
    coeffs: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(chart: &Chart, coeffs: Vec<RationalFunction>) -> Result<Self, GeometryError> {
        if coeffs.len() != chart.dim() {
            return Err(GeometryError::CoefficientCount { expected: chart.dim(), got: coeffs.len() });
        }
        for c in &coeffs {
            chart.ensure_same(c.chart())?;
        }
        Ok(VectorField { chart: chart.clone(), coeffs })
    }

    /// Parses one expression per coefficient slot.
    pub fn parse<S: AsRef<str>>(chart: &Chart, coeffs: &[S]) -> Result<Self, GeometryError> {
        let parsed = coeffs.iter().map(|s| parse_expr(s.as_ref(), chart)).collect::<Result<Vec<_>, _>>()?;
        Self::new(chart, parsed)
    }

    pub fn zero(chart: &Chart) -> Self {
        VectorField { chart: chart.clone(), coeffs: vec![RationalFunction::zero(chart); chart.dim()] }
    }

    /// The coordinate field `∂/∂x_var`.
    pub fn coordinate(chart: &Chart, var: usize) -> Self {
        let mut f = Self::zero(chart);
        f.coeffs[var] = RationalFunction::one(chart);
        f
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RationalFunction::is_zero)
    }

    pub(crate) fn ensure_chart(&self, other: &Chart) -> Result<(), GeometryError> {
        Ok(self.chart.ensure_same(other)?)
    }

    /// Directional derivative `X(f) = Σᵢ Xⁱ ∂ᵢf`.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, GeometryError> {
        self.ensure_chart(f.chart())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero(&self.chart);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.differentiate(i);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, GeometryError> {
        self.ensure_chart(&other.chart)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, GeometryError> {
        self.ensure_chart(&other.chart)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub(crate) fn zip_with(
        &self,
        other: &VectorField,
        f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `f · X` for a function `f`.
    pub fn scale_by(&self, f: &RationalFunction) -> Result<VectorField, GeometryError> {
        self.ensure_chart(f.chart())?;
        Ok(VectorField { chart: self.chart.clone(), coeffs: self.coeffs.iter().map(|c| c * f).collect() })
    }

    pub fn scale(&self, q: &Rational) -> VectorField {
        VectorField { chart: self.chart.clone(), coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect() }
    }

    /// `Σ λᵢ Xᵢ`; all fields must share `chart`.
    pub fn linear_combination(chart: &Chart, lambdas: &[Rational], fields: &[VectorField]) -> VectorField {
        let mut acc = Self::zero(chart);
        for (l, f) in lambdas.iter().zip(fields) {
            if num_traits::Zero::is_zero(l) {
                continue;
            }
            acc = acc.zip_with(&f.scale(l), |a, b| a + b);
        }
        acc
    }
}

impl fmt::Display for VectorField {
    /// `c₁*d/dx + c₂*d/dy`, omitting zero slots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in self.coeffs.iter().zip(self.chart.variables()) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "d/d{v}")?;
            } else {
                write!(f, "({c})*d/d{v}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}
