use std::fmt;
use std::sync::Arc;

use super::SymError;

#[derive(Debug, PartialEq, Eq, Hash)]
struct ChartData {
    name: String,
    variables: Vec<String>,
}

/// A named coordinate chart with a fixed, ordered list of variables.
///
/// Cloning is cheap; every polynomial carries its chart.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chart(Arc<ChartData>);

impl Chart {
    pub fn new<S: Into<String>>(name: &str, variables: impl IntoIterator<Item = S>) -> Result<Self, SymError> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(SymError::BadVariableName(v.clone()));
            }
            if variables[..i].contains(v) {
                return Err(SymError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Chart(Arc::new(ChartData { name: name.to_string(), variables })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn variables(&self) -> &[String] {
        &self.0.variables
    }

    pub fn dim(&self) -> usize {
        self.0.variables.len()
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.0.variables.iter().position(|v| v == var)
    }

    pub fn var_index(&self, var: &str) -> Result<usize, SymError> {
        self.index_of(var).ok_or_else(|| SymError::UnknownVariable { name: var.to_string(), offset: None })
    }

    pub(crate) fn same(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub(crate) fn ensure_same(&self, other: &Chart) -> Result<(), SymError> {
        if self.same(other) {
            Ok(())
        } else {
            Err(SymError::ChartMismatch { left: self.name().to_string(), right: other.name().to_string() })
        }
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}; {})", self.0.name, self.0.variables.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
