//! Exact scalar, polynomial and rational-function arithmetic.

mod chart;
mod gcd;
mod parse;
mod poly;
mod ratfunc;
pub mod rational;

use thiserror::Error;

pub use chart::Chart;
pub use gcd::{gcd, lcm};
pub use parse::{parse_expr, parse_poly};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}`{}", fmt_offset(.offset))]
    UnknownVariable { name: String, offset: Option<usize> },
    #[error("division by the zero polynomial{}", fmt_offset(.offset))]
    ZeroDenominator { offset: Option<usize> },
    #[error("inversion of the zero rational function")]
    InverseOfZero,
    #[error("chart mismatch: `{left}` vs `{right}`")]
    ChartMismatch { left: String, right: String },
    #[error("`{0}` is not a polynomial")]
    NotPolynomial(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("invalid variable name `{0}`")]
    BadVariableName(String),
    #[error("duplicate variable `{0}` in chart")]
    DuplicateVariable(String),
}

fn fmt_offset(offset: &Option<usize>) -> String {
    match offset {
        Some(o) => format!(" at byte {o}"),
        None => String::new(),
    }
}
