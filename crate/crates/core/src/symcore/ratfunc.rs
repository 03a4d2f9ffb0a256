use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::chart::Chart;
use super::gcd::gcd;
use super::poly::Polynomial;
use super::rational::Rational;
use super::SymError;

/// Quotient of two polynomials on the same chart, kept in canonical form.
///
/// Canonical form: numerator and denominator coprime, denominator with
/// coprime integer coefficients and positive graded-lex leading coefficient,
/// zero stored as `0/1`. Structural equality is therefore semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, SymError> {
        num.chart().ensure_same(den.chart())?;
        if den.is_zero() {
            return Err(SymError::ZeroDenominator { offset: None });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let one = Polynomial::one(num.chart());
            return RationalFunction { num, den: one };
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
            }
        };
        let (c, den) = den.primitive_split();
        let num = if c.is_one() { num } else { num.scale(&c.recip()) };
        RationalFunction { num, den }
    }

    pub fn zero(chart: &Chart) -> Self {
        Self::from_poly(Polynomial::zero(chart))
    }

    pub fn one(chart: &Chart) -> Self {
        Self::from_poly(Polynomial::one(chart))
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(chart, c))
    }

    pub fn var(chart: &Chart, var: usize) -> Self {
        Self::from_poly(Polynomial::var(chart, var))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.chart());
        RationalFunction { num: p, den: one }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn chart(&self) -> &Chart {
        self.num.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, SymError> {
        self.chart().ensure_same(rhs.chart())?;
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.den == rhs.den {
            return Ok(Self::normalized(&self.num + &rhs.num, self.den.clone()));
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        Ok(Self::normalized(num, den))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, SymError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, SymError> {
        self.chart().ensure_same(rhs.chart())?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.chart()));
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Ok(Self::from_poly(&self.num * &rhs.num));
        }
        // cross-cancel before multiplying keeps the operands small
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let (c, den) = (&d1 * &d2).primitive_split();
        Ok(RationalFunction { num: num.scale(&c.recip()), den })
    }

    pub fn inv(&self) -> Result<Self, SymError> {
        if self.is_zero() {
            return Err(SymError::InverseOfZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, SymError> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.chart());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        // coprime parts stay coprime; leading coefficients stay positive
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Partial derivative with respect to the chart variable at `var`.
    pub fn differentiate(&self, var: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(var));
        }
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn differentiate_by(&self, var: &str) -> Result<Self, SymError> {
        Ok(self.differentiate(self.chart().var_index(var)?))
    }
}

impl fmt::Display for RationalFunction {
    /// Prints in a form accepted by the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.is_var_power() {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &RationalFunction {
            type Output = RationalFunction;
            /// Panics on chart mismatch; use the `checked_*` form for untrusted input.
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}
