//! Sparse multivariate polynomials over ℚ on a chart.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::chart::Chart;
use super::rational::{is_negative, Rational};

/// Exponent vector ordered graded-lexicographically in the chart's variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with nonzero rational coefficients keyed by monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    chart: Chart,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(chart: &Chart) -> Self {
        Polynomial { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn constant(chart: &Chart, c: Rational) -> Self {
        Self::monomial(chart, Monomial::one(chart.dim()), c)
    }

    pub fn monomial(chart: &Chart, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), chart.dim(), "monomial length must match chart");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { chart: chart.clone(), terms }
    }

    /// The coordinate function `x_var`.
    pub fn var(chart: &Chart, var: usize) -> Self {
        let mut e = vec![0; chart.dim()];
        e[var] = 1;
        Self::monomial(chart, Monomial(e), Rational::one())
    }

    pub fn from_terms(chart: &Chart, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Highest-index variable with a positive exponent in some term.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.0.iter().rposition(|&e| e > 0)).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        Polynomial { chart: self.chart.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        Polynomial { chart: self.chart.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.chart);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Coefficients with respect to `var`: `self = Σ_d out[d] · var^d`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Polynomial> {
        let mut out = vec![Self::zero(&self.chart); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let d = m.0[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            out[d].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(chart: &Chart, var: usize, coeffs: &[Polynomial]) -> Self {
        let mut out = Self::zero(chart);
        for (d, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut mm = m.clone();
                mm.0[var] += d as u32;
                out.add_term(mm, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.chart);
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = rm.div(dm);
            let qc = rc / dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Splits `self = c · p` where `p` has coprime integer coefficients and a
    /// positive leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive_split(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if is_negative(&self.leading_coeff()) {
            content = -content;
        }
        let p = self.scale(&content.recip());
        (content, p)
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.chart.variables();
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(super::rational::format_rational(&a));
            }
            for (v, &e) in vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }

    /// True if the printed form is a bare variable or variable power.
    pub(crate) fn is_var_power(&self) -> bool {
        self.terms.len() == 1 && {
            let (m, c) = self.terms.iter().next().unwrap();
            c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.chart.same(&rhs.chart), "chart mismatch in polynomial add");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.chart.same(&rhs.chart), "chart mismatch in polynomial sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.chart.same(&rhs.chart), "chart mismatch in polynomial mul");
        let mut out = Polynomial::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rational::{rat, ratio};

    fn xy() -> (Chart, Polynomial, Polynomial) {
        let c = Chart::new("c", ["x", "y"]).unwrap();
        let x = Polynomial::var(&c, 0);
        let y = Polynomial::var(&c, 1);
        (c, x, y)
    }

    #[test]
    fn grlex_order_prints_descending() {
        let (c, x, y) = xy();
        let p = &(&(&x * &x) + &(&y * &y)) + &(&Polynomial::constant(&c, rat(-3)) + &(&x * &y));
        assert_eq!(p.to_string(), "x^2 + x*y + y^2 - 3");
        let q = &y.scale(&ratio(1, 2)) - &x.pow(3);
        assert_eq!(q.to_string(), "-x^3 + 1/2*y");
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let a = &(&x + &y) * &(&x - &y);
        assert_eq!(a.div_exact(&(&x - &y)).unwrap(), &x + &y);
        assert!(a.div_exact(&(&x - &y.scale(&rat(2)))).is_none());
        assert!(a.div_exact(&x).is_none());
    }

    #[test]
    fn coeffs_round_trip() {
        let (c, x, y) = xy();
        let p = &(&x.pow(2) * &y) + &(&y.pow(3) - &x);
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(Polynomial::from_coeffs_in(&c, 1, &cs), p);
        assert_eq!(p.max_var(), Some(1));
        assert_eq!(x.max_var(), Some(0));
    }

    #[test]
    fn primitive_split_sign_and_content() {
        let (_, x, y) = xy();
        let p = &x.scale(&ratio(-2, 3)) + &y.scale(&ratio(4, 9));
        let (c, q) = p.primitive_split();
        assert_eq!(c, ratio(-2, 9));
        assert_eq!(q.to_string(), "3*x - 2*y");
    }
}
