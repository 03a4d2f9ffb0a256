//! Multivariate polynomial gcd over ℚ.
//!
//! Recursive: a polynomial is viewed as univariate in its highest-index
//! variable with coefficients in the lower variables. Contents are removed
//! recursively and the primitive parts go through a subresultant
//! pseudo-remainder sequence, which keeps every division exact.

use super::poly::Polynomial;

/// Greatest common divisor, normalized to coprime integer coefficients with a
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    gcd_rec(a, b).primitive_split().1
}

/// Least common multiple, normalized like [`gcd`].
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.chart());
    }
    let g = gcd(a, b);
    let q = a.div_exact(&g).expect("gcd divides its argument");
    (&q * b).primitive_split().1
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let v = match (a.max_var(), b.max_var()) {
        (Some(p), Some(q)) => p.max(q),
        _ => return Polynomial::one(a.chart()),
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        return c;
    }
    let g = subresultant_last(&pa, &pb, v);
    let pg = g.div_exact(&content_in(&g, v)).expect("content divides");
    &c * &pg
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.chart());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c).primitive_split().1;
        if acc.as_constant().is_some() {
            break;
        }
    }
    acc
}

fn lc_in(p: &Polynomial, var: usize) -> Polynomial {
    p.coeffs_in(var).pop().expect("coefficient list is nonempty")
}

fn shift(p: &Polynomial, var: usize, by: u32) -> Polynomial {
    if by == 0 {
        return p.clone();
    }
    &Polynomial::var(p.chart(), var).pow(by) * p
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b` in `var`.
fn prem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = b.degree_in(var);
    let lb = lc_in(b, var);
    let d = a.degree_in(var).saturating_sub(n);
    let mut r = a.clone();
    let mut steps = 0;
    while !r.is_zero() && r.degree_in(var) >= n {
        let s = r.degree_in(var) - n;
        let lr = lc_in(&r, var);
        r = &(&lb * &r) - &shift(&(&lr * b), var, s);
        steps += 1;
    }
    if steps <= d {
        r = &r * &lb.pow(d + 1 - steps);
    }
    r
}

/// Last nonzero element of the subresultant PRS of two primitive polynomials
/// of positive degree in `var`.
fn subresultant_last(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let (mut f, mut g) =
        if a.degree_in(var) >= b.degree_in(var) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    let one = Polynomial::one(a.chart());
    let mut lead = one.clone();
    let mut h = one.clone();
    loop {
        let delta = f.degree_in(var) - g.degree_in(var);
        let r = prem(&f, &g, var);
        if r.is_zero() {
            return g;
        }
        if r.degree_in(var) == 0 {
            return one;
        }
        let divisor = &lead * &h.pow(delta);
        f = g;
        g = r.div_exact(&divisor).expect("subresultant division is exact");
        lead = lc_in(&f, var);
        if delta > 0 {
            h = lead.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant h-update is exact");
        }
    }
}
