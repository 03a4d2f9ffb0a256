//! Fixtures and seeded property checks shared by the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use flataffine::algebra::SCAlgebra;
use flataffine::geometry::{
    connection_from_frame, covariant_derivative, curvature, is_flat_affine, torsion, Connection, Frame, VectorField,
};
use flataffine::linalg::{self, Matrix};
use flataffine::symcore::{parse_expr, rat, Chart, Monomial, Polynomial, Rational, RationalFunction};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn xy() -> Chart {
    Chart::new("plane", ["x", "y"]).unwrap()
}

pub fn xyz() -> Chart {
    Chart::new("space", ["x", "y", "z"]).unwrap()
}

pub fn rf(c: &Chart, s: &str) -> RationalFunction {
    parse_expr(s, c).unwrap()
}

pub fn field(c: &Chart, coeffs: &[&str]) -> VectorField {
    VectorField::parse(c, coeffs).unwrap()
}

/// e1e1 = 2e1, e1e2 = e2, e2e2 = e1.
pub fn plane_lsa() -> SCAlgebra {
    SCAlgebra::from_products(
        names(&["e1", "e2"]),
        [(0, 0, vec![rat(2), rat(0)]), (0, 1, vec![rat(0), rat(1)]), (1, 1, vec![rat(1), rat(0)])],
    )
    .unwrap()
}

/// e1e1 = αe1, e1e2 = e2, all else zero.
pub fn alpha_lsa(alpha: Rational) -> SCAlgebra {
    SCAlgebra::from_products(names(&["e1", "e2"]), [(0, 0, vec![alpha, rat(0)]), (0, 1, vec![rat(0), rat(1)])]).unwrap()
}

/// Left-invariant frame x∂x, x∂y on the half plane.
pub fn plane_frame(c: &Chart) -> Frame {
    Frame::new(c, vec![field(c, &["x", "0"]), field(c, &["0", "x"])]).unwrap()
}

pub fn plane_connection(c: &Chart, alg: &SCAlgebra) -> Connection {
    connection_from_frame(&plane_frame(c), alg).unwrap()
}

pub fn six_field_names() -> Vec<String> {
    names(&["e1-", "e2-", "C3", "C4", "C5", "C6"])
}

pub fn six_fields(c: &Chart) -> Vec<VectorField> {
    vec![
        field(c, &["x", "y"]),
        field(c, &["0", "1"]),
        field(c, &["1/x", "0"]),
        field(c, &["y/x", "0"]),
        field(c, &["x + y^2/x", "0"]),
        field(c, &["(-x*y - y^3/x)", "x^2 + y^2"]),
    ]
}

/// 2×2 matrix units E_pq·E_rs = δ_qr E_ps, basis `Epq` row-major.
pub fn matrix_units(n: usize) -> SCAlgebra {
    let basis: Vec<String> = (1..=n).flat_map(|p| (1..=n).map(move |q| format!("E{p}{q}"))).collect();
    let d = n * n;
    let mut prods = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                prods.push((p * n + q, q * n + s, linalg::unit_vector(d, p * n + s)));
            }
        }
    }
    SCAlgebra::from_products(basis, prods).unwrap()
}

/// Product table of the six fields under the frame connection of
/// [`plane_lsa`], computed once.
pub fn six_field_table() -> &'static SCAlgebra {
    static TABLE: OnceLock<SCAlgebra> = OnceLock::new();
    TABLE.get_or_init(|| {
        let c = xy();
        let conn = plane_connection(&c, &plane_lsa());
        flataffine::geometry::product_table(&conn, &six_fields(&c), six_field_names()).unwrap()
    })
}

// ---- random generators ----

pub fn small_rational<R: Rng>(r: &mut R) -> Rational {
    let n: i64 = r.random_range(-5..=5);
    let d: i64 = r.random_range(1..=3);
    flataffine::symcore::ratio(n, d)
}

pub fn random_poly<R: Rng>(r: &mut R, c: &Chart, max_terms: usize, max_deg: u32) -> Polynomial {
    let terms = r.random_range(0..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let e: Vec<u32> = (0..c.dim()).map(|_| r.random_range(0..=max_deg)).collect();
        out.push((Monomial(e), small_rational(r)));
    }
    Polynomial::from_terms(c, out)
}

pub fn random_nonzero_poly<R: Rng>(r: &mut R, c: &Chart, max_terms: usize, max_deg: u32) -> Polynomial {
    loop {
        let p = random_poly(r, c, max_terms.max(1), max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_rf<R: Rng>(r: &mut R, c: &Chart) -> RationalFunction {
    let num = random_poly(r, c, 3, 2);
    let den = if r.random_bool(0.5) { Polynomial::one(c) } else { random_nonzero_poly(r, c, 2, 1) };
    RationalFunction::new(num, den).unwrap()
}

pub fn random_poly_field<R: Rng>(r: &mut R, c: &Chart) -> VectorField {
    let coeffs = (0..c.dim()).map(|_| RationalFunction::from_poly(random_poly(r, c, 3, 2))).collect();
    VectorField::new(c, coeffs).unwrap()
}

pub fn random_int_vector<R: Rng>(r: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(r.random_range(-2..=2))).collect()
}

/// Random invertible integer matrix.
pub fn random_invertible<R: Rng>(r: &mut R, n: usize) -> Matrix {
    loop {
        let m: Matrix = (0..n).map(|_| random_int_vector(r, n)).collect();
        if linalg::inverse(&m).is_some() {
            return m;
        }
    }
}

/// Structure constants in the basis `f_a = Σᵢ P[a][i] eᵢ`.
pub fn transport(a: &SCAlgebra, p: &Matrix) -> SCAlgebra {
    let n = a.dim();
    let q = linalg::inverse(p).unwrap();
    let mut prods = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let prod = a.mul(&p[x], &p[y]);
            // coordinates against f: row vector times Q
            let coords: Vec<Rational> =
                (0..n).map(|c| (0..n).fold(rat(0), |acc, k| acc + &prod[k] * &q[k][c])).collect();
            prods.push((x, y, coords));
        }
    }
    SCAlgebra::from_products(a.basis_names().to_vec(), prods).unwrap()
}

/// A left-symmetric algebra from a small pool, in a random basis.
pub fn random_lsa<R: Rng>(r: &mut R) -> SCAlgebra {
    let base = match r.random_range(0..4) {
        0 => plane_lsa(),
        1 => alpha_lsa(small_rational(r)),
        2 => matrix_units(2),
        _ => plane_lsa().adjoin_unit(),
    };
    let p = random_invertible(r, base.dim());
    transport(&base, &p)
}

pub fn random_associative<R: Rng>(r: &mut R) -> SCAlgebra {
    let base = match r.random_range(0..3) {
        0 => matrix_units(2),
        1 => matrix_units(2).adjoin_unit(),
        _ => six_field_table().clone(),
    };
    let p = random_invertible(r, base.dim());
    transport(&base, &p)
}

// ---- property checks; each draws one instance ----

pub type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn prop_ring_axioms<R: Rng>(r: &mut R) -> Outcome {
    let c = xyz();
    let (f, g, h) = (random_rf(r, &c), random_rf(r, &c), random_rf(r, &c));
    ensure(&(&f + &g) + &h == &f + &(&g + &h), || format!("add assoc {f} {g} {h}"))?;
    ensure(&(&f * &g) * &h == &f * &(&g * &h), || format!("mul assoc {f} {g} {h}"))?;
    ensure(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), || format!("distrib {f} {g} {h}"))?;
    let neg = -&f;
    ensure((&f + &neg).is_zero(), || format!("f + (-f) {f}"))
}

pub fn prop_normalization<R: Rng>(r: &mut R) -> Outcome {
    let c = xyz();
    let f = random_rf(r, &c);
    let k = random_nonzero_poly(r, &c, 2, 1);
    // scaling numerator and denominator by a common factor changes nothing
    let g = RationalFunction::new(f.numer() * &k, f.denom() * &k).unwrap();
    ensure(g == f, || format!("{g} vs {f}"))?;
    let again = RationalFunction::new(f.numer().clone(), f.denom().clone()).unwrap();
    ensure(again == f, || format!("renormalizing {f}"))?;
    ensure(f.denom().leading_coeff() > rat(0), || format!("denominator sign {f}"))
}

pub fn prop_leibniz<R: Rng>(r: &mut R) -> Outcome {
    let c = xyz();
    let (f, g) = (random_rf(r, &c), random_rf(r, &c));
    let v = r.random_range(0..3);
    let lhs = (&f * &g).differentiate(v);
    let rhs = &(&f.differentiate(v) * &g) + &(&f * &g.differentiate(v));
    ensure(lhs == rhs, || format!("d/d{v} of ({f})*({g})"))
}

pub fn prop_parse_print<R: Rng>(r: &mut R) -> Outcome {
    let c = xyz();
    let f = random_rf(r, &c);
    let text = f.to_string();
    let back = parse_expr(&text, &c).map_err(|e| format!("{text}: {e}"))?;
    ensure(back == f, || format!("{text} reparsed as {back}"))
}

pub fn prop_nabla_linearity<R: Rng>(r: &mut R) -> Outcome {
    let c = xy();
    let conn = if r.random_bool(0.5) { plane_connection(&c, &plane_lsa()) } else { Connection::zero(&c) };
    let x = random_poly_field(r, &c);
    let y = random_poly_field(r, &c);
    let f = RationalFunction::from_poly(random_poly(r, &c, 3, 2));
    let d = |a: &VectorField, b: &VectorField| covariant_derivative(&conn, a, b).unwrap();
    // function-linear in X
    let lhs = d(&x.scale_by(&f).unwrap(), &y);
    ensure(lhs == d(&x, &y).scale_by(&f).unwrap(), || format!("f-linearity X={x} f={f}"))?;
    // Leibniz in Y
    let lhs = d(&x, &y.scale_by(&f).unwrap());
    let rhs = y.scale_by(&x.apply(&f).unwrap()).unwrap().add(&d(&x, &y).scale_by(&f).unwrap()).unwrap();
    ensure(lhs == rhs, || format!("Leibniz X={x} Y={y} f={f}"))?;
    // additivity in both slots
    let z = random_poly_field(r, &c);
    ensure(d(&x.add(&z).unwrap(), &y) == d(&x, &y).add(&d(&z, &y)).unwrap(), || "additive in X".into())?;
    ensure(d(&x, &y.add(&z).unwrap()) == d(&x, &y).add(&d(&x, &z)).unwrap(), || "additive in Y".into())
}

pub fn prop_closure_idempotent<R: Rng>(r: &mut R) -> Outcome {
    let a = random_associative(r);
    let k = r.random_range(1..=2);
    let gens: Vec<_> = (0..k).map(|_| random_int_vector(r, a.dim())).collect();
    let s = a.subalgebra_closure(&gens).map_err(|e| e.to_string())?;
    let again = a.subalgebra_closure(s.basis()).map_err(|e| e.to_string())?;
    ensure(again == s, || "closure of closure differs".into())?;
    for g in &gens {
        ensure(s.contains(g), || "generator missing".into())?;
    }
    for u in s.basis() {
        for v in s.basis() {
            ensure(s.contains(&a.mul(u, v)), || "closure not product-closed".into())?;
        }
    }
    Ok(())
}

pub fn prop_opposite_involution<R: Rng>(r: &mut R) -> Outcome {
    let a = if r.random_bool(0.5) { random_lsa(r) } else { random_associative(r) };
    ensure(a.opposite().opposite() == a, || "opposite twice".into())?;
    let u = random_int_vector(r, a.dim());
    let v = random_int_vector(r, a.dim());
    ensure(a.opposite().mul(&u, &v) == a.mul(&v, &u), || "opposite product".into())
}

pub fn prop_jacobi_from_left_symmetry<R: Rng>(r: &mut R) -> Outcome {
    let a = random_lsa(r);
    ensure(a.check_left_symmetric().holds, || "pool algebra not left-symmetric".into())?;
    a.commutator_algebra().map(|_| ()).map_err(|e| e.to_string())
}

pub fn prop_is_unit<R: Rng>(r: &mut R) -> Outcome {
    let a = matrix_units(2).adjoin_unit();
    let n = a.dim();
    let one = a.unit_vector().unwrap();
    let v = random_int_vector(r, n);
    let unit = a.is_unit(&v).unwrap();
    // brute force: look for w with v·w = w·v = 1 among solutions of L_v w = 1
    let lv = a.left_mult_matrix(&v).unwrap();
    let inverse = linalg::solve(&lv, &one, n).filter(|w| a.mul(w, &v) == one && a.mul(&v, w) == one);
    ensure(unit == inverse.is_some(), || format!("is_unit {unit} for {v:?}"))
}

pub fn prop_flatness_flags<R: Rng>(r: &mut R) -> Outcome {
    let c = xy();
    let conn = match r.random_range(0..4) {
        0 => plane_connection(&c, &plane_lsa()),
        1 => plane_connection(&c, &alpha_lsa(small_rational(r))),
        2 => Connection::zero(&c),
        _ => {
            let entries: Vec<_> = (0..r.random_range(1..=3))
                .map(|_| (r.random_range(0..2), r.random_range(0..2), r.random_range(0..2), random_rf(r, &c)))
                .collect();
            Connection::from_christoffels(&c, entries).unwrap()
        }
    };
    let flags = torsion(&conn).is_zero() && curvature(&conn).is_zero();
    ensure(is_flat_affine(&conn) == flags, || format!("{conn:?}"))
}

pub type Property = fn(&mut ChaCha8Rng) -> Outcome;

pub const PROPERTIES: &[(&str, Property)] = &[
    ("ring axioms", prop_ring_axioms),
    ("normalization", prop_normalization),
    ("Leibniz rule", prop_leibniz),
    ("parse-print round trip", prop_parse_print),
    ("connection linearity", prop_nabla_linearity),
    ("closure idempotence", prop_closure_idempotent),
    ("opposite involution", prop_opposite_involution),
    ("Jacobi from left symmetry", prop_jacobi_from_left_symmetry),
    ("unit membership", prop_is_unit),
    ("flatness flags", prop_flatness_flags),
];
