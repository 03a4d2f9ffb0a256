use super::connection::{bracket, ensure_flat, nabla};
use super::iat::iat_unchecked;
use super::{Connection, GeometryError, SpanSolver, VectorField};
use crate::algebra::SCAlgebra;

fn check_family(
    conn: Option<&Connection>,
    fields: &[VectorField],
    names: &[String],
) -> Result<SpanSolver, GeometryError> {
    if names.len() != fields.len() {
        return Err(crate::algebra::AlgebraError::DimensionMismatch(names.len(), fields.len()).into());
    }
    if let (Some(c), Some(f)) = (conn, fields.first()) {
        f.ensure_chart(c.chart())?;
    }
    for w in fields.windows(2) {
        w[0].ensure_chart(w[1].chart())?;
    }
    let solver = SpanSolver::for_fields(fields);
    if !solver.is_independent() {
        let first = (1..=fields.len())
            .find(|&k| !SpanSolver::for_fields(&fields[..k]).is_independent())
            .expect("some prefix is dependent");
        return Err(GeometryError::DependentFields(first - 1));
    }
    Ok(solver)
}

/// Structure constants of `X · Y = ∇_X Y` on the constant span of `fields`.
///
/// Requires a flat affine connection, affine-transformation fields that are
/// independent over ℚ, and closure of every product.
pub fn product_table(
    conn: &Connection,
    fields: &[VectorField],
    names: Vec<String>,
) -> Result<SCAlgebra, GeometryError> {
    let solver = check_family(Some(conn), fields, &names)?;
    ensure_flat(conn)?;
    for (idx, f) in fields.iter().enumerate() {
        if let Some(witness) = iat_unchecked(conn, f).witness {
            return Err(GeometryError::NotInfinitesimalAffine { field: idx, witness });
        }
    }
    let mut entries = Vec::new();
    for (a, fa) in fields.iter().enumerate() {
        for (b, fb) in fields.iter().enumerate() {
            let p = nabla(conn, fa, fb);
            let lambda = solver.express(p.coeffs()).ok_or(GeometryError::ProductOutsideSpan(a, b))?;
            entries.push((a, b, lambda));
        }
    }
    Ok(SCAlgebra::from_products(names, entries)?)
}

/// Bracket constants of the fields, `[Xₐ, X_b] = Σₖ cᵏₐ_b Xₖ`, as a
/// (not yet Jacobi-checked) structure-constant algebra.
pub fn bracket_table(fields: &[VectorField], names: Vec<String>) -> Result<SCAlgebra, GeometryError> {
    let solver = check_family(None, fields, &names)?;
    let mut entries = Vec::new();
    for (a, fa) in fields.iter().enumerate() {
        for (b, fb) in fields.iter().enumerate().skip(a + 1) {
            let p = bracket(fa, fb);
            let lambda = solver.express(p.coeffs()).ok_or(GeometryError::BracketOutsideSpan(a, b))?;
            let neg = lambda.iter().map(|x| -x).collect();
            entries.push((a, b, lambda));
            entries.push((b, a, neg));
        }
    }
    Ok(SCAlgebra::from_products(names, entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{connection_from_frame, Frame};
    use crate::symcore::{rat, Chart};

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn vecs(c: &Chart, rows: &[[&str; 2]]) -> Vec<VectorField> {
        rows.iter().map(|r| VectorField::parse(c, r).unwrap()).collect()
    }

    fn aff_conn(alpha: i64) -> (Chart, Connection) {
        let c = Chart::new("p", ["x", "y"]).unwrap();
        let frame = Frame::new(&c, vecs(&c, &[["x", "0"], ["0", "x"]])).unwrap();
        let mut prods = vec![(0, 0, vec![rat(alpha), rat(0)]), (0, 1, vec![rat(0), rat(1)])];
        if alpha == 2 {
            prods.push((1, 1, vec![rat(1), rat(0)]));
        }
        let alg = SCAlgebra::from_products(names(&["e1", "e2"]), prods).unwrap();
        let conn = connection_from_frame(&frame, &alg).unwrap();
        (c, conn)
    }

    #[test]
    fn six_field_table() {
        let (c, conn) = aff_conn(2);
        let fields = vecs(
            &c,
            &[["x", "y"], ["0", "1"], ["1/x", "0"], ["y/x", "0"], ["x + y^2/x", "0"], ["-x*y - y^3/x", "x^2 + y^2"]],
        );
        let t = product_table(&conn, &fields, names(&["e1", "e2", "C3", "C4", "C5", "C6"])).unwrap();
        // rows are the left factor; entries as (row, col, [(basis, coeff)])
        type Cell = (usize, usize, &'static [(usize, i64)]);
        let table: &[Cell] = &[
            (0, 0, &[(0, 1), (4, 1)]),
            (0, 1, &[(3, 1)]),
            (0, 3, &[(3, 1)]),
            (0, 4, &[(4, 2)]),
            (0, 5, &[(5, 2)]),
            (1, 0, &[(1, 1), (3, 1)]),
            (1, 1, &[(2, 1)]),
            (1, 3, &[(2, 1)]),
            (1, 4, &[(3, 2)]),
            (1, 5, &[(0, 2), (4, -2)]),
            (2, 0, &[(2, 2)]),
            (2, 4, &[(2, 2)]),
            (2, 5, &[(1, 2), (3, -2)]),
            (3, 0, &[(3, 2)]),
            (3, 4, &[(3, 2)]),
            (3, 5, &[(0, 2), (4, -2)]),
            (4, 0, &[(4, 2)]),
            (4, 4, &[(4, 2)]),
            (4, 5, &[(5, 2)]),
            (5, 0, &[(5, 1)]),
            (5, 1, &[(4, 1)]),
            (5, 3, &[(4, 1)]),
        ];
        let mut want = vec![rat(0); 216];
        for (i, j, terms) in table {
            for &(k, v) in *terms {
                want[(i * 6 + j) * 6 + k] = rat(v);
            }
        }
        assert_eq!(t.constants(), &want[..]);
    }

    #[test]
    fn one_parameter_family_table() {
        // α = 3 variant: e1e1 = 3e1, e1e2 = e2
        let c = Chart::new("p", ["x", "y"]).unwrap();
        let frame = Frame::new(&c, vecs(&c, &[["x", "0"], ["0", "x"]])).unwrap();
        let alg = SCAlgebra::from_products(
            names(&["e1", "e2"]),
            [(0, 0, vec![rat(3), rat(0)]), (0, 1, vec![rat(0), rat(1)])],
        )
        .unwrap();
        let conn = connection_from_frame(&frame, &alg).unwrap();
        let fields = vecs(&c, &[["1/3*x", "0"], ["0", "1/3*x^3"], ["0", "y"], ["0", "1"]]);
        let t = product_table(&conn, &fields, names(&["C1", "C2", "C3", "C4"])).unwrap();
        let mut want = vec![rat(0); 64];
        for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2), (3, 2, 3)] {
            want[(i * 4 + j) * 4 + k] = rat(1);
        }
        assert_eq!(t.constants(), &want[..]);
    }

    #[test]
    fn rejects_dependent_and_non_affine() {
        let (c, conn) = aff_conn(2);
        let dep = vecs(&c, &[["0", "1"], ["0", "2"]]);
        assert_eq!(product_table(&conn, &dep, names(&["a", "b"])), Err(GeometryError::DependentFields(1)));
        let bad = vecs(&c, &[["0", "1"], ["x^2", "0"]]);
        assert!(matches!(
            product_table(&conn, &bad, names(&["a", "b"])),
            Err(GeometryError::NotInfinitesimalAffine { field: 1, .. })
        ));
    }

    #[test]
    fn brackets_of_affine_line() {
        let c = Chart::new("t", ["x"]).unwrap();
        let f = vec![VectorField::parse(&c, &["1"]).unwrap(), VectorField::parse(&c, &["x"]).unwrap()];
        let b = bracket_table(&f, names(&["d", "e"])).unwrap();
        assert_eq!(b.product(0, 1), vec![rat(1), rat(0)]);
        assert_eq!(b.product(1, 0), vec![rat(-1), rat(0)]);
    }
}
