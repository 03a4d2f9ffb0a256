//! Associative envelopes from affine-transformation fields.
//!
//! The ambient fields span an associative algebra under `X · Y = ∇_X Y`.
//! The subalgebra generated by the chosen fields, taken with the opposite
//! product, is the envelope.

mod report;

use thiserror::Error;

use crate::algebra::{AlgebraError, LieAlgebraSC, SCAlgebra, Subspace};
use crate::geometry::{self, Connection, GeometryError, SpanSolver, VectorField};
use crate::linalg::Vector;

pub use report::{Check, EnvelopeDoc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("connection is not flat affine: {0}")]
    NotFlat(String),
    #[error("field `{field}` is not an infinitesimal affine transformation (pair ({}, {}))", .witness.0 + 1, .witness.1 + 1)]
    NotAffine { field: String, witness: (usize, usize) },
    #[error("product `{left}` · `{right}` leaves the span of the ambient fields")]
    ProductOutsideSpan { left: String, right: String },
    #[error("bracket [`{left}`, `{right}`] leaves the span of the ambient fields")]
    BracketOutsideSpan { left: String, right: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no generators given")]
    NoGenerators,
    #[error("{names} names for {fields} fields")]
    NameCount { names: usize, fields: usize },
    #[error("duplicate field name `{0}`")]
    DuplicateName(String),
    #[error(transparent)]
    Geometry(GeometryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug)]
pub struct EnvelopeReport {
    /// Product table of the independent ambient fields.
    pub ambient: SCAlgebra,
    /// Ambient fields dropped as constant combinations of earlier ones.
    pub dropped: Vec<String>,
    pub generator_names: Vec<String>,
    /// Generators in ambient coordinates.
    pub generators: Vec<Vector>,
    pub closure: Subspace,
    /// The closure with the field product, before taking the opposite.
    pub closure_algebra: SCAlgebra,
    /// The opposite of `closure_algebra`.
    pub envelope: SCAlgebra,
    pub commutator: LieAlgebraSC,
    pub checks: Vec<Check>,
}

impl EnvelopeReport {
    pub fn dim(&self) -> usize {
        self.envelope.dim()
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn named(err: GeometryError, names: &[String], kept: &[usize]) -> EnvelopeError {
    let nm = |i: usize| names[kept[i]].clone();
    match err {
        GeometryError::NotFlat(m) => EnvelopeError::NotFlat(m),
        GeometryError::NotInfinitesimalAffine { field, witness } => {
            EnvelopeError::NotAffine { field: nm(field), witness }
        }
        GeometryError::ProductOutsideSpan(a, b) => EnvelopeError::ProductOutsideSpan { left: nm(a), right: nm(b) },
        GeometryError::BracketOutsideSpan(a, b) => EnvelopeError::BracketOutsideSpan { left: nm(a), right: nm(b) },
        other => EnvelopeError::Geometry(other),
    }
}

/// Runs the whole pipeline: flatness, the per-field affine test, the ambient
/// product table, the generated subalgebra, and its opposite.
///
/// Ambient fields that are constant combinations of earlier ones are dropped
/// (and listed in the report); a dropped field may still be a generator.
pub fn compute_envelope(
    conn: &Connection,
    fields: &[VectorField],
    names: &[String],
    generators: &[String],
) -> Result<EnvelopeReport, EnvelopeError> {
    if names.len() != fields.len() {
        return Err(EnvelopeError::NameCount { names: names.len(), fields: fields.len() });
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(EnvelopeError::DuplicateName(n.clone()));
        }
    }
    if generators.is_empty() {
        return Err(EnvelopeError::NoGenerators);
    }
    let all: Vec<usize> = (0..fields.len()).collect();
    let mut checks = Vec::new();

    if let Some(msg) = geometry::flatness_witness(conn) {
        return Err(EnvelopeError::NotFlat(msg));
    }
    checks.push(Check::pass("flat"));
    for (i, f) in fields.iter().enumerate() {
        let r = geometry::is_infinitesimal_affine(conn, f).map_err(|e| named(e, names, &all))?;
        if let Some(witness) = r.witness {
            return Err(EnvelopeError::NotAffine { field: names[i].clone(), witness });
        }
        checks.push(Check::pass(&format!("iat:{}", names[i])));
    }

    let kept = geometry::independent_subset(fields);
    let dropped: Vec<String> = (0..fields.len()).filter(|i| !kept.contains(i)).map(|i| names[i].clone()).collect();
    let kept_fields: Vec<VectorField> = kept.iter().map(|&i| fields[i].clone()).collect();
    let kept_names: Vec<String> = kept.iter().map(|&i| names[i].clone()).collect();

    let ambient =
        geometry::product_table(conn, &kept_fields, kept_names.clone()).map_err(|e| named(e, names, &kept))?;
    let brackets = geometry::bracket_table(&kept_fields, kept_names.clone()).map_err(|e| named(e, names, &kept))?;

    let solver = SpanSolver::for_fields(&kept_fields);
    let mut gen_vecs = Vec::with_capacity(generators.len());
    for g in generators {
        let idx = names.iter().position(|n| n == g).ok_or_else(|| EnvelopeError::UnknownGenerator(g.clone()))?;
        gen_vecs.push(solver.express(fields[idx].coeffs()).expect("every field lies in the kept span"));
    }

    checks.push(Check::from_identity("ambient-associative", &ambient.check_associative()));
    checks.push(commutator_check("ambient-commutator-is-bracket", &ambient, &brackets, false));

    let closure = ambient.subalgebra_closure(&gen_vecs)?;
    let closure_names = ambient.subspace_names(&closure);
    let closure_algebra = ambient.restrict(&closure, closure_names.clone())?;
    let closure_brackets = brackets.restrict(&closure, closure_names)?;
    let envelope = closure_algebra.opposite();

    checks.push(Check::from_identity("envelope-associative", &envelope.check_associative()));
    checks.push(commutator_check("envelope-commutator-is-minus-bracket", &envelope, &closure_brackets, true));
    let commutator = envelope.commutator_algebra()?;
    let bi = verify_bi_invariant_criterion(&commutator, &envelope)?;
    checks.push(Check::new("bi-invariant", bi, None));
    checks.push(Check::new("generators-in-closure", gen_vecs.iter().all(|g| closure.contains(g)), None));

    Ok(EnvelopeReport {
        ambient,
        dropped,
        generator_names: generators.to_vec(),
        generators: gen_vecs,
        closure,
        closure_algebra,
        envelope,
        commutator,
        checks,
    })
}

/// Compares `uv − vu` in `alg` with `brackets` (negated when `negate`),
/// recording the first differing basis pair.
fn commutator_check(name: &str, alg: &SCAlgebra, brackets: &SCAlgebra, negate: bool) -> Check {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let comm: Vector = alg.product(i, j).iter().zip(alg.product(j, i)).map(|(a, b)| a - b).collect();
            let mut want = brackets.product(i, j);
            if negate {
                want = want.iter().map(|x| -x).collect();
            }
            if comm != want {
                return Check::new(name, false, Some(format!("pair ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Check::pass(name)
}

/// Whether `a` is associative with commutator equal to `l` entrywise, i.e.
/// whether `a` is a flat affine bi-invariant structure on `l`.
pub fn verify_bi_invariant_criterion(l: &LieAlgebraSC, a: &SCAlgebra) -> Result<bool, AlgebraError> {
    if l.dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch(l.dim(), a.dim()));
    }
    if !a.check_associative().holds {
        return Ok(false);
    }
    let comm = a.commutator_algebra()?;
    Ok(comm.constants() == l.constants())
}
