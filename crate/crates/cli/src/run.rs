//! Executes resolved jobs. Each job yields a JSON result and a text body
//! rendered from the same values.

use std::fmt::Write as _;
use std::time::Instant;

use flataffine::algebra::json::AlgebraDoc;
use flataffine::algebra::{format_element, render_table, IdentityReport, LieAlgebraSC, SCAlgebra};
use flataffine::envelope::{compute_envelope, verify_bi_invariant_criterion};
use flataffine::geometry::{
    bracket_table, covariant_derivative, curvature, express_in_basis, flatness_witness, is_infinitesimal_affine,
    lie_bracket, product_table, solve_iat_ansatz, torsion, TensorReport, VectorField,
};
use flataffine::symcore::{format_rational, Chart, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::load::{Job, NamedAlgebra, NamedField, ResolvedTask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Ran, and any verdict holds.
    Ok,
    /// Ran, with a negative verdict.
    Failed,
    /// A computation could not be completed.
    Error,
    /// Not run because of `--fail-fast`.
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskReport {
    pub id: String,
    pub kind: &'static str,
    pub status: Status,
    /// Present for verdict-type tasks that ran.
    pub verdict: Option<bool>,
    pub result: Value,
    pub witness: Option<String>,
    pub error: Option<String>,
    pub timing_ms: f64,
    #[serde(skip)]
    pub text: String,
}

struct Outcome {
    verdict: Option<bool>,
    result: Value,
    text: String,
    witness: Option<String>,
}

impl Outcome {
    fn info(result: Value, text: String) -> Self {
        Outcome { verdict: None, result, text, witness: None }
    }
}

pub fn run_task(task: &ResolvedTask) -> TaskReport {
    let start = Instant::now();
    let outcome = execute(task);
    let timing_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    let mut report = TaskReport {
        id: task.id.clone(),
        kind: task.kind.name(),
        status: Status::Ok,
        verdict: None,
        result: Value::Null,
        witness: None,
        error: None,
        timing_ms,
        text: String::new(),
    };
    match outcome {
        Ok(o) => {
            report.status = if o.verdict == Some(false) { Status::Failed } else { Status::Ok };
            report.verdict = o.verdict;
            report.result = o.result;
            report.witness = o.witness;
            report.text = o.text;
        }
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(e);
        }
    }
    report
}

pub fn skipped(task: &ResolvedTask) -> TaskReport {
    TaskReport {
        id: task.id.clone(),
        kind: task.kind.name(),
        status: Status::Skipped,
        verdict: None,
        result: Value::Null,
        witness: None,
        error: None,
        timing_ms: 0.0,
        text: String::new(),
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn algebra_json(a: &SCAlgebra) -> Value {
    serde_json::to_value(AlgebraDoc::from_algebra(a)).expect("algebra docs serialize")
}

fn field_json(f: &VectorField) -> Value {
    json!(f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn triple_names(a: &SCAlgebra, (i, j, k): (usize, usize, usize)) -> String {
    let b = a.basis_names();
    format!("({}, {}, {}) = ({}, {}, {})", i + 1, j + 1, k + 1, b[i], b[j], b[k])
}

fn identity(alg: &NamedAlgebra, r: &IdentityReport, what: &str) -> Outcome {
    let witness = r.witness.map(|t| format!("triple {}", triple_names(&alg.alg, t)));
    let result = json!({
        "algebra": alg.name,
        "holds": r.holds,
        "witness": r.witness.map(|(i, j, k)| [i + 1, j + 1, k + 1]),
    });
    let text = format!("{} is {}{what}\n", alg.name, if r.holds { "" } else { "not " });
    Outcome { verdict: Some(r.holds), result, text, witness }
}

fn tensor_json(chart: &Chart, t: &TensorReport) -> Value {
    let vars = chart.variables();
    let comps: Vec<Value> = t
        .nonzero()
        .into_iter()
        .map(|(idx, c)| json!({ "index": idx.iter().map(|&i| vars[i].clone()).collect::<Vec<_>>(), "value": c.to_string() }))
        .collect();
    json!({ "vanishes": t.is_zero(), "nonzero": comps })
}

fn tensor_text(label: &str, chart: &Chart, t: &TensorReport) -> String {
    let vars = chart.variables();
    let nz = t.nonzero();
    if nz.is_empty() {
        return format!("{label} vanishes\n");
    }
    let mut s = format!("{label}: {} nonzero components\n", nz.len());
    for (idx, c) in nz {
        let names: Vec<&str> = idx.iter().map(|&i| vars[i].as_str()).collect();
        let _ = writeln!(s, "  [{}] = {c}", names.join(","));
    }
    s
}

fn fields_text(fields: &[VectorField]) -> String {
    fields.iter().map(|f| format!("  {f}\n")).collect()
}

fn names(fields: &[NamedField]) -> Vec<String> {
    fields.iter().map(|f| f.name.clone()).collect()
}

fn bare(fields: &[NamedField]) -> Vec<VectorField> {
    fields.iter().map(|f| f.field.clone()).collect()
}

fn first_difference(got: &SCAlgebra, want: &SCAlgebra) -> Option<(usize, usize)> {
    let n = got.dim();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| got.product(i, j) != want.product(i, j))
}

fn execute(task: &ResolvedTask) -> Result<Outcome, String> {
    use crate::schema::TaskKind as K;
    let err = |e: &dyn std::fmt::Display| e.to_string();
    Ok(match (&task.job, task.kind) {
        (Job::Algebra(a), K::CheckLsa) => identity(a, &a.alg.check_left_symmetric(), "left-symmetric"),
        (Job::Algebra(a), K::CheckAssociative) => identity(a, &a.alg.check_associative(), "associative"),
        (Job::Algebra(a), K::Commutator) => match a.alg.commutator_algebra() {
            Ok(l) => Outcome {
                verdict: Some(true),
                result: json!({ "lie_admissible": true, "bracket": algebra_json(l.as_sc()) }),
                text: format!("commutator of {} (rows = left factor):\n{}", a.name, render_table(l.as_sc())),
                witness: None,
            },
            Err(flataffine::algebra::AlgebraError::Jacobi(t)) => Outcome {
                verdict: Some(false),
                result: json!({ "lie_admissible": false, "witness": [t.0 + 1, t.1 + 1, t.2 + 1] }),
                text: format!("commutator of {} violates the Jacobi identity\n", a.name),
                witness: Some(format!("triple {}", triple_names(&a.alg, t))),
            },
            Err(e) => return Err(err(&e)),
        },
        (Job::Algebra(a), K::Opposite) => {
            let op = a.alg.opposite();
            Outcome::info(
                json!({ "algebra": algebra_json(&op) }),
                format!("opposite of {}:\n{}", a.name, render_table(&op)),
            )
        }
        (Job::Algebra(a), K::AdjoinUnit) => {
            let u = a.alg.adjoin_unit();
            Outcome::info(
                json!({ "algebra": algebra_json(&u) }),
                format!("{} with an adjoined unit:\n{}", a.name, render_table(&u)),
            )
        }
        (Job::Element { alg, element }, K::IsUnit) => {
            let holds = alg.alg.is_unit(element).map_err(|e| err(&e))?;
            let shown = format_element(element, alg.alg.basis_names());
            Outcome {
                verdict: Some(holds),
                result: json!({ "element": strings(element), "is_unit": holds }),
                text: format!("{shown} is {}a unit of {}\n", if holds { "" } else { "not " }, alg.name),
                witness: (!holds).then(|| format!("left multiplication by {shown} is singular")),
            }
        }
        (Job::Element { alg, element }, K::LeftMult) => {
            let m = alg.alg.left_mult_matrix(element).map_err(|e| err(&e))?;
            let rows: Vec<Vec<String>> = m.iter().map(|r| strings(r)).collect();
            let mut text = format!("left multiplication by {}:\n", format_element(element, alg.alg.basis_names()));
            for r in &rows {
                let _ = writeln!(text, "  [{}]", r.join(", "));
            }
            Outcome::info(json!({ "element": strings(element), "matrix": rows }), text)
        }
        (Job::Closure { alg, generators }, _) => {
            let sub = alg.alg.subalgebra_closure(generators).map_err(|e| err(&e))?;
            let sub_names = alg.alg.subspace_names(&sub);
            let restricted = alg.alg.restrict(&sub, sub_names.clone()).map_err(|e| err(&e))?;
            let amb = alg.alg.basis_names();
            let mut text = format!("closure rank {} in {}\n", sub.rank(), alg.name);
            for (n, r) in sub_names.iter().zip(sub.basis()) {
                let _ = writeln!(text, "  {n} = {}", format_element(r, amb));
            }
            text.push_str(&render_table(&restricted));
            Outcome::info(
                json!({
                    "rank": sub.rank(),
                    "names": sub_names,
                    "basis": sub.basis().iter().map(|r| strings(r)).collect::<Vec<_>>(),
                    "algebra": algebra_json(&restricted),
                }),
                text,
            )
        }
        (Job::Connection(c), K::Torsion) => {
            let t = torsion(&c.conn);
            Outcome::info(
                tensor_json(c.conn.chart(), &t),
                tensor_text(&format!("torsion of {}", c.name), c.conn.chart(), &t),
            )
        }
        (Job::Connection(c), K::Curvature) => {
            let t = curvature(&c.conn);
            Outcome::info(
                tensor_json(c.conn.chart(), &t),
                tensor_text(&format!("curvature of {}", c.name), c.conn.chart(), &t),
            )
        }
        (Job::Connection(c), _) => {
            let w = flatness_witness(&c.conn);
            let flat = w.is_none();
            Outcome {
                verdict: Some(flat),
                result: json!({ "flat": flat }),
                text: format!("{} is {}flat\n", c.name, if flat { "" } else { "not " }),
                witness: w,
            }
        }
        (Job::CheckIat { conn, field }, _) => {
            let r = is_infinitesimal_affine(&conn.conn, &field.field).map_err(|e| err(&e))?;
            let vars = conn.conn.chart().variables();
            let witness = r.witness.map(|(i, j)| {
                format!(
                    "pair ({}, {}) = (d/d{}, d/d{}): residual {}",
                    i + 1,
                    j + 1,
                    vars[i],
                    vars[j],
                    r.residual.as_deref().unwrap_or("")
                )
            });
            Outcome {
                verdict: Some(r.holds),
                result: json!({
                    "field": field.name,
                    "holds": r.holds,
                    "witness": r.witness.map(|(i, j)| [i + 1, j + 1]),
                    "residual": r.residual,
                }),
                text: format!(
                    "{} is {}an infinitesimal affine transformation of {}\n",
                    field.name,
                    if r.holds { "" } else { "not " },
                    conn.name
                ),
                witness,
            }
        }
        (Job::SolveIat { conn, terms }, _) => {
            let sol = solve_iat_ansatz(&conn.conn, terms).map_err(|e| err(&e))?;
            let text = format!("{} solutions:\n{}", sol.len(), fields_text(&sol));
            Outcome::info(
                json!({ "dimension": sol.len(), "basis": sol.iter().map(field_json).collect::<Vec<_>>() }),
                text,
            )
        }
        (Job::CovariantDerivative { conn, x, y }, _) => {
            let d = covariant_derivative(&conn.conn, &x.field, &y.field).map_err(|e| err(&e))?;
            Outcome::info(json!({ "field": field_json(&d) }), format!("nabla_{} {} = {d}\n", x.name, y.name))
        }
        (Job::LieBracket { x, y }, _) => {
            let b = lie_bracket(&x.field, &y.field).map_err(|e| err(&e))?;
            Outcome::info(json!({ "field": field_json(&b) }), format!("[{}, {}] = {b}\n", x.name, y.name))
        }
        (Job::Express { target, basis }, _) => match express_in_basis(&target.field, &bare(basis)) {
            Ok(l) => {
                let shown = format_element(&l, &names(basis));
                Outcome {
                    verdict: Some(true),
                    result: json!({ "in_span": true, "coefficients": strings(&l) }),
                    text: format!("{} = {shown}\n", target.name),
                    witness: None,
                }
            }
            Err(flataffine::geometry::GeometryError::NotInSpan) => Outcome {
                verdict: Some(false),
                result: json!({ "in_span": false }),
                text: format!("{} is not a constant combination of the basis\n", target.name),
                witness: Some(format!("{} = {}", target.name, target.field)),
            },
            Err(e) => return Err(err(&e)),
        },
        (Job::Differentiate { f, var }, _) => {
            let d = f.differentiate_by(var).map_err(|e| err(&e))?;
            Outcome::info(json!({ "derivative": d.to_string() }), format!("d/d{var} ({f}) = {d}\n"))
        }
        (Job::ProductTable { conn, fields, expected }, _) => {
            let t = product_table(&conn.conn, &bare(fields), names(fields)).map_err(|e| match e {
                flataffine::geometry::GeometryError::ProductOutsideSpan(a, b) => {
                    format!("product {} * {} leaves the span of the fields", fields[a].name, fields[b].name)
                }
                flataffine::geometry::GeometryError::NotInfinitesimalAffine { field, .. } => {
                    format!("{}: {e}", fields[field].name)
                }
                other => other.to_string(),
            })?;
            let mut text = format!("product table on {} (rows = left factor):\n{}", conn.name, render_table(&t));
            let mut result = json!({ "algebra": algebra_json(&t) });
            match expected {
                None => Outcome::info(result, text),
                Some(want) => {
                    let want_alg = want.alg.renamed(t.basis_names().to_vec()).map_err(|e| err(&e))?;
                    let diff = first_difference(&t, &want_alg);
                    let names = t.basis_names();
                    let witness = diff.map(|(i, j)| {
                        format!(
                            "cell ({}, {}) = {} * {}: expected {}, got {}",
                            i + 1,
                            j + 1,
                            names[i],
                            names[j],
                            format_element(&want_alg.product(i, j), names),
                            format_element(&t.product(i, j), names)
                        )
                    });
                    result["matches"] = json!(diff.is_none());
                    result["cell"] = json!(diff.map(|(i, j)| [i + 1, j + 1]));
                    let verb = if diff.is_none() { "matches" } else { "differs from" };
                    let _ = writeln!(text, "{verb} expected `{}`", want.name);
                    Outcome { verdict: Some(diff.is_none()), result, text, witness }
                }
            }
        }
        (Job::BracketTable { fields }, _) => {
            let t = bracket_table(&bare(fields), names(fields)).map_err(|e| match e {
                flataffine::geometry::GeometryError::BracketOutsideSpan(a, b) => {
                    format!("bracket [{}, {}] leaves the span of the fields", fields[a].name, fields[b].name)
                }
                other => other.to_string(),
            })?;
            Outcome::info(json!({ "algebra": algebra_json(&t) }), format!("bracket table:\n{}", render_table(&t)))
        }
        (Job::Envelope { conn, fields, generators }, _) => {
            let r = compute_envelope(&conn.conn, &bare(fields), &names(fields), generators).map_err(|e| err(&e))?;
            let holds = r.all_checks_hold();
            let witness = r.checks.iter().find(|c| !c.holds).map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.name),
                None => c.name.clone(),
            });
            Outcome {
                verdict: Some(holds),
                result: serde_json::to_value(r.to_doc()).expect("envelope docs serialize"),
                text: r.render_text(),
                witness,
            }
        }
        (Job::BiInvariant { bracket, alg }, _) => {
            let l = LieAlgebraSC::from_sc(bracket.alg.clone()).map_err(|e| format!("{}: {e}", bracket.name))?;
            let holds = verify_bi_invariant_criterion(&l, &alg.alg).map_err(|e| err(&e))?;
            Outcome {
                verdict: Some(holds),
                result: json!({ "holds": holds }),
                text: format!(
                    "{} {} the bi-invariant criterion for {}\n",
                    alg.name,
                    if holds { "meets" } else { "fails" },
                    bracket.name
                ),
                witness: (!holds).then(|| match alg.alg.check_associative().witness {
                    Some(t) => format!("{} is not associative at triple {}", alg.name, triple_names(&alg.alg, t)),
                    None => format!("commutator of {} differs from {}", alg.name, bracket.name),
                }),
            }
        }
        (job, kind) => unreachable!("job {job:?} resolved for kind {}", kind.name()),
    })
}
