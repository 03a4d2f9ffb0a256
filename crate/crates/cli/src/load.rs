//! Turns a parsed task file into resolved jobs. Everything that can go wrong
//! with the input itself is caught here, before any task runs.

use std::collections::HashMap;
use std::fmt;

use flataffine::algebra::json::AlgebraDoc;
use flataffine::algebra::SCAlgebra;
use flataffine::geometry::{connection_from_frame, Connection, Frame, VectorField};
use flataffine::linalg::{self, Vector};
use flataffine::symcore::{parse_expr, parse_rational, Chart, RationalFunction};
use serde::de::DeserializeOwned;

use crate::schema::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    /// Location in the document, e.g. `tasks[2].inputs.field`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

fn err(path: impl Into<String>, message: impl fmt::Display) -> InputError {
    InputError { path: path.into(), message: message.to_string() }
}

/// Parses the document, reporting schema violations with their path.
pub fn parse_task_file(text: &str) -> Result<TaskFile, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: TaskFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        err(if path == "." { String::new() } else { path }, e.inner())
    })?;
    if file.schema != SCHEMA_VERSION {
        return Err(err("schema", format!("unsupported schema version {}, expected {SCHEMA_VERSION}", file.schema)));
    }
    Ok(file)
}

#[derive(Debug, Clone)]
pub struct NamedField {
    pub name: String,
    pub field: VectorField,
}

#[derive(Debug, Clone)]
pub struct NamedConnection {
    pub name: String,
    pub conn: Connection,
}

#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub name: String,
    pub alg: SCAlgebra,
}

#[derive(Debug, Clone)]
pub enum Job {
    /// check-lsa, check-associative, commutator, opposite, adjoin-unit
    Algebra(NamedAlgebra),
    /// is-unit, left-mult
    Element {
        alg: NamedAlgebra,
        element: Vector,
    },
    Closure {
        alg: NamedAlgebra,
        generators: Vec<Vector>,
    },
    /// torsion, curvature, flatness
    Connection(NamedConnection),
    CheckIat {
        conn: NamedConnection,
        field: NamedField,
    },
    SolveIat {
        conn: NamedConnection,
        terms: Vec<RationalFunction>,
    },
    CovariantDerivative {
        conn: NamedConnection,
        x: NamedField,
        y: NamedField,
    },
    LieBracket {
        x: NamedField,
        y: NamedField,
    },
    Express {
        target: NamedField,
        basis: Vec<NamedField>,
    },
    Differentiate {
        f: RationalFunction,
        var: String,
    },
    ProductTable {
        conn: NamedConnection,
        fields: Vec<NamedField>,
        expected: Option<NamedAlgebra>,
    },
    BracketTable {
        fields: Vec<NamedField>,
    },
    Envelope {
        conn: NamedConnection,
        fields: Vec<NamedField>,
        generators: Vec<String>,
    },
    BiInvariant {
        bracket: NamedAlgebra,
        alg: NamedAlgebra,
    },
}

#[derive(Debug, Clone)]
pub struct ResolvedTask {
    pub id: String,
    pub kind: TaskKind,
    pub output: Option<String>,
    pub job: Job,
}

#[derive(Default)]
struct Context {
    charts: HashMap<String, Chart>,
    algebras: HashMap<String, SCAlgebra>,
    fields: HashMap<String, VectorField>,
    connections: HashMap<String, Connection>,
}

fn define<T>(map: &mut HashMap<String, T>, path: String, name: &str, value: T) -> Result<(), InputError> {
    if map.contains_key(name) {
        return Err(err(path, format!("`{name}` is defined twice")));
    }
    map.insert(name.to_string(), value);
    Ok(())
}

impl Context {
    fn chart(&self, path: String, name: &str) -> Result<Chart, InputError> {
        self.charts.get(name).cloned().ok_or_else(|| err(path, format!("unknown chart `{name}`")))
    }

    fn algebra(&self, path: String, name: &str) -> Result<NamedAlgebra, InputError> {
        let alg = self.algebras.get(name).cloned().ok_or_else(|| err(path, format!("unknown algebra `{name}`")))?;
        Ok(NamedAlgebra { name: name.to_string(), alg })
    }

    fn field(&self, path: String, name: &str) -> Result<NamedField, InputError> {
        let field = self.fields.get(name).cloned().ok_or_else(|| err(path, format!("unknown field `{name}`")))?;
        Ok(NamedField { name: name.to_string(), field })
    }

    fn fields(&self, path: &str, names: &[String]) -> Result<Vec<NamedField>, InputError> {
        names.iter().enumerate().map(|(i, n)| self.field(format!("{path}[{i}]"), n)).collect()
    }

    fn connection(&self, path: String, name: &str) -> Result<NamedConnection, InputError> {
        let conn =
            self.connections.get(name).cloned().ok_or_else(|| err(path, format!("unknown connection `{name}`")))?;
        Ok(NamedConnection { name: name.to_string(), conn })
    }
}

fn same_chart(path: &str, chart: &Chart, fields: &[&NamedField]) -> Result<(), InputError> {
    for f in fields {
        if f.field.chart() != chart {
            return Err(err(
                path,
                format!("field `{}` lives on chart `{}`, expected `{}`", f.name, f.field.chart().name(), chart.name()),
            ));
        }
    }
    Ok(())
}

fn element(path: String, alg: &SCAlgebra, e: &ElementInput) -> Result<Vector, InputError> {
    match e {
        ElementInput::Name(n) => alg
            .basis_names()
            .iter()
            .position(|b| b == n)
            .map(|i| linalg::unit_vector(alg.dim(), i))
            .ok_or_else(|| err(path, format!("unknown basis element `{n}`"))),
        ElementInput::Vector(v) => {
            if v.len() != alg.dim() {
                return Err(err(path, format!("expected {} coordinates, got {}", alg.dim(), v.len())));
            }
            v.iter().enumerate().map(|(i, s)| parse_rational(s).map_err(|e| err(format!("{path}[{i}]"), e))).collect()
        }
    }
}

fn inputs<T: DeserializeOwned>(path: &str, v: &serde_json::Value) -> Result<T, InputError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let p = if inner == "." { path.to_string() } else { format!("{path}.{inner}") };
        err(p, e.inner())
    })
}

/// Builds every definition and resolves every task.
pub fn resolve(file: &TaskFile) -> Result<Vec<ResolvedTask>, InputError> {
    let mut cx = Context::default();
    for (i, c) in file.charts.iter().enumerate() {
        let path = format!("charts[{i}]");
        let chart = Chart::new(&c.name, c.variables.iter().cloned()).map_err(|e| err(path.clone(), e))?;
        define(&mut cx.charts, path, &c.name, chart)?;
    }
    for (i, a) in file.algebras.iter().enumerate() {
        let path = format!("algebras[{i}]");
        let doc = AlgebraDoc { dim: a.dim, basis: a.basis.clone(), products: a.products.clone(), unit: a.unit.clone() };
        let alg = doc.to_algebra().map_err(|e| err(path.clone(), e))?;
        define(&mut cx.algebras, path, &a.name, alg)?;
    }
    for (i, f) in file.fields.iter().enumerate() {
        let path = format!("fields[{i}]");
        let chart = cx.chart(format!("{path}.chart"), &f.chart)?;
        if f.coeffs.len() != chart.dim() {
            return Err(err(
                format!("{path}.coeffs"),
                format!("expected {} coefficients, got {}", chart.dim(), f.coeffs.len()),
            ));
        }
        let coeffs = f
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, s)| parse_expr(s, &chart).map_err(|e| err(format!("{path}.coeffs[{k}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        let field = VectorField::new(&chart, coeffs).map_err(|e| err(path.clone(), e))?;
        define(&mut cx.fields, path, &f.name, field)?;
    }
    for (i, c) in file.connections.iter().enumerate() {
        let path = format!("connections[{i}]");
        let chart = cx.chart(format!("{path}.chart"), &c.chart)?;
        let conn = match (&c.christoffel, &c.frame) {
            (Some(entries), None) => {
                let n = chart.dim();
                let mut parsed = Vec::with_capacity(entries.len());
                for (e, g) in entries.iter().enumerate() {
                    let p = format!("{path}.christoffel[{e}]");
                    for (label, v) in [("k", g.k), ("i", g.i), ("j", g.j)] {
                        if v == 0 || v > n {
                            return Err(err(format!("{p}.{label}"), format!("index {v} outside 1..={n}")));
                        }
                    }
                    let expr = parse_expr(&g.expr, &chart).map_err(|e| err(format!("{p}.expr"), e))?;
                    parsed.push((g.k - 1, g.i - 1, g.j - 1, expr));
                }
                Connection::from_christoffels(&chart, parsed).map_err(|e| err(path.clone(), e))?
            }
            (None, Some(frame)) => {
                let fields = cx.fields(&format!("{path}.frame.fields"), &frame.fields)?;
                same_chart(&format!("{path}.frame.fields"), &chart, &fields.iter().collect::<Vec<_>>())?;
                let alg = cx.algebra(format!("{path}.frame.algebra"), &frame.algebra)?;
                let fr = Frame::new(&chart, fields.into_iter().map(|f| f.field).collect())
                    .map_err(|e| err(format!("{path}.frame"), e))?;
                connection_from_frame(&fr, &alg.alg).map_err(|e| err(format!("{path}.frame"), e))?
            }
            _ => return Err(err(path, "give exactly one of `christoffel` or `frame`")),
        };
        define(&mut cx.connections, path, &c.name, conn)?;
    }

    let mut out = Vec::with_capacity(file.tasks.len());
    let mut ids: Vec<String> = Vec::new();
    for (i, t) in file.tasks.iter().enumerate() {
        let path = format!("tasks[{i}]");
        let id = t.id.clone().unwrap_or_else(|| format!("task{}", i + 1));
        if ids.contains(&id) {
            return Err(err(format!("{path}.id"), format!("duplicate task id `{id}`")));
        }
        ids.push(id.clone());
        let ip = format!("{path}.inputs");
        let job = resolve_job(&cx, t.kind, &ip, &t.inputs)?;
        out.push(ResolvedTask { id, kind: t.kind, output: t.output.clone(), job });
    }
    Ok(out)
}

fn resolve_job(cx: &Context, kind: TaskKind, ip: &str, v: &serde_json::Value) -> Result<Job, InputError> {
    let p = |s: &str| format!("{ip}.{s}");
    Ok(match kind {
        TaskKind::CheckLsa
        | TaskKind::CheckAssociative
        | TaskKind::Commutator
        | TaskKind::Opposite
        | TaskKind::AdjoinUnit => {
            let a: AlgebraInput = inputs(ip, v)?;
            Job::Algebra(cx.algebra(p("algebra"), &a.algebra)?)
        }
        TaskKind::IsUnit | TaskKind::LeftMult => {
            let a: ElementTaskInput = inputs(ip, v)?;
            let alg = cx.algebra(p("algebra"), &a.algebra)?;
            let element = element(p("element"), &alg.alg, &a.element)?;
            Job::Element { alg, element }
        }
        TaskKind::Closure => {
            let a: ClosureInput = inputs(ip, v)?;
            let alg = cx.algebra(p("algebra"), &a.algebra)?;
            let generators = a
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| element(format!("{ip}.generators[{i}]"), &alg.alg, g))
                .collect::<Result<_, _>>()?;
            Job::Closure { alg, generators }
        }
        TaskKind::Torsion | TaskKind::Curvature | TaskKind::Flatness => {
            let a: ConnectionInput = inputs(ip, v)?;
            Job::Connection(cx.connection(p("connection"), &a.connection)?)
        }
        TaskKind::CheckIat => {
            let a: IatInput = inputs(ip, v)?;
            let conn = cx.connection(p("connection"), &a.connection)?;
            let field = cx.field(p("field"), &a.field)?;
            same_chart(&p("field"), conn.conn.chart(), &[&field])?;
            Job::CheckIat { conn, field }
        }
        TaskKind::SolveIat => {
            let a: SolveIatInput = inputs(ip, v)?;
            let conn = cx.connection(p("connection"), &a.connection)?;
            let terms = a
                .terms
                .iter()
                .enumerate()
                .map(|(i, s)| parse_expr(s, conn.conn.chart()).map_err(|e| err(format!("{ip}.terms[{i}]"), e)))
                .collect::<Result<_, _>>()?;
            Job::SolveIat { conn, terms }
        }
        TaskKind::CovariantDerivative => {
            let a: CovariantInput = inputs(ip, v)?;
            let conn = cx.connection(p("connection"), &a.connection)?;
            let x = cx.field(p("x"), &a.x)?;
            let y = cx.field(p("y"), &a.y)?;
            same_chart(ip, conn.conn.chart(), &[&x, &y])?;
            Job::CovariantDerivative { conn, x, y }
        }
        TaskKind::LieBracket => {
            let a: BracketInput = inputs(ip, v)?;
            let x = cx.field(p("x"), &a.x)?;
            let y = cx.field(p("y"), &a.y)?;
            same_chart(ip, x.field.chart(), &[&y])?;
            Job::LieBracket { x, y }
        }
        TaskKind::Express => {
            let a: ExpressInput = inputs(ip, v)?;
            let target = cx.field(p("target"), &a.target)?;
            let basis = cx.fields(&p("basis"), &a.basis)?;
            same_chart(&p("basis"), target.field.chart(), &basis.iter().collect::<Vec<_>>())?;
            Job::Express { target, basis }
        }
        TaskKind::Differentiate => {
            let a: DifferentiateInput = inputs(ip, v)?;
            let chart = cx.chart(p("chart"), &a.chart)?;
            let f = parse_expr(&a.expr, &chart).map_err(|e| err(p("expr"), e))?;
            chart.var_index(&a.var).map_err(|e| err(p("var"), e))?;
            Job::Differentiate { f, var: a.var }
        }
        TaskKind::ProductTable => {
            let a: ProductTableInput = inputs(ip, v)?;
            let conn = cx.connection(p("connection"), &a.connection)?;
            let fields = cx.fields(&p("fields"), &a.fields)?;
            same_chart(&p("fields"), conn.conn.chart(), &fields.iter().collect::<Vec<_>>())?;
            let expected = a.expected.as_deref().map(|e| cx.algebra(p("expected"), e)).transpose()?;
            if let Some(e) = &expected {
                if e.alg.dim() != fields.len() {
                    return Err(err(
                        p("expected"),
                        format!(
                            "algebra `{}` has dimension {}, but {} fields are given",
                            e.name,
                            e.alg.dim(),
                            fields.len()
                        ),
                    ));
                }
            }
            Job::ProductTable { conn, fields, expected }
        }
        TaskKind::BracketTable => {
            let a: FieldsInput = inputs(ip, v)?;
            let fields = cx.fields(&p("fields"), &a.fields)?;
            if let Some(first) = fields.first() {
                same_chart(&p("fields"), first.field.chart(), &fields.iter().collect::<Vec<_>>())?;
            }
            Job::BracketTable { fields }
        }
        TaskKind::Envelope => {
            let a: EnvelopeInput = inputs(ip, v)?;
            let conn = cx.connection(p("connection"), &a.connection)?;
            let fields = cx.fields(&p("fields"), &a.fields)?;
            same_chart(&p("fields"), conn.conn.chart(), &fields.iter().collect::<Vec<_>>())?;
            for (i, g) in a.generators.iter().enumerate() {
                if !a.fields.contains(g) {
                    return Err(err(format!("{ip}.generators[{i}]"), format!("`{g}` is not among the ambient fields")));
                }
            }
            Job::Envelope { conn, fields, generators: a.generators }
        }
        TaskKind::BiInvariantCheck => {
            let a: BiInvariantInput = inputs(ip, v)?;
            Job::BiInvariant {
                bracket: cx.algebra(p("bracket"), &a.bracket)?,
                alg: cx.algebra(p("algebra"), &a.algebra)?,
            }
        }
    })
}
