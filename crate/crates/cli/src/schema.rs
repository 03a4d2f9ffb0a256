//! Serde model of the task file. Indices are 1-based and rationals are
//! strings, as in the algebra JSON form.

use serde::Deserialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    pub schema: u64,
    #[serde(default)]
    pub charts: Vec<ChartDef>,
    #[serde(default)]
    pub algebras: Vec<AlgebraDef>,
    #[serde(default)]
    pub fields: Vec<FieldDef>,
    #[serde(default)]
    pub connections: Vec<ConnectionDef>,
    #[serde(default)]
    pub tasks: Vec<TaskDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDef {
    pub name: String,
    pub variables: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub products: Vec<flataffine::algebra::json::ProductDoc>,
    #[serde(default)]
    pub unit: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDef {
    pub name: String,
    pub chart: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChristoffelDef {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub expr: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDef {
    /// Frame fields by name, paired in order with the algebra basis.
    pub fields: Vec<String>,
    pub algebra: String,
}

/// Either `christoffel` (possibly empty, for `Γ = 0`) or `frame`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionDef {
    pub name: String,
    pub chart: String,
    #[serde(default)]
    pub christoffel: Option<Vec<ChristoffelDef>>,
    #[serde(default)]
    pub frame: Option<FrameDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDef {
    #[serde(default)]
    pub id: Option<String>,
    pub kind: TaskKind,
    #[serde(default)]
    pub inputs: Value,
    /// Extra file, relative to the output directory, receiving this task's
    /// JSON report.
    #[serde(default)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    CheckLsa,
    CheckAssociative,
    Commutator,
    Opposite,
    AdjoinUnit,
    IsUnit,
    LeftMult,
    Closure,
    Torsion,
    Curvature,
    Flatness,
    CheckIat,
    SolveIat,
    CovariantDerivative,
    LieBracket,
    Express,
    Differentiate,
    ProductTable,
    BracketTable,
    Envelope,
    BiInvariantCheck,
}

impl TaskKind {
    pub const ALL: [TaskKind; 21] = [
        TaskKind::CheckLsa,
        TaskKind::CheckAssociative,
        TaskKind::Commutator,
        TaskKind::Opposite,
        TaskKind::AdjoinUnit,
        TaskKind::IsUnit,
        TaskKind::LeftMult,
        TaskKind::Closure,
        TaskKind::Torsion,
        TaskKind::Curvature,
        TaskKind::Flatness,
        TaskKind::CheckIat,
        TaskKind::SolveIat,
        TaskKind::CovariantDerivative,
        TaskKind::LieBracket,
        TaskKind::Express,
        TaskKind::Differentiate,
        TaskKind::ProductTable,
        TaskKind::BracketTable,
        TaskKind::Envelope,
        TaskKind::BiInvariantCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::CheckLsa => "check-lsa",
            TaskKind::CheckAssociative => "check-associative",
            TaskKind::Commutator => "commutator",
            TaskKind::Opposite => "opposite",
            TaskKind::AdjoinUnit => "adjoin-unit",
            TaskKind::IsUnit => "is-unit",
            TaskKind::LeftMult => "left-mult",
            TaskKind::Closure => "closure",
            TaskKind::Torsion => "torsion",
            TaskKind::Curvature => "curvature",
            TaskKind::Flatness => "flatness",
            TaskKind::CheckIat => "check-iat",
            TaskKind::SolveIat => "solve-iat",
            TaskKind::CovariantDerivative => "covariant-derivative",
            TaskKind::LieBracket => "lie-bracket",
            TaskKind::Express => "express",
            TaskKind::Differentiate => "differentiate",
            TaskKind::ProductTable => "product-table",
            TaskKind::BracketTable => "bracket-table",
            TaskKind::Envelope => "envelope",
            TaskKind::BiInvariantCheck => "bi-invariant-check",
        }
    }
}

// ---- per-kind inputs ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraInput {
    pub algebra: String,
}

/// A basis element by name or a coordinate vector of rational strings.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ElementInput {
    Name(String),
    Vector(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementTaskInput {
    pub algebra: String,
    pub element: ElementInput,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureInput {
    pub algebra: String,
    pub generators: Vec<ElementInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionInput {
    pub connection: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IatInput {
    pub connection: String,
    pub field: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveIatInput {
    pub connection: String,
    pub terms: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovariantInput {
    pub connection: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketInput {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpressInput {
    pub target: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentiateInput {
    pub chart: String,
    pub expr: String,
    pub var: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductTableInput {
    pub connection: String,
    pub fields: Vec<String>,
    /// Algebra to compare the computed table against, cell by cell.
    #[serde(default)]
    pub expected: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldsInput {
    pub fields: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeInput {
    pub connection: String,
    pub fields: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiInvariantInput {
    /// Algebra whose constants are the Lie bracket.
    pub bracket: String,
    pub algebra: String,
}
