use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range at {cell} (carrier has {size} elements)")]
    IndexOutOfRange { cell: String, index: usize, size: usize },
    #[error("unit law fails at {cell}: expected {expected}, found {found}")]
    UnitLawViolation { cell: String, expected: usize, found: usize },
    #[error("zero law fails at {cell}")]
    ZeroLawViolation { cell: String },
    #[error("zero element must differ from the unit")]
    ZeroIsUnit,
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("table is {rows}x{cols} but carrier has {size} elements")]
    TableShape { rows: usize, cols: usize, size: usize },

    #[error("relation syntax error at offset {offset}: {message}")]
    Relation { offset: usize, message: String },
    #[error("conflicting relation: {0}")]
    ConflictingRelation(String),
    #[error("missing product {0} (carrier without zero needs a full table)")]
    MissingProduct(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { offset: usize, name: String },
    #[error("identity mixes `*` and `[.,.]` products (offset {offset})")]
    MixedProductSymbols { offset: usize },
    #[error("twist applied to a compound subterm; S-transform undefined")]
    NotSApplicable,
    #[error("cyclic-sum identities need an additive carrier")]
    CyclicNotSupportedOnMagma,
    #[error("identity uses the unit constant but the carrier has no unit")]
    UnitUndefined,
    #[error("variable `{0}` occurs more than once; basis checking would be incomplete")]
    NotMultilinear(char),
    #[error("unknown type tag `{0}`")]
    UnknownTag(String),
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),

    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what}: expected {expected}, found {found}")]
    Dimension { what: String, expected: usize, found: usize },
    #[error("bracket is not skew: c[{i}][{j}][{k}]")]
    SkewViolation { i: usize, j: usize, k: usize },
    #[error("unit vector fails the unit law on basis vector e{0}")]
    UnitVectorViolation(usize),
    #[error("operation needs a skew (bracket) product")]
    NotSkew,

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("structure is not weakly left unital")]
    NotWeaklyUnital,
    #[error("twisting map is not invertible")]
    AlphaNotInvertible,

    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
