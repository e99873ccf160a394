use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UndeclaredVertex { arrow: String, vertex: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed path word: {0}")]
    BadWord(String),
    #[error("letters do not compose into a path")]
    NotAPath,
    #[error("path is not closed")]
    NotClosed,
    #[error("path is not multilinear")]
    NotMultilinear,
    #[error("not a tree path")]
    NotTreePath,
    #[error("cannot glue vertex `{0}` to itself")]
    SelfGlue(String),
    #[error("{what} exceeds the cap ({value} > {cap})")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("parameter variable already occurs in the polynomial")]
    ParamNotFresh,
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("point lives over characteristic {found}, expected {expected}")]
    CharacteristicMismatch { expected: u64, found: u64 },
    #[error("polynomial is not multihomogeneous")]
    NotHomogeneous,
    #[error("{0} is neither 0 nor a prime")]
    BadCharacteristic(u64),
    #[error("quiver is not tree-like")]
    NotTreeLike,
    #[error("underlying graph of the quiver is not a tree")]
    NotTree,
    #[error("coloring is not good")]
    BadColoring,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
