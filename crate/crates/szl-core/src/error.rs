use thiserror::Error;

/// Errors shared across the crate. Anything that violates a documented
/// precondition surfaces here; internal search failures that a theorem rules
/// out panic instead of returning.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("vertex count {0} outside 1..={max}", max = crate::graph::N_MAX)]
    VertexCountOutOfRange(usize),

    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("duplicate edge entry for pair {{{u}, {v}}}")]
    DuplicatePair { u: usize, v: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("lift path needs at least two vertices")]
    PathTooShort,

    #[error("lift path endpoints coincide at vertex {0}; lifting would create a loop")]
    ClosedPath(usize),

    #[error("lift path uses missing edge {{{u}, {v}}}")]
    MissingPathEdge { u: usize, v: usize },

    #[error("canonical codes support at most {max} vertices, got {n}", max = crate::graph::CANON_N_MAX)]
    CanonicalTooLarge { n: usize },

    #[error("modulus parameter {0} outside 2..={max}", max = crate::boundary::ELL_MAX)]
    EllOutOfRange(u32),

    #[error("boundary has {len} values but the graph has {n} vertices")]
    BoundaryArity { len: usize, n: usize },

    #[error("residue {value} out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u32, modulus: u32 },

    #[error("residue set moduli differ: {a} vs {b}")]
    ModulusMismatch { a: u32, b: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("operation requires {expected} vertices, graph has {n}")]
    WrongVertexCount { n: usize, expected: usize },

    #[error("cache i/o: {0}")]
    CacheIo(String),

    #[error("cache header mismatch: expected \"{expected}\", found \"{found}\"")]
    CacheVersion { expected: String, found: String },

    #[error("cache parse error at line {line}: {reason}")]
    CacheParse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
