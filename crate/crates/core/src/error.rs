use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("tuple must have at least 2 entries, got {0}")]
    TupleTooShort(usize),
    #[error("generator index {k} out of range 1..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("tuple {0} is not a 0/1 tuple")]
    NotBinaryTuple(String),
    #[error("evaluation at t = 0 of a scalar with negative exponents")]
    EvalAtZero,
    #[error("scalar parse error at byte {pos}: {msg}")]
    ScalarParse { pos: usize, msg: String },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("zero scale at column {0}")]
    ZeroScale(usize),
    #[error("scale at column {0} is not a unit of the Laurent ring")]
    NonInvertibleScale(usize),
    #[error("q-table has no entry for pair ({0},{1})")]
    MissingQEntry(u32, u32),
    #[error("q-table entry for pair ({0},{1}) is zero")]
    ZeroQEntry(u32, u32),
    #[error("parameters out of range: {0}")]
    BadRange(String),
    #[error("braid word parse error at byte {pos}: {msg}")]
    WordParse { pos: usize, msg: String },
    #[error("generator 0 at byte {pos} is not allowed")]
    ZeroGenerator { pos: usize },
    #[error("generator {letter} out of range for {strands} strands")]
    GeneratorOutOfRange { letter: i32, strands: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}
