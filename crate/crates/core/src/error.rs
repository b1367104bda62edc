use thiserror::Error;

/// Errors raised by the algebra, the calculus and the transformation layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right} generators")]
    AlgebraMismatch { left: usize, right: usize },

    #[error("generator count {0} exceeds the supported maximum of {max}", max = crate::grassmann::MAX_GENERATORS)]
    TooManyGenerators(usize),

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("not invertible: {0}")]
    NotInvertible(&'static str),

    #[error("parity: {0}")]
    Parity(String),

    #[error("composition requires even argument")]
    CompositionRequiresEven,

    #[error("not invertible as function: {0}")]
    NotInvertibleAsFunction(&'static str),

    #[error("Berezinian does not exist: body of the lower-right entry vanishes identically")]
    BerezinianDoesNotExist,

    #[error("not superconformal: the condition Delta = 0 fails")]
    NotSuperconformal,

    #[error("not twist-parity: the condition Q = 0 fails")]
    NotTwistParity,

    #[error("undefined spin product: only (+1)*(+1) and (+1)*(-1) are defined")]
    UndefinedSpinProduct,

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
