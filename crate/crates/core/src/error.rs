use thiserror::Error;

/// Errors raised by the computational core.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring context mismatch: {left} vs {right} variables")]
    ContextMismatch { left: usize, right: usize },

    #[error("unsupported number of variables {0} (supported: 1..={max})", max = crate::monomial::MAX_VARS)]
    UnsupportedVariableCount(usize),

    #[error("monomial has {got} exponents, ring has {expected} variables")]
    ExponentLength { expected: usize, got: usize },

    #[error("ideal J is not m-primary")]
    JNotPrimary,

    #[error("family needs at least one ideal I_i")]
    NoIdeals,

    #[error("multidegree or type has {got} components, family has d = {expected}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("infinite length where a finite length was required ({0})")]
    InfiniteLength(&'static str),

    #[error("Hilbert function did not stabilize up to base offset {last_base}; residuals at {residuals:?}")]
    Stabilization {
        last_base: usize,
        residuals: Vec<(Vec<usize>, i128)>,
    },

    #[error("elements do not form a multiplicity system of the module")]
    NotMultiplicitySystem,

    #[error("ideal is not an ideal of definition of the module")]
    NotIdealOfDefinition,

    #[error("joint reduction type needs at least one J-element")]
    EmptyJPart,

    #[error("candidate element {element} is not in its source ideal {source_name}")]
    ElementNotInSource { element: String, source_name: String },

    #[error("candidate does not match declared type: {0}")]
    TypeMismatch(String),

    #[error("ideal index {0} is out of range")]
    IdealIndex(usize),

    #[error("difference table of type {0} is not constant on the stabilized window")]
    NonConstantDifference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
