use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedFields,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("section is not valid: s(g)s(h)s(gh)^-1 leaves the kernel at (g, h) = ({g}, {h})")]
    SectionNotValid { g: usize, h: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("missing structure: {0}")]
    MissingStructure(&'static str),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("carrier too large: {size} exceeds the bound {bound}")]
    CarrierTooLarge { size: u128, bound: u128 },
    #[error("compositor c({g}, {h}) is not invertible")]
    NonInvertibleCompositor { g: usize, h: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("basis is not homogeneous: {0}")]
    InhomogeneousBasis(String),
    #[error("no group action is available on this algebra")]
    NoActionOnAlgebra,
    #[error("invalid strictification: {0}")]
    InvalidStrictification(String),
    #[error("module is not homogeneous of degree {0}")]
    ModuleNotHomogeneous(usize),
    #[error("twist element is not invertible")]
    NonInvertibleTwist,
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{object}: {law} fails at {witness:?}")]
    Validation { object: String, law: String, witness: Vec<usize> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
