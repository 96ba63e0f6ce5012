use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by a quaternion of zero norm")]
    ZeroDivisor,

    /// The real and imaginary vector parts of a biquaternion are not orthogonal.
    #[error("norm undefined: real and imaginary parts are not orthogonal (residual {residual:e})")]
    NormUndefined { residual: f64 },

    #[error("degenerate matrix: |det| = {det:e}")]
    DegenerateMatrix { det: f64 },

    #[error("matrix is not traceless: |tr| = {trace:e}")]
    NotTraceless { trace: f64 },

    #[error("incompatible pair: |Tr(AB)| = {trace:e} must vanish")]
    IncompatiblePair { trace: f64 },

    #[error("matrix is not unimodular: |det - 1| = {deviation:e}")]
    NotUnimodular { deviation: f64 },

    #[error("matrix is not orthogonal: max |O O^T - 1| = {deviation:e}")]
    NotOrthogonal { deviation: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameterization singular: {0}")]
    ParameterizationSingularity(String),

    #[error("rotation by pi: 1 + tr O = {value:e}; compose two half-rotations instead")]
    HalfTurnSingularity { value: f64 },

    #[error("not a quaternion unit triad: max deviation {deviation:e}")]
    InvalidTriad { deviation: f64 },

    #[error("eigenfunction phase convention mismatch: residual {residual:e}")]
    PhaseConvention { residual: f64 },

    #[error("grid error: {0}")]
    Grid(String),

    #[error("grids do not match")]
    GridMismatch,

    #[error("finite-difference refinement disagreement {disagreement:e} exceeds {tolerance:e}")]
    Accuracy { disagreement: f64, tolerance: f64 },

    #[error("curve is not parameterized by arclength: |dx/ds| deviates by {deviation:e}")]
    NotArclength { deviation: f64 },

    #[error("orthogonality dx.dt = 0 violated (residual {residual:e})")]
    IntervalNotOrthogonal { residual: f64 },

    #[error("rotor extraction failed at t = {t}: {reason}")]
    RotorExtraction { t: f64, reason: String },

    #[error("integration failed at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output error: {0}")]
    Output(String),
}
