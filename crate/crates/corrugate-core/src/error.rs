//! Error type shared across the engine.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("domain too small: {op} would empty the interior (shape {shape:?}, shrink {shrink})")]
    DomainTooSmall {
        op: &'static str,
        shape: Vec<usize>,
        shrink: usize,
    },

    #[error("misaligned lattice: {0}")]
    MisalignedLattice(String),

    #[error("non-finite value produced by {op} at lattice index {index:?} (component {comp})")]
    NonFinite {
        op: &'static str,
        index: Vec<usize>,
        comp: usize,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("ill-posed direction: |ξ_{i}| = {abs} < 1e-10")]
    IllPosedDirection { i: usize, abs: f64 },

    #[error("nonzero-mean input: c_0 = {0:e}")]
    NonzeroMean(f64),

    #[error("trig polynomial degree overflow: |k| = {0} exceeds K_max = {1}")]
    DegreeOverflow(usize, usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("iteration diverged: {0}")]
    IterationDiverged(String),

    #[error("term count overflow: {0} separable terms exceeds cap {1}")]
    TermCountOverflow(usize, usize),

    #[error("under-resolved grid: ν = {nu} has {ppp:.2} points/period, need ≥ {need}")]
    UnderResolvedGrid { nu: f64, ppp: f64, need: f64 },

    #[error("certificate missing or stale: {0}")]
    CertificateMissing(String),

    #[error("degenerate jacobian: |ζ̃| = {found:e} below floor {floor:e} at index {index:?}")]
    DegenerateJacobian {
        found: f64,
        floor: f64,
        index: Vec<usize>,
    },

    #[error("certificate degraded: {0}")]
    CertificateDegraded(String),

    #[error("amplitude underflow: a² - L(F) = {0:e} < floor {1:e}")]
    AmplitudeUnderflow(f64, f64),

    #[error("not short: metric defect has eigenvalue {0:e} at a lattice point")]
    NotShort(f64),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid rate: {0}")]
    InvalidRate(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("wrong dimension: {0}")]
    WrongDimension(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
