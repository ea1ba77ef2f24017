use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid subshift: {0}")]
    InvalidSft(String),

    #[error("restrict to a component: {0}")]
    NotIrreducible(String),

    #[error("acyclic component")]
    AcyclicComponent,

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("exact counting requires rational potential")]
    IrrationalPotential,

    #[error("potential cohomologous to constant: alpha_min = alpha_max = {0}")]
    DegeneratePotential(String),

    #[error("component is not mixing (period {period}); reduce through power_subshift")]
    NotMixing { period: usize },

    #[error("target {target} outside [{lo}, {hi}]")]
    OutsideRange {
        target: String,
        lo: String,
        hi: String,
    },

    #[error("cone radius too small; increase rho: {0}")]
    ConeRadius(String),

    #[error("dual potential verification failed; increase memory: {0}")]
    DualMemory(String),

    #[error("invalid generating set: {0}")]
    InvalidGenSet(String),

    #[error("translation length did not stabilize; increase power budget")]
    NonStabilized,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("automaton file: {0}")]
    AutomatonFile(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
