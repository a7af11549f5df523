use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The circuit needs more qubits than the simulator is allowed to hold.
    #[error("capacity error: circuit needs {required} qubits, simulator ceiling is {ceiling}")]
    Capacity { required: usize, ceiling: usize },

    #[error("circuit is not eligible for ancilla removal: {0}")]
    RewriteIneligible(String),

    #[error("degenerate Kitaev sample: cos and sin estimates are both zero (k = {k})")]
    DegenerateSample { k: u32 },

    #[error("inconsistent per-k phase estimates at k = {k}: doubled estimate is {distance} from the next (limit 0.25)")]
    Inconsistent { k: usize, distance: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
