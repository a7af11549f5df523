//! Numeric tolerances shared by the simulator, the builders and the tests.

/// Structural tolerance: norms, amplitude comparisons, distribution sums.
pub const STRUCTURAL: f64 = 1e-10;

/// Tolerance on "probability one" statements about exact distributions.
pub const EXACT_PROBABILITY: f64 = 1e-9;

/// Branches of an exact distribution lighter than this are dropped.
pub const BRANCH_PRUNE: f64 = 1e-15;

/// Default ceiling on the number of simulated qubits.
pub const DEFAULT_MAX_QUBITS: usize = 24;
