//! Constructions, exact searches and an absorbing heuristic for k-th powers
//! of Hamilton cycles in digraphs and oriented graphs.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod absorbing;
pub mod bitset;
pub mod bounds;
pub mod checks;
pub mod constructions;
pub mod digraph;
pub mod format;
pub mod pipeline;
pub mod scalar;
pub mod solver;

pub use bitset::VertexSet;
pub use digraph::{DegreeProfile, Digraph, DigraphBuilder, GraphClass, GraphError, MAX_VERTICES};
pub use scalar::{Rational, Scalar};
pub use solver::{CycleCertificate, Mode, Outcome, SearchBudget, SearchReport};

/// Goodness threshold in floating point.
pub type GoodnessThresholdF64 = absorbing::GoodnessThreshold<f64>;
/// Goodness threshold in exact rational arithmetic.
pub type ExactGoodnessThreshold = absorbing::GoodnessThreshold<Rational>;

/// Deterministic RNG for sub-stream `stream` of `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A 64-bit seed derived from `(seed, index)`; distinct indices give
/// independent streams.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    rng_for(seed, index).next_u64()
}
