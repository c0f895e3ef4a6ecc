//! Discrete-time (Szegedy) quantum walk on the Cayley graph of the symmetric
//! group generated by all transpositions, together with the exact character
//! theory needed to diagonalize it.
//!
//! The crate has two halves that must agree with each other:
//!
//! - **Simulation** ([`szegedy`]): matrix-free application of the walk unitary
//!   `W = R_B R_A` on the `(n!)²`-dimensional edge space, plus the measurement
//!   distributions derived from it. No matrix of size `(n!)² × (n!)²` is ever
//!   formed.
//! - **Analysis** ([`characters`], [`spectral`]): exact integer/rational
//!   character theory of `S_n` (Murnaghan–Nakayama recursion, hook lengths),
//!   the spectrum of the discriminant matrix, and a closed-form expression for
//!   the overlap `⟨φ_[n]| W^t |φ_e⟩` assembled from class functions only.
//!
//! Reconciling the two routes, exact spectral assembly against brute-force
//! simulation, is the central correctness check, exercised by the
//! `acceptance` integration test target and by `verify`.
//!
//! Parallelism: the hot loops over the `n!` group elements use rayon when the
//! `parallel` feature (default) is enabled. Every function has a sequential
//! fallback that computes bit-identical results; `benches/walk_step.rs`
//! compares the two.
//!
//! ```
//! use szwalk::spectral::OverlapModel;
//! use szwalk::WalkOperator;
//!
//! let op = WalkOperator::new(5)?;
//! let simulated = op.overlap_series(10);
//! let model = OverlapModel::new(5)?;
//! for (t, value) in simulated.iter().enumerate() {
//!     assert!((value.re - model.evaluate(t)).abs() < 1e-10);
//! }
//! // the walk peaks on the full-cycle edges at t = 2: overlap √6/5
//! assert!((simulated[2].re - 6f64.sqrt() / 5.0).abs() < 1e-12);
//! # Ok::<(), szwalk::Error>(())
//! ```

pub mod characters;
pub mod partition;
pub mod report;
pub mod spectral;
pub mod symgroup;
pub mod szegedy;
pub mod verify;

pub use partition::{CycleType, Partition};
pub use symgroup::Permutation;
pub use szegedy::{WalkOperator, WalkState};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: expected S_{expected}, got S_{found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("images do not form a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("rank {rank} out of range for S_{n} (must be < {n}!)")]
    RankOutOfRange { n: usize, rank: u64 },
    #[error("partition does not sum to {expected}: {found:?}")]
    PartitionSizeMismatch { expected: usize, found: Vec<usize> },
    #[error("cycle length {l} out of range 1..={max}")]
    CycleLengthOutOfRange { l: usize, max: usize },
    #[error("partition {0:?} is a hook or lies outside the two-column family")]
    NotGeneralShape(Vec<usize>),
    #[error("partition {0:?} lies outside the Ξ family; its overlap contributions vanish")]
    OutsideXi(Vec<usize>),
    #[error(
        "n = {n} exceeds the simulation guard {max} ((n!)² amplitudes); set SZW_MAX_N to override"
    )]
    SimulationTooLarge { n: usize, max: usize },
    #[error("n = {n} exceeds the character-table guard {max}")]
    TableTooLarge { n: usize, max: usize },
    #[error("corrupt walk-state checkpoint: {0}")]
    BadCheckpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
