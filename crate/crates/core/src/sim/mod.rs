//! Exact simulation of the cyclic motion.

pub mod direction;
pub mod ensemble;
pub mod path;
pub mod rng;

pub use direction::{cycle_successor, Direction};
pub use ensemble::{
    empirical_char_function, sample_position_aggregated, simulate_ensemble,
    simulate_positions_aggregated, Conditioning, SampleSet,
};
pub use path::{
    classify, evolve, sample_path, sample_path_conditional, MotionOutcome, MotionPath, Stratum,
};
pub use rng::{derive_seed, substream, SimRng};
