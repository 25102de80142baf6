//! Minimum-cost k-node-connectivity augmentation.
//!
//! The solver runs a rooted outconnectivity step, removes rogue sets with a
//! second rooted step and finishes with iterative rounding of the set-pair
//! cut LP. All arithmetic on LP values is exact.

pub mod cost;
pub mod error;
pub mod flow;
pub mod graph;
pub mod lp;
pub mod mask;
pub mod outconnect;
pub mod pipeline;
pub mod rational;
pub mod rogue;
pub mod rounding;
pub mod setpair;
pub mod toolkit;

pub use cost::CostFunction;
pub use error::{Error, Result};
pub use graph::{Edge, Graph, NodeSet, VertexCut};
pub use lp::{FractionalSolution, SeparationResult};
pub use pipeline::{augment, Branch, Mode, PipelineOptions, PipelineReport};
pub use rational::Rat;
pub use rounding::RoundingOutcome;
pub use setpair::{PairRelation, SetPair};
pub use toolkit::{Instance, Solution};
