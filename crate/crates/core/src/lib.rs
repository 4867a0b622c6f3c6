//! Iterative repair-policy content generation.
//!
//! The pipeline turns a handful of goal artifacts into an arbitrarily large
//! supervised training set by *destroying* them one random cell edit at a
//! time, recording the pre-edit value as the repair action and a signed
//! per-metric condition signal alongside each step. A convolutional policy
//! trained on that set then generates novel artifacts by sweeping over a
//! noisy start state and repairing it cell by cell under user-chosen metric
//! targets.
//!
//! Modules:
//! - [`grid`]: categorical 2D/3D cell grids, histograms, distances, text I/O
//! - [`destroy`]: destruction trajectories, condition signals, dataset files
//! - [`nn`]: dense-tensor layers with exact reverse-mode gradients and Adam
//! - [`policy`]: the repair network — observation encoding, training, prediction
//! - [`zelda`]: 2D dungeon domain (metrics, playability, goal sets, rendering)
//! - [`lego`]: 3D voxel-car domain (block metrics, wheels, goal cars, export)
//! - [`generate`]: inference sweeps, episode archives, random-agent baseline
//! - [`evalkit`]: playability/diversity/controllability/similarity reports

pub mod domain;
pub mod destroy;
pub mod error;
pub mod evalkit;
pub mod generate;
pub mod grid;
pub mod lego;
pub mod nn;
pub mod policy;
pub mod rng;
pub mod tensor;
pub mod zelda;

pub use domain::{Domain, DomainKind};
pub use destroy::{condition_sign, ConditionSignal, Dataset, DatasetRecord, MetricSpec};
pub use error::{PodError, Result};
pub use grid::{CellGrid, Cursor, TileAlphabet, TileHistogram};
pub use policy::{PolicyModel, PolicySpec};
pub use tensor::Tensor;
