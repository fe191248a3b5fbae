//! Networks of pendula with diffusive Hamiltonian coupling: graph spectra and
//! anti-synchrony patterns, simulation, Lyapunov spectra and the reduced
//! bifurcation analysis.

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod integrator;
pub mod io;
pub mod reduced;
pub mod table1;

pub use dynamics::{CoupledSystem, InteractionPotential, SystemState};
pub use error::{Error, Result};
pub use graph::{Graph, MatchedPartition, SignVector};
pub use integrator::{integrate, IntegratorConfig, Trajectory};
