//! Clifford+T circuits in Pauli-based form, MCR-based unoptimization and T-count optimization.

pub mod bench;
pub mod circuit;
pub mod error;
pub mod mcr;
pub mod optimizer;
pub mod pauli;
pub mod pbc;
pub mod tableau;
pub mod unopt;
pub mod verify;

pub use circuit::{Gate, GateCircuit};
pub use error::{Error, Result};
pub use mcr::{check_mcr, McrQuadruple};
pub use optimizer::{optimize, OptimizerConfig, Pass};
pub use pauli::{Pauli, PauliAxis, PauliWord, PhasedPauli};
pub use pbc::{PbcCircuit, Rotation};
pub use tableau::CliffordTableau;
pub use unopt::{unoptimize, UnoptRecipe};
pub use verify::{check_equiv, check_equiv_statevector, EquivalenceReport};
