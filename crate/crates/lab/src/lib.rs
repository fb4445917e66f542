//! Enumeration, lattice verification, counterexample mining, the example
//! registry and report emission for amsts.

pub mod bridge;
pub mod enumerate;
pub mod error;
pub mod eval;
pub mod lattice;
pub mod mine;
pub mod parallel;
pub mod registry;
pub mod report;
pub mod suite;

pub use enumerate::{EnumerationSpace, Mode, DEFAULT_BIT_BUDGET};
pub use error::LabError;
pub use lattice::{verify_lattice, ImplicationReport, LatticeConfig};
pub use mine::{mine_any, mine_counterexample};
pub use registry::{registered_examples, run_example, RegisteredExample};
pub use report::{emit_report, Format};
pub use suite::{run_suite_space, run_theorem_suite, SuiteReport};
