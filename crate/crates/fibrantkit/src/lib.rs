//! Fixtures, generators, the theorem suite and the command line front end
//! for `fibrantkit-core`.

pub mod error;
pub mod fixture;
pub mod generate;
pub mod groupoid;
pub mod report;
pub mod suite;
pub mod sweeps;

pub use error::{HarnessError, Result};
pub use fibrantkit_core as core;
pub use fixture::{load_fixture, parse_fixture, save_fixture, Fixture};
pub use report::{Check, Report, Status};
pub use suite::{run_suite, SuiteConfig};
