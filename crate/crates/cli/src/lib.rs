//! Reading and writing the JSON/CSV formats of `pairtile`, and the command
//! driver behind the binary.

pub mod failure;
pub mod run;
pub mod schema;

pub use failure::Failure;
pub use run::{run, AnalysisRequest, Command, Format, Options, Outcome};
