//! Library side of the command line: algebra files and the verification pipeline.

pub mod file;
pub mod verify;

pub use file::AlgebraSpecFile;
pub use verify::{verify, Status, VerifyOptions, VerifyReport};
