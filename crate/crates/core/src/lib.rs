pub mod cli;
pub mod encoding;
pub mod error;
pub mod format;
pub mod generators;
pub mod nfa;
pub mod nwa;
pub mod oracle;
pub mod prover;

pub use error::{Error, Result};
