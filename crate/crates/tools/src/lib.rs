//! Exhaustive verification searches, the JSON fan document format and the
//! `toric` command-line front end over `toric-core`.

pub mod cli;
pub mod document;
pub mod search;

pub use document::FanDocument;
pub use search::{Execution, SearchReport};
