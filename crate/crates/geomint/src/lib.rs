//! File formats, reports and the command line around [`geomint_core`].

pub mod bench;
pub mod cli;
pub mod error;
pub mod image_io;
pub mod manifest;
pub mod report;

pub use error::{Error, Result};
pub use geomint_core as core;
