#[cfg(feature = "cli")]
pub mod cli;
pub mod cycles;
pub mod error;
pub mod hodge;
pub mod intlin;
pub mod special;
pub mod symbols;
pub mod tate;
pub mod theta;

pub use error::{Error, Result};
