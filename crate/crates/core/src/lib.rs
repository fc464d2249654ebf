pub mod bisheafbuild;
pub mod cli;
pub mod complex;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod isofy;
pub mod periodic;
pub mod sheafcore;
pub mod toroidal;

pub use error::{Error, Result};
