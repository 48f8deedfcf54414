pub mod algebra;
pub mod cert;
pub mod cli;
pub mod error;
pub mod group;
pub mod numkit;
pub mod rootsys;
pub mod solver;

pub use error::{Error, Result};
