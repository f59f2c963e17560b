//! Boolean P systems and the models that translate into them.

pub mod bnet;
pub mod bps;
pub mod control;
pub mod error;
pub mod format;
pub mod gen;
pub mod formula;
pub mod lba;
pub mod mode;
pub mod reach;
pub mod rsys;
pub mod selfcheck;
pub mod symbols;
pub mod translate;

pub use error::{Error, Result};
