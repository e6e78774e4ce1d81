pub mod cuspchar;
pub mod cyclo;
pub mod error;
pub mod ffield;
pub mod grpcore;
pub mod heis;
pub mod rankone;
pub mod verify;

pub use cyclo::Cyclotomic;
pub use error::{Error, Result};
