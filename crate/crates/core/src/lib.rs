//! Exact populations of critical points of master functions, their Miura
//! opers, and explicit solutions of the oper equation `DY = 0`.

pub mod error;
pub mod exactalg;
pub mod critical;
pub mod liedata;
pub mod miura;
pub mod population;
pub mod solutions;

pub use error::{Error, Result};
