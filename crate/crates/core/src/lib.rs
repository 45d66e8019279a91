pub mod cyclotomic;
pub mod error;
pub mod grouplaurent;
pub mod harness;
pub mod polyfactor;
pub mod rootsys;
pub mod schurweyl;
pub mod weight;
