//! Exact-arithmetic workbench for torsion and pretorsion theories on finite
//! abelian-length categories.

pub mod abcat;
pub mod abgrp;
pub mod chaincx;
pub mod error;
pub mod exactla;
pub mod linrep;
pub mod pretor;
pub mod stability;
pub mod stable;
pub mod torsion;
pub mod typea;

pub use error::{Error, Result};
