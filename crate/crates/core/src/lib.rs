pub mod error;
pub mod linear;

pub mod pforest;
pub mod hck;
pub mod fqsym;
pub mod pairing;
pub mod halfprod;
pub mod algebra;

pub mod prim;
pub mod series;
pub mod iso;
pub mod laws;

pub mod verbs;
pub mod golden;
pub mod cli;

pub use error::{Error, Result};
