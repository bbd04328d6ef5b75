pub mod error;
pub mod field;
pub mod code;
pub mod cyclotomic;
pub mod matrix;
pub mod stabilizer;
pub mod variety;
pub mod weight;

pub use error::{Error, Result};
pub use field::{make_field, subfield_map, Felt, FiniteField, SubfieldMap};
