pub mod function_field;
pub mod local;
pub mod ratring;
