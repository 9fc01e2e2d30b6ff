pub mod diagonal;
pub mod family;
pub mod moments;
pub mod operators;
