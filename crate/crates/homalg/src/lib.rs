pub mod matrix;
pub mod snf;
pub mod fpmodule;
pub mod linsys;
pub mod complex;
pub mod triangle;
pub mod homotopycat;
pub mod derived;
pub mod dg;
pub mod ser;
pub mod laws;
