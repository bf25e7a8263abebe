#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod ideals;
pub mod locale;
pub mod mcnaughton;
pub mod rational;
pub mod spectrum;
pub mod term;

pub use algebra::{FiniteMvAlgebra, MvValue, Op};
pub use rational::Rational;
pub use term::Term;
