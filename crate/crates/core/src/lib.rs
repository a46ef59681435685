//! Exact-arithmetic toolkit for linear operators that act diagonally on the
//! Legendre basis: coefficient formulas, hyperbolicity tests, and symbol
//! curves.

pub mod combinatorics;
pub mod diffop;
pub mod error;
pub mod hyperbolicity;
pub mod legendre;
pub mod poly;
pub mod rational;
pub mod selftest;
pub mod symbol;
pub mod verdict;

pub use error::{Error, Result};
pub use rational::Rational;
pub use verdict::{Verdict, VerdictReport, Witness};
