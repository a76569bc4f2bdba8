//! Nearest-integer continued fractions, the 1/2-complex Bruno function, the
//! Yoccoz function of the quadratic polynomial and Littlewood–Paley estimates
//! of the Hölder exponent of their combination `H(z) = log U(e^{2πiz}) − i B(z)`.

pub mod bruno;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod farey;
pub mod monoid;
pub mod nicf;
pub mod rational;
pub mod regression;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use rational::Rational;
