//! Numerical building blocks: adaptive quadrature, the trilogarithm and
//! compensated summation.

pub mod polylog;
pub mod quadrature;
pub mod summation;
