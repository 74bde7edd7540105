//! Approximations of the completion of a lazily generated graph, and the
//! special length assignments.

pub mod boundary;
pub mod comb;
pub mod ends;
pub mod floyd;
pub mod lind;
pub mod nst;
