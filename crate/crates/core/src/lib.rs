pub mod builtin;
pub mod cli;
pub mod geometry;
pub mod instability;
pub mod rep;
pub mod selfcheck;
pub mod strata;
