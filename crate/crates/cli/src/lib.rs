//! Table reproduction, sweeps and the acceptance criteria behind the
//! `hardpart` binary.

pub mod acceptance;
pub mod compute;
pub mod ranges;
pub mod render;
pub mod reproduce;
pub mod tables;
pub mod verify;
