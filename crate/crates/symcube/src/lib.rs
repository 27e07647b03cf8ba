//! Presheaf files, JSON reports and the command-line interface over
//! [`symcube_core`].

pub mod cli;
pub mod format;
pub mod verify;
