//! Command line tool and HTTP service for the Lights Out toolkit.

pub mod cli;
pub mod http;
pub mod sessions;
pub mod verify;
