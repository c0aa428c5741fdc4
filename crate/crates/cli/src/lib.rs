//! IO companion for the verification library: JSON payloads, campaign
//! drivers, and the command-line front end's plumbing.

pub mod campaign;
pub mod json;
