//! Command-line front end and session service for `borelwb`.

pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod files;
pub mod service;
pub mod verify;

pub use config::Config;
pub use error::CliError;
