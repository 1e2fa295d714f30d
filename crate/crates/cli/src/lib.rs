//! Command-line front end and HTTP decision service for `prioritree`.

pub mod api;
pub mod cli;
pub mod server;

pub use cli::run;
