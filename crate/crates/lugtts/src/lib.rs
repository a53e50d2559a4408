//! Command-line driver and HTTP service for the Luganda TTS engine.

pub mod cli;
pub mod server;
