//! Command-line front end: identify, decode, extract, aggregate, render.

pub mod app;
pub mod inline;
pub mod pipeline;
pub mod standoff;

pub use app::{run, Cli};
