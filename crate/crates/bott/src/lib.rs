//! File formats, rendering and the command line for Bott towers.

pub mod cli;
pub mod json;
pub mod svg;
