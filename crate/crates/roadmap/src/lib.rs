//! File formats, SVG rendering and the command-line front end for
//! `roadmap-core`.

pub mod cli;
pub mod io;
pub mod render;
pub mod report;
