//! Command-line front end for colorvd: instance generation, census and facet
//! tables, diagram building, identity verification and SVG rendering.

pub mod commands;
pub mod sitefile;
pub mod svg;
