//! Minimal and maximal order-k color Voronoi diagrams of colored planar
//! sites, with exact combinatorial verification.
//!
//! Three independent paths compute the same quantities: an enumeration of
//! balls through site triples ([`census`]), an explicit iterative diagram
//! construction ([`builder`]), and brute-force point queries ([`oracle`]).

pub mod builder;
pub mod census;
pub mod error;
pub mod facets;
pub mod generate;
pub mod geometry;
pub mod oracle;
pub mod rational;
pub mod sites;
pub mod verify;

pub use builder::{build_sequences, DiagramSequence, PlanarSubdivision};
pub use census::{census, census_entries, diagram_vertex_count, refined_vertex_count, CensusEntry, CensusTable, Side};
pub use error::{Error, Result};
pub use facets::{aggregate_u, euclid_unbounded_tables, facets_2d, facets_3d, FacetTable};
pub use geometry::{Point2, Point3};
pub use rational::Rational;
pub use sites::{check_general_position, ColoredSiteSet, Metric, Site};
pub use verify::{
    verify_builder, verify_identities, verify_instance, Record, Relation, VerificationReport, VerifyOptions,
};
