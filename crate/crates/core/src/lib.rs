//! Exact minimum numbers of monochromatic triangles.
//!
//! Two settings are covered:
//!
//! * line 2-colorings of point-line configurations, where a triangle is three
//!   points pairwise joined by three distinct lines and is monochromatic when
//!   its three lines share a color ([`coloring`], [`triangles`]);
//! * edge 2-colorings of complete graphs, both the plain count (Goodman's
//!   closed form and a brute-force check) and vertex-disjoint packings
//!   ([`ramsey`]).
//!
//! Supporting modules parse and validate configurations ([`incidence`]),
//! build connected sums by an incidence switch ([`connected_sum`]), study
//! mutually intersecting lines ([`cliques`]) and provide named examples,
//! isomorphism testing and small-case enumeration ([`catalog`]).
//!
//! ```
//! use mono_triangles::{catalog, coloring};
//!
//! let fano = catalog::builtin("fano").unwrap();
//! let result = coloring::min_monochromatic(&fano.geometry, &Default::default()).unwrap();
//! assert_eq!(result.min_total, 4);
//! ```

mod budget;
pub mod catalog;
pub mod cliques;
pub mod coloring;
pub mod connected_sum;
pub mod error;
pub mod graph;
pub mod incidence;
pub mod ramsey;
pub mod triangles;

pub use error::{Error, GeometryError, Result};
pub use incidence::{Configuration, IncidenceGeometry, Point};
