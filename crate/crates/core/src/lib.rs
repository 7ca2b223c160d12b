//! Constructive pipeline from rectilinear Legendrian diagrams to simple
//! branched coverings of B^2 x B^2 with positive braided branch surface,
//! then to positive allowable Lefschetz fibrations and their boundary
//! open books.
//!
//! Every stage carries an independent combinatorial oracle: a Kauffman
//! bracket state sum certifies knot types across rewrites, Smith normal
//! form of the framed linking matrix certifies boundary homology, and
//! braid-closure invariants certify the braiding step.

pub mod braidsurf;
pub mod cover;
pub mod diagram;
pub mod fiber;
pub mod lefschetz;
pub mod mcg;
pub mod normalize;
pub mod perm;
pub mod pipeline;
pub mod poly;
pub mod rng;
pub mod snf;

pub use diagram::{HandleDecoration, RectDiagram};
pub use pipeline::{compile_diagram, PipelineError, PipelineReport};
