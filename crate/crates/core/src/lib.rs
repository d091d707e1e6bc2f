//! Energy of graphs with self-loops.
//!
//! A self-loop graph is a simple graph together with a set S of looped
//! vertices; its energy is the sum of |lambda_i - sigma/n| over the
//! adjacency eigenvalues, where sigma = |S|. This crate computes spectra
//! and energies, evaluates a family of upper and lower bounds on the
//! energy, classifies the graphs where each bound is tight, and verifies
//! all of it exhaustively over every small self-loop graph.

pub mod bounds;
pub mod extremal;
pub mod graph;
pub mod spectral;
pub mod verify;

pub use bounds::{bound_report, BoundId, BoundReport, EqualityFlags};
pub use graph::{make_family, CanonicalCode, FamilyTag, GraphError, SelfLoopGraph};
pub use spectral::{eigenvalues, shifted_spectrum, Spectrum};
pub use verify::{enumerate_graphs, find_extremal, verify_all, SweepSummary};
