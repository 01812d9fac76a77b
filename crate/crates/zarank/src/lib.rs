//! Search engine and certificate verifier for augmented Zarankiewicz
//! numbers and sum-of-squares ranks of the associated biquadratic forms.
//!
//! The crate revolves around bipartite graphs on an m x n grid whose edge
//! set is augmented with 2-edges (cell pairs) and 3-edges (cell triples
//! spanning three rows and three columns). It provides:
//!
//! - the graph model with canonical codes under row/column relabeling
//!   ([`graph`]);
//! - the generalized cycle-free conditions and their per-edge reports
//!   ([`conditions`]);
//! - exact integer algebra for the biquadratic form attached to a graph,
//!   its sum-of-squares decompositions, and their ranks ([`form`]);
//! - rank certificates and Gram-pattern checks for decompositions
//!   ([`certificate`]);
//! - exhaustive search for the plain and augmented extremal edge counts
//!   ([`search`]);
//! - worked example graphs used throughout the test suite ([`builtin`]);
//! - a JSON report envelope shared by the command-line tools ([`report`]).

pub mod builtin;
pub mod certificate;
pub mod conditions;
pub mod form;
pub mod graph;
pub mod report;
pub mod search;
