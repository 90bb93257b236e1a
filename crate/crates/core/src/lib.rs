//! String attractors: verification and minimization for the k-attractor
//! family on strings, circular strings, and string sets.
//!
//! The crate provides:
//!
//! * [`verify`] — attractor verification for plain, sharp, circular, and set
//!   variants, with a lexicographically-smallest uncovered witness on
//!   failure;
//! * [`solvers`] — exact (branch and bound over a set-cover view) and greedy
//!   minimization, plus the closed-form 1-attractor;
//! * [`transforms`] — the shape-to-shape instance transforms (stitching a
//!   set, unrolling a circular string, ...), each with an exact size offset
//!   and a certificate lifting map;
//! * [`graph`] / [`substring_graph`] — colored graphs with colorful edge
//!   cover solvers, the self-loop elimination gadget, and the 2-substring
//!   graph that reduces minimum 2-attractors to minimum colorful covers;
//! * [`sat`] / [`reductions`] — the balanced (3,B2)-SAT model with
//!   brute-force oracles and a seeded generator, and the reductions from it
//!   to colorful edge cover and to 2-attractors, with certificate converters
//!   in both directions and interval bounds for almost-satisfiable formulas;
//! * [`textio`] — plain-text file formats for instances and markings.
//!
//! Positions are 1-based everywhere; every solver breaks ties by smallest
//! index, so identical inputs give identical outputs.

pub mod alphabet;
pub mod cover;
pub mod error;
pub mod graph;
pub mod reductions;
pub mod sat;
pub mod solvers;
pub mod substring_graph;
pub mod substrings;
pub mod text;
pub mod textio;
pub mod transforms;
pub mod verify;

pub use alphabet::{Alphabet, Symbol};
pub use cover::DEFAULT_NODE_BUDGET;
pub use error::{Error, Result};
pub use graph::{ColoredGraph, CoverVerdict, EdgeSelection};
pub use sat::{Assignment, Cnf3B2, Literal};
pub use text::{Instance, Marking, Shape};
pub use verify::{verify_attractor, Verdict};
