//! Combinatorial presentations of iterated torus (cable) knots.
//!
//! The crate has five layers:
//!
//! * [`braid`] — closed braid words, Markov moves, exchange moves, budgeted
//!   braid isotopy, and the Alexander-polynomial knot-type oracle.
//! * [`grid`] — toroidal rectangular diagrams (horizontal arcs on the unit
//!   cylinder, vertical arcs in angular half-planes), their braided form and
//!   classical invariants, grid moves including the negative elementary
//!   flype, and meridian linking counts.
//! * [`block`] — rectangular block presentations, their λ-leaves, the
//!   homogeneous-twisting and interlocking predicates (two independent
//!   implementations), and block slides.
//! * [`cable`] — cabling descriptors, the steps-configuration constructor,
//!   cable superimposition producing rectangular diagrams, and the built-in
//!   trefoil/cable fixtures.
//! * [`reduce`] — bounded search for exchange reducibility with replayable,
//!   verifiable move traces.

pub mod braid;
pub mod block;
pub mod cable;
pub mod grid;
pub mod poly;
pub mod reduce;

pub use braid::{BraidError, BraidWord};
pub use poly::LaurentPoly;
