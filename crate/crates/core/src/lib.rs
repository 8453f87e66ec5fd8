//! Exact asymptotics of parametric integer programs
//! `max{d.x : Ax <= n b + c, x in N^r}` and their use in computing the
//! local cohomology degrees and regularity of integral closures and
//! symbolic powers of monomial ideals.
//!
//! Layers, bottom up: [`exact`] integer and rational linear algebra,
//! [`polyhedra`] vertex and ray enumeration, [`lp`] the linear law of the
//! relaxation, [`ip`] exact integer optima, [`quasilinear`] period bounds and
//! law detection, [`simplicial`] reduced homology, [`ideal`] Newton
//! polyhedra and symbolic powers, [`regularity`] the cohomology engine, and
//! [`cli`] the `paramip` binary.
//!
//! Runnable examples live in `examples/`: `exact_arithmetic`,
//! `polyhedron_vertices`, `lp_law`, `ip_sweep`, `quasilinear_detection`,
//! `newton_polyhedron`, `homology`, `closure_regularity`, `symbolic_powers`
//! and `oracle_comparison`.

pub mod error;
pub mod exact;
mod fraction_free;

pub use error::{Error, Result};
pub mod polyhedra;
pub mod lp;
pub mod ip;
pub mod quasilinear;
pub mod simplicial;
pub mod ideal;
pub mod regularity;
pub mod cli;
