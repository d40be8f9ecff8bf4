//! Exact-arithmetic verification toolkit for finite automorphism groups of
//! del Pezzo surfaces of low degree and of the smooth quadric surface.
//!
//! Everything here is computed over cyclotomic fields with rational
//! coefficients; there is no floating point anywhere in the crate.  The
//! main layers, bottom to top:
//!
//! * [`cyclo`]: arithmetic in `Q(zeta_N)`, exact linear algebra, quadratic
//!   extensions, and parsing of scalar literals such as `zeta(8)^3` or
//!   `sqrt2`.
//! * [`autgrp`]: concrete automorphism carriers for each surface family,
//!   finite closure of generator sets, and abstract group analysis
//!   (orders, isomorphism testing, automorphism groups, small-group
//!   identification).
//! * [`surfaces`]: the surface families themselves, their defining
//!   equations, parameter specialization, and exact invariance checks.
//! * [`picweyl`]: integral Picard lattices, exceptional classes, Weyl
//!   group generation, and invariant-rank computations.
//! * [`fixloc`]: fixed loci of automorphisms (isolated points with exact
//!   coordinates, curve components with Euler characteristics), Lefschetz
//!   bookkeeping, fixed loci of whole groups, and short orbits.
//! * [`quadbir`]: the quadric-specific classification of finite toral
//!   actions, standard equivariant birational self-maps with exact
//!   equivariance/birationality certificates, and rigidity reports.
//! * [`burnside`]: tangent weights at fixed points and symbol-level
//!   invariants that distinguish conjugation classes of actions.
//! * [`atlas`]: line-based tables of group actions per surface family,
//!   a word grammar for generators, and the row verification pipeline
//!   that produces deterministic JSON reports.

pub mod atlas;
pub mod autgrp;
pub mod burnside;
pub mod cyclo;
pub mod fixloc;
pub mod picweyl;
pub mod quadbir;
pub mod surfaces;

pub use cyclo::{CycNum, CycError};
