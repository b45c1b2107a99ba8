//! Statistical complexity measures of D-dimensional hydrogenic orbitals.
//!
//! A hydrogenic system is a single electron bound by a Coulomb potential
//! `-Z/r` in `D >= 2` spatial dimensions. Its bound states are labelled by a
//! hyperquantum-number chain `(n, mu_1, ..., mu_{D-1})`, and both the position
//! and the momentum probability densities factorize into a radial profile
//! times a product of one-angle factors. That factorization is what this
//! crate is organized around: every D-dimensional integral reduces to
//! products of one-dimensional integrals, which keeps dimensions like D = 15
//! as cheap as D = 3.
//!
//! The crate computes, per space (position and momentum):
//!
//! * normalization, disequilibrium `∫ρ²`, Shannon entropy `-∫ρ ln ρ`,
//!   Fisher information `∫|∇ρ|²/ρ` and variance — see [`measures`];
//! * the two-component complexities built from them (LMC, Fisher-Shannon,
//!   Cramer-Rao) together with their lower-bound report — see [`complexity`];
//! * the same quantities by brute-force quadrature straight from density
//!   values, with no closed forms anywhere in the path — see [`oracle`].
//!
//! The closed-form and oracle routes are kept deliberately independent so
//! they can certify (or refute) each other; the `validate` subcommand of the
//! bundled CLI prints the cross-check table, including the handful of printed
//! source expressions that the oracle demonstrably contradicts.
//!
//! Supporting layers: [`specfun`] (log-gamma, digamma), [`orthopoly`]
//! (orthonormal Laguerre and Gegenbauer polynomials plus their roots, which
//! mark the integrable log singularities of the entropy integrands), and
//! [`quad`] (adaptive Gauss-Kronrod panels with caller-supplied split points
//! and tail-truncated semi-infinite intervals).

// Tabulated quadrature nodes and frozen cross-check values keep every digit
// of their sources rather than the shortest f64 spelling.
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod complexity;
pub mod measures;
pub mod oracle;
pub mod orthopoly;
pub mod quad;
pub mod specfun;
pub mod states;
