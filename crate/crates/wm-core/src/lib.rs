//! Fibers and monodromy of the Wronski map, together with the jeu de taquin
//! combinatorics that predicts them.
//!
//! The library has two independent halves that are cross-validated against
//! each other:
//!
//! * the *combinatorial* half ([`partitions`], [`tableaux`], [`jdt`]) works
//!   with exact rational arithmetic and implements tableau sliding, switching,
//!   rectification, dual equivalence and Littlewood-Richardson numbers;
//! * the *analytic* half ([`wronski`], [`leadterms`], [`tracker`]) computes
//!   Plücker coordinates, asymptotic leading-term solutions of fiber systems,
//!   and tracks fibers of the Wronski map numerically along paths of root
//!   configurations.
//!
//! The [`experiments`] module wires the two halves together; it backs both the
//! `wm verify` CLI subcommand and the acceptance test suite.

pub mod error;
pub mod experiments;
pub mod jdt;
pub mod leadterms;
pub mod partitions;
pub mod scalar;
pub mod tableaux;
pub mod tracker;
pub mod wronski;

pub use error::{Error, Result};
