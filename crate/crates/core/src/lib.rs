//! Exact analysis of linear search ("cow-path") strategies.
//!
//! A searcher on a line explores the two branches alternately, walking out
//! to `x_i` on branch `i mod 2` and back. This crate computes, in exact
//! rational arithmetic:
//!
//! * locate and discovery costs, and discovery-cost profiles ([`discovery`]),
//! * the competitive ratio and the discovery ratios against a single
//!   strategy, against all strategies, and against all strategies of
//!   competitive ratio 9 ([`ratio`]),
//! * a small exact simplex solver used as an independent oracle for the
//!   minimal discovery cost `d*(l)` and the maximal segments `(n+2) 2^(n+1)`
//!   ([`lp`]),
//! * report and CSV rendering behind the `cowpath` binary ([`report`]).

pub mod discovery;
pub mod error;
pub mod lp;
pub mod ratio;
pub mod rational;
pub mod report;
pub mod strategy;

pub use discovery::{
    discovery_cost, discovery_profile, locate_cost, min_discovery_cost, min_turns,
    turns_to_discover, DiscoveryProfile, Hider, OptimalDiscovery,
};
pub use error::{Error, Result};
pub use rational::{int, parse_rational, rat, Rational};
pub use strategy::{Family, GeometricTail, Sigma9Report, Strategy, ValidityReport};
