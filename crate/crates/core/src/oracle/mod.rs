//! Brute-force toric machinery over nonnegative integer matrices: fibers,
//! fiber graphs and Betti data, Markov bases, bounded-box Graver bases,
//! primitivity, and a binomial Buchberger algorithm.
//!
//! Nothing here knows about graphs or walks beyond [`ToricConfig::from_graph`].

mod config;
mod fiber;
mod graver;
mod groebner;
mod markov;

pub use config::ToricConfig;
pub use fiber::{fiber, fiber_graph, fiber_graphs_up_to, FiberGraph};
pub use graver::{graver_bounded, primitivity_check};
pub use groebner::{reduced_groebner, sample_groebner, GroebnerSample};
pub use markov::{markov_analysis, MarkovAnalysis};
