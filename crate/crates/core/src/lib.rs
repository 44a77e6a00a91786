//! Symmetry-based solver for two-alternative forced-choice (2-AFC) geometry
//! trials.
//!
//! A trial shows one target figure and two choices. Each figure is
//! binarized, reduced to the set of its ink pixels, centered and rotated so
//! that its first principal axis is horizontal, and then summarized by
//! slice profiles (center shift, area, spread) along both axes together with
//! their vertical-minus-horizontal "self-symmetry" curves. The choice whose
//! profiles differ least from the target's is the answer.
//!
//! The crate is `no_std` and only needs `alloc`. Image decoding, manifests,
//! report formatting and the command line live in the `geomint` crate.

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod align;
pub mod evalkit;
pub mod features;
pub mod geom;
pub mod raster;
pub mod reference;
pub mod solver;
pub mod synth;
pub mod trials;

pub use align::{align, candidate_orientations, principal_angle, AlignedFigure};
pub use evalkit::{evaluate, EvalReport};
pub use features::{
    area_profile, base_difference, center_shift_profile, profile_difference, self_symmetry,
    slice_bins, spread_profile, Axis, Feature, FeatureProfiles, FeatureSelection, Profile, Variant,
};
pub use geom::{FigureError, Point, PointSet};
pub use raster::{binarize, extract_points, BinaryImage, GrayImage, DEFAULT_THRESHOLD};
pub use solver::{
    orient_choice, overall_difference, solve_points, solve_trial, Decision, ModelConfig,
};
pub use synth::{synthesize_problem, Generator, JitterParams};
pub use trials::{generate_trials, Category, Problem, Trial};
