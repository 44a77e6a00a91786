//! Choice orientation, scoring and answer selection for one trial.

use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::align::{align, candidate_orientations, principal_angle, AlignedFigure};
use crate::features::{
    base_difference, self_difference, Feature, FeatureProfiles, FeatureSelection, Variant,
};
use crate::geom::{FigureError, PointSet};
use crate::raster::{binarize, extract_points, GrayImage, DEFAULT_THRESHOLD};

/// Relative tolerance under which two choice differences count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub selection: FeatureSelection,
    pub threshold: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset_name: Option<String>,
}

impl ModelConfig {
    pub fn new(selection: FeatureSelection) -> Self {
        ModelConfig {
            selection,
            threshold: DEFAULT_THRESHOLD,
            preset_name: None,
        }
    }

    /// One of [`FeatureSelection::PRESETS`] at the default threshold.
    pub fn preset(name: &str) -> Option<Self> {
        FeatureSelection::preset(name).map(|selection| ModelConfig {
            selection,
            threshold: DEFAULT_THRESHOLD,
            preset_name: Some(name.into()),
        })
    }

    pub fn with_threshold(mut self, threshold: u8) -> Self {
        self.threshold = threshold;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub chosen_index: usize,
    pub differences: [f64; 2],
    pub orientation_flags: [bool; 2],
    pub tie: bool,
}

impl Decision {
    /// Applies the selection rule: smaller difference wins; differences
    /// equal within [`TIE_TOLERANCE`] (relative) are a tie resolved to 0.
    pub fn from_differences(differences: [f64; 2], orientation_flags: [bool; 2]) -> Self {
        let [a, b] = differences;
        let tie = libm::fabs(a - b) <= TIE_TOLERANCE * a.max(b);
        let chosen_index = if tie || a < b { 0 } else { 1 };
        Decision {
            chosen_index,
            differences,
            orientation_flags,
            tie,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImageRole {
    Target,
    ChoiceA,
    ChoiceB,
}

impl fmt::Display for ImageRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImageRole::Target => "target",
            ImageRole::ChoiceA => "choice A",
            ImageRole::ChoiceB => "choice B",
        })
    }
}

/// A trial image that could not be turned into a usable figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialError {
    pub role: ImageRole,
    pub cause: FigureError,
}

impl fmt::Display for TrialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.role, self.cause)
    }
}

impl core::error::Error for TrialError {}

/// Sum of the three base-feature differences; decides orientation.
fn base_sum(target: &FeatureProfiles, choice: &FeatureProfiles) -> f64 {
    Feature::ALL
        .iter()
        .map(|&f| base_difference(target, choice, f))
        .sum()
}

/// A choice in the orientation that best matches the target.
#[derive(Debug, Clone)]
pub struct OrientedChoice {
    pub figure: AlignedFigure,
    pub profiles: FeatureProfiles,
    pub base_sum: f64,
}

/// Picks the orientation of `choice` whose base features are closer to the
/// target's; ties keep the unflipped orientation.
pub fn orient_against(
    target: &FeatureProfiles,
    choice: &PointSet,
) -> Result<OrientedChoice, FigureError> {
    let (upright, flipped) = candidate_orientations(choice)?;
    let up_profiles = FeatureProfiles::extract(upright.points());
    let flip_profiles = FeatureProfiles::extract(flipped.points());
    let up_sum = base_sum(target, &up_profiles);
    let flip_sum = base_sum(target, &flip_profiles);
    Ok(if flip_sum < up_sum {
        OrientedChoice {
            figure: flipped,
            profiles: flip_profiles,
            base_sum: flip_sum,
        }
    } else {
        OrientedChoice {
            figure: upright,
            profiles: up_profiles,
            base_sum: up_sum,
        }
    })
}

pub fn orient_choice(
    target: &AlignedFigure,
    choice: &PointSet,
) -> Result<AlignedFigure, FigureError> {
    let target_profiles = FeatureProfiles::extract(target.points());
    orient_against(&target_profiles, choice).map(|c| c.figure)
}

/// Equal-weight sum of the selected feature differences.
pub fn overall_difference(
    target: &FeatureProfiles,
    choice: &FeatureProfiles,
    selection: &FeatureSelection,
) -> f64 {
    selection
        .iter()
        .map(|(feature, variant)| match variant {
            Variant::Base => base_difference(target, choice, feature),
            Variant::SelfSymmetry => self_difference(target, choice, feature),
        })
        .sum()
}

/// Aligns the target (unflipped) and returns its profiles.
pub fn target_profiles(target: &PointSet) -> Result<FeatureProfiles, FigureError> {
    let fig = align(target, principal_angle(target)?, false)?;
    Ok(FeatureProfiles::extract(fig.points()))
}

/// Solves a trial given the three figures' point sets.
pub fn solve_points(
    target: &PointSet,
    choice_a: &PointSet,
    choice_b: &PointSet,
    selection: &FeatureSelection,
) -> Result<Decision, TrialError> {
    let wrap = |role| move |cause| TrialError { role, cause };
    let target = target_profiles(target).map_err(wrap(ImageRole::Target))?;
    let a = orient_against(&target, choice_a).map_err(wrap(ImageRole::ChoiceA))?;
    let b = orient_against(&target, choice_b).map_err(wrap(ImageRole::ChoiceB))?;
    let differences = [
        overall_difference(&target, &a.profiles, selection),
        overall_difference(&target, &b.profiles, selection),
    ];
    Ok(Decision::from_differences(
        differences,
        [a.figure.flipped(), b.figure.flipped()],
    ))
}

fn figure_of(img: &GrayImage, threshold: u8, role: ImageRole) -> Result<PointSet, TrialError> {
    extract_points(&binarize(img, threshold)).map_err(|cause| TrialError { role, cause })
}

/// Full pipeline: binarize, extract, align, orient, score, select.
pub fn solve_trial(
    target: &GrayImage,
    choice_a: &GrayImage,
    choice_b: &GrayImage,
    cfg: &ModelConfig,
) -> Result<Decision, TrialError> {
    let t = figure_of(target, cfg.threshold, ImageRole::Target)?;
    let a = figure_of(choice_a, cfg.threshold, ImageRole::ChoiceA)?;
    let b = figure_of(choice_b, cfg.threshold, ImageRole::ChoiceB)?;
    solve_points(&t, &a, &b, &cfg.selection)
}
