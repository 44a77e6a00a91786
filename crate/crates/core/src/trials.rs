//! Six-image odd-one-out problems and the 2-AFC trials derived from them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

/// The seven concept categories, in the order reports list them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    SymmetricalFigures,
    ChiralFigures,
    EuclideanGeometry,
    GeometricalFigures,
    GeometricalTransformations,
    MetricProperties,
    Topology,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::SymmetricalFigures,
        Category::ChiralFigures,
        Category::EuclideanGeometry,
        Category::GeometricalFigures,
        Category::GeometricalTransformations,
        Category::MetricProperties,
        Category::Topology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::SymmetricalFigures => "Symmetrical figures",
            Category::ChiralFigures => "Chiral figures",
            Category::EuclideanGeometry => "Euclidean geometry",
            Category::GeometricalFigures => "Geometrical figures",
            Category::GeometricalTransformations => "Geometrical transformations",
            Category::MetricProperties => "Metric properties",
            Category::Topology => "Topology",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCategory(pub String);

impl fmt::Display for UnknownCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown category `{}`", self.0)
    }
}

impl core::error::Error for UnknownCategory {}

impl FromStr for Category {
    type Err = UnknownCategory;

    /// Case-insensitive; `_` and `-` are read as spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted: String = s
            .trim()
            .chars()
            .map(|c| match c {
                '_' | '-' => ' ',
                c => c.to_ascii_lowercase(),
            })
            .collect();
        Category::ALL
            .into_iter()
            .find(|c| c.name().to_ascii_lowercase() == wanted)
            .ok_or_else(|| UnknownCategory(s.into()))
    }
}

impl Serialize for Category {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Category {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Images per problem.
pub const PROBLEM_SIZE: usize = 6;
/// Trials generated from one problem: 5 targets x 4 conforming choices.
pub const TRIALS_PER_PROBLEM: usize = 20;

/// A six-image odd-one-out problem; `I` is however images are referenced
/// (decoded images, file paths, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem<I> {
    pub concept_id: u32,
    pub concept_name: String,
    pub category: Category,
    pub images: Vec<I>,
    pub odd_index: usize,
}

impl<I> Problem<I> {
    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.images.len() != PROBLEM_SIZE {
            return Err(ProblemError::ImageCount(self.images.len()));
        }
        if self.odd_index >= PROBLEM_SIZE {
            return Err(ProblemError::OddIndex(self.odd_index));
        }
        Ok(())
    }

    /// Indices of the five images that embody the concept.
    pub fn conforming(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.images.len()).filter(move |&i| i != self.odd_index)
    }

    pub fn map_images<J>(self, f: impl FnMut(I) -> J) -> Problem<J> {
        Problem {
            concept_id: self.concept_id,
            concept_name: self.concept_name,
            category: self.category,
            images: self.images.into_iter().map(f).collect(),
            odd_index: self.odd_index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemError {
    ImageCount(usize),
    OddIndex(usize),
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::ImageCount(n) => {
                write!(f, "malformed problem: {n} images, expected {PROBLEM_SIZE}")
            }
            ProblemError::OddIndex(i) => {
                write!(f, "malformed problem: odd_index {i} is out of range")
            }
        }
    }
}

impl core::error::Error for ProblemError {}

/// One target and two choices; `choices[correct_index]` embodies the concept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial<I> {
    pub concept_id: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub concept_name: String,
    pub category: Category,
    pub target: I,
    pub choices: [I; 2],
    pub correct_index: usize,
}

impl<I> Trial<I> {
    pub fn map_images<J>(self, mut f: impl FnMut(I) -> J) -> Trial<J> {
        let [a, b] = self.choices;
        let target = f(self.target);
        Trial {
            concept_id: self.concept_id,
            concept_name: self.concept_name,
            category: self.category,
            target,
            choices: [f(a), f(b)],
            correct_index: self.correct_index,
        }
    }
}

/// All twenty 2-AFC trials of a problem.
///
/// Targets run over the five conforming images in order; for each target
/// the conforming choice runs over the other four. Trial `k` puts the
/// correct choice on the left when `k` is even and on the right when odd.
pub fn generate_trials<I: Clone>(problem: &Problem<I>) -> Result<Vec<Trial<I>>, ProblemError> {
    problem.validate()?;
    let odd = &problem.images[problem.odd_index];
    let mut trials = Vec::with_capacity(TRIALS_PER_PROBLEM);
    for target in problem.conforming() {
        for other in problem.conforming().filter(|&i| i != target) {
            let correct_index = trials.len() % 2;
            let conforming = problem.images[other].clone();
            let choices = if correct_index == 0 {
                [conforming, odd.clone()]
            } else {
                [odd.clone(), conforming]
            };
            trials.push(Trial {
                concept_id: problem.concept_id,
                concept_name: problem.concept_name.clone(),
                category: problem.category,
                target: problem.images[target].clone(),
                choices,
                correct_index,
            });
        }
    }
    Ok(trials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use proptest::prelude::*;

    fn problem(odd_index: usize) -> Problem<usize> {
        Problem {
            concept_id: 18,
            concept_name: "Center of circle".into(),
            category: Category::MetricProperties,
            images: (0..6).collect(),
            odd_index,
        }
    }

    #[test]
    fn rejects_malformed() {
        let mut p = problem(0);
        p.images.pop();
        assert_eq!(generate_trials(&p), Err(ProblemError::ImageCount(5)));
        assert_eq!(generate_trials(&problem(6)), Err(ProblemError::OddIndex(6)));
    }

    #[test]
    fn category_names_parse() {
        for c in Category::ALL {
            assert_eq!(c.name().parse::<Category>().unwrap(), c);
        }
        assert_eq!(
            "chiral_figures".parse::<Category>().unwrap(),
            Category::ChiralFigures
        );
        assert!("Geometry".parse::<Category>().is_err());
    }

    proptest! {
        #[test]
        fn twenty_trials_cover_all_pairs(odd in 0usize..6) {
            let p = problem(odd);
            let trials = generate_trials(&p).unwrap();
            prop_assert_eq!(trials.len(), 20);
            let mut pairs = BTreeSet::new();
            let mut per_target = [0usize; 6];
            let mut left = 0;
            for t in &trials {
                let odd_slots = t.choices.iter().filter(|&&c| c == odd).count();
                prop_assert_eq!(odd_slots, 1);
                prop_assert_eq!(t.choices[1 - t.correct_index], odd);
                let conforming = t.choices[t.correct_index];
                prop_assert!(conforming != t.target && t.target != odd);
                pairs.insert((t.target, conforming));
                per_target[t.target] += 1;
                left += usize::from(t.correct_index == 0);
            }
            prop_assert_eq!(pairs.len(), 20);
            prop_assert_eq!(left, 10);
            for (i, n) in per_target.iter().enumerate() {
                prop_assert_eq!(*n, if i == odd { 0 } else { 4 });
            }
            prop_assert_eq!(generate_trials(&p).unwrap(), trials);
        }
    }

    #[test]
    fn first_trial_layout() {
        let p = problem(2).map_images(|i| vec![i as u8]);
        let trials = generate_trials(&p).unwrap();
        assert_eq!(trials[0].target, vec![0u8]);
        assert_eq!(trials[0].choices, [vec![1u8], vec![2u8]]);
    }
}
