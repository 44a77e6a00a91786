//! Accuracy aggregation over trial sets.
//!
//! Solving is kept separate from counting: callers produce one
//! [`Outcome`] per trial (possibly in parallel) and [`aggregate`] folds
//! them into an [`EvalReport`] in trial order, so the report never depends
//! on how the outcomes were computed.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::raster::GrayImage;
use crate::reference;
use crate::solver::{solve_trial, ModelConfig};
use crate::trials::{Category, Trial};

/// Correct/total counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub n_trials: usize,
    pub n_correct: usize,
}

impl Tally {
    /// `None` when no trials were counted.
    pub fn accuracy(&self) -> Option<f64> {
        (self.n_trials > 0).then(|| self.n_correct as f64 / self.n_trials as f64)
    }

    fn record(&mut self, correct: bool) {
        self.n_trials += 1;
        self.n_correct += usize::from(correct);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptStats {
    pub concept_name: String,
    pub category: Category,
    pub n_trials: usize,
    pub n_correct: usize,
    pub accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryStats {
    pub n_trials: usize,
    pub n_correct: usize,
    pub accuracy: Option<f64>,
}

impl From<Tally> for CategoryStats {
    fn from(t: Tally) -> Self {
        CategoryStats {
            n_trials: t.n_trials,
            n_correct: t.n_correct,
            accuracy: t.accuracy(),
        }
    }
}

/// A trial excluded from the counts in lenient mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub index: usize,
    pub concept_id: u32,
    pub message: String,
}

/// Signed differences (this run minus reference); positive means the run
/// scored higher.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReferenceDeltas {
    pub concept_vs_human: BTreeMap<u32, f64>,
    pub category_vs_human: BTreeMap<Category, f64>,
    pub category_vs_published_model: BTreeMap<Category, f64>,
    pub overall_vs_published_model: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_concept: BTreeMap<u32, ConceptStats>,
    pub per_category: BTreeMap<Category, CategoryStats>,
    pub overall: CategoryStats,
    pub config: ModelConfig,
    #[serde(default)]
    pub failures: Vec<TrialFailure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_deltas: Option<ReferenceDeltas>,
}

/// Chosen index, or a description of why the trial could not be solved.
pub type Outcome = Result<usize, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError(pub TrialFailure);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial {} (concept {}): {}",
            self.0.index, self.0.concept_id, self.0.message
        )
    }
}

impl core::error::Error for EvalError {}

/// Per-concept rows from which the rest of a report can be rebuilt.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptRow {
    pub concept_id: u32,
    pub concept_name: String,
    pub category: Category,
    pub n_trials: usize,
    pub n_correct: usize,
}

impl EvalReport {
    /// Rebuilds category and overall aggregates from concept counts.
    pub fn from_concept_rows(
        rows: impl IntoIterator<Item = ConceptRow>,
        config: ModelConfig,
    ) -> Self {
        let mut per_concept = BTreeMap::new();
        let mut categories: BTreeMap<Category, Tally> = BTreeMap::new();
        let mut overall = Tally::default();
        for row in rows {
            let tally = Tally {
                n_trials: row.n_trials,
                n_correct: row.n_correct,
            };
            let cat = categories.entry(row.category).or_default();
            cat.n_trials += tally.n_trials;
            cat.n_correct += tally.n_correct;
            overall.n_trials += tally.n_trials;
            overall.n_correct += tally.n_correct;
            per_concept.insert(
                row.concept_id,
                ConceptStats {
                    concept_name: row.concept_name,
                    category: row.category,
                    n_trials: tally.n_trials,
                    n_correct: tally.n_correct,
                    accuracy: tally.accuracy(),
                },
            );
        }
        EvalReport {
            per_concept,
            per_category: categories.into_iter().map(|(c, t)| (c, t.into())).collect(),
            overall: overall.into(),
            config,
            failures: Vec::new(),
            reference_deltas: None,
        }
    }

    pub fn concept_rows(&self) -> impl Iterator<Item = ConceptRow> + '_ {
        self.per_concept.iter().map(|(&id, s)| ConceptRow {
            concept_id: id,
            concept_name: s.concept_name.clone(),
            category: s.category,
            n_trials: s.n_trials,
            n_correct: s.n_correct,
        })
    }

    /// Fills [`EvalReport::reference_deltas`] from the bundled tables.
    ///
    /// Concept comparisons use concept ids; published-model comparisons are
    /// only made when the configuration names one of the published presets.
    pub fn with_reference_deltas(mut self) -> Self {
        let mut deltas = ReferenceDeltas::default();
        for (&id, stats) in &self.per_concept {
            if let (Some(acc), Some(r)) = (stats.accuracy, reference::concept_reference(id)) {
                deltas.concept_vs_human.insert(id, acc - r.human);
            }
        }
        let published = self
            .config
            .preset_name
            .as_deref()
            .and_then(reference::published_model);
        for (&cat, stats) in &self.per_category {
            let Some(acc) = stats.accuracy else { continue };
            deltas
                .category_vs_human
                .insert(cat, acc - reference::human_category(cat));
            if let Some(model) = published {
                deltas
                    .category_vs_published_model
                    .insert(cat, acc - model.category(cat));
            }
        }
        deltas.overall_vs_published_model = published
            .zip(self.overall.accuracy)
            .map(|(model, acc)| acc - model.overall);
        self.reference_deltas = Some(deltas);
        self
    }
}

/// Folds per-trial outcomes into a report.
///
/// In strict mode the first failed trial aborts; otherwise failures are
/// listed in the report and left out of every denominator.
pub fn aggregate<I>(
    trials: &[Trial<I>],
    outcomes: &[Outcome],
    config: &ModelConfig,
    strict: bool,
) -> Result<EvalReport, EvalError> {
    assert_eq!(trials.len(), outcomes.len(), "one outcome per trial");
    let mut concepts: BTreeMap<u32, (String, Category, Tally)> = BTreeMap::new();
    let mut categories: BTreeMap<Category, Tally> = BTreeMap::new();
    let mut overall = Tally::default();
    let mut failures = Vec::new();
    for (index, (trial, outcome)) in trials.iter().zip(outcomes).enumerate() {
        let chosen = match outcome {
            Ok(chosen) => *chosen,
            Err(message) => {
                let failure = TrialFailure {
                    index,
                    concept_id: trial.concept_id,
                    message: message.clone(),
                };
                if strict {
                    return Err(EvalError(failure));
                }
                failures.push(failure);
                continue;
            }
        };
        let correct = chosen == trial.correct_index;
        let entry = concepts
            .entry(trial.concept_id)
            .or_insert_with(|| (trial.concept_name.clone(), trial.category, Tally::default()));
        if entry.0.is_empty() {
            entry.0 = trial.concept_name.clone();
        }
        entry.2.record(correct);
        categories
            .entry(trial.category)
            .or_default()
            .record(correct);
        overall.record(correct);
    }
    Ok(EvalReport {
        per_concept: concepts
            .into_iter()
            .map(|(id, (concept_name, category, t))| {
                (
                    id,
                    ConceptStats {
                        concept_name,
                        category,
                        n_trials: t.n_trials,
                        n_correct: t.n_correct,
                        accuracy: t.accuracy(),
                    },
                )
            })
            .collect(),
        per_category: categories.into_iter().map(|(c, t)| (c, t.into())).collect(),
        overall: overall.into(),
        config: config.clone(),
        failures,
        reference_deltas: None,
    })
}

/// Solves every trial with `solve` and aggregates the answers.
pub fn evaluate<I, F>(
    trials: &[Trial<I>],
    config: &ModelConfig,
    strict: bool,
    mut solve: F,
) -> Result<EvalReport, EvalError>
where
    F: FnMut(&Trial<I>) -> Outcome,
{
    let outcomes: Vec<Outcome> = trials.iter().map(&mut solve).collect();
    aggregate(trials, &outcomes, config, strict)
}

/// [`evaluate`] with the symmetry model on in-memory images.
pub fn evaluate_images(
    trials: &[Trial<GrayImage>],
    config: &ModelConfig,
    strict: bool,
) -> Result<EvalReport, EvalError> {
    evaluate(trials, config, strict, |t| solve_image_trial(t, config))
}

pub fn solve_image_trial(trial: &Trial<GrayImage>, config: &ModelConfig) -> Outcome {
    solve_trial(&trial.target, &trial.choices[0], &trial.choices[1], config)
        .map(|d| d.chosen_index)
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn trials(n: usize) -> Vec<Trial<()>> {
        (0..n)
            .map(|i| {
                let concept_id = (i / 20) as u32;
                Trial {
                    concept_id,
                    concept_name: format!("concept {concept_id}"),
                    category: Category::ALL[concept_id as usize % 7],
                    target: (),
                    choices: [(), ()],
                    correct_index: i % 2,
                }
            })
            .collect()
    }

    fn cfg() -> ModelConfig {
        ModelConfig::preset("four").unwrap()
    }

    #[test]
    fn oracle_and_anti_oracle() {
        let ts = trials(140);
        let right = evaluate(&ts, &cfg(), true, |t| Ok(t.correct_index)).unwrap();
        assert_eq!(right.overall.accuracy, Some(1.0));
        let wrong = evaluate(&ts, &cfg(), true, |t| Ok(1 - t.correct_index)).unwrap();
        assert_eq!(wrong.overall.accuracy, Some(0.0));
        assert_eq!(right.per_category.len(), 7);
    }

    #[test]
    fn coin_flip_is_near_chance() {
        let ts = trials(2000);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = evaluate(&ts, &cfg(), true, |_| Ok(rng.gen_range(0..2))).unwrap();
        let acc = r.overall.accuracy.unwrap();
        assert!((0.47..=0.53).contains(&acc), "{acc}");
    }

    #[test]
    fn empty_is_undefined() {
        let r = evaluate::<(), _>(&[], &cfg(), true, |_| Ok(0)).unwrap();
        assert!(r.per_concept.is_empty());
        assert_eq!(r.overall.accuracy, None);
    }

    #[test]
    fn failure_policy() {
        let ts = trials(20);
        let solve = |t: &Trial<()>| {
            if t.correct_index == 1 {
                Err("choice A: empty figure".into())
            } else {
                Ok(0)
            }
        };
        let err = evaluate(&ts, &cfg(), true, solve).unwrap_err();
        assert_eq!(err.0.index, 1);
        let r = evaluate(&ts, &cfg(), false, solve).unwrap();
        assert_eq!(r.failures.len(), 10);
        assert_eq!(r.overall.n_trials, 10);
        assert_eq!(r.overall.accuracy, Some(1.0));
    }

    #[test]
    fn deltas_use_reference_tables() {
        let mut ts = trials(20);
        for t in &mut ts {
            t.concept_id = 18;
            t.category = Category::MetricProperties;
        }
        let r = evaluate(&ts, &cfg(), true, |t| Ok(t.correct_index))
            .unwrap()
            .with_reference_deltas();
        let d = r.reference_deltas.unwrap();
        assert!((d.concept_vs_human[&18] - (1.0 - 0.903)).abs() < 1e-12);
        assert!((d.category_vs_published_model[&Category::MetricProperties] - 0.09).abs() < 1e-12);
        assert!((d.overall_vs_published_model.unwrap() - (1.0 - 0.847)).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn aggregation_identities(answers in proptest::collection::vec(0usize..2, 0..200), seed in any::<u64>()) {
            let ts = trials(answers.len());
            let outcomes: Vec<Outcome> = answers.iter().map(|&a| Ok(a)).collect();
            let r = aggregate(&ts, &outcomes, &cfg(), true).unwrap();
            let concept_sum: usize = r.per_concept.values().map(|s| s.n_correct).sum();
            let category_sum: usize = r.per_category.values().map(|s| s.n_correct).sum();
            prop_assert_eq!(concept_sum, r.overall.n_correct);
            prop_assert_eq!(category_sum, r.overall.n_correct);
            prop_assert_eq!(r.overall.n_trials, ts.len());

            // Order invariance: shuffle trials together with their outcomes.
            let mut order: Vec<usize> = (0..ts.len()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let shuffled: Vec<_> = order.iter().map(|&i| ts[i].clone()).collect();
            let shuffled_out: Vec<_> = order.iter().map(|&i| outcomes[i].clone()).collect();
            let s = aggregate(&shuffled, &shuffled_out, &cfg(), true).unwrap();
            prop_assert_eq!(&s.per_concept, &r.per_concept);
            prop_assert_eq!(&s.per_category, &r.per_category);
            prop_assert_eq!(&s.overall, &r.overall);

            let rebuilt = EvalReport::from_concept_rows(r.concept_rows(), cfg());
            prop_assert_eq!(rebuilt, r);
        }
    }
}
