//! The `geomint` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand};
use geomint_core::align::{align, principal_angle};
use geomint_core::features::{Axis, Feature, FeatureProfiles, FeatureSelection};
use geomint_core::synth::{Generator, JitterParams};
use geomint_core::trials::generate_trials;
use geomint_core::{binarize, extract_points, solve_trial, ModelConfig, DEFAULT_THRESHOLD};

use crate::bench::{evaluate_trials, synthetic_trials};
use crate::error::{io_err, Error, Result};
use crate::image_io::load_image;
use crate::manifest::{load_trial_images, read_problem, read_trials, write_problem, write_trials};
use crate::report::{render_comparison, render_report, Format};

#[derive(Debug, Parser)]
#[command(
    name = "geomint",
    version,
    about = "Symmetry-profile solver for 2-AFC geometry trials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Feature preset.
    #[arg(long, default_value = "four", value_parser = clap::builder::PossibleValuesParser::new(FeatureSelection::PRESETS))]
    features: String,
    /// Explicit comma-separated feature list, e.g. `center_shift,self_spread`.
    #[arg(long, value_name = "LIST", conflicts_with = "features", value_parser = parse_feature_list)]
    features_list: Option<FeatureSelection>,
    /// Pixels darker than this are figure.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: u8,
}

impl ModelArgs {
    fn config(&self) -> ModelConfig {
        let cfg = match &self.features_list {
            Some(sel) => ModelConfig::new(sel.clone()),
            None => ModelConfig::preset(&self.features).expect("validated by the parser"),
        };
        cfg.with_threshold(self.threshold)
    }
}

fn parse_feature_list(s: &str) -> std::result::Result<FeatureSelection, String> {
    FeatureSelection::parse_list(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy)]
enum ConceptChoice {
    One(Generator),
    All,
}

fn parse_concept(s: &str) -> std::result::Result<ConceptChoice, String> {
    if s == "all" {
        return Ok(ConceptChoice::All);
    }
    if let Ok(id) = s.parse::<u32>() {
        if let Some(g) = Generator::ALL.iter().find(|g| g.concept_id() == id) {
            return Ok(ConceptChoice::One(*g));
        }
    }
    Generator::from_id(s).map(ConceptChoice::One).map_err(|_| {
        let ids: Vec<_> = Generator::ALL
            .iter()
            .map(|g| format!("{} ({})", g.id(), g.concept_id()))
            .collect();
        format!(
            "unknown concept {s:?}; expected all or one of: {}",
            ids.join(", ")
        )
    })
}

#[derive(Debug, Args)]
struct SeedArg {
    /// Random seed; falls back to $GEOMINT_SEED, then 0.
    #[arg(long, env = "GEOMINT_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one trial and print the decision as JSON.
    Solve {
        target: PathBuf,
        choice_a: PathBuf,
        choice_b: PathBuf,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Synthesize a six-image problem (manifest plus PGM images).
    Generate {
        /// Generator id, concept id, or `all`.
        #[arg(long, value_parser = parse_concept)]
        concept: ConceptChoice,
        #[command(flatten)]
        seed: SeedArg,
        /// Output directory; with `--concept all` one subdirectory per generator.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = JitterParams::default().canvas)]
        canvas: usize,
        #[arg(long, default_value_t = JitterParams::default().stroke_width)]
        stroke_width: f64,
    },
    /// Expand problem manifests into a 2-AFC trial manifest.
    Trials {
        #[arg(required = true)]
        problems: Vec<PathBuf>,
        /// Defaults to `trials.json` beside the first problem manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a model over trial manifests or the synthetic benchmark.
    Evaluate {
        #[arg(required_unless_present = "synthetic")]
        trials: Vec<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "table")]
        report: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: u16,
        /// Record failing trials instead of aborting.
        #[arg(long)]
        lenient: bool,
        /// Run all three presets and compare with the published numbers.
        #[arg(long, conflicts_with_all = ["features", "features_list"])]
        all_presets: bool,
        /// Use freshly synthesized problems instead of trial files.
        #[arg(long, conflicts_with = "trials")]
        synthetic: bool,
        /// Problems per generator with `--synthetic`.
        #[arg(long, default_value_t = 3, requires = "synthetic")]
        problems: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Dump the aligned figure's profiles as CSV (feature, axis, bin, value).
    Inspect {
        image: PathBuf,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: u8,
    },
}

/// Runs with the process's standard streams; returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Exit status 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            if e.use_stderr() && !text.contains("Usage:") {
                text.push('\n');
                text.push_str(&synopsis(&argv));
                text.push('\n');
            }
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Usage line of the subcommand named in `argv`, or of the whole program.
fn synopsis(argv: &[OsString]) -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let name = argv
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.find_subcommand(a).is_some())
        .map(str::to_owned);
    match name.and_then(|n| cmd.find_subcommand_mut(&n)) {
        Some(sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err(p)),
        None => out.write_all(text.as_bytes()).map_err(io_err("<stdout>")),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Solve {
            target,
            choice_a,
            choice_b,
            model,
        } => {
            let cfg = model.config();
            let decision = solve_trial(
                &load_image(&target)?,
                &load_image(&choice_a)?,
                &load_image(&choice_b)?,
                &cfg,
            )?;
            let mut text = serde_json::to_string_pretty(&decision).expect("decisions serialize");
            text.push('\n');
            emit(out, None, &text)
        }
        Command::Generate {
            concept,
            seed,
            out: dir,
            canvas,
            stroke_width,
        } => {
            let params = JitterParams {
                canvas,
                stroke_width,
                ..JitterParams::default()
            };
            let targets: Vec<(Generator, PathBuf)> = match concept {
                ConceptChoice::One(g) => vec![(g, dir)],
                ConceptChoice::All => Generator::ALL
                    .iter()
                    .map(|g| (*g, dir.join(g.id())))
                    .collect(),
            };
            for (g, d) in targets {
                let problem = g.synthesize(&params, seed.seed)?;
                let manifest = write_problem(&d, &problem)?;
                emit(out, None, &format!("{}\n", manifest.display()))?;
            }
            Ok(())
        }
        Command::Trials {
            problems,
            out: path,
        } => {
            let mut trials = Vec::new();
            for p in &problems {
                let problem = read_problem(p)?;
                trials.extend(generate_trials(&problem).map_err(|source| Error::Problem {
                    path: p.clone(),
                    source,
                })?);
            }
            let path = path.unwrap_or_else(|| {
                problems[0]
                    .parent()
                    .unwrap_or(Path::new(""))
                    .join("trials.json")
            });
            write_trials(&path, &trials)?;
            emit(out, None, &format!("{}\n", path.display()))
        }
        Command::Evaluate {
            trials,
            model,
            report,
            out: path,
            jobs,
            lenient,
            all_presets,
            synthetic,
            problems,
            seed,
        } => {
            let images = if synthetic {
                synthetic_trials(seed.seed, problems, &JitterParams::default())?
            } else {
                let mut refs = Vec::new();
                for t in &trials {
                    refs.extend(read_trials(t)?);
                }
                load_trial_images(&refs)?
            };
            let jobs = usize::from(jobs);
            let text = if all_presets {
                let mut reports = Vec::new();
                for preset in FeatureSelection::PRESETS {
                    let cfg = ModelConfig::preset(preset)
                        .expect("preset names are valid")
                        .with_threshold(model.threshold);
                    reports.push(
                        evaluate_trials(&images, &cfg, !lenient, jobs)?.with_reference_deltas(),
                    );
                }
                render_comparison(&reports, report)
            } else {
                let r = evaluate_trials(&images, &model.config(), !lenient, jobs)?;
                render_report(&r.with_reference_deltas(), report)
            };
            emit(out, path.as_deref(), &text)
        }
        Command::Inspect { image, threshold } => {
            let img = load_image(&image)?;
            let points =
                extract_points(&binarize(&img, threshold)).map_err(|source| Error::Figure {
                    path: image.clone(),
                    source,
                })?;
            let angle = principal_angle(&points).map_err(|source| Error::Figure {
                path: image.clone(),
                source,
            })?;
            let fig = align(&points, angle, false).map_err(|source| Error::Figure {
                path: image.clone(),
                source,
            })?;
            emit(
                out,
                None,
                &profiles_csv(&FeatureProfiles::extract(fig.points())),
            )
        }
    }
}

/// One row per profile bin; self-symmetry curves use axis `v-h`.
pub fn profiles_csv(fp: &FeatureProfiles) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["feature", "axis", "bin", "value"])
        .expect("in-memory write");
    for feature in Feature::ALL {
        for axis in Axis::BOTH {
            for (bin, value) in fp.base(feature, axis).bins() {
                w.write_record([
                    feature.name(),
                    axis.label(),
                    &bin.to_string(),
                    &value.to_string(),
                ])
                .expect("in-memory write");
            }
        }
    }
    for feature in Feature::ALL {
        let name = format!("self_{}", feature.name());
        for (bin, value) in fp.self_profile(feature).bins() {
            w.write_record([name.as_str(), "v-h", &bin.to_string(), &value.to_string()])
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}
