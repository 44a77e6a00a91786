//! Problem and trial manifests.
//!
//! A problem manifest is a JSON object
//!
//! ```json
//! {"concept_id": 101, "concept_name": "Chirality (Z)", "category": "Chiral figures",
//!  "images": ["image_0.pgm", "..."], "odd_index": 3}
//! ```
//!
//! and a trial manifest is a JSON array of trial records
//!
//! ```json
//! [{"concept_id": 101, "concept_name": "Chirality (Z)", "category": "Chiral figures",
//!   "target": "image_0.pgm", "choices": ["image_1.pgm", "image_3.pgm"], "correct_index": 0}]
//! ```
//!
//! `concept_name` is optional in trial records. Image paths are relative to
//! the directory holding the manifest (absolute paths are kept as given).

use std::collections::HashMap;
use std::fs;
use std::path::{Component, Path, PathBuf};

use geomint_core::trials::{Problem, Trial};
use geomint_core::GrayImage;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{io_err, Error, Result};
use crate::image_io::{load_image, save_pgm};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))
}

fn base_dir(manifest: &Path) -> PathBuf {
    manifest.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Absolute, with `.` and `..` removed lexically.
fn normalized(path: &Path) -> PathBuf {
    let abs = std::path::absolute(path).unwrap_or_else(|_| path.to_path_buf());
    let mut out = PathBuf::new();
    for c in abs.components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir => {
                out.pop();
            }
            other => out.push(other),
        }
    }
    out
}

/// `path` as seen from the directory that will hold `manifest`.
pub fn relative_to_manifest(path: &Path, manifest: &Path) -> String {
    let target = normalized(path);
    let rel = pathdiff::diff_paths(&target, normalized(&base_dir(manifest))).unwrap_or(target);
    rel.to_string_lossy().replace('\\', "/")
}

/// Reads a problem manifest with image paths resolved against its directory.
pub fn read_problem(path: &Path) -> Result<Problem<PathBuf>> {
    let raw: Problem<String> = read_json(path)?;
    raw.validate().map_err(|source| Error::Problem {
        path: path.to_path_buf(),
        source,
    })?;
    let dir = base_dir(path);
    Ok(raw.map_images(|p| dir.join(p)))
}

pub fn load_problem(path: &Path) -> Result<Problem<GrayImage>> {
    let problem = read_problem(path)?;
    let mut images = Vec::with_capacity(problem.images.len());
    for p in &problem.images {
        images.push(load_image(p)?);
    }
    Ok(Problem {
        concept_id: problem.concept_id,
        concept_name: problem.concept_name,
        category: problem.category,
        images,
        odd_index: problem.odd_index,
    })
}

/// Writes `image_<i>.pgm` files and `problem.json` into `dir`; returns the
/// manifest path.
pub fn write_problem(dir: &Path, problem: &Problem<GrayImage>) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut names = Vec::with_capacity(problem.images.len());
    for (i, img) in problem.images.iter().enumerate() {
        let name = format!("image_{i}.pgm");
        save_pgm(&dir.join(&name), img)?;
        names.push(name);
    }
    let manifest = Problem {
        concept_id: problem.concept_id,
        concept_name: problem.concept_name.clone(),
        category: problem.category,
        images: names,
        odd_index: problem.odd_index,
    };
    let path = dir.join("problem.json");
    write_json(&path, &manifest)?;
    Ok(path)
}

/// Reads a trial manifest with image paths resolved against its directory.
pub fn read_trials(path: &Path) -> Result<Vec<Trial<PathBuf>>> {
    let raw: Vec<Trial<String>> = read_json(path)?;
    let dir = base_dir(path);
    Ok(raw
        .into_iter()
        .map(|t| t.map_images(|p| dir.join(p)))
        .collect())
}

/// Writes trials whose image paths are valid from the current directory,
/// rewriting them relative to `path`.
pub fn write_trials(path: &Path, trials: &[Trial<PathBuf>]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let records: Vec<Trial<String>> = trials
        .iter()
        .cloned()
        .map(|t| t.map_images(|p| relative_to_manifest(&p, path)))
        .collect();
    write_json(path, &records)
}

/// Loads every image a trial list refers to, decoding each file once.
pub fn load_trial_images(trials: &[Trial<PathBuf>]) -> Result<Vec<Trial<GrayImage>>> {
    let mut cache: HashMap<PathBuf, GrayImage> = HashMap::new();
    let mut fetch = |p: &PathBuf| -> Result<GrayImage> {
        if let Some(img) = cache.get(p) {
            return Ok(img.clone());
        }
        let img = load_image(p)?;
        cache.insert(p.clone(), img.clone());
        Ok(img)
    };
    trials
        .iter()
        .map(|t| {
            Ok(Trial {
                concept_id: t.concept_id,
                concept_name: t.concept_name.clone(),
                category: t.category,
                target: fetch(&t.target)?,
                choices: [fetch(&t.choices[0])?, fetch(&t.choices[1])?],
                correct_index: t.correct_index,
            })
        })
        .collect()
}
