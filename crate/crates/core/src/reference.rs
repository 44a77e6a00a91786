//! Published accuracy figures, bundled for side-by-side reporting.
//!
//! These are transcriptions of numbers measured on the original
//! core-geometry test stimuli, together with human accuracy on the same
//! trials. They are comparison columns only; synthetic stimuli are not
//! expected to reproduce them.
//!
//! All values are fractions in `[0, 1]`.

// Transcribed data; some entries happen to be close to named constants.
#![allow(clippy::approx_constant)]

use crate::trials::Category;

/// Published model accuracy for one feature preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedModel {
    pub preset: &'static str,
    pub label: &'static str,
    /// Per category, in [`Category::ALL`] order.
    pub by_category: [f64; 7],
    pub overall: f64,
}

pub const PUBLISHED_MODELS: [PublishedModel; 3] = [
    PublishedModel {
        preset: "cs",
        label: "Center Shift (Base)",
        by_category: [0.90, 1.00, 0.88, 0.63, 0.73, 0.90, 0.55],
        overall: 0.784,
    },
    PublishedModel {
        preset: "cs+sspread",
        label: "Center Shift (Base), Spread (Self-Symmetry)",
        by_category: [0.85, 1.00, 0.87, 0.83, 0.75, 0.90, 0.58],
        overall: 0.828,
    },
    PublishedModel {
        preset: "four",
        label: "Center Shift (Base), Center Shift, Area, Spread (Self-Symmetry)",
        by_category: [0.87, 1.00, 0.87, 0.86, 0.78, 0.91, 0.64],
        overall: 0.847,
    },
];

/// Human accuracy per category, in [`Category::ALL`] order.
pub const HUMAN_BY_CATEGORY: [f64; 7] = [0.820, 0.962, 0.912, 0.714, 0.763, 0.820, 0.822];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConceptReference {
    pub concept_id: u32,
    pub category: Category,
    pub name: &'static str,
    pub human: f64,
    /// Four-feature model minus human; `None` where the source row has no value.
    pub model_minus_human: Option<f64>,
}

impl ConceptReference {
    pub fn model(&self) -> Option<f64> {
        self.model_minus_human.map(|d| self.human + d)
    }
}

const fn concept(
    concept_id: u32,
    category: Category,
    name: &'static str,
    human: f64,
    model_minus_human: Option<f64>,
) -> ConceptReference {
    ConceptReference {
        concept_id,
        category,
        name,
        human,
        model_minus_human,
    }
}

use Category::*;

/// Per-concept human accuracy and four-feature model difference.
pub const CONCEPTS: [ConceptReference; 43] = [
    concept(28, SymmetricalFigures, "Vertical axis", 0.858, Some(0.142)),
    concept(30, SymmetricalFigures, "Oblique axis", 0.875, Some(0.025)),
    concept(
        29,
        SymmetricalFigures,
        "Horizontal axis",
        0.727,
        Some(-0.027),
    ),
    concept(44, ChiralFigures, "Oblique axis", 0.655, Some(0.345)),
    concept(38, ChiralFigures, "Oblique axis", 0.716, Some(0.284)),
    concept(42, ChiralFigures, "Vertical axis", 0.943, Some(0.057)),
    concept(41, ChiralFigures, "Vertical axis", 0.966, Some(0.034)),
    concept(14, EuclideanGeometry, "Right angle", 0.943, Some(0.057)),
    concept(
        11,
        EuclideanGeometry,
        "Alignment of points in lines",
        0.949,
        Some(0.051),
    ),
    concept(10, EuclideanGeometry, "Straight line", 0.960, Some(0.040)),
    concept(15, EuclideanGeometry, "Right angle", 0.977, Some(0.023)),
    concept(
        7,
        EuclideanGeometry,
        "Alignment of points in lines",
        0.983,
        Some(0.017),
    ),
    concept(8, EuclideanGeometry, "Curve", 0.960, Some(-0.110)),
    concept(40, EuclideanGeometry, "Secant lines", 0.932, Some(-0.382)),
    concept(37, EuclideanGeometry, "Parallel lines", 0.989, Some(-0.439)),
    concept(23, GeometricalFigures, "Square", 0.852, Some(0.148)),
    concept(9, GeometricalFigures, "Convex shape", 0.938, Some(0.063)),
    concept(26, GeometricalFigures, "Trapezoid", 0.892, Some(0.058)),
    concept(17, GeometricalFigures, "Circle", 0.966, Some(0.034)),
    concept(
        20,
        GeometricalFigures,
        "Equilateral triangle",
        0.972,
        Some(0.028),
    ),
    concept(24, GeometricalFigures, "Rectangle", 0.943, Some(-0.043)),
    concept(25, GeometricalFigures, "Parallelogram", 0.886, Some(-0.186)),
    concept(12, GeometricalFigures, "Quadrilateral", 0.949, Some(-0.199)),
    concept(
        13,
        GeometricalFigures,
        "Rightangled triangle",
        0.813,
        Some(-0.413),
    ),
    concept(
        33,
        GeometricalTransformations,
        "Horizontal symmetry",
        0.625,
        None,
    ),
    concept(
        34,
        GeometricalTransformations,
        "Rotation",
        0.483,
        Some(0.367),
    ),
    concept(
        35,
        GeometricalTransformations,
        "Oblique symmetry",
        0.767,
        Some(0.233),
    ),
    concept(
        36,
        GeometricalTransformations,
        "Homothety (fixed orientation)",
        0.744,
        Some(0.106),
    ),
    concept(
        39,
        GeometricalTransformations,
        "Homothety (fixed size)",
        0.710,
        Some(0.090),
    ),
    concept(
        27,
        GeometricalTransformations,
        "Vertical symmetry",
        0.731,
        Some(-0.031),
    ),
    concept(
        31,
        GeometricalTransformations,
        "Translation",
        0.813,
        Some(-0.163),
    ),
    concept(
        32,
        GeometricalTransformations,
        "Point symmetry",
        0.835,
        Some(-0.435),
    ),
    concept(
        22,
        MetricProperties,
        "Center of quadrilateral",
        0.477,
        Some(0.373),
    ),
    concept(
        19,
        MetricProperties,
        "Middle of segment",
        0.682,
        Some(0.318),
    ),
    concept(
        45,
        MetricProperties,
        "Increasing distance",
        0.744,
        Some(0.256),
    ),
    concept(21, MetricProperties, "Fixed proportion", 0.727, Some(0.173)),
    concept(18, MetricProperties, "Center of circle", 0.903, Some(0.097)),
    concept(16, MetricProperties, "Distance", 0.966, Some(0.034)),
    concept(43, Topology, "Equidistance", 0.841, Some(-0.241)),
    concept(6, Topology, "Connectedness", 0.813, Some(0.188)),
    concept(5, Topology, "Closure", 0.813, Some(0.038)),
    concept(4, Topology, "Inside", 0.977, Some(-0.477)),
    concept(3, Topology, "Holes", 0.688, Some(-0.488)),
];

fn category_slot(category: Category) -> usize {
    Category::ALL
        .iter()
        .position(|&c| c == category)
        .expect("every category is listed")
}

pub fn human_category(category: Category) -> f64 {
    HUMAN_BY_CATEGORY[category_slot(category)]
}

pub fn published_model(preset: &str) -> Option<&'static PublishedModel> {
    PUBLISHED_MODELS.iter().find(|m| m.preset == preset)
}

impl PublishedModel {
    pub fn category(&self, category: Category) -> f64 {
        self.by_category[category_slot(category)]
    }
}

pub fn concept_reference(concept_id: u32) -> Option<&'static ConceptReference> {
    CONCEPTS.iter().find(|c| c.concept_id == concept_id)
}
