//! Parametric stand-in stimuli for odd-one-out problems.
//!
//! Each [`Generator`] draws five figures that embody a concept and one that
//! violates it. Position, rotation and size are randomized per image; the
//! concept-relevant geometry is not. Output is deterministic for a given
//! seed.

pub mod render;
pub mod validate;

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::raster::GrayImage;
use crate::trials::{Category, Problem, PROBLEM_SIZE};
use render::{Canvas, Figure, Part};

/// Canvas size the nominal figure dimensions are designed for.
const NOMINAL_CANVAS: f64 = 128.0;

/// Randomization amplitudes for the irrelevant attributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JitterParams {
    /// Square canvas side in pixels; at least 64.
    pub canvas: usize,
    /// Stroke width in pixels, in `[1, 3]`.
    pub stroke_width: f64,
    /// Relative size jitter: scale is drawn from `1 ± scale`. Below 1.
    pub scale: f64,
    /// Rotation is drawn from `±rotation` radians.
    pub rotation: f64,
    /// Fraction of the free margin the figure center may wander, in `[0, 1]`.
    pub position: f64,
}

impl Default for JitterParams {
    fn default() -> Self {
        JitterParams {
            canvas: 128,
            stroke_width: 2.0,
            scale: 0.15,
            rotation: PI,
            position: 0.5,
        }
    }
}

impl JitterParams {
    fn check(&self) -> Result<(), SynthError> {
        if self.canvas < 64 {
            return Err(SynthError::CanvasTooSmall(self.canvas));
        }
        let ok = (1.0..=3.0).contains(&self.stroke_width)
            && (0.0..1.0).contains(&self.scale)
            && self.rotation >= 0.0
            && self.rotation.is_finite()
            && (0.0..=1.0).contains(&self.position);
        if ok {
            Ok(())
        } else {
            Err(SynthError::DegenerateParams)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthError {
    UnknownGenerator(String),
    CanvasTooSmall(usize),
    DegenerateParams,
    /// The figure cannot fit the canvas at the requested size.
    DoesNotFit,
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::UnknownGenerator(id) => write!(f, "unknown generator `{id}`"),
            SynthError::CanvasTooSmall(n) => write!(f, "canvas {n}px is below the 64px minimum"),
            SynthError::DegenerateParams => f.write_str("jitter parameters out of range"),
            SynthError::DoesNotFit => f.write_str("figure does not fit the canvas"),
        }
    }
}

impl core::error::Error for SynthError {}

/// Concept generators, at least one per category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// Dot at the center of a circle; odd dot is off center.
    CenterOfCircle,
    /// Z-shaped strokes of one handedness; odd one is mirrored.
    ChiralityZ,
    /// Mirror-symmetric filled shapes; odd one is lopsided.
    MirrorSymmetry,
    /// Square outlines; odd one is an oblong rectangle.
    Square,
    /// Straight segments; odd one is an arc.
    StraightLine,
    /// Pairs of parallel segments; odd pair is tilted.
    ParallelLines,
    /// Dot inside a closed curve; odd dot is outside.
    Inside,
    /// Two copies of an L related by translation; odd copy is turned.
    Translation,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::CenterOfCircle,
        Generator::ChiralityZ,
        Generator::MirrorSymmetry,
        Generator::Square,
        Generator::StraightLine,
        Generator::ParallelLines,
        Generator::Inside,
        Generator::Translation,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Generator::CenterOfCircle => "center_of_circle",
            Generator::ChiralityZ => "chirality_z",
            Generator::MirrorSymmetry => "mirror_symmetry",
            Generator::Square => "square",
            Generator::StraightLine => "straight_line",
            Generator::ParallelLines => "parallel_lines",
            Generator::Inside => "inside",
            Generator::Translation => "translation",
        }
    }

    pub fn from_id(id: &str) -> Result<Self, SynthError> {
        Generator::ALL
            .into_iter()
            .find(|g| g.id() == id)
            .ok_or_else(|| SynthError::UnknownGenerator(id.into()))
    }

    /// Concept number; matches the bundled reference numbering where the concept
    /// is listed there, otherwise 100 and up.
    pub fn concept_id(self) -> u32 {
        match self {
            Generator::CenterOfCircle => 18,
            Generator::ChiralityZ => 101,
            Generator::MirrorSymmetry => 102,
            Generator::Square => 23,
            Generator::StraightLine => 10,
            Generator::ParallelLines => 37,
            Generator::Inside => 4,
            Generator::Translation => 31,
        }
    }

    pub fn concept_name(self) -> &'static str {
        match self {
            Generator::CenterOfCircle => "Center of circle",
            Generator::ChiralityZ => "Z handedness",
            Generator::MirrorSymmetry => "Mirror symmetry",
            Generator::Square => "Square",
            Generator::StraightLine => "Straight line",
            Generator::ParallelLines => "Parallel lines",
            Generator::Inside => "Inside",
            Generator::Translation => "Translation",
        }
    }

    pub fn category(self) -> Category {
        match self {
            Generator::CenterOfCircle => Category::MetricProperties,
            Generator::ChiralityZ => Category::ChiralFigures,
            Generator::MirrorSymmetry => Category::SymmetricalFigures,
            Generator::Square => Category::GeometricalFigures,
            Generator::StraightLine | Generator::ParallelLines => Category::EuclideanGeometry,
            Generator::Inside => Category::Topology,
            Generator::Translation => Category::GeometricalTransformations,
        }
    }

    fn stream(self) -> u64 {
        Generator::ALL.iter().position(|&g| g == self).unwrap() as u64 + 1
    }

    /// Renders a problem. The odd image's position is drawn from the seed.
    pub fn synthesize(
        self,
        params: &JitterParams,
        seed: u64,
    ) -> Result<Problem<GrayImage>, SynthError> {
        params.check()?;
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ self.stream().wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let odd_index = rng.gen_range(0..PROBLEM_SIZE);
        let shape = Shape::draw(self, &mut rng);
        let mut images = Vec::with_capacity(PROBLEM_SIZE);
        for i in 0..PROBLEM_SIZE {
            let figure = shape.figure(&mut rng, i == odd_index);
            images.push(place(&figure, params, &mut rng)?);
        }
        Ok(Problem {
            concept_id: self.concept_id(),
            concept_name: self.concept_name().into(),
            category: self.category(),
            images,
            odd_index,
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Renders a problem for the generator named `id`.
pub fn synthesize_problem(
    id: &str,
    params: &JitterParams,
    seed: u64,
) -> Result<Problem<GrayImage>, SynthError> {
    Generator::from_id(id)?.synthesize(params, seed)
}

/// Applies random scale, rotation and position, then rasterizes.
fn place(
    figure: &Figure,
    params: &JitterParams,
    rng: &mut ChaCha8Rng,
) -> Result<GrayImage, SynthError> {
    let side = params.canvas as f64;
    let base = side / NOMINAL_CANVAS;
    let scale = base * (1.0 + rng.gen_range(-1.0..=1.0) * params.scale);
    let angle = rng.gen_range(-1.0..=1.0) * params.rotation;
    let (jx, jy): (f64, f64) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    let half = 0.5 * (side - 1.0);
    let free = half - scale * figure.extent() - params.stroke_width - 1.0;
    if free < 0.0 {
        return Err(SynthError::DoesNotFit);
    }
    let placed = figure.scaled(scale).rotated(angle).translated(
        half + jx * params.position * free,
        half + jy * params.position * free,
    );
    let mut canvas = Canvas::new(params.canvas, params.canvas);
    canvas.draw(&placed, params.stroke_width);
    Ok(canvas.to_gray())
}

fn pt(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn polar(r: f64, angle: f64) -> Point {
    pt(r * libm::cos(angle), r * libm::sin(angle))
}

/// Proportions of the Z; fixed so the handedness check has a template.
pub(crate) const Z_HALF_WIDTH: f64 = 15.0;
pub(crate) const Z_HALF_HEIGHT: f64 = 25.0;

pub(crate) fn z_vertices(mirrored: bool) -> [Point; 4] {
    let s = if mirrored { -1.0 } else { 1.0 };
    let (w, h) = (Z_HALF_WIDTH * s, Z_HALF_HEIGHT);
    [pt(-w, -h), pt(w, -h), pt(-w, h), pt(w, h)]
}

const L_THICKNESS: f64 = 6.0;

/// Per-problem shape parameters shared by all six images.
enum Shape {
    CenterOfCircle,
    ChiralityZ,
    MirrorSymmetry { half_widths: [f64; 6] },
    Square,
    StraightLine { half_length: f64 },
    ParallelLines { half_length: f64, gap: f64 },
    Inside { radii: [f64; 7] },
    Translation { arm: f64, foot: f64, shift: Point },
}

impl Shape {
    fn draw(generator: Generator, rng: &mut ChaCha8Rng) -> Shape {
        match generator {
            Generator::CenterOfCircle => Shape::CenterOfCircle,
            Generator::ChiralityZ => Shape::ChiralityZ,
            Generator::MirrorSymmetry => Shape::MirrorSymmetry {
                half_widths: core::array::from_fn(|_| rng.gen_range(5.0..22.0)),
            },
            Generator::Square => Shape::Square,
            Generator::StraightLine => Shape::StraightLine {
                half_length: rng.gen_range(32.0..42.0),
            },
            Generator::ParallelLines => Shape::ParallelLines {
                half_length: rng.gen_range(26.0..34.0),
                gap: rng.gen_range(14.0..20.0),
            },
            Generator::Inside => Shape::Inside {
                radii: core::array::from_fn(|_| rng.gen_range(22.0..32.0)),
            },
            Generator::Translation => Shape::Translation {
                arm: rng.gen_range(18.0..24.0),
                foot: rng.gen_range(12.0..16.0),
                shift: polar(rng.gen_range(34.0..38.0), rng.gen_range(-0.3..0.3)),
            },
        }
    }

    fn figure(&self, rng: &mut ChaCha8Rng, odd: bool) -> Figure {
        match self {
            Shape::CenterOfCircle => {
                let radius = 28.0;
                let dot = if odd {
                    polar(0.5 * radius, rng.gen_range(0.0..TAU))
                } else {
                    Point::ORIGIN
                };
                Figure::new()
                    .with(Part::Ring {
                        center: Point::ORIGIN,
                        radius,
                    })
                    .with(Part::Disk {
                        center: dot,
                        radius: 3.5,
                    })
            }
            Shape::ChiralityZ => Figure::new().polyline(&z_vertices(odd), false),
            Shape::MirrorSymmetry { half_widths } => {
                let n = half_widths.len();
                let height = 30.0;
                let mut right: Vec<Point> = half_widths
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| {
                        let y = -height + 2.0 * height * i as f64 / (n - 1) as f64;
                        pt(w + rng.gen_range(-1.5..1.5), y)
                    })
                    .collect();
                let mut left: Vec<Point> = right.iter().rev().map(|p| pt(-p.x, p.y)).collect();
                if odd {
                    // Alternate vertices of one side out and in by 6 to 10 px.
                    let flip = rng.gen_bool(0.5);
                    for (i, p) in right.iter_mut().enumerate() {
                        let d = rng.gen_range(6.0..10.0);
                        let out = (i % 2 == 0) != flip;
                        p.x = if out { p.x + d } else { (p.x - d).max(3.0) };
                    }
                }
                right.append(&mut left);
                let cx = right.iter().map(|p| p.x).sum::<f64>() / right.len() as f64;
                Figure::new().polyline(&right, true).translated(-cx, 0.0)
            }
            Shape::Square => {
                let (hx, hy) = if odd { (27.0, 16.0) } else { (22.0, 22.0) };
                let corners = [pt(-hx, -hy), pt(hx, -hy), pt(hx, hy), pt(-hx, hy)];
                Figure::new().polyline(&corners, true)
            }
            Shape::StraightLine { half_length } => {
                let l = *half_length;
                if odd {
                    let sagitta = 0.3 * l;
                    let radius = (l * l + sagitta * sagitta) / (2.0 * sagitta);
                    let sweep = libm::asin(l / radius);
                    let steps = 24;
                    let arc: Vec<Point> = (0..=steps)
                        .map(|i| {
                            let t = -sweep + 2.0 * sweep * i as f64 / steps as f64;
                            pt(
                                radius * libm::sin(t),
                                radius - radius * libm::cos(t) - 0.5 * sagitta,
                            )
                        })
                        .collect();
                    Figure::new().polyline(&arc, false)
                } else {
                    Figure::new().with(Part::Segment(pt(-l, 0.0), pt(l, 0.0)))
                }
            }
            Shape::ParallelLines { half_length, gap } => {
                let l = *half_length;
                let g = 0.5 * gap;
                let slide = rng.gen_range(-6.0..6.0);
                let first = Part::Segment(pt(-l, -g), pt(l, -g));
                let (a, b) = (pt(-l + slide, g), pt(l + slide, g));
                let second = if odd {
                    let tilt = rng.gen_range(0.4..0.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    let mid = pt(slide, g);
                    let rot = |p: Point| {
                        let q = pt(p.x - mid.x, p.y - mid.y).rotated(tilt);
                        pt(q.x + mid.x, q.y + mid.y)
                    };
                    Part::Segment(rot(a), rot(b))
                } else {
                    Part::Segment(a, b)
                };
                Figure::new().with(first).with(second)
            }
            Shape::Inside { radii } => {
                let k = radii.len();
                let outline: Vec<Point> = radii
                    .iter()
                    .enumerate()
                    .map(|(i, &r)| polar(r, TAU * i as f64 / k as f64))
                    .collect();
                let (min_r, max_r) = radii
                    .iter()
                    .fold((f64::MAX, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
                let dot = if odd {
                    polar(max_r + 9.0, rng.gen_range(0.0..TAU))
                } else {
                    polar(rng.gen_range(0.0..0.4 * min_r), rng.gen_range(0.0..TAU))
                };
                Figure::new().polyline(&outline, true).with(Part::Disk {
                    center: dot,
                    radius: 3.0,
                })
            }
            Shape::Translation { arm, foot, shift } => {
                let (a, f, t) = (*arm, *foot, L_THICKNESS);
                let l = Figure::new()
                    .with(Part::Polygon(alloc::vec![
                        pt(0.0, 0.0),
                        pt(t, 0.0),
                        pt(t, a - t),
                        pt(f, a - t),
                        pt(f, a),
                        pt(0.0, a),
                    ]))
                    .translated(-0.5 * f, -0.5 * a);
                let copy = if odd {
                    let turn = if rng.gen_bool(0.5) {
                        FRAC_PI_2
                    } else {
                        -FRAC_PI_2
                    };
                    l.rotated(turn)
                } else {
                    l.clone()
                };
                let (hx, hy) = (0.5 * shift.x, 0.5 * shift.y);
                l.translated(-hx, -hy).extend(copy.translated(hx, hy))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::binarize;

    #[test]
    fn unknown_generator() {
        assert_eq!(
            synthesize_problem("bogus", &JitterParams::default(), 0).unwrap_err(),
            SynthError::UnknownGenerator("bogus".into())
        );
    }

    #[test]
    fn rejects_bad_params() {
        let small = JitterParams {
            canvas: 32,
            ..JitterParams::default()
        };
        assert_eq!(
            Generator::Square.synthesize(&small, 0).unwrap_err(),
            SynthError::CanvasTooSmall(32)
        );
        let zero = JitterParams {
            scale: 1.0,
            ..JitterParams::default()
        };
        assert_eq!(
            Generator::Square.synthesize(&zero, 0).unwrap_err(),
            SynthError::DegenerateParams
        );
        let thick = JitterParams {
            stroke_width: 5.0,
            ..JitterParams::default()
        };
        assert_eq!(
            Generator::Square.synthesize(&thick, 0).unwrap_err(),
            SynthError::DegenerateParams
        );
    }

    #[test]
    fn deterministic_per_seed() {
        for g in Generator::ALL {
            let a = g.synthesize(&JitterParams::default(), 3).unwrap();
            let b = g.synthesize(&JitterParams::default(), 3).unwrap();
            assert_eq!(a, b);
            let c = g.synthesize(&JitterParams::default(), 4).unwrap();
            assert_ne!(a.images, c.images);
        }
    }

    #[test]
    fn every_image_has_a_figure() {
        for g in Generator::ALL {
            let p = g.synthesize(&JitterParams::default(), 9).unwrap();
            assert_eq!(p.images.len(), 6);
            for img in &p.images {
                assert_eq!((img.width(), img.height()), (128, 128));
                assert!(binarize(img, 128).foreground_count() > 50, "{g}");
            }
        }
    }

    #[test]
    fn ids_round_trip() {
        for g in Generator::ALL {
            assert_eq!(Generator::from_id(g.id()).unwrap(), g);
        }
        for c in Category::ALL {
            assert!(Generator::ALL.iter().any(|g| g.category() == c));
        }
    }
}
