//! Points and point sets in raster coordinates (x = column, y = row, y down).

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Applies the rotation matrix `[cos -sin; sin cos]` about the origin.
    pub fn rotated(self, angle: f64) -> Point {
        let (sin, cos) = (libm::sin(angle), libm::cos(angle));
        Point {
            x: self.x * cos - self.y * sin,
            y: self.x * sin + self.y * cos,
        }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Twice the signed area of the triangle `a, b, c`.
pub fn signed_area2(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Failures that make a figure unusable for alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureError {
    /// The image has no foreground pixels.
    EmptyFigure,
    /// Fewer than two points; the principal axis is undefined.
    DegenerateFigure,
}

impl fmt::Display for FigureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FigureError::EmptyFigure => f.write_str("empty figure: no foreground pixels"),
            FigureError::DegenerateFigure => {
                f.write_str("degenerate figure: fewer than two foreground pixels")
            }
        }
    }
}

impl core::error::Error for FigureError {}

/// The figure's pixel coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        PointSet { points }
    }

    pub fn from_coords<I>(coords: I) -> Self
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        PointSet {
            points: coords.into_iter().map(|(x, y)| Point { x, y }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn translated(&self, dx: f64, dy: f64) -> PointSet {
        PointSet {
            points: self
                .points
                .iter()
                .map(|p| Point::new(p.x + dx, p.y + dy))
                .collect(),
        }
    }

    /// Rotates every point about the origin by `angle` radians.
    pub fn rotated(&self, angle: f64) -> PointSet {
        PointSet {
            points: self.points.iter().map(|p| p.rotated(angle)).collect(),
        }
    }

    /// Arithmetic mean of the points, or `None` for an empty set.
    pub fn mean(&self) -> Option<Point> {
        if self.points.is_empty() {
            return None;
        }
        let n = self.points.len() as f64;
        let (sx, sy) = self
            .points
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Some(Point::new(sx / n, sy / n))
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = core::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<T: IntoIterator<Item = Point>>(iter: T) -> Self {
        PointSet {
            points: iter.into_iter().collect(),
        }
    }
}
