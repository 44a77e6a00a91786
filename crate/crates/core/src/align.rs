//! Symmetry transformation: center a figure on its centroid and rotate its
//! first principal axis onto the x-axis.
//!
//! Only the first principal component is used and the transform is always a
//! proper rotation, so handedness survives alignment. The price is a 180°
//! ambiguity: every figure has two aligned orientations, and the solver
//! picks between them per choice.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::geom::{FigureError, Point, PointSet};

/// Relative eigenvalue gap below which a figure counts as isotropic.
pub const DEGENERACY_TOLERANCE: f64 = 1e-6;

const EIGEN_FLOOR: f64 = 1e-12;

// Integer coordinates below this magnitude take the exact centering path.
const EXACT_LIMIT: f64 = (1u64 << 31) as f64;

/// A figure after centering and principal-axis rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedFigure {
    points: PointSet,
    angle: f64,
    centroid: Point,
    flipped: bool,
}

impl AlignedFigure {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Principal-axis angle the figure was rotated back by.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Centroid of the input, in input coordinates.
    pub fn centroid(&self) -> Point {
        self.centroid
    }

    /// Whether this is the extra 180° orientation.
    pub fn flipped(&self) -> bool {
        self.flipped
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Subtracts the centroid from every point.
///
/// Integer-valued inputs (every freshly extracted raster figure) are
/// centered as `(n*x - sum_x) / n` in integer arithmetic, which makes the
/// result bit-identical under any integer translation of the input.
fn centered(ps: &PointSet) -> (Point, Vec<Point>) {
    let n = ps.len();
    let integral = ps.iter().all(|p| {
        p.x == libm::trunc(p.x)
            && p.y == libm::trunc(p.y)
            && libm::fabs(p.x) < EXACT_LIMIT
            && libm::fabs(p.y) < EXACT_LIMIT
    });
    if integral && n < (1 << 31) {
        let ni = n as i64;
        let (sx, sy) = ps.iter().fold((0i64, 0i64), |(sx, sy), p| {
            (sx + p.x as i64, sy + p.y as i64)
        });
        let nf = n as f64;
        let centroid = Point::new(sx as f64 / nf, sy as f64 / nf);
        let points = ps
            .iter()
            .map(|p| {
                let dx = ni * p.x as i64 - sx;
                let dy = ni * p.y as i64 - sy;
                Point::new(dx as f64 / nf, dy as f64 / nf)
            })
            .collect();
        (centroid, points)
    } else {
        let centroid = ps.mean().unwrap_or(Point::ORIGIN);
        let points = ps
            .iter()
            .map(|p| Point::new(p.x - centroid.x, p.y - centroid.y))
            .collect();
        (centroid, points)
    }
}

/// Population covariance `(xx, xy, yy)` of already-centered points.
fn covariance(points: &[Point]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let (xx, xy, yy) = points.iter().fold((0.0, 0.0, 0.0), |(xx, xy, yy), p| {
        (xx + p.x * p.x, xy + p.x * p.y, yy + p.y * p.y)
    });
    (xx / n, xy / n, yy / n)
}

fn angle_of_centered(points: &[Point]) -> f64 {
    let (xx, xy, yy) = covariance(points);
    let mid = 0.5 * (xx + yy);
    let radius = libm::hypot(0.5 * (xx - yy), xy);
    let larger = mid + radius;
    if 2.0 * radius / larger.max(EIGEN_FLOOR) < DEGENERACY_TOLERANCE {
        return 0.0;
    }
    let mut angle = 0.5 * libm::atan2(2.0 * xy, xx - yy);
    if angle <= -FRAC_PI_2 {
        angle += PI;
    }
    angle
}

/// Direction of the first principal axis, in `(-π/2, π/2]`.
///
/// Isotropic figures (relative eigenvalue gap under
/// [`DEGENERACY_TOLERANCE`]) report 0.
pub fn principal_angle(ps: &PointSet) -> Result<f64, FigureError> {
    if ps.len() < 2 {
        return Err(FigureError::DegenerateFigure);
    }
    let (_, points) = centered(ps);
    Ok(angle_of_centered(&points))
}

fn rotate_back(points: Vec<Point>, angle: f64, flipped: bool) -> PointSet {
    let (sin, cos) = (libm::sin(angle), libm::cos(angle));
    let sign = if flipped { -1.0 } else { 1.0 };
    points
        .into_iter()
        .map(|p| {
            let x = p.x * cos + p.y * sin;
            let y = -p.x * sin + p.y * cos;
            Point::new(sign * x, sign * y)
        })
        .collect()
}

/// Centers `ps` and rotates it by `-angle`, plus a half turn when `flipped`.
pub fn align(ps: &PointSet, angle: f64, flipped: bool) -> Result<AlignedFigure, FigureError> {
    if ps.len() < 2 {
        return Err(FigureError::DegenerateFigure);
    }
    let (centroid, points) = centered(ps);
    Ok(AlignedFigure {
        points: rotate_back(points, angle, flipped),
        angle,
        centroid,
        flipped,
    })
}

/// Both principal-axis alignments of `ps`: `(unflipped, flipped)`.
pub fn candidate_orientations(
    ps: &PointSet,
) -> Result<(AlignedFigure, AlignedFigure), FigureError> {
    if ps.len() < 2 {
        return Err(FigureError::DegenerateFigure);
    }
    let (centroid, points) = centered(ps);
    let angle = angle_of_centered(&points);
    let flipped = AlignedFigure {
        points: rotate_back(points.clone(), angle, true),
        angle,
        centroid,
        flipped: true,
    };
    let upright = AlignedFigure {
        points: rotate_back(points, angle, false),
        angle,
        centroid,
        flipped: false,
    };
    Ok((upright, flipped))
}
