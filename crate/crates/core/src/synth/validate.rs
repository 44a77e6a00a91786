//! Concept checks on rendered masks.
//!
//! Every generator has a validator that looks only at the binary image and
//! decides whether the drawing embodies the concept. The checks use plain
//! geometry (connected components, flood fill, brute-force reflection and
//! template search) and share no code with the solver.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::render::segment_distance;
use super::{z_vertices, Generator};
use crate::geom::Point;
use crate::raster::BinaryImage;

/// 8-connected components, largest first.
pub fn components(mask: &BinaryImage) -> Vec<Vec<(usize, usize)>> {
    let (w, h) = (mask.width(), mask.height());
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    for (sx, sy) in mask.foreground() {
        if seen[sy * w + sx] {
            continue;
        }
        seen[sy * w + sx] = true;
        let mut stack = vec![(sx, sy)];
        let mut comp = Vec::new();
        while let Some((x, y)) = stack.pop() {
            comp.push((x, y));
            for dy in -1i64..=1 {
                for dx in -1i64..=1 {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    let (nx, ny) = (nx as usize, ny as usize);
                    if mask.is_foreground(nx, ny) && !seen[ny * w + nx] {
                        seen[ny * w + nx] = true;
                        stack.push((nx, ny));
                    }
                }
            }
        }
        out.push(comp);
    }
    out.sort_by_key(|c| core::cmp::Reverse(c.len()));
    out
}

fn to_points(pixels: &[(usize, usize)]) -> Vec<Point> {
    pixels
        .iter()
        .map(|&(x, y)| Point::new(x as f64, y as f64))
        .collect()
}

fn centroid(points: &[Point]) -> Point {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.x, b + p.y));
    Point::new(sx / n, sy / n)
}

fn farthest_pair(points: &[Point]) -> (Point, Point) {
    let mut best = (points[0], points[0], 0.0);
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let d = p.distance(q);
            if d > best.2 {
                best = (p, q, d);
            }
        }
    }
    (best.0, best.1)
}

fn direction(points: &[Point]) -> f64 {
    let (a, b) = farthest_pair(points);
    libm::atan2(b.y - a.y, b.x - a.x)
}

/// Angle between two undirected lines, in `[0, π/2]`.
fn line_angle(a: f64, b: f64) -> f64 {
    let d = libm::fmod(libm::fabs(a - b), PI);
    d.min(PI - d)
}

impl Generator {
    /// Whether a rendered image embodies this generator's concept.
    pub fn conforms(self, mask: &BinaryImage) -> bool {
        match self {
            Generator::CenterOfCircle => dot_centered(mask),
            Generator::ChiralityZ => z_same_handed(mask),
            Generator::MirrorSymmetry => mirror_score(mask) >= 0.93,
            Generator::Square => squareness(mask) >= 0.9,
            Generator::StraightLine => straight(mask),
            Generator::ParallelLines => parallel(mask),
            Generator::Inside => dot_inside(mask),
            Generator::Translation => translated_copies(mask),
        }
    }
}

/// Dot centroid within 15% of the ring radius from the ring centroid.
fn dot_centered(mask: &BinaryImage) -> bool {
    let comps = components(mask);
    if comps.len() != 2 {
        return false;
    }
    let ring = to_points(&comps[0]);
    let dot = centroid(&to_points(&comps[1]));
    let center = centroid(&ring);
    let radius = ring.iter().map(|p| p.distance(center)).sum::<f64>() / ring.len() as f64;
    dot.distance(center) < 0.15 * radius
}

/// Centroid and root-mean-square radius.
fn center_and_rms(ps: &[Point]) -> (Point, f64) {
    let c = centroid(ps);
    let ms = ps
        .iter()
        .map(|p| (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y))
        .sum::<f64>()
        / ps.len() as f64;
    (c, libm::sqrt(ms))
}

fn normalize(ps: &[Point], c: Point, rms: f64) -> Vec<Point> {
    ps.iter()
        .map(|p| Point::new((p.x - c.x) / rms, (p.y - c.y) / rms))
        .collect()
}

/// Mean distance from (normalized) mask points to a polyline, minimized
/// over rotations in 1° steps.
fn best_template_fit(points: &[Point], template: &[Point]) -> f64 {
    // Sample the template densely so its centroid and spread match an inked stroke.
    let mut samples = Vec::new();
    for w in template.windows(2) {
        for i in 0..50 {
            let t = i as f64 / 50.0;
            samples.push(Point::new(
                w[0].x + t * (w[1].x - w[0].x),
                w[0].y + t * (w[1].y - w[0].y),
            ));
        }
    }
    let (c, rms) = center_and_rms(&samples);
    let path = normalize(template, c, rms);
    let (c, rms) = center_and_rms(points);
    let pts = normalize(points, c, rms);
    let step = (pts.len() / 300).max(1);
    (0..360)
        .map(|deg| {
            let angle = deg as f64 * PI / 180.0;
            let (mut sum, mut n) = (0.0, 0);
            for p in pts.iter().step_by(step) {
                let q = p.rotated(angle);
                let d = path
                    .windows(2)
                    .map(|w| segment_distance(q, w[0], w[1]))
                    .fold(f64::MAX, f64::min);
                sum += d;
                n += 1;
            }
            sum / n as f64
        })
        .fold(f64::MAX, f64::min)
}

/// Matches the reference Z better than its mirror image under any proper rotation.
fn z_same_handed(mask: &BinaryImage) -> bool {
    let points: Vec<Point> = mask
        .foreground()
        .map(|(x, y)| Point::new(x as f64, y as f64))
        .collect();
    if points.len() < 10 {
        return false;
    }
    let same = best_template_fit(&points, &z_vertices(false));
    let mirrored = best_template_fit(&points, &z_vertices(true));
    same < mirrored
}

/// Best fraction of pixels whose reflection across a line through the
/// centroid lands on ink, over axis angles in 0.5° steps.
fn near_ink(mask: &BinaryImage, x: i64, y: i64) -> bool {
    (-1..=1).any(|dy| {
        (-1..=1).any(|dx| {
            let (nx, ny) = (x + dx, y + dy);
            nx >= 0 && ny >= 0 && mask.is_foreground(nx as usize, ny as usize)
        })
    })
}

pub fn mirror_score(mask: &BinaryImage) -> f64 {
    let points: Vec<Point> = mask
        .foreground()
        .map(|(x, y)| Point::new(x as f64, y as f64))
        .collect();
    if points.is_empty() {
        return 0.0;
    }
    let c = centroid(&points);
    (0..360)
        .map(|k| {
            let theta = k as f64 * PI / 360.0;
            let (s2, c2) = (libm::sin(2.0 * theta), libm::cos(2.0 * theta));
            let hits = points
                .iter()
                .filter(|p| {
                    let (dx, dy) = (p.x - c.x, p.y - c.y);
                    let rx = c.x + dx * c2 + dy * s2;
                    let ry = c.y + dx * s2 - dy * c2;
                    let (ix, iy) = (libm::round(rx) as i64, libm::round(ry) as i64);
                    near_ink(mask, ix, iy)
                })
                .count();
            hits as f64 / points.len() as f64
        })
        .fold(0.0, f64::max)
}

/// Ratio of the smaller to the larger second moment of the ink.
pub fn squareness(mask: &BinaryImage) -> f64 {
    let points: Vec<Point> = mask
        .foreground()
        .map(|(x, y)| Point::new(x as f64, y as f64))
        .collect();
    if points.len() < 2 {
        return 0.0;
    }
    let c = centroid(&points);
    let n = points.len() as f64;
    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for p in &points {
        let (dx, dy) = (p.x - c.x, p.y - c.y);
        xx += dx * dx;
        xy += dx * dy;
        yy += dy * dy;
    }
    let (xx, xy, yy) = (xx / n, xy / n, yy / n);
    let mid = 0.5 * (xx + yy);
    let r = libm::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
    (mid - r) / (mid + r)
}

/// All ink lies within a stroke's reach of the chord between its two
/// farthest pixels.
fn straight(mask: &BinaryImage) -> bool {
    let comps = components(mask);
    if comps.len() != 1 {
        return false;
    }
    let points = to_points(&comps[0]);
    let (a, b) = farthest_pair(&points);
    points.iter().all(|&p| segment_distance(p, a, b) <= 3.0)
}

fn parallel(mask: &BinaryImage) -> bool {
    let comps = components(mask);
    if comps.len() != 2 {
        return false;
    }
    let a = direction(&to_points(&comps[0]));
    let b = direction(&to_points(&comps[1]));
    line_angle(a, b) < 6.0_f64.to_radians()
}

/// The dot cannot be reached from the border without crossing the curve.
fn dot_inside(mask: &BinaryImage) -> bool {
    let comps = components(mask);
    if comps.len() != 2 {
        return false;
    }
    let (w, h) = (mask.width(), mask.height());
    let mut wall = vec![false; w * h];
    for &(x, y) in &comps[0] {
        wall[y * w + x] = true;
    }
    let mut seen = vec![false; w * h];
    let mut stack = Vec::new();
    for x in 0..w {
        stack.push((x, 0));
        stack.push((x, h - 1));
    }
    for y in 0..h {
        stack.push((0, y));
        stack.push((w - 1, y));
    }
    // 4-connected fill so it cannot slip diagonally through an 8-connected curve.
    while let Some((x, y)) = stack.pop() {
        let i = y * w + x;
        if seen[i] || wall[i] {
            continue;
        }
        seen[i] = true;
        if x > 0 {
            stack.push((x - 1, y));
        }
        if x + 1 < w {
            stack.push((x + 1, y));
        }
        if y > 0 {
            stack.push((x, y - 1));
        }
        if y + 1 < h {
            stack.push((x, y + 1));
        }
    }
    comps[1].iter().all(|&(x, y)| !seen[y * w + x])
}

/// Fraction of `from` pixels that land on `onto` after moving centroid to centroid.
fn overlap(from: &[(usize, usize)], onto: &[(usize, usize)], width: usize, height: usize) -> f64 {
    let mut grid = vec![false; width * height];
    for &(x, y) in onto {
        grid[y * width + x] = true;
    }
    let (cf, co) = (centroid(&to_points(from)), centroid(&to_points(onto)));
    let hits = from
        .iter()
        .filter(|&&(x, y)| {
            let tx = libm::round(x as f64 + co.x - cf.x);
            let ty = libm::round(y as f64 + co.y - cf.y);
            tx >= 0.0
                && ty >= 0.0
                && (tx as usize) < width
                && (ty as usize) < height
                && grid[ty as usize * width + tx as usize]
        })
        .count();
    hits as f64 / from.len() as f64
}

fn translated_copies(mask: &BinaryImage) -> bool {
    let comps = components(mask);
    if comps.len() != 2 {
        return false;
    }
    let (w, h) = (mask.width(), mask.height());
    let score = overlap(&comps[0], &comps[1], w, h).min(overlap(&comps[1], &comps[0], w, h));
    score >= 0.8
}
