//! Hard-edged rasterization of simple vector figures.
//!
//! A pixel is inked when its center `(column, row)` lies inside a primitive;
//! there is no anti-aliasing.

use alloc::vec;
use alloc::vec::Vec;

use crate::geom::Point;
use crate::raster::{BinaryImage, GrayImage};

#[derive(Debug, Clone, PartialEq)]
pub enum Part {
    /// Stroked segment.
    Segment(Point, Point),
    /// Stroked circle.
    Ring { center: Point, radius: f64 },
    /// Filled circle.
    Disk { center: Point, radius: f64 },
    /// Filled polygon (even-odd rule).
    Polygon(Vec<Point>),
}

/// A figure in its own coordinate frame, roughly centered on the origin.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Figure {
    pub parts: Vec<Part>,
}

impl Figure {
    pub fn new() -> Self {
        Figure::default()
    }

    pub fn with(mut self, part: Part) -> Self {
        self.parts.push(part);
        self
    }

    /// Adds the segments of a polyline; `closed` joins the last vertex to the first.
    pub fn polyline(mut self, vertices: &[Point], closed: bool) -> Self {
        for w in vertices.windows(2) {
            self.parts.push(Part::Segment(w[0], w[1]));
        }
        if closed && vertices.len() > 2 {
            self.parts
                .push(Part::Segment(vertices[vertices.len() - 1], vertices[0]));
        }
        self
    }

    pub fn extend(mut self, other: Figure) -> Self {
        self.parts.extend(other.parts);
        self
    }

    /// Largest distance from the origin reached by any part.
    pub fn extent(&self) -> f64 {
        let norm = |p: &Point| libm::hypot(p.x, p.y);
        self.parts
            .iter()
            .map(|part| match part {
                Part::Segment(a, b) => norm(a).max(norm(b)),
                Part::Ring { center, radius } | Part::Disk { center, radius } => {
                    norm(center) + radius
                }
                Part::Polygon(vs) => vs.iter().map(norm).fold(0.0, f64::max),
            })
            .fold(0.0, f64::max)
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Point, radius_scale: f64) -> Figure {
        let parts = self
            .parts
            .iter()
            .map(|part| match part {
                Part::Segment(a, b) => Part::Segment(f(*a), f(*b)),
                Part::Ring { center, radius } => Part::Ring {
                    center: f(*center),
                    radius: radius * radius_scale,
                },
                Part::Disk { center, radius } => Part::Disk {
                    center: f(*center),
                    radius: radius * radius_scale,
                },
                Part::Polygon(vs) => Part::Polygon(vs.iter().map(|&p| f(p)).collect()),
            })
            .collect();
        Figure { parts }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Figure {
        self.map_points(|p| Point::new(p.x + dx, p.y + dy), 1.0)
    }

    pub fn rotated(&self, angle: f64) -> Figure {
        self.map_points(|p| p.rotated(angle), 1.0)
    }

    pub fn scaled(&self, factor: f64) -> Figure {
        self.map_points(|p| Point::new(p.x * factor, p.y * factor), factor)
    }

    pub fn mirrored_x(&self) -> Figure {
        self.map_points(|p| Point::new(-p.x, p.y), 1.0)
    }
}

pub(crate) fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0)
    };
    libm::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy))
}

fn inside_polygon(p: Point, vs: &[Point]) -> bool {
    let mut inside = false;
    let mut j = vs.len() - 1;
    for i in 0..vs.len() {
        let (a, b) = (vs[i], vs[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// A square-pixel drawing surface.
#[derive(Debug, Clone)]
pub struct Canvas {
    width: usize,
    height: usize,
    ink: Vec<bool>,
}

impl Canvas {
    pub fn new(width: usize, height: usize) -> Self {
        Canvas {
            width,
            height,
            ink: vec![false; width * height],
        }
    }

    fn paint(&mut self, lo: Point, hi: Point, covered: impl Fn(Point) -> bool) {
        let clamp = |v: f64, n: usize| -> usize { (libm::floor(v).max(0.0) as usize).min(n) };
        let (x0, x1) = (clamp(lo.x, self.width), clamp(hi.x + 1.0, self.width));
        let (y0, y1) = (clamp(lo.y, self.height), clamp(hi.y + 1.0, self.height));
        for y in y0..y1 {
            for x in x0..x1 {
                if covered(Point::new(x as f64, y as f64)) {
                    self.ink[y * self.width + x] = true;
                }
            }
        }
    }

    pub fn draw_part(&mut self, part: &Part, stroke_width: f64) {
        let half = 0.5 * stroke_width;
        match part {
            Part::Segment(a, b) => {
                let lo = Point::new(a.x.min(b.x) - half, a.y.min(b.y) - half);
                let hi = Point::new(a.x.max(b.x) + half, a.y.max(b.y) + half);
                self.paint(lo, hi, |p| segment_distance(p, *a, *b) <= half);
            }
            Part::Ring { center, radius } => {
                let r = radius + half;
                let lo = Point::new(center.x - r, center.y - r);
                let hi = Point::new(center.x + r, center.y + r);
                self.paint(lo, hi, |p| libm::fabs(p.distance(*center) - radius) <= half);
            }
            Part::Disk { center, radius } => {
                let lo = Point::new(center.x - radius, center.y - radius);
                let hi = Point::new(center.x + radius, center.y + radius);
                self.paint(lo, hi, |p| p.distance(*center) <= *radius);
            }
            Part::Polygon(vs) if vs.len() >= 3 => {
                let lo = vs.iter().fold(Point::new(f64::MAX, f64::MAX), |m, p| {
                    Point::new(m.x.min(p.x), m.y.min(p.y))
                });
                let hi = vs.iter().fold(Point::new(f64::MIN, f64::MIN), |m, p| {
                    Point::new(m.x.max(p.x), m.y.max(p.y))
                });
                self.paint(lo, hi, |p| inside_polygon(p, vs));
            }
            Part::Polygon(_) => {}
        }
    }

    pub fn draw(&mut self, figure: &Figure, stroke_width: f64) {
        for part in &figure.parts {
            self.draw_part(part, stroke_width);
        }
    }

    pub fn to_binary(&self) -> BinaryImage {
        BinaryImage::new(self.width, self.height, self.ink.clone())
            .expect("canvas dimensions are nonzero")
    }

    /// Ink as 0, paper as 255.
    pub fn to_gray(&self) -> GrayImage {
        self.to_binary().to_gray()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizontal_segment_width() {
        let mut c = Canvas::new(20, 20);
        c.draw_part(
            &Part::Segment(Point::new(5.0, 10.0), Point::new(14.0, 10.0)),
            2.0,
        );
        let bin = c.to_binary();
        // Rows 9..=11 along the segment plus one cap pixel at each end.
        assert_eq!(bin.foreground_count(), 3 * 10 + 2);
        assert!(bin.is_foreground(5, 9) && !bin.is_foreground(5, 8));
    }

    #[test]
    fn polygon_fill() {
        let mut c = Canvas::new(10, 10);
        let square = vec![
            Point::new(1.5, 1.5),
            Point::new(5.5, 1.5),
            Point::new(5.5, 5.5),
            Point::new(1.5, 5.5),
        ];
        c.draw_part(&Part::Polygon(square), 1.0);
        assert_eq!(c.to_binary().foreground_count(), 16);
    }

    #[test]
    fn disk_and_ring_are_disjoint_when_apart() {
        let mut c = Canvas::new(64, 64);
        let center = Point::new(32.0, 32.0);
        c.draw_part(
            &Part::Ring {
                center,
                radius: 20.0,
            },
            2.0,
        );
        let ring = c.to_binary().foreground_count();
        c.draw_part(
            &Part::Disk {
                center,
                radius: 3.0,
            },
            2.0,
        );
        assert_eq!(c.to_binary().foreground_count(), ring + 29);
    }

    #[test]
    fn clipped_at_border() {
        let mut c = Canvas::new(8, 8);
        c.draw_part(
            &Part::Disk {
                center: Point::new(0.0, 0.0),
                radius: 3.0,
            },
            1.0,
        );
        assert!(c.to_binary().is_foreground(0, 0));
    }
}
