//! Axis-aligned rectangles and small planar geometry helpers.

/// Geometric comparison tolerance, scaled for unit-square sized domains.
pub const GEOM_EPS: f64 = 1e-10;

/// Closed axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1 }
    }

    pub fn unit_square() -> Self {
        Rect::new(0.0, 1.0, 0.0, 1.0)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() <= GEOM_EPS || self.height() <= GEOM_EPS
    }

    /// Containment in the closed rectangle, up to `GEOM_EPS`.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 - GEOM_EPS
            && x <= self.x1 + GEOM_EPS
            && y >= self.y0 - GEOM_EPS
            && y <= self.y1 + GEOM_EPS
    }

    /// Containment in the open rectangle, up to `GEOM_EPS`.
    pub fn contains_strict(&self, x: f64, y: f64) -> bool {
        x > self.x0 + GEOM_EPS
            && x < self.x1 - GEOM_EPS
            && y > self.y0 + GEOM_EPS
            && y < self.y1 - GEOM_EPS
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let r = Rect::new(
            self.x0.max(other.x0),
            self.x1.min(other.x1),
            self.y0.max(other.y0),
            self.y1.min(other.y1),
        );
        if r.is_degenerate() {
            None
        } else {
            Some(r)
        }
    }
}

/// Area of the intersection between a triangle and a rectangle, by
/// Sutherland-Hodgman clipping against the four half-planes.
pub fn tri_rect_overlap_area(tri: &[[f64; 2]; 3], rect: &Rect) -> f64 {
    let mut poly: Vec<[f64; 2]> = tri.to_vec();
    // (axis, bound, keep_leq)
    let clips = [
        (0usize, rect.x0, false),
        (0, rect.x1, true),
        (1, rect.y0, false),
        (1, rect.y1, true),
    ];
    for &(axis, bound, keep_leq) in &clips {
        if poly.is_empty() {
            return 0.0;
        }
        let inside = |p: &[f64; 2]| {
            if keep_leq {
                p[axis] <= bound
            } else {
                p[axis] >= bound
            }
        };
        let mut out: Vec<[f64; 2]> = Vec::with_capacity(poly.len() + 2);
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            let ain = inside(&a);
            let bin = inside(&b);
            if ain {
                out.push(a);
            }
            if ain != bin {
                let t = (bound - a[axis]) / (b[axis] - a[axis]);
                let mut p = [0.0; 2];
                p[axis] = bound;
                p[1 - axis] = a[1 - axis] + t * (b[1 - axis] - a[1 - axis]);
                out.push(p);
            }
        }
        poly = out;
    }
    if poly.len() < 3 {
        return 0.0;
    }
    let mut area2 = 0.0;
    for i in 1..poly.len() - 1 {
        let (a, b, c) = (poly[0], poly[i], poly[i + 1]);
        area2 += (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    }
    0.5 * area2.abs()
}

/// Closed line segment between two points.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl Segment {
    pub fn new(a: [f64; 2], b: [f64; 2]) -> Self {
        Segment { a, b }
    }

    /// Euclidean distance from a point to this segment.
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let dx = self.b[0] - self.a[0];
        let dy = self.b[1] - self.a[1];
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((x - self.a[0]) * dx + (y - self.a[1]) * dy) / len2).clamp(0.0, 1.0)
        };
        let px = self.a[0] + t * dx;
        let py = self.a[1] + t * dy;
        ((x - px).powi(2) + (y - py).powi(2)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlap_area_full_and_partial() {
        let tri = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let full = Rect::new(-1.0, 2.0, -1.0, 2.0);
        assert!((tri_rect_overlap_area(&tri, &full) - 0.5).abs() < 1e-14);
        let half = Rect::new(0.0, 0.5, 0.0, 1.0);
        // clip of the unit right triangle to x <= 0.5: area 0.5 - 0.125
        assert!((tri_rect_overlap_area(&tri, &half) - 0.375).abs() < 1e-14);
        let outside = Rect::new(2.0, 3.0, 0.0, 1.0);
        assert_eq!(tri_rect_overlap_area(&tri, &outside), 0.0);
    }

    #[test]
    fn segment_distance_projection_and_endpoint() {
        let s = Segment::new([0.6, 0.0], [0.6, 1.0]);
        assert!((s.distance(0.45, 0.3) - 0.15).abs() < 1e-14);
        // beyond the endpoint: distance to the corner
        let d = s.distance(0.6, 1.5);
        assert!((d - 0.5).abs() < 1e-14);
    }
}
