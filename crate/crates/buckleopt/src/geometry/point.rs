use serde::{Deserialize, Serialize};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn dist_sq(self, other: Point2) -> f64 {
        (self.x - other.x).powi(2) + (self.y - other.y).powi(2)
    }

    pub fn scale(self, t: f64) -> Point2 {
        Point2::new(self.x * t, self.y * t)
    }

    pub fn translate(self, dx: f64, dy: f64) -> Point2 {
        Point2::new(self.x + dx, self.y + dy)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Cross product of (b - a) x (c - a): positive when a→b→c turns left.
pub fn cross(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Distance from `p` to the closed segment [a, b].
pub fn dist_point_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let len_sq = a.dist_sq(b);
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = (((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len_sq).clamp(0.0, 1.0);
    p.dist(Point2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
}

/// Whether the closed segments [a,b] and [c,d] intersect, treating shared
/// endpoints as intersections.
pub fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Point2, q: Point2, r: Point2, cr: f64| {
        cr == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_signs() {
        let o = Point2::ORIGIN;
        assert!(cross(o, Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)) > 0.0);
        assert!(cross(o, Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)) < 0.0);
    }

    #[test]
    fn point_segment_distance() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(2.0, 0.0);
        assert!((dist_point_segment(Point2::new(1.0, 1.0), a, b) - 1.0).abs() < 1e-15);
        assert!((dist_point_segment(Point2::new(3.0, 0.0), a, b) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn segment_intersection_cases() {
        let p = |x, y| Point2::new(x, y);
        assert!(segments_intersect(p(0., 0.), p(1., 1.), p(0., 1.), p(1., 0.)));
        assert!(!segments_intersect(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.)));
        // touching endpoint counts
        assert!(segments_intersect(p(0., 0.), p(1., 0.), p(1., 0.), p(2., 1.)));
    }
}
