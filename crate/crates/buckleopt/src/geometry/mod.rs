//! Planar domain descriptions and exact / quadrature-based measurements.
//!
//! A [`DomainSpec`] is the unit of shape-optimization state: a polygon, a
//! star-shaped Fourier boundary, a disk, or an axis-aligned rectangle. All
//! operations are pure functions of immutable inputs and safe to call
//! concurrently.

mod hausdorff;
mod point;
mod polygon;
mod star;

pub use hausdorff::hausdorff_distance;
pub use point::{cross, dist_point_segment, Point2};
pub use polygon::{convex_hull_points, point_set_diameter, Polygon, EPS_GEOM};
pub use star::{StarShape, BOUNDARY_NODES};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A planar domain in one of four parameterizations.
///
/// Serialized as tagged JSON, e.g. `{"type":"disk","center":[0,0],"radius":1}`;
/// floats round-trip losslessly (shortest-representation encoding).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DomainSpec {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Star {
        center: [f64; 2],
        r0: f64,
        coeffs: Vec<[f64; 2]>,
    },
    Disk {
        center: [f64; 2],
        radius: f64,
    },
    Rect {
        corner: [f64; 2],
        w: f64,
        h: f64,
    },
}

impl DomainSpec {
    pub fn polygon(vertices: Vec<[f64; 2]>) -> Self {
        DomainSpec::Polygon { vertices }
    }

    pub fn star(center: [f64; 2], r0: f64, coeffs: Vec<[f64; 2]>) -> Self {
        DomainSpec::Star { center, r0, coeffs }
    }

    pub fn disk(center: [f64; 2], radius: f64) -> Self {
        DomainSpec::Disk { center, radius }
    }

    pub fn rect(corner: [f64; 2], w: f64, h: f64) -> Self {
        DomainSpec::Rect { corner, w, h }
    }

    pub fn unit_square() -> Self {
        DomainSpec::rect([0.0, 0.0], 1.0, 1.0)
    }

    pub fn unit_disk() -> Self {
        DomainSpec::disk([0.0, 0.0], 1.0)
    }

    /// Checks the variant's invariants, returning the validated inner shape
    /// where one exists.
    pub fn validate(&self) -> Result<()> {
        match self {
            DomainSpec::Polygon { .. } => self.as_polygon().map(|_| ()),
            DomainSpec::Star { .. } => self.as_star().map(|_| ()),
            DomainSpec::Disk { radius, center } => {
                if !(radius.is_finite() && *radius > 0.0)
                    || !center.iter().all(|c| c.is_finite())
                {
                    Err(Error::InvalidDomain("disk radius must be > 0".into()))
                } else {
                    Ok(())
                }
            }
            DomainSpec::Rect { corner, w, h } => {
                if !(w.is_finite() && h.is_finite() && *w > 0.0 && *h > 0.0)
                    || !corner.iter().all(|c| c.is_finite())
                {
                    Err(Error::InvalidDomain(
                        "rectangle sides must be > 0".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn as_polygon(&self) -> Result<Polygon> {
        match self {
            DomainSpec::Polygon { vertices } => {
                Polygon::new(vertices.iter().map(|&v| Point2::from(v)).collect())
            }
            _ => Err(Error::InvalidArgument("not a polygon variant".into())),
        }
    }

    pub fn as_star(&self) -> Result<StarShape> {
        match self {
            DomainSpec::Star { center, r0, coeffs } => StarShape::new(
                Point2::from(*center),
                *r0,
                coeffs.iter().map(|c| (c[0], c[1])).collect(),
            ),
            _ => Err(Error::InvalidArgument("not a star variant".into())),
        }
    }

    /// Boundary length: edge sum, arc-length quadrature, 2πR, or 2(w+h).
    pub fn perimeter(&self) -> Result<f64> {
        match self {
            DomainSpec::Polygon { .. } => Ok(self.as_polygon()?.perimeter()),
            DomainSpec::Star { .. } => Ok(self.as_star()?.perimeter()),
            DomainSpec::Disk { radius, .. } => {
                self.validate()?;
                Ok(2.0 * std::f64::consts::PI * radius)
            }
            DomainSpec::Rect { w, h, .. } => {
                self.validate()?;
                Ok(2.0 * (w + h))
            }
        }
    }

    pub fn area(&self) -> Result<f64> {
        match self {
            DomainSpec::Polygon { .. } => Ok(self.as_polygon()?.area()),
            DomainSpec::Star { .. } => Ok(self.as_star()?.area()),
            DomainSpec::Disk { radius, .. } => {
                self.validate()?;
                Ok(std::f64::consts::PI * radius * radius)
            }
            DomainSpec::Rect { w, h, .. } => {
                self.validate()?;
                Ok(w * h)
            }
        }
    }

    /// Max pairwise distance over vertices (polygon) or boundary samples
    /// (star); exact for polygons, disks and rectangles.
    pub fn diameter(&self) -> Result<f64> {
        match self {
            DomainSpec::Polygon { .. } => Ok(self.as_polygon()?.diameter()),
            DomainSpec::Star { .. } => Ok(self.as_star()?.diameter()),
            DomainSpec::Disk { radius, .. } => {
                self.validate()?;
                Ok(2.0 * radius)
            }
            DomainSpec::Rect { w, h, .. } => {
                self.validate()?;
                Ok((w * w + h * h).sqrt())
            }
        }
    }

    /// Convex hull of the vertices / boundary samples, as a CCW polygon.
    pub fn convex_hull(&self) -> Result<Polygon> {
        let pts = match self {
            DomainSpec::Polygon { .. } => self.as_polygon()?.vertices().to_vec(),
            DomainSpec::Star { .. } => self.as_star()?.boundary_samples(BOUNDARY_NODES),
            DomainSpec::Disk { center, radius } => {
                self.validate()?;
                let c = Point2::from(*center);
                (0..BOUNDARY_NODES)
                    .map(|i| {
                        let theta =
                            2.0 * std::f64::consts::PI * i as f64 / BOUNDARY_NODES as f64;
                        Point2::new(c.x + radius * theta.cos(), c.y + radius * theta.sin())
                    })
                    .collect()
            }
            DomainSpec::Rect { corner, w, h } => {
                self.validate()?;
                vec![
                    Point2::new(corner[0], corner[1]),
                    Point2::new(corner[0] + w, corner[1]),
                    Point2::new(corner[0] + w, corner[1] + h),
                    Point2::new(corner[0], corner[1] + h),
                ]
            }
        };
        let hull = convex_hull_points(&pts)?;
        Polygon::new_convex_chain(hull)
    }

    pub fn is_convex(&self) -> Result<bool> {
        match self {
            DomainSpec::Polygon { .. } => Ok(self.as_polygon()?.is_convex()),
            DomainSpec::Star { .. } => Ok(self.as_star()?.is_convex_sampled()),
            DomainSpec::Disk { .. } | DomainSpec::Rect { .. } => {
                self.validate()?;
                Ok(true)
            }
        }
    }

    /// Dilation about the origin by `t > 0`.
    pub fn scale(&self, t: f64) -> Result<DomainSpec> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be > 0, got {t}"
            )));
        }
        self.validate()?;
        Ok(match self {
            DomainSpec::Polygon { vertices } => DomainSpec::Polygon {
                vertices: vertices.iter().map(|v| [v[0] * t, v[1] * t]).collect(),
            },
            DomainSpec::Star { center, r0, coeffs } => DomainSpec::Star {
                center: [center[0] * t, center[1] * t],
                r0: r0 * t,
                coeffs: coeffs.iter().map(|c| [c[0] * t, c[1] * t]).collect(),
            },
            DomainSpec::Disk { center, radius } => DomainSpec::Disk {
                center: [center[0] * t, center[1] * t],
                radius: radius * t,
            },
            DomainSpec::Rect { corner, w, h } => DomainSpec::Rect {
                corner: [corner[0] * t, corner[1] * t],
                w: w * t,
                h: h * t,
            },
        })
    }

    /// Rigid translation (used by invariance tests and fixtures).
    pub fn translate(&self, dx: f64, dy: f64) -> DomainSpec {
        match self {
            DomainSpec::Polygon { vertices } => DomainSpec::Polygon {
                vertices: vertices.iter().map(|v| [v[0] + dx, v[1] + dy]).collect(),
            },
            DomainSpec::Star { center, r0, coeffs } => DomainSpec::Star {
                center: [center[0] + dx, center[1] + dy],
                r0: *r0,
                coeffs: coeffs.clone(),
            },
            DomainSpec::Disk { center, radius } => DomainSpec::Disk {
                center: [center[0] + dx, center[1] + dy],
                radius: *radius,
            },
            DomainSpec::Rect { corner, w, h } => DomainSpec::Rect {
                corner: [corner[0] + dx, corner[1] + dy],
                w: *w,
                h: *h,
            },
        }
    }

    /// Rescales so that the perimeter equals `p` exactly: the dilation factor
    /// is (p / P)^(1/(d-1)) with d = 2.
    pub fn saturate_perimeter(&self, p: f64) -> Result<DomainSpec> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "target perimeter must be > 0, got {p}"
            )));
        }
        let current = self.perimeter()?;
        self.scale(p / current)
    }

    /// Validates once and returns a containment tester; use this instead of
    /// [`DomainSpec::contains_strict`] when testing many points.
    pub fn prepare(&self) -> Result<PreparedDomain> {
        Ok(match self {
            DomainSpec::Polygon { .. } => PreparedDomain::Polygon(self.as_polygon()?),
            DomainSpec::Star { .. } => PreparedDomain::Star(self.as_star()?),
            DomainSpec::Disk { center, radius } => {
                self.validate()?;
                PreparedDomain::Disk {
                    center: Point2::from(*center),
                    radius: *radius,
                }
            }
            DomainSpec::Rect { corner, w, h } => {
                self.validate()?;
                PreparedDomain::Rect {
                    corner: Point2::from(*corner),
                    w: *w,
                    h: *h,
                }
            }
        })
    }

    /// Strict interior membership (boundary excluded).
    pub fn contains_strict(&self, p: Point2) -> Result<bool> {
        Ok(self.prepare()?.contains_strict(p))
    }

    /// Membership in the closure.
    pub fn contains_closed(&self, p: Point2) -> Result<bool> {
        Ok(self.prepare()?.contains_closed(p))
    }

    /// Axis-aligned bounding box (min corner, max corner).
    pub fn bbox(&self) -> Result<(Point2, Point2)> {
        Ok(match self {
            DomainSpec::Polygon { .. } => self.as_polygon()?.bbox(),
            DomainSpec::Star { .. } => {
                let star = self.as_star()?;
                let samples = star.boundary_samples(BOUNDARY_NODES);
                polygon_bbox(&samples)
            }
            DomainSpec::Disk { center, radius } => {
                self.validate()?;
                (
                    Point2::new(center[0] - radius, center[1] - radius),
                    Point2::new(center[0] + radius, center[1] + radius),
                )
            }
            DomainSpec::Rect { corner, w, h } => {
                self.validate()?;
                (
                    Point2::new(corner[0], corner[1]),
                    Point2::new(corner[0] + w, corner[1] + h),
                )
            }
        })
    }

    /// Area centroid.
    pub fn centroid(&self) -> Result<Point2> {
        Ok(match self {
            DomainSpec::Polygon { .. } => self.as_polygon()?.centroid(),
            DomainSpec::Star { .. } => {
                let star = self.as_star()?;
                // centroid of a polar region: (1/3A) ∮ r³ (cos θ, sin θ) dθ
                let n = BOUNDARY_NODES;
                let (mut sx, mut sy) = (0.0, 0.0);
                for i in 0..n {
                    let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    let r = star.radius(theta);
                    sx += r * r * r * theta.cos();
                    sy += r * r * r * theta.sin();
                }
                let dtheta = 2.0 * std::f64::consts::PI / n as f64;
                let area = star.area();
                let c = star.center();
                Point2::new(
                    c.x + sx * dtheta / (3.0 * area),
                    c.y + sy * dtheta / (3.0 * area),
                )
            }
            DomainSpec::Disk { center, .. } => {
                self.validate()?;
                Point2::from(*center)
            }
            DomainSpec::Rect { corner, w, h } => {
                self.validate()?;
                Point2::new(corner[0] + 0.5 * w, corner[1] + 0.5 * h)
            }
        })
    }

    /// Short human-readable tag for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            DomainSpec::Polygon { .. } => "polygon",
            DomainSpec::Star { .. } => "star",
            DomainSpec::Disk { .. } => "disk",
            DomainSpec::Rect { .. } => "rect",
        }
    }
}

impl From<Polygon> for DomainSpec {
    fn from(p: Polygon) -> Self {
        DomainSpec::Polygon {
            vertices: p.vertices().iter().map(|&v| [v.x, v.y]).collect(),
        }
    }
}

/// A validated domain ready for repeated containment tests.
#[derive(Debug, Clone)]
pub enum PreparedDomain {
    Polygon(Polygon),
    Star(StarShape),
    Disk { center: Point2, radius: f64 },
    Rect { corner: Point2, w: f64, h: f64 },
}

impl PreparedDomain {
    pub fn contains_strict(&self, p: Point2) -> bool {
        match self {
            PreparedDomain::Polygon(poly) => poly.contains_strict(p),
            PreparedDomain::Star(star) => star.contains_strict(p),
            PreparedDomain::Disk { center, radius } => p.dist(*center) < *radius,
            PreparedDomain::Rect { corner, w, h } => {
                p.x > corner.x && p.x < corner.x + w && p.y > corner.y && p.y < corner.y + h
            }
        }
    }

    pub fn contains_closed(&self, p: Point2) -> bool {
        match self {
            PreparedDomain::Polygon(poly) => poly.contains_closed(p),
            PreparedDomain::Star(star) => star.contains_closed(p),
            PreparedDomain::Disk { center, radius } => p.dist(*center) <= *radius,
            PreparedDomain::Rect { corner, w, h } => {
                p.x >= corner.x
                    && p.x <= corner.x + w
                    && p.y >= corner.y
                    && p.y <= corner.y + h
            }
        }
    }
}

fn polygon_bbox(points: &[Point2]) -> (Point2, Point2) {
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    (min, max)
}

/// Inscribed polygon of a star shape with vertices at θ_j = 2πj/n.
pub fn star_to_polygon(star: &StarShape, n: usize) -> Result<Polygon> {
    star.to_polygon(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_measures() {
        let sq = DomainSpec::unit_square();
        assert_eq!(sq.perimeter().unwrap(), 4.0);
        assert_eq!(sq.area().unwrap(), 1.0);
        assert!((sq.diameter().unwrap() - 2.0f64.sqrt()).abs() < 1e-15);

        let disk = DomainSpec::unit_disk();
        assert!((disk.perimeter().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((disk.area().unwrap() - std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(DomainSpec::disk([0.0, 0.0], 3.0).diameter().unwrap(), 6.0);

        let zero_coeff_star = DomainSpec::star([0.0, 0.0], 1.0, vec![]);
        assert!(
            (zero_coeff_star.perimeter().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-10
        );
    }

    #[test]
    fn invalid_primitives_rejected() {
        assert!(DomainSpec::disk([0.0, 0.0], 0.0).validate().is_err());
        assert!(DomainSpec::rect([0.0, 0.0], -1.0, 1.0).validate().is_err());
        assert!(DomainSpec::polygon(vec![[0.0, 0.0], [1.0, 0.0]])
            .area()
            .is_err());
    }

    #[test]
    fn scaling_laws() {
        let sq = DomainSpec::unit_square();
        let doubled = sq.scale(2.0).unwrap();
        assert_eq!(doubled.perimeter().unwrap(), 8.0);
        assert_eq!(doubled.area().unwrap(), 4.0);
        let same = sq.scale(1.0).unwrap();
        assert_eq!(same, sq);
        assert!(sq.scale(0.0).is_err());
        assert!(sq.scale(-2.0).is_err());
    }

    #[test]
    fn saturation() {
        let sq = DomainSpec::unit_square();
        let sat = sq.saturate_perimeter(4.0).unwrap();
        assert!((sat.perimeter().unwrap() - 4.0).abs() < 1e-12);
        let big = sq.saturate_perimeter(8.0).unwrap();
        assert!((big.perimeter().unwrap() - 8.0).abs() < 1e-12);
        if let DomainSpec::Rect { w, .. } = big {
            assert!((w - 2.0).abs() < 1e-12);
        } else {
            panic!("rect expected");
        }
        let disk = DomainSpec::unit_disk()
            .saturate_perimeter(4.0 * std::f64::consts::PI)
            .unwrap();
        if let DomainSpec::Disk { radius, .. } = disk {
            assert!((radius - 2.0).abs() < 1e-12);
        } else {
            panic!("disk expected");
        }
    }

    #[test]
    fn hull_of_l_shape() {
        let l = DomainSpec::polygon(vec![
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ]);
        let hull = l.convex_hull().unwrap();
        assert_eq!(hull.len(), 5);
        assert!(hull.perimeter() < l.perimeter().unwrap());
        assert!(!l.is_convex().unwrap());
        assert!(DomainSpec::from(hull).is_convex().unwrap());
    }

    #[test]
    fn hull_idempotent_on_convex_pentagon() {
        let pentagon: Vec<[f64; 2]> = (0..5)
            .map(|i| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / 5.0;
                [theta.cos(), theta.sin()]
            })
            .collect();
        let d = DomainSpec::polygon(pentagon.clone());
        let hull = d.convex_hull().unwrap();
        assert_eq!(hull.len(), 5);
        for v in &pentagon {
            assert!(hull
                .vertices()
                .iter()
                .any(|p| (p.x - v[0]).abs() < 1e-15 && (p.y - v[1]).abs() < 1e-15));
        }
        let hull2 = DomainSpec::from(hull.clone()).convex_hull().unwrap();
        assert_eq!(hull.vertices().len(), hull2.vertices().len());
    }

    #[test]
    fn json_round_trip() {
        let d = DomainSpec::star([0.125, -3.5], 1.0625, vec![[0.1, 0.2], [0.3, -0.4]]);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"type\":\"star\""));
        let back: DomainSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(d, back);

        let irrational = DomainSpec::disk([std::f64::consts::PI, 0.1 + 0.2], 1.0 / 3.0);
        let s = serde_json::to_string(&irrational).unwrap();
        let back: DomainSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(irrational, back);
    }

    #[test]
    fn json_wire_format() {
        let polygon: DomainSpec =
            serde_json::from_str(r#"{"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert!(polygon.validate().is_ok());
        let rect: DomainSpec =
            serde_json::from_str(r#"{"type":"rect","corner":[0,0],"w":2,"h":1}"#).unwrap();
        assert_eq!(rect.perimeter().unwrap(), 6.0);
        let star: DomainSpec = serde_json::from_str(
            r#"{"type":"star","center":[0,0],"r0":1.0,"coeffs":[[0.0,0.0],[0.1,0.0]]}"#,
        )
        .unwrap();
        assert!(star.validate().is_ok());
    }
}
