use crate::geometry::point::{dist_point_segment, Point2};
use crate::geometry::{DomainSpec, PreparedDomain, BOUNDARY_NODES};
use crate::Result;

/// Interior fill resolution: lattice step = diameter / FILL_DIVISIONS.
const FILL_DIVISIONS: f64 = 256.0;

/// Hausdorff distance between the closures of two domains.
///
/// Each closed set is sampled by >= 4096 boundary nodes plus an interior
/// lattice fill at resolution diameter/256; the directed distance from a
/// sample to the other closed set is exact for disks, rectangles and
/// polygons and uses the dense boundary polyline for stars. Symmetric by
/// construction; accurate to roughly the fill spacing.
pub fn hausdorff_distance(a: &DomainSpec, b: &DomainSpec) -> Result<f64> {
    a.validate()?;
    b.validate()?;
    let sa = SampledSet::build(a)?;
    let sb = SampledSet::build(b)?;
    Ok(directed(&sa, &sb)?.max(directed(&sb, &sa)?))
}

fn directed(from: &SampledSet, to: &SampledSet) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in from.boundary.iter().chain(from.fill.iter()) {
        if to.tester.contains_closed(*p) {
            continue;
        }
        worst = worst.max(to.dist_to_boundary(*p));
    }
    Ok(worst)
}

struct SampledSet {
    tester: PreparedDomain,
    boundary: Vec<Point2>,
    fill: Vec<Point2>,
}

impl SampledSet {
    fn build(domain: &DomainSpec) -> Result<Self> {
        let tester = domain.prepare()?;
        let boundary = match &tester {
            PreparedDomain::Polygon(poly) => poly.boundary_samples(BOUNDARY_NODES),
            PreparedDomain::Star(star) => star.boundary_samples(BOUNDARY_NODES),
            PreparedDomain::Disk { center, radius } => (0..BOUNDARY_NODES)
                .map(|i| {
                    let theta = 2.0 * std::f64::consts::PI * i as f64 / BOUNDARY_NODES as f64;
                    Point2::new(
                        center.x + radius * theta.cos(),
                        center.y + radius * theta.sin(),
                    )
                })
                .collect(),
            PreparedDomain::Rect { corner, w, h } => crate::geometry::Polygon::new(vec![
                Point2::new(corner.x, corner.y),
                Point2::new(corner.x + w, corner.y),
                Point2::new(corner.x + w, corner.y + h),
                Point2::new(corner.x, corner.y + h),
            ])?
            .boundary_samples(BOUNDARY_NODES),
        };
        let (min, max) = domain.bbox()?;
        let step = domain.diameter()? / FILL_DIVISIONS;
        let nx = ((max.x - min.x) / step).ceil() as usize + 1;
        let ny = ((max.y - min.y) / step).ceil() as usize + 1;
        let mut fill = Vec::new();
        for j in 0..=ny {
            for i in 0..=nx {
                let p = Point2::new(min.x + i as f64 * step, min.y + j as f64 * step);
                if tester.contains_closed(p) {
                    fill.push(p);
                }
            }
        }
        Ok(SampledSet {
            tester,
            boundary,
            fill,
        })
    }

    /// Distance from an exterior point to the boundary: exact for polygon,
    /// disk and rectangle; dense polyline for stars.
    fn dist_to_boundary(&self, p: Point2) -> f64 {
        match &self.tester {
            PreparedDomain::Disk { center, radius } => (p.dist(*center) - radius).max(0.0),
            PreparedDomain::Rect { corner, w, h } => {
                let dx = (corner.x - p.x).max(0.0).max(p.x - (corner.x + w));
                let dy = (corner.y - p.y).max(0.0).max(p.y - (corner.y + h));
                (dx * dx + dy * dy).sqrt()
            }
            PreparedDomain::Polygon(_) | PreparedDomain::Star(_) => {
                let n = self.boundary.len();
                (0..n)
                    .map(|i| dist_point_segment(p, self.boundary[i], self.boundary[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}
