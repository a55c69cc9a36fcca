use crate::geometry::point::Point2;
use crate::geometry::polygon::Polygon;
use crate::{Error, Result};

/// Quadrature / validation node count on the boundary circle. A power of two;
/// the composite trapezoid rule on a periodic integrand converges spectrally,
/// so 4096 nodes resolve Fourier boundaries up to degree 32 far below 1e-10.
pub const BOUNDARY_NODES: usize = 4096;

/// Star-shaped domain about `center` with radial graph
/// r(θ) = r0 + Σ_k (a_k cos kθ + b_k sin kθ).
#[derive(Debug, Clone, PartialEq)]
pub struct StarShape {
    center: Point2,
    r0: f64,
    coeffs: Vec<(f64, f64)>,
}

impl StarShape {
    /// Validates positivity of r(θ) on the standard node grid.
    pub fn new(center: Point2, r0: f64, coeffs: Vec<(f64, f64)>) -> Result<Self> {
        let star = StarShape { center, r0, coeffs };
        if !star.r0.is_finite() || star.coeffs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite())
        {
            return Err(Error::InvalidDomain("star coefficients not finite".into()));
        }
        for i in 0..BOUNDARY_NODES {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / BOUNDARY_NODES as f64;
            if star.radius(theta) <= 0.0 {
                return Err(Error::InvalidDomain(format!(
                    "star radius non-positive at theta = {theta:.6}"
                )));
            }
        }
        Ok(star)
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn coeffs(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    pub fn radius(&self, theta: f64) -> f64 {
        let mut r = self.r0;
        for (k, &(a, b)) in self.coeffs.iter().enumerate() {
            let k = (k + 1) as f64;
            let (s, c) = (k * theta).sin_cos();
            r += a * c + b * s;
        }
        r
    }

    pub fn radius_derivative(&self, theta: f64) -> f64 {
        let mut dr = 0.0;
        for (k, &(a, b)) in self.coeffs.iter().enumerate() {
            let k = (k + 1) as f64;
            let (s, c) = (k * theta).sin_cos();
            dr += -a * k * s + b * k * c;
        }
        dr
    }

    pub fn boundary_point(&self, theta: f64) -> Point2 {
        let r = self.radius(theta);
        Point2::new(self.center.x + r * theta.cos(), self.center.y + r * theta.sin())
    }

    /// Arc length ∫ sqrt(r² + r'²) dθ by the periodic trapezoid rule.
    pub fn perimeter(&self) -> f64 {
        let n = BOUNDARY_NODES;
        let mut sum = 0.0;
        for i in 0..n {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let r = self.radius(theta);
            let dr = self.radius_derivative(theta);
            sum += (r * r + dr * dr).sqrt();
        }
        sum * 2.0 * std::f64::consts::PI / n as f64
    }

    /// Area (1/2)∫ r² dθ; exact up to roundoff for Fourier boundaries since
    /// r² is a trigonometric polynomial far below the Nyquist degree.
    pub fn area(&self) -> f64 {
        let n = BOUNDARY_NODES;
        let mut sum = 0.0;
        for i in 0..n {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let r = self.radius(theta);
            sum += r * r;
        }
        0.5 * sum * 2.0 * std::f64::consts::PI / n as f64
    }

    pub fn boundary_samples(&self, nodes: usize) -> Vec<Point2> {
        (0..nodes)
            .map(|i| self.boundary_point(2.0 * std::f64::consts::PI * i as f64 / nodes as f64))
            .collect()
    }

    pub fn diameter(&self) -> f64 {
        crate::geometry::polygon::point_set_diameter(&self.boundary_samples(BOUNDARY_NODES))
    }

    /// Strict interior test: distance from center below r(θ).
    pub fn contains_strict(&self, p: Point2) -> bool {
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        let rho = (dx * dx + dy * dy).sqrt();
        if rho == 0.0 {
            return true;
        }
        rho < self.radius(dy.atan2(dx))
    }

    pub fn contains_closed(&self, p: Point2) -> bool {
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        let rho = (dx * dx + dy * dy).sqrt();
        if rho == 0.0 {
            return true;
        }
        rho <= self.radius(dy.atan2(dx))
    }

    pub fn scale(&self, t: f64) -> StarShape {
        StarShape {
            center: self.center.scale(t),
            r0: self.r0 * t,
            coeffs: self.coeffs.iter().map(|&(a, b)| (a * t, b * t)).collect(),
        }
    }

    pub fn translate(&self, dx: f64, dy: f64) -> StarShape {
        StarShape {
            center: self.center.translate(dx, dy),
            r0: self.r0,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Inscribed polygon with vertices at θ_j = 2πj/n.
    pub fn to_polygon(&self, n: usize) -> Result<Polygon> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "star sampling needs n >= 3, got {n}"
            )));
        }
        let mut vertices = Vec::with_capacity(n);
        for j in 0..n {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let r = self.radius(theta);
            if r <= 0.0 {
                return Err(Error::InvalidDomain(format!(
                    "star radius non-positive at vertex {j}"
                )));
            }
            vertices.push(self.boundary_point(theta));
        }
        Polygon::new(vertices)
    }

    /// Sampled convexity: left turns along the inscribed boundary polygon.
    pub fn is_convex_sampled(&self) -> bool {
        let samples = self.boundary_samples(BOUNDARY_NODES);
        let d = self.diameter();
        let eps = crate::geometry::polygon::EPS_GEOM * d * d;
        let n = samples.len();
        (0..n).all(|i| {
            crate::geometry::point::cross(samples[i], samples[(i + 1) % n], samples[(i + 2) % n])
                >= -eps
        })
    }
}
