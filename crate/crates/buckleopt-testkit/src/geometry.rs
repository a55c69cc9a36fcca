//! Brute-force geometric oracles: O(n^2)/O(n^3) enumerations that are too
//! slow for production but obviously correct.

/// Max pairwise distance of a point set, by full enumeration.
pub fn brute_force_diameter(points: &[[f64; 2]]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dx = points[i][0] - points[j][0];
            let dy = points[i][1] - points[j][1];
            best = best.max((dx * dx + dy * dy).sqrt());
        }
    }
    best
}

/// Hull membership by halfplane test: p is on the hull iff some line through
/// p keeps every other point (weakly) on one side. O(n^2) per point.
pub fn brute_force_hull_vertices(points: &[[f64; 2]], eps: f64) -> Vec<[f64; 2]> {
    let n = points.len();
    let mut hull = Vec::new();
    for i in 0..n {
        let mut extreme = false;
        for j in 0..n {
            if j == i {
                continue;
            }
            // direction points[j] -> points[i]; check all points on one side
            // of the line through i perpendicular offsets via cross products.
            let mut all_left = true;
            let mut all_right = true;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let cross = (points[j][0] - points[i][0]) * (points[k][1] - points[i][1])
                    - (points[j][1] - points[i][1]) * (points[k][0] - points[i][0]);
                if cross > eps {
                    all_right = false;
                }
                if cross < -eps {
                    all_left = false;
                }
            }
            if all_left || all_right {
                extreme = true;
                break;
            }
        }
        if extreme {
            hull.push(points[i]);
        }
    }
    hull
}

/// Directed Hausdorff distance between two finite samplings.
pub fn brute_force_directed_hausdorff(from: &[[f64; 2]], to: &[[f64; 2]]) -> f64 {
    let mut worst = 0.0f64;
    for p in from {
        let mut nearest = f64::INFINITY;
        for q in to {
            let dx = p[0] - q[0];
            let dy = p[1] - q[1];
            nearest = nearest.min((dx * dx + dy * dy).sqrt());
        }
        worst = worst.max(nearest);
    }
    worst
}

/// Signed curvature of a polar curve r(theta):
/// kappa = (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^(3/2).
/// Returns the minimum over `nodes` uniform samples; the curve bounds a
/// convex region iff this minimum is >= 0.
pub fn min_polar_curvature(r0: f64, coeffs: &[(f64, f64)], nodes: usize) -> f64 {
    let mut min_kappa = f64::INFINITY;
    for idx in 0..nodes {
        let theta = 2.0 * std::f64::consts::PI * idx as f64 / nodes as f64;
        let mut r = r0;
        let mut dr = 0.0;
        let mut ddr = 0.0;
        for (k, &(a, b)) in coeffs.iter().enumerate() {
            let k = (k + 1) as f64;
            let (s, c) = (k * theta).sin_cos();
            r += a * c + b * s;
            dr += -a * k * s + b * k * c;
            ddr += -a * k * k * c - b * k * k * s;
        }
        let num = r * r + 2.0 * dr * dr - r * ddr;
        let den = (r * r + dr * dr).powf(1.5);
        min_kappa = min_kappa.min(num / den);
    }
    min_kappa
}
