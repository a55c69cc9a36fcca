//! Closed-form reference spectra: separation of variables on rectangles and
//! the exact eigenvalues of the 5-point lattice Laplacian on a square.

use std::f64::consts::PI;

/// First `count` Dirichlet-Laplacian eigenvalues of the rectangle (0,w)x(0,h),
/// enumerated from pi^2 (m^2/w^2 + n^2/h^2) and sorted ascending.
pub fn rectangle_dirichlet_spectrum(w: f64, h: f64, count: usize) -> Vec<f64> {
    assert!(w > 0.0 && h > 0.0 && count > 0);
    // m, n <= max_idx is enough: lambda grows like pi^2 m^2 / max(w,h)^2.
    let max_idx = (count as f64).sqrt() as usize + count + 2;
    let mut all = Vec::with_capacity(max_idx * max_idx);
    for m in 1..=max_idx {
        for n in 1..=max_idx {
            let m = m as f64;
            let n = n as f64;
            all.push(PI * PI * (m * m / (w * w) + n * n / (h * h)));
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all.truncate(count);
    all
}

/// Exact eigenvalues of the 5-point Dirichlet Laplacian on the unit square
/// with m interior points per side and spacing h = 1/(m+1):
/// lambda_{k,l} = (4/h^2) (sin^2(k pi h / 2) + sin^2(l pi h / 2)).
/// Sorted ascending, first `count` returned.
pub fn lattice_dirichlet_spectrum_unit_square(m: usize, count: usize) -> Vec<f64> {
    assert!(m >= 1 && count >= 1 && count <= m * m);
    let h = 1.0 / (m as f64 + 1.0);
    let mut all = Vec::with_capacity(m * m);
    for k in 1..=m {
        for l in 1..=m {
            let sk = (0.5 * PI * h * k as f64).sin();
            let sl = (0.5 * PI * h * l as f64).sin();
            all.push(4.0 / (h * h) * (sk * sk + sl * sl));
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all.truncate(count);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_continuum_values() {
        let s = rectangle_dirichlet_spectrum(1.0, 1.0, 3);
        assert!((s[0] - 2.0 * PI * PI).abs() < 1e-10);
        assert!((s[1] - 5.0 * PI * PI).abs() < 1e-10);
        assert!((s[2] - 5.0 * PI * PI).abs() < 1e-10); // (1,2) and (2,1) degenerate
    }

    #[test]
    fn two_by_one_rectangle_lambda2() {
        // (0,2)x(0,1): lambda_(m,n) = pi^2 (m^2/4 + n^2).
        let s = rectangle_dirichlet_spectrum(2.0, 1.0, 2);
        assert!((s[0] - PI * PI * 1.25).abs() < 1e-10);
        assert!((s[1] - PI * PI * 2.0).abs() < 1e-10);
    }

    #[test]
    fn lattice_smallest_matches_closed_form() {
        // m = 3 interior points, h = 1/4: lambda_1 = 2 (2 - sqrt 2) / h^2.
        let s = lattice_dirichlet_spectrum_unit_square(3, 1);
        assert!((s[0] - 18.745166004060958).abs() < 1e-10);
    }
}
