//! Embedding a domain into a uniform grid of interior unknowns.
//!
//! Functions are represented by their values at grid points strictly inside
//! the domain and extended by zero everywhere else, so the clamped boundary
//! conditions never appear as explicit equations: leaving exterior values at
//! zero is the discrete counterpart of extending by zero outside the domain.
//!
//! Grid points live on the global lattice `h·Z²` (the origin is snapped to a
//! multiple of `h`), so embeddings of nested domains at the same spacing
//! produce nested masks, making inclusion arguments exact at the discrete
//! level.

use crate::geometry::{DomainSpec, Point2};
use crate::{Error, Result};

/// A rasterized domain: the bounding grid, the inside mask and the
/// enumeration of interior unknowns (row-major).
#[derive(Debug, Clone)]
pub struct GridEmbedding {
    origin: Point2,
    h: f64,
    nx: usize,
    ny: usize,
    inside: Vec<bool>,
    interior_index: Vec<u32>,
    n_unknowns: usize,
}

const NO_INDEX: u32 = u32::MAX;

impl GridEmbedding {
    /// Rasterizes `domain` at spacing `h`: the grid covers the bounding box
    /// padded by `2h`, and a point is inside iff it lies strictly in the
    /// open domain. Spacings below diameter/8 give meaningful operators;
    /// anything that still catches at least one interior point is accepted.
    pub fn rasterize(domain: &DomainSpec, h: f64) -> Result<GridEmbedding> {
        domain.validate()?;
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "grid spacing must be > 0, got {h}"
            )));
        }
        let (min, max) = domain.bbox()?;
        let tester = domain.prepare()?;
        // snap the padded origin down to the global lattice h·Z²
        let origin = Point2::new(
            ((min.x - 2.0 * h) / h).floor() * h,
            ((min.y - 2.0 * h) / h).floor() * h,
        );
        let nx = ((max.x + 2.0 * h - origin.x) / h).ceil() as usize + 1;
        let ny = ((max.y + 2.0 * h - origin.y) / h).ceil() as usize + 1;
        let mut inside = vec![false; nx * ny];
        let mut interior_index = vec![NO_INDEX; nx * ny];
        let mut n_unknowns = 0u32;
        for j in 0..ny {
            for i in 0..nx {
                let p = Point2::new(origin.x + i as f64 * h, origin.y + j as f64 * h);
                if tester.contains_strict(p) {
                    let cell = j * nx + i;
                    inside[cell] = true;
                    interior_index[cell] = n_unknowns;
                    n_unknowns += 1;
                }
            }
        }
        if n_unknowns == 0 {
            return Err(Error::ResolutionTooCoarse(format!(
                "no grid point of spacing {h} falls inside the domain"
            )));
        }
        let g = GridEmbedding {
            origin,
            h,
            nx,
            ny,
            inside,
            interior_index,
            n_unknowns: n_unknowns as usize,
        };
        debug_assert!(g.margin_is_clear());
        Ok(g)
    }

    /// The same mask reinterpreted at spacing `t·h` about a scaled origin:
    /// exactly the embedding of the dilated domain on the dilated lattice.
    pub fn rescaled(&self, t: f64) -> Result<GridEmbedding> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be > 0, got {t}"
            )));
        }
        Ok(GridEmbedding {
            origin: self.origin.scale(t),
            h: self.h * t,
            nx: self.nx,
            ny: self.ny,
            inside: self.inside.clone(),
            interior_index: self.interior_index.clone(),
            n_unknowns: self.n_unknowns,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> Point2 {
        self.origin
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Number of interior unknowns.
    pub fn n_unknowns(&self) -> usize {
        self.n_unknowns
    }

    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        i < self.nx && j < self.ny && self.inside[j * self.nx + i]
    }

    /// Unknown index of grid point (i, j), if interior.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.nx || j >= self.ny {
            return None;
        }
        match self.interior_index[j * self.nx + i] {
            NO_INDEX => None,
            k => Some(k as usize),
        }
    }

    /// Grid coordinates of every unknown, in index order.
    pub fn unknown_cells(&self) -> Vec<(usize, usize)> {
        let mut cells = Vec::with_capacity(self.n_unknowns);
        for j in 0..self.ny {
            for i in 0..self.nx {
                if self.inside[j * self.nx + i] {
                    cells.push((i, j));
                }
            }
        }
        cells
    }

    pub fn point_at(&self, i: usize, j: usize) -> Point2 {
        Point2::new(
            self.origin.x + i as f64 * self.h,
            self.origin.y + j as f64 * self.h,
        )
    }

    /// Coordinates of grid point (i, j) on the global lattice, as integer
    /// multiples of h. Used to compare masks across embeddings.
    pub fn lattice_coords(&self, i: usize, j: usize) -> (i64, i64) {
        (
            (self.origin.x / self.h).round() as i64 + i as i64,
            (self.origin.y / self.h).round() as i64 + j as i64,
        )
    }

    /// Number of 4-connected components of the inside mask.
    pub fn connected_components(&self) -> usize {
        let mut seen = vec![false; self.nx * self.ny];
        let mut components = 0;
        let mut stack = Vec::new();
        for start in 0..self.nx * self.ny {
            if !self.inside[start] || seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(cell) = stack.pop() {
                let (i, j) = (cell % self.nx, cell / self.nx);
                let mut push = |ii: usize, jj: usize, stack: &mut Vec<usize>| {
                    let c = jj * self.nx + ii;
                    if self.inside[c] && !seen[c] {
                        seen[c] = true;
                        stack.push(c);
                    }
                };
                if i > 0 {
                    push(i - 1, j, &mut stack);
                }
                if i + 1 < self.nx {
                    push(i + 1, j, &mut stack);
                }
                if j > 0 {
                    push(i, j - 1, &mut stack);
                }
                if j + 1 < self.ny {
                    push(i, j + 1, &mut stack);
                }
            }
        }
        components
    }

    /// Merges another mask on the identical grid (test fixtures for
    /// disconnected configurations).
    pub fn union_with(&self, other: &GridEmbedding) -> Result<GridEmbedding> {
        if self.nx != other.nx
            || self.ny != other.ny
            || self.origin != other.origin
            || self.h != other.h
        {
            return Err(Error::InvalidArgument(
                "embeddings live on different grids".into(),
            ));
        }
        let mut inside = self.inside.clone();
        for (cell, flag) in other.inside.iter().enumerate() {
            if *flag {
                inside[cell] = true;
            }
        }
        let mut interior_index = vec![NO_INDEX; self.nx * self.ny];
        let mut n_unknowns = 0u32;
        for (cell, flag) in inside.iter().enumerate() {
            if *flag {
                interior_index[cell] = n_unknowns;
                n_unknowns += 1;
            }
        }
        Ok(GridEmbedding {
            origin: self.origin,
            h: self.h,
            nx: self.nx,
            ny: self.ny,
            inside,
            interior_index,
            n_unknowns: n_unknowns as usize,
        })
    }

    /// The outermost two rings of the grid carry no interior points, so all
    /// stencils up to reach 2 stay on-grid.
    pub fn margin_is_clear(&self) -> bool {
        for j in 0..self.ny {
            for i in 0..self.nx {
                if (i < 2 || j < 2 || i + 2 >= self.nx || j + 2 >= self.ny)
                    && self.inside[j * self.nx + i]
                {
                    return false;
                }
            }
        }
        true
    }

    /// Writes the mask as ASCII PGM (P2), 1 = inside.
    pub fn write_pgm<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "P2")?;
        writeln!(out, "{} {}", self.nx, self.ny)?;
        writeln!(out, "1")?;
        for j in 0..self.ny {
            let row: Vec<&str> = (0..self.nx)
                .map(|i| if self.inside[j * self.nx + i] { "1" } else { "0" })
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }

    /// Writes the mask as CSV rows of 0/1, row-major.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        for j in 0..self.ny {
            let row: Vec<&str> = (0..self.nx)
                .map(|i| if self.inside[j * self.nx + i] { "1" } else { "0" })
                .collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Rasterizes several domains onto one common grid (the grid of the union of
/// their bounding boxes), so that mask inclusions are exact. Spacing and
/// origin snapping follow [`GridEmbedding::rasterize`].
pub fn rasterize_common(domains: &[&DomainSpec], h: f64) -> Result<Vec<GridEmbedding>> {
    if domains.is_empty() {
        return Err(Error::InvalidArgument("no domains given".into()));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "grid spacing must be > 0, got {h}"
        )));
    }
    for d in domains {
        d.validate()?;
    }
    let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for d in domains {
        let (lo, hi) = d.bbox()?;
        min.x = min.x.min(lo.x);
        min.y = min.y.min(lo.y);
        max.x = max.x.max(hi.x);
        max.y = max.y.max(hi.y);
    }
    let origin = Point2::new(
        ((min.x - 2.0 * h) / h).floor() * h,
        ((min.y - 2.0 * h) / h).floor() * h,
    );
    let nx = ((max.x + 2.0 * h - origin.x) / h).ceil() as usize + 1;
    let ny = ((max.y + 2.0 * h - origin.y) / h).ceil() as usize + 1;
    let mut out = Vec::with_capacity(domains.len());
    for d in domains {
        let tester = d.prepare()?;
        let mut inside = vec![false; nx * ny];
        let mut interior_index = vec![NO_INDEX; nx * ny];
        let mut n_unknowns = 0u32;
        for j in 0..ny {
            for i in 0..nx {
                let p = Point2::new(origin.x + i as f64 * h, origin.y + j as f64 * h);
                if tester.contains_strict(p) {
                    inside[j * nx + i] = true;
                    interior_index[j * nx + i] = n_unknowns;
                    n_unknowns += 1;
                }
            }
        }
        if n_unknowns == 0 {
            return Err(Error::ResolutionTooCoarse(format!(
                "no grid point of spacing {h} falls inside one of the domains"
            )));
        }
        out.push(GridEmbedding {
            origin,
            h,
            nx,
            ny,
            inside,
            interior_index,
            n_unknowns: n_unknowns as usize,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_quarter_spacing() {
        let g = GridEmbedding::rasterize(&DomainSpec::unit_square(), 0.25).unwrap();
        assert_eq!(g.n_unknowns(), 9);
        // interior points are exactly the 3x3 lattice {0.25, 0.5, 0.75}^2
        for (i, j) in g.unknown_cells() {
            let p = g.point_at(i, j);
            assert!([0.25, 0.5, 0.75].iter().any(|v| (p.x - v).abs() < 1e-12));
            assert!([0.25, 0.5, 0.75].iter().any(|v| (p.y - v).abs() < 1e-12));
        }
        assert!(g.margin_is_clear());
    }

    #[test]
    fn half_spacing_square_keeps_only_center() {
        let g = GridEmbedding::rasterize(&DomainSpec::unit_square(), 0.5).unwrap();
        assert_eq!(g.n_unknowns(), 1);
        let (i, j) = g.unknown_cells()[0];
        let p = g.point_at(i, j);
        assert!((p.x - 0.5).abs() < 1e-12 && (p.y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn coarse_grids_error_out() {
        // no interior point at all: thin sliver under a wide spacing
        let sliver = DomainSpec::rect([0.0, 0.0], 8.0, 1e-4);
        let r = GridEmbedding::rasterize(&sliver, 0.5);
        assert!(matches!(r, Err(Error::ResolutionTooCoarse(_))));
        let r = GridEmbedding::rasterize(&DomainSpec::unit_square(), -0.1);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn unit_disk_half_spacing_keeps_three_by_three() {
        // every point of {-0.5, 0, 0.5}^2 satisfies x^2 + y^2 < 1
        let g = GridEmbedding::rasterize(&DomainSpec::unit_disk(), 0.5).unwrap();
        assert_eq!(g.n_unknowns(), 9);
    }

    #[test]
    fn unit_disk_brute_force_containment() {
        let g = GridEmbedding::rasterize(&DomainSpec::unit_disk(), 0.23).unwrap();
        let mut count = 0;
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                let p = g.point_at(i, j);
                if p.x * p.x + p.y * p.y < 1.0 {
                    count += 1;
                    assert!(g.is_inside(i, j));
                } else {
                    assert!(!g.is_inside(i, j));
                }
            }
        }
        assert_eq!(count, g.n_unknowns());
    }

    #[test]
    fn interior_index_is_row_major_bijection() {
        let g = GridEmbedding::rasterize(&DomainSpec::unit_disk(), 0.1).unwrap();
        let cells = g.unknown_cells();
        assert_eq!(cells.len(), g.n_unknowns());
        for (k, &(i, j)) in cells.iter().enumerate() {
            assert_eq!(g.index_of(i, j), Some(k));
        }
        for w in cells.windows(2) {
            let (i0, j0) = w[0];
            let (i1, j1) = w[1];
            assert!(j1 > j0 || (j1 == j0 && i1 > i0));
        }
    }

    #[test]
    fn nested_masks_on_common_lattice() {
        let outer = DomainSpec::rect([0.0, 0.0], 2.0, 2.0);
        let inner = DomainSpec::rect([0.5, 0.5], 1.0, 1.0);
        let g = rasterize_common(&[&outer, &inner], 0.125).unwrap();
        assert_eq!(g[0].nx(), g[1].nx());
        for j in 0..g[0].ny() {
            for i in 0..g[0].nx() {
                if g[1].is_inside(i, j) {
                    assert!(g[0].is_inside(i, j));
                }
            }
        }
        assert!(g[0].n_unknowns() > g[1].n_unknowns());
    }

    #[test]
    fn refinement_gains_unknowns() {
        let d = DomainSpec::unit_disk();
        let coarse = GridEmbedding::rasterize(&d, 0.1).unwrap();
        let fine = GridEmbedding::rasterize(&d, 0.05).unwrap();
        assert!(fine.n_unknowns() >= coarse.n_unknowns());
    }

    #[test]
    fn area_consistency() {
        for d in [
            DomainSpec::unit_square(),
            DomainSpec::unit_disk(),
            DomainSpec::rect([0.0, 0.0], 2.0, 1.0),
        ] {
            let h = 0.02;
            let g = GridEmbedding::rasterize(&d, h).unwrap();
            let estimate = g.n_unknowns() as f64 * h * h;
            let bound = 2.0 * d.perimeter().unwrap() * h;
            assert!(
                (estimate - d.area().unwrap()).abs() < bound,
                "domain {:?}: estimate {estimate}",
                d.kind()
            );
        }
    }

    #[test]
    fn components_of_disjoint_squares() {
        // two unit squares at distance 1, rasterized onto one grid
        let left = DomainSpec::rect([0.0, 0.0], 1.0, 1.0);
        let right = DomainSpec::rect([2.0, 0.0], 1.0, 1.0);
        let g = rasterize_common(&[&left, &right], 0.25).unwrap();
        let merged = g[0].union_with(&g[1]).unwrap();
        assert_eq!(g[0].connected_components(), 1);
        assert_eq!(merged.connected_components(), 2);
        assert_eq!(
            merged.n_unknowns(),
            g[0].n_unknowns() + g[1].n_unknowns()
        );
    }

    #[test]
    fn convex_rasterization_is_connected() {
        for d in [
            DomainSpec::unit_disk(),
            DomainSpec::unit_square(),
            DomainSpec::star([0.0, 0.0], 1.0, vec![[0.0, 0.0], [0.08, 0.02]]),
        ] {
            let g = GridEmbedding::rasterize(&d, 0.05).unwrap();
            assert_eq!(g.connected_components(), 1, "{}", d.kind());
        }
    }

    #[test]
    fn rescaled_embedding_matches_scaled_domain() {
        let d = DomainSpec::unit_disk();
        let g = GridEmbedding::rasterize(&d, 0.1).unwrap();
        let scaled = g.rescaled(2.0).unwrap();
        assert_eq!(scaled.n_unknowns(), g.n_unknowns());
        assert_eq!(scaled.h(), 0.2);
    }

    #[test]
    fn pgm_and_csv_dumps() {
        let g = GridEmbedding::rasterize(&DomainSpec::unit_square(), 0.25).unwrap();
        let mut pgm = Vec::new();
        g.write_pgm(&mut pgm).unwrap();
        let text = String::from_utf8(pgm).unwrap();
        assert!(text.starts_with("P2\n"));
        let mut csv = Vec::new();
        g.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().count(), g.ny());
    }
}
