//! Assembly of the discrete operators on interior unknowns.
//!
//! `B ≈ -Δ` is the classical 5-point stencil with zero exterior values, so
//! its quadratic form is the discrete Dirichlet energy `∫|∇u|²` of the zero
//! extension. `A ≈ Δ²` is assembled as the exact square `Dᵀ D` of the 5-point
//! Laplacian `D` mapping interior unknowns into the one-cell-enlarged point
//! set, which makes `xᵀ A x = Σ (Δ_h x)²` hold exactly and keeps `A`
//! symmetric positive definite with the clamped conditions implicit. On rows
//! whose full 13-point neighborhood is interior this reduces to the familiar
//! stencil (20, -8, 2, 1)/h⁴; near the boundary the couplings to exterior
//! points simply disappear. Both constructions are compared entrywise at
//! assembly time.

use crate::raster::GridEmbedding;
use crate::{Error, Result};

/// Sparse rectangular factor `D` (CSR); when attached to an operator, the
/// matrix is the Gram product `Dᵀ D` and is applied factored, which avoids
/// most of the floating-point cancellation of the assembled 13-point rows.
#[derive(Debug, Clone)]
pub struct GramFactor {
    rows: usize,
    row_ptr: Vec<u32>,
    col_idx: Vec<u32>,
    vals: Vec<f64>,
}

impl GramFactor {
    /// tmp = D x.
    fn apply(&self, x: &[f64], tmp: &mut Vec<f64>) {
        tmp.clear();
        tmp.reserve(self.rows);
        for r in 0..self.rows {
            let lo = self.row_ptr[r] as usize;
            let hi = self.row_ptr[r + 1] as usize;
            let mut acc = 0.0;
            for k in lo..hi {
                acc += self.vals[k] * x[self.col_idx[k] as usize];
            }
            tmp.push(acc);
        }
    }

    /// y += Dᵀ tmp (y pre-zeroed by the caller).
    fn apply_transpose(&self, tmp: &[f64], y: &mut [f64]) {
        for r in 0..self.rows {
            let lo = self.row_ptr[r] as usize;
            let hi = self.row_ptr[r + 1] as usize;
            let t = tmp[r];
            if t != 0.0 {
                for k in lo..hi {
                    y[self.col_idx[k] as usize] += self.vals[k] * t;
                }
            }
        }
    }
}

/// Symmetric sparse matrix; each off-diagonal pair is stored once with
/// `row <= col`.
#[derive(Debug, Clone)]
pub struct SymmetricSparseOperator {
    n: usize,
    /// (row, col, value) with row <= col, sorted lexicographically, no dupes.
    entries: Vec<(u32, u32, f64)>,
    /// Present when the matrix is a Gram product Dᵀ D.
    factor: Option<GramFactor>,
}

impl SymmetricSparseOperator {
    pub fn from_entries(n: usize, mut entries: Vec<(u32, u32, f64)>) -> Result<Self> {
        for &(r, c, _) in &entries {
            if r as usize >= n || c as usize >= n || r > c {
                return Err(Error::InvalidArgument(format!(
                    "entry ({r},{c}) out of range for symmetric storage of dimension {n}"
                )));
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate entry ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(SymmetricSparseOperator {
            n,
            entries,
            factor: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(u32, u32, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// y = M x; Gram-factored matrices apply D then Dᵀ for accuracy.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        y.fill(0.0);
        if let Some(f) = &self.factor {
            let mut tmp = Vec::new();
            f.apply(x, &mut tmp);
            f.apply_transpose(&tmp, y);
            return;
        }
        for &(r, c, v) in &self.entries {
            let (r, c) = (r as usize, c as usize);
            y[r] += v * x[c];
            if r != c {
                y[c] += v * x[r];
            }
        }
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        if let Some(f) = &self.factor {
            let mut tmp = Vec::new();
            f.apply(x, &mut tmp);
            return tmp.iter().map(|v| v * v).sum();
        }
        let mut sum = 0.0;
        for &(r, c, v) in &self.entries {
            let (r, c) = (r as usize, c as usize);
            if r == c {
                sum += v * x[r] * x[r];
            } else {
                sum += 2.0 * v * x[r] * x[c];
            }
        }
        sum
    }

    /// Half bandwidth: max |row - col| over stored entries.
    pub fn bandwidth(&self) -> usize {
        self.entries
            .iter()
            .map(|&(r, c, _)| (c - r) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Multiply every entry by `factor` (exact matrix rescaling). A positive
    /// factor distributes as sqrt onto an attached Gram factor.
    pub fn scaled(&self, factor: f64) -> SymmetricSparseOperator {
        let scaled_factor = match (&self.factor, factor > 0.0) {
            (Some(f), true) => {
                let root = factor.sqrt();
                Some(GramFactor {
                    rows: f.rows,
                    row_ptr: f.row_ptr.clone(),
                    col_idx: f.col_idx.clone(),
                    vals: f.vals.iter().map(|v| v * root).collect(),
                })
            }
            _ => None,
        };
        SymmetricSparseOperator {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|&(r, c, v)| (r, c, v * factor))
                .collect(),
            factor: scaled_factor,
        }
    }

    /// Coordinate text dump: header "n nnz", then 1-based "row col value"
    /// triples of the stored entries.
    pub fn write_coordinate_text<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.n, self.entries.len())?;
        for &(r, c, v) in &self.entries {
            writeln!(out, "{} {} {:.16e}", r + 1, c + 1, v)?;
        }
        Ok(())
    }
}

/// 5-point negative Laplacian on the interior unknowns: diagonal `4/h²`,
/// `-1/h²` for each interior neighbor; couplings to exterior points vanish
/// because the function is zero there.
pub fn assemble_laplacian(grid: &GridEmbedding) -> SymmetricSparseOperator {
    let h2 = grid.h() * grid.h();
    let mut entries = Vec::with_capacity(3 * grid.n_unknowns());
    for (i, j) in grid.unknown_cells() {
        let row = grid.index_of(i, j).unwrap() as u32;
        entries.push((row, row, 4.0 / h2));
        // each undirected pair once: neighbors at larger index only
        if let Some(right) = grid.index_of(i + 1, j) {
            entries.push((row, right as u32, -1.0 / h2));
        }
        if let Some(up) = grid.index_of(i, j + 1) {
            entries.push((row, up as u32, -1.0 / h2));
        }
    }
    SymmetricSparseOperator::from_entries(grid.n_unknowns(), entries)
        .expect("laplacian assembly produces valid symmetric storage")
}

/// Discrete bilaplacian `A = Dᵀ D`, cross-checked entrywise against the
/// direct 13-point stencil with exterior couplings dropped. The returned
/// operator keeps the factor `D` attached and applies itself through it.
pub fn assemble_biharmonic(grid: &GridEmbedding) -> SymmetricSparseOperator {
    let mut a = assemble_biharmonic_squared(grid);
    let b = assemble_biharmonic_stencil(grid);
    assert_eq!(a.entries.len(), b.entries.len(), "stencil support mismatch");
    for (ea, eb) in a.entries.iter().zip(b.entries.iter()) {
        assert_eq!((ea.0, ea.1), (eb.0, eb.1), "stencil support mismatch");
        let scale = ea.2.abs().max(eb.2.abs());
        assert!(
            (ea.2 - eb.2).abs() <= 1e-12 * scale,
            "assembly self-check failed at ({}, {}): {} vs {}",
            ea.0,
            ea.1,
            ea.2,
            eb.2
        );
    }
    a.factor = Some(extended_laplacian_factor(grid));
    a
}

/// The 5-point operator from interior unknowns into the one-cell-enlarged
/// point set: each enlarged point e gets a row with -4/h² at e (when e is an
/// unknown) and 1/h² at each interior neighbor of e.
fn extended_laplacian_factor(grid: &GridEmbedding) -> GramFactor {
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let nx = grid.nx();
    let ny = grid.ny();
    let mut enlarged = vec![false; nx * ny];
    for (i, j) in grid.unknown_cells() {
        enlarged[j * nx + i] = true;
        enlarged[j * nx + (i - 1)] = true;
        enlarged[j * nx + (i + 1)] = true;
        enlarged[(j - 1) * nx + i] = true;
        enlarged[(j + 1) * nx + i] = true;
    }
    let mut row_ptr = vec![0u32];
    let mut col_idx = Vec::new();
    let mut vals = Vec::new();
    let mut rows = 0usize;
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            if !enlarged[j * nx + i] {
                continue;
            }
            if let Some(center) = grid.index_of(i, j) {
                col_idx.push(center as u32);
                vals.push(-4.0 * inv_h2);
            }
            for (ni, nj) in [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)] {
                if let Some(k) = grid.index_of(ni, nj) {
                    col_idx.push(k as u32);
                    vals.push(inv_h2);
                }
            }
            row_ptr.push(col_idx.len() as u32);
            rows += 1;
        }
    }
    GramFactor {
        rows,
        row_ptr,
        col_idx,
        vals,
    }
}

/// Entries of `Dᵀ D` accumulated from the overlapping row supports of `D`.
fn assemble_biharmonic_squared(grid: &GridEmbedding) -> SymmetricSparseOperator {
    let d = extended_laplacian_factor(grid);
    let n = grid.n_unknowns();
    let mut acc: std::collections::BTreeMap<(u32, u32), f64> = std::collections::BTreeMap::new();
    for r in 0..d.rows {
        let lo = d.row_ptr[r] as usize;
        let hi = d.row_ptr[r + 1] as usize;
        for a in lo..hi {
            for b in a..hi {
                let (pa, pb) = (d.col_idx[a], d.col_idx[b]);
                let key = if pa <= pb { (pa, pb) } else { (pb, pa) };
                *acc.entry(key).or_insert(0.0) += d.vals[a] * d.vals[b];
            }
        }
    }
    let entries: Vec<(u32, u32, f64)> = acc.into_iter().map(|((r, c), v)| (r, c, v)).collect();
    SymmetricSparseOperator::from_entries(n, entries)
        .expect("squared-laplacian assembly produces valid symmetric storage")
}

/// Direct 13-point stencil (20, -8, 2, 1)/h⁴ with couplings to exterior
/// unknowns dropped.
fn assemble_biharmonic_stencil(grid: &GridEmbedding) -> SymmetricSparseOperator {
    let h4 = grid.h().powi(4);
    let mut entries = Vec::with_capacity(7 * grid.n_unknowns());
    for (i, j) in grid.unknown_cells() {
        let row = grid.index_of(i, j).unwrap() as u32;
        entries.push((row, row, 20.0 / h4));
        let neighbor = |di: i64, dj: i64| -> Option<usize> {
            let ni = i as i64 + di;
            let nj = j as i64 + dj;
            if ni < 0 || nj < 0 {
                None
            } else {
                grid.index_of(ni as usize, nj as usize)
            }
        };
        let push = |entries: &mut Vec<(u32, u32, f64)>, col: Option<usize>, v: f64| {
            if let Some(c) = col {
                entries.push((row, c as u32, v));
            }
        };
        // each undirected pair once: scan "forward" neighbors only
        push(&mut entries, neighbor(1, 0), -8.0 / h4);
        push(&mut entries, neighbor(0, 1), -8.0 / h4);
        push(&mut entries, neighbor(1, 1), 2.0 / h4);
        push(&mut entries, neighbor(-1, 1), 2.0 / h4);
        push(&mut entries, neighbor(2, 0), 1.0 / h4);
        push(&mut entries, neighbor(0, 2), 1.0 / h4);
    }
    // (-1, 1) neighbors can produce row > col; normalize to upper storage
    let normalized: Vec<(u32, u32, f64)> = entries
        .into_iter()
        .map(|(r, c, v)| if r <= c { (r, c, v) } else { (c, r, v) })
        .collect();
    SymmetricSparseOperator::from_entries(grid.n_unknowns(), normalized)
        .expect("13-point assembly produces valid symmetric storage")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DomainSpec;
    use buckleopt_testkit::TestRng;

    fn grid(domain: &DomainSpec, h: f64) -> GridEmbedding {
        GridEmbedding::rasterize(domain, h).unwrap()
    }

    #[test]
    fn single_unknown_matrices() {
        let g = grid(&DomainSpec::unit_square(), 0.5);
        assert_eq!(g.n_unknowns(), 1);
        let b = assemble_laplacian(&g);
        assert_eq!(b.entries(), &[(0, 0, 4.0 / 0.25)]);
        let a = assemble_biharmonic(&g);
        assert_eq!(a.entries(), &[(0, 0, 20.0 / 0.0625)]);
    }

    #[test]
    fn laplacian_row_sums_vanish_in_the_deep_interior() {
        let g = grid(&DomainSpec::unit_square(), 1.0 / 8.0);
        let b = assemble_laplacian(&g);
        let mut row_sums = vec![0.0; g.n_unknowns()];
        for &(r, c, v) in b.entries() {
            row_sums[r as usize] += v;
            if r != c {
                row_sums[c as usize] += v;
            }
        }
        for (i, j) in g.unknown_cells() {
            let all_neighbors_inside = g.is_inside(i - 1, j)
                && g.is_inside(i + 1, j)
                && g.is_inside(i, j - 1)
                && g.is_inside(i, j + 1);
            if all_neighbors_inside {
                let k = g.index_of(i, j).unwrap();
                assert!(row_sums[k].abs() < 1e-9, "row {k} sums to {}", row_sums[k]);
            }
        }
    }

    #[test]
    fn biharmonic_row_sums_vanish_deep_inside() {
        // 20 - 8*4 + 2*4 + 1*4 = 0 for rows with full 13-point support
        let g = grid(&DomainSpec::rect([0.0, 0.0], 1.0, 1.0), 1.0 / 12.0);
        let a = assemble_biharmonic(&g);
        let mut row_sums = vec![0.0; g.n_unknowns()];
        for &(r, c, v) in a.entries() {
            row_sums[r as usize] += v;
            if r != c {
                row_sums[c as usize] += v;
            }
        }
        for (i, j) in g.unknown_cells() {
            let offsets: [(i64, i64); 12] = [
                (1, 0),
                (-1, 0),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, -1),
                (-1, 1),
                (-1, -1),
                (2, 0),
                (-2, 0),
                (0, 2),
                (0, -2),
            ];
            let full_support = offsets.iter().all(|&(di, dj)| {
                let ni = i as i64 + di;
                let nj = j as i64 + dj;
                ni >= 0 && nj >= 0 && g.index_of(ni as usize, nj as usize).is_some()
            });
            if full_support {
                let k = g.index_of(i, j).unwrap();
                assert!(row_sums[k].abs() < 1e-6, "row {k} sums to {}", row_sums[k]);
            }
        }
    }

    #[test]
    fn both_biharmonic_constructions_agree() {
        for d in [
            DomainSpec::unit_disk(),
            DomainSpec::unit_square(),
            DomainSpec::star([0.0, 0.0], 1.0, vec![[0.1, 0.0], [0.0, 0.05]]),
        ] {
            let g = grid(&d, 0.06);
            let squared = assemble_biharmonic_squared(&g);
            let stencil = assemble_biharmonic_stencil(&g);
            assert_eq!(squared.nnz(), stencil.nnz(), "{}", d.kind());
            for (ea, eb) in squared.entries().iter().zip(stencil.entries()) {
                assert_eq!((ea.0, ea.1), (eb.0, eb.1));
                assert!((ea.2 - eb.2).abs() <= 1e-12 * ea.2.abs().max(eb.2.abs()));
            }
        }
    }

    #[test]
    fn quadratic_form_is_sum_of_squared_discrete_laplacians() {
        // x^T A x must equal the zero-extension energy sum over the whole
        // grid of (Δ_h x)², computed here independently
        let d = DomainSpec::unit_disk();
        let g = grid(&d, 0.11);
        let a = assemble_biharmonic(&g);
        let mut rng = TestRng::new(3);
        let n = g.n_unknowns();
        for _ in 0..5 {
            let x: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
            let mut full = vec![0.0; g.nx() * g.ny()];
            for (i, j) in g.unknown_cells() {
                full[j * g.nx() + i] = x[g.index_of(i, j).unwrap()];
            }
            let inv_h2 = 1.0 / (g.h() * g.h());
            let mut energy = 0.0;
            for j in 1..g.ny() - 1 {
                for i in 1..g.nx() - 1 {
                    let lap = inv_h2
                        * (full[j * g.nx() + i - 1]
                            + full[j * g.nx() + i + 1]
                            + full[(j - 1) * g.nx() + i]
                            + full[(j + 1) * g.nx() + i]
                            - 4.0 * full[j * g.nx() + i]);
                    energy += lap * lap;
                }
            }
            let form = a.quadratic_form(&x);
            assert!(
                (energy - form).abs() <= 1e-9 * energy.abs().max(1.0),
                "{energy} vs {form}"
            );
        }
    }

    #[test]
    fn spectral_order_inequality() {
        // (x^T B x)² <= (x^T A x)(x^T x): Cauchy-Schwarz through the
        // zero-extension structure
        let d = DomainSpec::star([0.0, 0.0], 1.0, vec![[0.0, 0.0], [0.12, -0.04]]);
        let g = grid(&d, 0.08);
        let a = assemble_biharmonic(&g);
        let b = assemble_laplacian(&g);
        let mut rng = TestRng::new(17);
        let n = g.n_unknowns();
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
            let xtax = a.quadratic_form(&x);
            let xtbx = b.quadratic_form(&x);
            let xtx: f64 = x.iter().map(|v| v * v).sum();
            assert!(xtbx * xtbx <= xtax * xtx * (1.0 + 1e-12));
        }
    }

    #[test]
    fn storage_is_upper_and_sorted() {
        let g = grid(&DomainSpec::unit_disk(), 0.1);
        for op in [assemble_laplacian(&g), assemble_biharmonic(&g)] {
            for w in op.entries().windows(2) {
                assert!((w[0].0, w[0].1) < (w[1].0, w[1].1));
            }
            for &(r, c, _) in op.entries() {
                assert!(r <= c);
            }
        }
    }

    #[test]
    fn coordinate_dump_format() {
        let g = grid(&DomainSpec::unit_square(), 0.5);
        let b = assemble_laplacian(&g);
        let mut buf = Vec::new();
        b.write_coordinate_text(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "1 1");
        assert!(lines.next().unwrap().starts_with("1 1 "));
    }
}
