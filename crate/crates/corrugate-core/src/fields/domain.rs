use crate::error::{CoreError, Result};
use crate::MAX_DIM;

/// Uniform box lattice in R^n, 2 ≤ n ≤ 4.
///
/// The lattice spans `[lo, hi]` with spacing `h` in every axis. `margin`
/// records how much collar (beyond the domain of interest) is still
/// available for derivative/mollification shrinkage and restriction.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDomain {
    n: usize,
    lo: [f64; MAX_DIM],
    hi: [f64; MAX_DIM],
    h: f64,
    margin: f64,
    shape: [usize; MAX_DIM],
}

impl GridDomain {
    pub fn new(lo: &[f64], hi: &[f64], h: f64, margin: f64) -> Result<Self> {
        let n = lo.len();
        if n < 1 || n > MAX_DIM || hi.len() != n {
            return Err(CoreError::Config(format!(
                "dimension must be 1..={MAX_DIM}, got lo:{} hi:{}",
                lo.len(),
                hi.len()
            )));
        }
        if !(h > 0.0) || margin < 0.0 {
            return Err(CoreError::Config(format!("need h > 0 (got {h}) and margin ≥ 0 (got {margin})")));
        }
        let mut alo = [0.0; MAX_DIM];
        let mut ahi = [0.0; MAX_DIM];
        let mut shape = [1usize; MAX_DIM];
        for a in 0..n {
            let span = hi[a] - lo[a];
            if span <= 0.0 {
                return Err(CoreError::Config(format!("axis {a}: hi ≤ lo")));
            }
            let cells = span / h;
            let rounded = cells.round();
            if (cells - rounded).abs() > 1e-12 * cells.max(1.0) {
                return Err(CoreError::MisalignedLattice(format!(
                    "axis {a}: (hi-lo)/h = {cells} is not integral within 1e-12"
                )));
            }
            alo[a] = lo[a];
            ahi[a] = hi[a];
            shape[a] = rounded as usize + 1;
        }
        Ok(GridDomain { n, lo: alo, hi: ahi, h, margin, shape })
    }

    /// Unit-box helper used throughout the tests: `[0,1]^n` sampled with
    /// `pts` points per axis, optionally padded by `collar` extra cells on
    /// every side (which become the margin).
    pub fn unit_box(n: usize, pts: usize, collar: usize) -> Result<Self> {
        let h = 1.0 / (pts as f64 - 1.0);
        let pad = collar as f64 * h;
        let lo = vec![-pad; n];
        let hi = vec![1.0 + pad; n];
        GridDomain::new(&lo, &hi, h, pad)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn with_margin(&self, margin: f64) -> Self {
        let mut d = self.clone();
        d.margin = margin;
        d
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo[..self.n]
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi[..self.n]
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape[..self.n]
    }

    pub fn num_points(&self) -> usize {
        self.shape[..self.n].iter().product()
    }

    /// Row-major flat index of a lattice multi-index.
    #[inline]
    pub fn flat(&self, idx: &[usize]) -> usize {
        let mut f = 0;
        for a in 0..self.n {
            debug_assert!(idx[a] < self.shape[a]);
            f = f * self.shape[a] + idx[a];
        }
        f
    }

    /// Inverse of [`flat`](Self::flat).
    #[inline]
    pub fn unflat(&self, mut p: usize, idx: &mut [usize]) {
        for a in (0..self.n).rev() {
            idx[a] = p % self.shape[a];
            p /= self.shape[a];
        }
    }

    /// Physical coordinates of a flat point index.
    #[inline]
    pub fn coords_of(&self, p: usize, out: &mut [f64; MAX_DIM]) {
        let mut idx = [0usize; MAX_DIM];
        self.unflat(p, &mut idx);
        for a in 0..self.n {
            out[a] = self.lo[a] + idx[a] as f64 * self.h;
        }
    }

    /// Domain shrunk by `cells` lattice cells on both sides of `axis`.
    pub fn shrink_axis(&self, axis: usize, cells: usize, op: &'static str) -> Result<Self> {
        let mut d = self.clone();
        if self.shape[axis] <= 2 * cells + 1 {
            return Err(CoreError::DomainTooSmall {
                op,
                shape: self.shape().to_vec(),
                shrink: cells,
            });
        }
        d.lo[axis] += cells as f64 * self.h;
        d.hi[axis] -= cells as f64 * self.h;
        d.shape[axis] -= 2 * cells;
        d.margin = (d.margin - cells as f64 * self.h).max(0.0);
        Ok(d)
    }

    /// Domain shrunk by `cells` on both sides of every axis.
    pub fn shrink_all(&self, cells: usize, op: &'static str) -> Result<Self> {
        let mut d = self.clone();
        for a in 0..self.n {
            d = d.shrink_axis(a, cells, op)?;
        }
        Ok(d)
    }

    /// True if `other` is a sub-box of `self` (up to lattice tolerance).
    pub fn contains(&self, other: &GridDomain) -> bool {
        let tol = 1e-9 * self.h;
        (0..self.n).all(|a| other.lo[a] >= self.lo[a] - tol && other.hi[a] <= self.hi[a] + tol)
    }

    /// Lattice offset of `other.lo` relative to `self.lo`, if aligned.
    pub fn offset_of(&self, other: &GridDomain) -> Result<[usize; MAX_DIM]> {
        if other.n != self.n {
            return Err(CoreError::WrongDimension(format!(
                "restrict: n {} vs {}",
                other.n, self.n
            )));
        }
        if (self.h - other.h).abs() > 1e-12 * self.h {
            return Err(CoreError::MisalignedLattice(format!(
                "spacing mismatch: {} vs {}",
                self.h, other.h
            )));
        }
        if !self.contains(other) {
            return Err(CoreError::MisalignedLattice(
                "target box not contained in source".into(),
            ));
        }
        let mut off = [0usize; MAX_DIM];
        for a in 0..self.n {
            let cells = (other.lo[a] - self.lo[a]) / self.h;
            let rounded = cells.round();
            if (cells - rounded).abs() > 1e-9 {
                return Err(CoreError::MisalignedLattice(format!(
                    "axis {a}: offset {cells} cells is not integral"
                )));
            }
            off[a] = rounded as usize;
        }
        Ok(off)
    }

    /// Points per period of frequency ν along the worst-resolved direction.
    pub fn points_per_period(&self, nu: f64) -> f64 {
        2.0 * std::f64::consts::PI / (nu * self.h)
    }
}
