use super::domain::GridDomain;
use crate::error::{CoreError, Result};
use crate::MAX_DIM;

/// Rank tag of a grid field: what lives at each lattice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Scalar,
    /// Vector in R^m.
    Vector(usize),
    /// Symmetric n×n matrix, packed upper triangle (row-major, i ≤ j).
    SymMat,
    /// Map value in R^{n+1}.
    Map,
}

impl Rank {
    pub fn comps(&self, n: usize) -> usize {
        match self {
            Rank::Scalar => 1,
            Rank::Vector(m) => *m,
            Rank::SymMat => n * (n + 1) / 2,
            Rank::Map => n + 1,
        }
    }

    pub fn code(&self) -> u32 {
        match self {
            Rank::Scalar => 0,
            Rank::Vector(_) => 1,
            Rank::SymMat => 2,
            Rank::Map => 3,
        }
    }
}

/// Packed index of entry (i,j), 0-based, i ≤ j, of a symmetric n×n matrix.
#[inline]
pub(crate) fn sym_idx(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // offset of row i in the packed upper triangle
    i * n - i * (i + 1) / 2 + j
}

/// Dense function samples on a [`GridDomain`] with a [`Rank`] tag.
///
/// Values are stored point-major: `values[p * comps + c]`.
#[derive(Debug, Clone)]
pub struct GridField {
    pub domain: GridDomain,
    pub rank: Rank,
    values: Vec<f64>,
}

impl GridField {
    pub fn from_values(domain: GridDomain, rank: Rank, values: Vec<f64>) -> Result<Self> {
        let comps = rank.comps(domain.n());
        if values.len() != domain.num_points() * comps {
            return Err(CoreError::Config(format!(
                "value buffer length {} does not match {} points × {} comps",
                values.len(),
                domain.num_points(),
                comps
            )));
        }
        let f = GridField { domain, rank, values };
        f.check_finite("from_values")?;
        Ok(f)
    }

    pub fn zeros(domain: GridDomain, rank: Rank) -> Self {
        let comps = rank.comps(domain.n());
        let values = vec![0.0; domain.num_points() * comps];
        GridField { domain, rank, values }
    }

    /// Sample a function of the coordinates; `f(coords, out)` fills one point.
    pub fn sample<F>(domain: GridDomain, rank: Rank, f: F) -> Result<Self>
    where
        F: Fn(&[f64], &mut [f64]) + Sync,
    {
        let comps = rank.comps(domain.n());
        let values = super::par_map_points(&domain, comps, |_, x, out| f(x, out));
        GridField::from_values(domain, rank, values)
    }

    /// Scalar-field convenience sampler.
    pub fn sample_scalar<F>(domain: GridDomain, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        GridField::sample(domain, Rank::Scalar, |x, out| out[0] = f(x))
    }

    pub fn comps(&self) -> usize {
        self.rank.comps(self.domain.n())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn at(&self, p: usize) -> &[f64] {
        let c = self.comps();
        &self.values[p * c..(p + 1) * c]
    }

    #[inline]
    pub fn scalar_at(&self, p: usize) -> f64 {
        debug_assert_eq!(self.rank, Rank::Scalar);
        self.values[p]
    }

    /// Entry (i,j) of a symmetric-matrix field at point `p` (0-based).
    #[inline]
    pub fn sym_at(&self, p: usize, i: usize, j: usize) -> f64 {
        debug_assert_eq!(self.rank, Rank::SymMat);
        let n = self.domain.n();
        self.at(p)[sym_idx(n, i, j)]
    }

    pub fn sup_norm(&self) -> f64 {
        let c = self.comps();
        super::par_sup(self.domain.num_points(), |p| {
            self.values[p * c..(p + 1) * c]
                .iter()
                .fold(0.0_f64, |m, v| m.max(v.abs()))
        })
    }

    /// Pointwise sup of the Frobenius/Euclidean norm over components.
    pub fn sup_pointwise_norm(&self) -> f64 {
        let c = self.comps();
        let is_sym = self.rank == Rank::SymMat;
        let n = self.domain.n();
        super::par_sup(self.domain.num_points(), |p| {
            let v = &self.values[p * c..(p + 1) * c];
            if is_sym {
                // off-diagonal packed entries count twice in the Frobenius norm
                let mut s = 0.0;
                for i in 0..n {
                    for j in i..n {
                        let e = v[sym_idx(n, i, j)];
                        s += if i == j { e * e } else { 2.0 * e * e };
                    }
                }
                s.sqrt()
            } else {
                v.iter().map(|x| x * x).sum::<f64>().sqrt()
            }
        })
    }

    pub fn check_finite(&self, op: &'static str) -> Result<()> {
        let c = self.comps();
        if let Some(bad) = self.values.iter().position(|v| !v.is_finite()) {
            let p = bad / c;
            let mut idx = [0usize; MAX_DIM];
            self.domain.unflat(p, &mut idx);
            return Err(CoreError::NonFinite {
                op,
                index: idx[..self.domain.n()].to_vec(),
                comp: bad % c,
            });
        }
        Ok(())
    }

    /// Linear combination `self + s·g` (domains and ranks must match).
    pub fn axpy(&self, s: f64, g: &GridField) -> Result<GridField> {
        if self.domain != g.domain || self.rank != g.rank {
            return Err(CoreError::Config("axpy: domain or rank mismatch".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| a + s * b)
            .collect();
        GridField::from_values(self.domain.clone(), self.rank, values)
    }

    pub fn scale(&self, s: f64) -> GridField {
        let values = self.values.iter().map(|v| v * s).collect();
        GridField {
            domain: self.domain.clone(),
            rank: self.rank,
            values,
        }
    }

    /// Restrict `self` and `other` to their common (intersection) lattice.
    pub fn common_domain(&self, other: &GridField) -> Result<(GridField, GridField)> {
        let a = &self.domain;
        let b = &other.domain;
        let n = a.n();
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for ax in 0..n {
            lo[ax] = a.lo()[ax].max(b.lo()[ax]);
            hi[ax] = a.hi()[ax].min(b.hi()[ax]);
        }
        let target = GridDomain::new(&lo, &hi, a.h(), a.margin().min(b.margin()))?;
        Ok((restrict(self, &target)?, restrict(other, &target)?))
    }
}

pub(crate) fn restrict(f: &GridField, target: &GridDomain) -> Result<GridField> {
    let src = &f.domain;
    let off = src.offset_of(target)?;
    let comps = f.comps();
    let n = src.n();
    let values = super::par_map_points(target, comps, |p, _x, out| {
        let mut idx = [0usize; MAX_DIM];
        target.unflat(p, &mut idx);
        for a in 0..n {
            idx[a] += off[a];
        }
        let q = src.flat(&idx[..n]);
        out.copy_from_slice(f.at(q));
    });
    GridField::from_values(target.clone(), f.rank, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_packing_roundtrip() {
        let n = 3;
        let mut seen = vec![false; 6];
        for i in 0..n {
            for j in i..n {
                let k = sym_idx(n, i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(k, sym_idx(n, j, i));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn restrict_same_domain_is_identity() {
        let d = GridDomain::unit_box(2, 9, 0).unwrap();
        let f = GridField::sample_scalar(d.clone(), |x| x[0] + 2.0 * x[1]).unwrap();
        let g = restrict(&f, &d).unwrap();
        assert_eq!(f.values(), g.values());
    }

    #[test]
    fn restrict_composes() {
        let d0 = GridDomain::unit_box(2, 17, 0).unwrap();
        let f = GridField::sample_scalar(d0.clone(), |x| x[0] * x[1]).unwrap();
        let d1 = d0.shrink_all(2, "test").unwrap();
        let d2 = d1.shrink_all(2, "test").unwrap();
        let once = restrict(&f, &d2).unwrap();
        let twice = restrict(&restrict(&f, &d1).unwrap(), &d2).unwrap();
        assert_eq!(once.values(), twice.values());
    }

    #[test]
    fn misaligned_restrict_rejected() {
        let d = GridDomain::unit_box(2, 9, 0).unwrap();
        let f = GridField::sample_scalar(d.clone(), |x| x[0]).unwrap();
        let bad = GridDomain::new(&[0.03, 0.0], &[0.53, 0.5], d.h(), 0.0).unwrap();
        assert!(matches!(
            restrict(&f, &bad),
            Err(CoreError::MisalignedLattice(_))
        ));
    }
}
