use crate::error::{CoreError, Result};
use crate::MAX_DIM;

const MAX_SYM: usize = MAX_DIM * (MAX_DIM + 1) / 2;

/// Dense symmetric n×n matrix, packed upper triangle; the universal
/// carrier for metrics, defects and remainders at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat {
    n: usize,
    e: [f64; MAX_SYM],
}

impl SymMat {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_DIM);
        SymMat { n, e: [0.0; MAX_SYM] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SymMat::zero(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMat::zero(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rank-one matrix `v ⊗ v`.
    pub fn outer(v: &[f64]) -> Self {
        SymMat::from_fn(v.len(), |i, j| v[i] * v[j])
    }

    /// Symmetrized product `a ⊙ b = a⊗b + b⊗a`.
    pub fn odot(a: &[f64], b: &[f64]) -> Self {
        assert_eq!(a.len(), b.len());
        SymMat::from_fn(a.len(), |i, j| a[i] * b[j] + a[j] * b[i])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_star(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.e[crate::fields::sym_index(self.n, i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.e[crate::fields::sym_index(self.n, i, j)] = v;
    }

    pub fn packed(&self) -> &[f64] {
        &self.e[..self.n_star()]
    }

    pub fn from_packed(n: usize, packed: &[f64]) -> Self {
        let mut m = SymMat::zero(n);
        m.e[..packed.len()].copy_from_slice(packed);
        m
    }

    pub fn add(&self, other: &SymMat) -> SymMat {
        debug_assert_eq!(self.n, other.n);
        let mut m = *self;
        for k in 0..self.n_star() {
            m.e[k] += other.e[k];
        }
        m
    }

    pub fn sub(&self, other: &SymMat) -> SymMat {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> SymMat {
        let mut m = *self;
        for k in 0..self.n_star() {
            m.e[k] *= s;
        }
        m
    }

    /// Frobenius norm (off-diagonal entries counted twice).
    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    /// Frobenius inner product.
    pub fn dot(&self, other: &SymMat) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let w = if i == j { 1.0 } else { 2.0 };
                s += w * self.get(i, j) * other.get(i, j);
            }
        }
        s
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                d[i * n + j] = self.get(i, j);
            }
        }
        d
    }

    pub fn eig_range(&self) -> (f64, f64) {
        super::la::sym_eig_range(&self.to_dense(), self.n)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            out[i] = (0..self.n).map(|j| self.get(i, j) * v[j]).sum();
        }
    }
}

/// The primitive direction `η_ij = (e_i + e_j)/|e_i + e_j|`, 1-based,
/// 1 ≤ i ≤ j ≤ n; `η_ii = e_i` exactly.
pub fn eta(n: usize, i: usize, j: usize) -> Result<Vec<f64>> {
    if !(1 <= i && i <= j && j <= n && n <= MAX_DIM) {
        return Err(CoreError::IndexOutOfRange(format!(
            "eta({n}, {i}, {j}): need 1 ≤ i ≤ j ≤ n ≤ {MAX_DIM}"
        )));
    }
    let mut v = vec![0.0; n];
    if i == j {
        v[i - 1] = 1.0;
    } else {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        v[i - 1] = s;
        v[j - 1] = s;
    }
    Ok(v)
}

/// Pairs (i,j), 1-based, in the fixed basis order: (1,1), (1,2), …, (1,n),
/// (2,2), …, (n,n).
pub fn eta_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut p = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in i..=n {
            p.push((i, j));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_values_match_closed_forms() {
        assert_eq!(eta(2, 1, 1).unwrap(), vec![1.0, 0.0]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(eta(2, 1, 2).unwrap(), vec![s, s]);
        assert_eq!(eta(3, 2, 3).unwrap(), vec![0.0, s, s]);
        assert!(eta(2, 2, 1).is_err());
    }

    #[test]
    fn etas_are_unit() {
        for n in 2..=4 {
            for (i, j) in eta_pairs(n) {
                let v = eta(n, i, j).unwrap();
                let norm: f64 = v.iter().map(|x| x * x).sum::<f64>();
                assert!((norm - 1.0).abs() < 1e-14);
            }
        }
    }
}
