//! The algebraic splitting `M = α(M)⊙ξ + π_m(M) + π_l(M)` for a family
//! index i and direction ξ with ξ_k = 0 (k < i), ξ_i ≠ 0: α(M) has its
//! first i−1 components zero, π_m(M) vanishes on the bottom-right block
//! (entries with both k,l ≥ i), and π_l(M) lies in 𝒱_{i+1}. The split is
//! realized by one cached n_*×n_* solve per (i, ξ).

use super::la::Lu;
use super::symmat::{eta, SymMat};
use crate::error::{CoreError, Result};

/// The three components of one split.
#[derive(Debug, Clone)]
pub struct AlgebraicSplit {
    pub i: usize,
    pub alpha: Vec<f64>,
    pub pi_m: SymMat,
    pub pi_l: SymMat,
}

impl AlgebraicSplit {
    /// α⊙ξ + π_m + π_l.
    pub fn recompose(&self, xi: &[f64]) -> SymMat {
        SymMat::odot(&self.alpha, xi).add(&self.pi_m).add(&self.pi_l)
    }
}

/// Precomputed factorization of the split map Φ for one (i, ξ).
///
/// Basis columns, in order: the n−i+1 free components of α; the mixed
/// entries e_k⊙e_l (k < i ≤ some l ≥ k, i.e. all (k,l) with k < i, l ≥ k);
/// the lower-block basis η_kl⊗η_kl, i+1 ≤ k ≤ l ≤ n.
#[derive(Debug, Clone)]
pub struct AlgebraicSplitter {
    n: usize,
    i: usize,
    xi: Vec<f64>,
    lu: Lu,
    n_alpha: usize,
    mixed_pairs: Vec<(usize, usize)>,
    lower_pairs: Vec<(usize, usize)>,
    lower_outers: Vec<SymMat>,
}

impl AlgebraicSplitter {
    /// `i` is 1-based. Rejects |ξ_i| < 1e−10 and nonzero leading ξ.
    pub fn new(i: usize, xi: &[f64]) -> Result<Self> {
        let n = xi.len();
        if i < 1 || i > n {
            return Err(CoreError::IndexOutOfRange(format!("family index {i} for n={n}")));
        }
        let xii = xi[i - 1];
        if xii.abs() < 1e-10 {
            return Err(CoreError::IllPosedDirection { i, abs: xii.abs() });
        }
        for k in 0..i - 1 {
            if xi[k].abs() > 1e-14 {
                return Err(CoreError::PreconditionViolated(format!(
                    "ξ_{} = {} must vanish for family {i}",
                    k + 1,
                    xi[k]
                )));
            }
        }
        let n_alpha = n - i + 1;
        // mixed entries: all (k,l), 0-based, with k < i-1, l ≥ k
        let mut mixed_pairs = Vec::new();
        for k in 0..(i - 1) {
            for l in k..n {
                mixed_pairs.push((k, l));
            }
        }
        // lower block: η_kl⊗η_kl with i+1 ≤ k ≤ l ≤ n (1-based)
        let mut lower_pairs = Vec::new();
        let mut lower_outers = Vec::new();
        for k in (i + 1)..=n {
            for l in k..=n {
                lower_pairs.push((k, l));
                lower_outers.push(SymMat::outer(&eta(n, k, l)?));
            }
        }
        let n_star = n * (n + 1) / 2;
        let dim = n_alpha + mixed_pairs.len() + lower_pairs.len();
        debug_assert_eq!(dim, n_star, "Φ must map between equal dimensions");

        // assemble Φ column by column in packed coordinates
        let mut cols: Vec<SymMat> = Vec::with_capacity(dim);
        for c in 0..n_alpha {
            let mut alpha = vec![0.0; n];
            alpha[i - 1 + c] = 1.0;
            cols.push(SymMat::odot(&alpha, xi));
        }
        for &(k, l) in &mixed_pairs {
            let mut ek = vec![0.0; n];
            let mut el = vec![0.0; n];
            ek[k] = 1.0;
            el[l] = 1.0;
            cols.push(SymMat::odot(&ek, &el));
        }
        for o in &lower_outers {
            cols.push(*o);
        }
        let mut phi = vec![0.0; n_star * n_star];
        for (c, m) in cols.iter().enumerate() {
            for (r, v) in m.packed().iter().enumerate() {
                phi[r * n_star + c] = *v;
            }
        }
        let lu = Lu::factor(&phi, n_star).ok_or_else(|| {
            CoreError::PreconditionViolated("algebraic split map is singular".into())
        })?;
        Ok(AlgebraicSplitter {
            n,
            i,
            xi: xi.to_vec(),
            lu,
            n_alpha,
            mixed_pairs,
            lower_pairs,
            lower_outers,
        })
    }

    pub fn split(&self, m: &SymMat) -> AlgebraicSplit {
        let n = self.n;
        let n_star = m.n_star();
        let mut x = vec![0.0; n_star];
        self.lu.solve(m.packed(), &mut x);
        let mut alpha = vec![0.0; n];
        alpha[(self.i - 1)..].copy_from_slice(&x[..self.n_alpha]);
        let mut pi_m = SymMat::zero(n);
        for (idx, &(k, l)) in self.mixed_pairs.iter().enumerate() {
            let b = x[self.n_alpha + idx];
            // e_k ⊙ e_l has entry 2 on the diagonal (k = l), 1 otherwise
            pi_m.set(k, l, pi_m.get(k, l) + if k == l { 2.0 * b } else { b });
        }
        let mut pi_l = SymMat::zero(n);
        for (idx, o) in self.lower_outers.iter().enumerate() {
            pi_l = pi_l.add(&o.scale(x[self.n_alpha + self.mixed_pairs.len() + idx]));
        }
        AlgebraicSplit {
            i: self.i,
            alpha,
            pi_m,
            pi_l,
        }
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn family(&self) -> usize {
        self.i
    }

    pub fn lower_pairs(&self) -> &[(usize, usize)] {
        &self.lower_pairs
    }
}

/// One-shot split, building (and discarding) the factorization.
pub fn algebraic_decompose(i: usize, xi: &[f64], m: &SymMat) -> Result<AlgebraicSplit> {
    Ok(AlgebraicSplitter::new(i, xi)?.split(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::in_vi;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dimension_count_matches() {
        // (n−i+1) + [n_* − (n−i+1)_*] + (n−i)_* = n_*
        for n in 2..=4usize {
            for i in 1..=n {
                let s = |m: usize| m * (m + 1) / 2;
                let lhs = (n - i + 1) + (s(n) - s(n - i + 1)) + s(n - i);
                assert_eq!(lhs, s(n));
            }
        }
    }

    #[test]
    fn e1_outer_along_e1() {
        // i=1, ξ=e₁, M=e₁⊗e₁ → α = e₁/2, π_m = π_l = 0
        let xi = [1.0, 0.0];
        let m = SymMat::outer(&[1.0, 0.0]);
        let s = algebraic_decompose(1, &xi, &m).unwrap();
        assert!((s.alpha[0] - 0.5).abs() < 1e-13);
        assert!(s.alpha[1].abs() < 1e-13);
        assert!(s.pi_m.frobenius() < 1e-13);
        assert!(s.pi_l.frobenius() < 1e-13);
    }

    #[test]
    fn mixed_block_takes_e1_outer_for_family_2() {
        // i=2, n=2, ξ=e₂, M=e₁⊗e₁ → α=0, π_m=e₁⊗e₁, π_l=0 (𝒱₃ = {0})
        let xi = [0.0, 1.0];
        let m = SymMat::outer(&[1.0, 0.0]);
        let s = algebraic_decompose(2, &xi, &m).unwrap();
        assert!(s.alpha.iter().all(|a| a.abs() < 1e-13));
        assert!(s.pi_m.sub(&m).frobenius() < 1e-13);
        assert!(s.pi_l.frobenius() < 1e-13);
    }

    #[test]
    fn recomposition_and_block_supports() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=4usize {
            for i in 1..=n {
                // a generic admissible direction for family i
                let mut xi = vec![0.0; n];
                for k in (i - 1)..n {
                    xi[k] = rng.gen_range(-1.0..1.0);
                }
                xi[i - 1] += 1.5;
                let norm: f64 = xi.iter().map(|v| v * v).sum::<f64>();
                let norm = norm.sqrt();
                xi.iter_mut().for_each(|v| *v /= norm);

                let splitter = AlgebraicSplitter::new(i, &xi).unwrap();
                for _ in 0..20 {
                    let m = SymMat::from_fn(n, |_, _| rng.gen_range(-2.0..2.0));
                    let s = splitter.split(&m);
                    assert!(s.recompose(&xi).sub(&m).frobenius() <= 1e-12 * m.frobenius().max(1.0));
                    // π_m vanishes on the bottom-right block, exactly
                    for k in (i - 1)..n {
                        for l in k..n {
                            assert_eq!(s.pi_m.get(k, l), 0.0);
                        }
                    }
                    assert!(in_vi(i + 1, &s.pi_l));
                    for k in 0..(i - 1) {
                        assert_eq!(s.alpha[k], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn split_uniqueness_on_structured_input() {
        // feed α⊙ξ + p_m + p_l with known parts; recover them to 1e−10
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 3;
        for i in 1..=n {
            let mut xi = vec![0.0; n];
            xi[i - 1] = 0.8;
            for k in i..n {
                xi[k] = rng.gen_range(-0.5..0.5);
            }
            let mut alpha = vec![0.0; n];
            for k in (i - 1)..n {
                alpha[k] = rng.gen_range(-1.0..1.0);
            }
            let mut pm = SymMat::zero(n);
            for k in 0..(i - 1) {
                for l in k..n {
                    pm.set(k, l, rng.gen_range(-1.0..1.0));
                }
            }
            // p_l built from the η basis of 𝒱_{i+1}
            let mut pl = SymMat::zero(n);
            for k in (i + 1)..=n {
                for l in k..=n {
                    let o = SymMat::outer(&eta(n, k, l).unwrap());
                    pl = pl.add(&o.scale(rng.gen_range(-1.0..1.0)));
                }
            }
            let m = SymMat::odot(&alpha, &xi).add(&pm).add(&pl);
            let s = algebraic_decompose(i, &xi, &m).unwrap();
            for k in 0..n {
                assert!((s.alpha[k] - alpha[k]).abs() < 1e-10);
            }
            assert!(s.pi_m.sub(&pm).frobenius() < 1e-10);
            assert!(s.pi_l.sub(&pl).frobenius() < 1e-10);
        }
    }

    #[test]
    fn near_zero_direction_rejected() {
        let xi = [1e-12, 1.0];
        assert!(matches!(
            AlgebraicSplitter::new(1, &xi),
            Err(CoreError::IllPosedDirection { .. })
        ));
    }
}
