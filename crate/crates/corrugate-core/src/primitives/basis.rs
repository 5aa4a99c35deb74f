use super::la::Lu;
use super::symmat::{eta, eta_pairs, SymMat};
use crate::error::Result;

/// The primitive-metric basis {η_ij ⊗ η_ij} of Sym_n, with the inverse
/// Gram data realizing the coordinate functionals L_ij and the certified
/// positivity radius r_D around H₀.
#[derive(Debug, Clone)]
pub struct PrimitiveBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
    outers: Vec<SymMat>,
    /// Frobenius representers of the L_ij: L_ij(M) = ⟨W_ij, M⟩_F.
    duals: Vec<SymMat>,
    r_d: f64,
}

impl PrimitiveBasis {
    pub fn new(n: usize) -> Result<Self> {
        let pairs = eta_pairs(n);
        let n_star = pairs.len();
        let outers: Vec<SymMat> = pairs
            .iter()
            .map(|&(i, j)| Ok(SymMat::outer(&eta(n, i, j)?)))
            .collect::<Result<_>>()?;
        // Gram matrix in the Frobenius inner product
        let mut gram = vec![0.0; n_star * n_star];
        for (r, a) in outers.iter().enumerate() {
            for (c, b) in outers.iter().enumerate() {
                gram[r * n_star + c] = a.dot(b);
            }
        }
        let lu = Lu::factor(&gram, n_star).expect("primitive Gram is invertible");
        // dual W_r = Σ_c (G⁻¹)_{rc} η_c⊗η_c, via G·w_r = e_r
        let mut duals = Vec::with_capacity(n_star);
        for r in 0..n_star {
            let mut rhs = vec![0.0; n_star];
            rhs[r] = 1.0;
            let mut x = vec![0.0; n_star];
            lu.solve(&rhs, &mut x);
            let mut w = SymMat::zero(n);
            for (c, o) in outers.iter().enumerate() {
                w = w.add(&o.scale(x[c]));
            }
            duals.push(w);
        }
        // sup over the Frobenius unit ball of a linear functional is the
        // Frobenius norm of its representer
        let max_op = duals.iter().map(|w| w.frobenius()).fold(0.0, f64::max);
        let r_d = 1.0 / (1.0 + max_op);
        Ok(PrimitiveBasis {
            n,
            pairs,
            outers,
            duals,
            r_d,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn outer(&self, k: usize) -> &SymMat {
        &self.outers[k]
    }

    /// Certified radius: L_ij(M) ≥ r_D whenever |M − H₀|_F < r_D.
    pub fn r_d(&self) -> f64 {
        self.r_d
    }

    /// Operator norm of the weakest coordinate functional.
    pub fn max_functional_norm(&self) -> f64 {
        self.duals.iter().map(|w| w.frobenius()).fold(0.0, f64::max)
    }

    /// Frobenius representer of L at basis slot `k`.
    pub fn dual(&self, k: usize) -> &SymMat {
        &self.duals[k]
    }

    /// Coordinates of `m` in the primitive basis, in [`eta_pairs`] order.
    pub fn decompose(&self, m: &SymMat) -> Vec<f64> {
        self.duals.iter().map(|w| w.dot(m)).collect()
    }

    /// Σ coeff_k · η_k ⊗ η_k.
    pub fn recompose(&self, coeffs: &[f64]) -> SymMat {
        let mut m = SymMat::zero(self.n);
        for (c, o) in coeffs.iter().zip(&self.outers) {
            m = m.add(&o.scale(*c));
        }
        m
    }

    /// H₀ = Σ η_ij ⊗ η_ij.
    pub fn h0(&self) -> SymMat {
        let mut m = SymMat::zero(self.n);
        for o in &self.outers {
            m = m.add(o);
        }
        m
    }
}

/// H₀ for dimension n without building a basis.
pub fn h0(n: usize) -> Result<SymMat> {
    Ok(PrimitiveBasis::new(n)?.h0())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn h0_n2_closed_form() {
        let h = h0(2).unwrap();
        assert!((h.get(0, 0) - 1.5).abs() < 1e-15);
        assert!((h.get(0, 1) - 0.5).abs() < 1e-15);
        assert!((h.get(1, 1) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn h0_is_positive_definite() {
        for n in 2..=4 {
            let (lo, _) = h0(n).unwrap().eig_range();
            assert!(lo > 0.0, "n={n}: min eigenvalue {lo}");
        }
    }

    #[test]
    fn h0_n3_diagonal_entries() {
        // e_i carries weight 1 from η_ii and 1/2 from each of two η_ij
        let h = h0(3).unwrap();
        for i in 0..3 {
            assert!((h.get(i, i) - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn coefficients_of_h0_are_one() {
        for n in 2..=4 {
            let basis = PrimitiveBasis::new(n).unwrap();
            for c in basis.decompose(&basis.h0()) {
                assert!((c - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn basis_element_has_unit_coefficient() {
        let basis = PrimitiveBasis::new(2).unwrap();
        let m = SymMat::outer(&eta(2, 1, 2).unwrap());
        let coeffs = basis.decompose(&m);
        for (k, &(i, j)) in basis.pairs().iter().enumerate() {
            let expect = if (i, j) == (1, 2) { 1.0 } else { 0.0 };
            assert!((coeffs[k] - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn random_reconstruction_to_1e12() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 2..=4 {
            let basis = PrimitiveBasis::new(n).unwrap();
            for _ in 0..50 {
                let m = SymMat::from_fn(n, |_, _| rng.gen_range(-3.0..3.0));
                let rec = basis.recompose(&basis.decompose(&m));
                assert!(rec.sub(&m).frobenius() <= 1e-12 * m.frobenius().max(1.0));
            }
        }
    }

    #[test]
    fn rd_certifies_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=3 {
            let basis = PrimitiveBasis::new(n).unwrap();
            let rd = basis.r_d();
            assert!(rd > 0.0);
            let h0 = basis.h0();
            for _ in 0..100 {
                // random perturbation inside the r_D ball
                let dir = SymMat::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
                let norm = dir.frobenius();
                let m = h0.add(&dir.scale(rng.gen_range(0.0..1.0) * rd / norm * 0.999));
                for c in basis.decompose(&m) {
                    assert!(c >= rd - 1e-12, "coefficient {c} below r_D = {rd}");
                }
            }
        }
    }

    #[test]
    fn worst_direction_still_certified() {
        // step 0.99·r_D against the weakest functional's representer
        let basis = PrimitiveBasis::new(3).unwrap();
        let rd = basis.r_d();
        let k_worst = (0..basis.pairs().len())
            .max_by(|a, b| {
                basis
                    .dual(*a)
                    .frobenius()
                    .partial_cmp(&basis.dual(*b).frobenius())
                    .unwrap()
            })
            .unwrap();
        let w = basis.dual(k_worst);
        let m = basis
            .h0()
            .add(&w.scale(-0.99 * rd / w.frobenius()));
        let coeffs = basis.decompose(&m);
        assert!(coeffs[k_worst] >= rd - 1e-12);
    }
}
