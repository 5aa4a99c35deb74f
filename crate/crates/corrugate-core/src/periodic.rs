//! Exact arithmetic for smooth periodic profiles on S¹.
//!
//! A [`TrigPoly`] is a finite Fourier series stored in real cos/sin form,
//! so real-valuedness holds by construction and derivatives and zero-mean
//! primitives are coefficient-exact. The iterated integration-by-parts
//! recursion needs exact primitives; spectral coefficients give them with
//! zero quadrature error.

use crate::error::{CoreError, Result};

/// Hard cap on the frequency support. The construction only ever uses
/// frequencies ±1, ±2 and their images under products, primitives and
/// derivatives, which stay far below this.
pub const K_MAX: usize = 64;

/// Finite Fourier series `a₀ + Σ_{k≥1} a_k cos(kt) + b_k sin(kt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    /// cos coefficients, index k = 0..
    a: Vec<f64>,
    /// sin coefficients, index k = 1.. (stored from k = 1 at position 0).
    b: Vec<f64>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        TrigPoly { a: vec![0.0], b: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        TrigPoly { a: vec![c], b: vec![] }
    }

    /// `amp·sin(k t)`
    pub fn sin(k: usize, amp: f64) -> Self {
        assert!(k >= 1 && k <= K_MAX);
        let mut b = vec![0.0; k];
        b[k - 1] = amp;
        TrigPoly { a: vec![0.0], b }
    }

    /// `amp·cos(k t)`
    pub fn cos(k: usize, amp: f64) -> Self {
        assert!(k >= 1 && k <= K_MAX);
        let mut a = vec![0.0; k + 1];
        a[k] = amp;
        TrigPoly { a, b: vec![] }
    }

    pub fn degree(&self) -> usize {
        let da = self.a.iter().rposition(|v| *v != 0.0).unwrap_or(0);
        let db = self.b.iter().rposition(|v| *v != 0.0).map_or(0, |p| p + 1);
        da.max(db)
    }

    pub fn mean(&self) -> f64 {
        self.a[0]
    }

    /// Exact term-wise derivative.
    pub fn derivative(&self) -> TrigPoly {
        let deg = self.degree();
        let mut a = vec![0.0; deg + 1];
        let mut b = vec![0.0; deg];
        for k in 1..=deg {
            let ak = self.a.get(k).copied().unwrap_or(0.0);
            let bk = self.b.get(k - 1).copied().unwrap_or(0.0);
            // (a cos + b sin)' = -k a sin + k b cos
            a[k] = k as f64 * bk;
            b[k - 1] = -(k as f64) * ak;
        }
        TrigPoly { a, b }.trimmed()
    }

    /// Exact zero-mean primitive; the input must itself have mean zero.
    pub fn zero_mean_primitive(&self) -> Result<TrigPoly> {
        if self.a[0].abs() > 1e-15 {
            return Err(CoreError::NonzeroMean(self.a[0]));
        }
        let deg = self.degree();
        let mut a = vec![0.0; deg + 1];
        let mut b = vec![0.0; deg];
        for k in 1..=deg {
            let ak = self.a.get(k).copied().unwrap_or(0.0);
            let bk = self.b.get(k - 1).copied().unwrap_or(0.0);
            // ∫ a cos = (a/k) sin ; ∫ b sin = -(b/k) cos
            a[k] = -bk / k as f64;
            b[k - 1] = ak / k as f64;
        }
        Ok(TrigPoly { a, b }.trimmed())
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        let deg = self.degree().max(other.degree());
        let mut a = vec![0.0; deg + 1];
        let mut b = vec![0.0; deg];
        for k in 0..=deg {
            a[k] = self.a.get(k).copied().unwrap_or(0.0) + other.a.get(k).copied().unwrap_or(0.0);
        }
        for k in 1..=deg {
            b[k - 1] =
                self.b.get(k - 1).copied().unwrap_or(0.0) + other.b.get(k - 1).copied().unwrap_or(0.0);
        }
        TrigPoly { a, b }.trimmed()
    }

    pub fn scale(&self, s: f64) -> TrigPoly {
        TrigPoly {
            a: self.a.iter().map(|v| v * s).collect(),
            b: self.b.iter().map(|v| v * s).collect(),
        }
    }

    /// Exact product via complex-coefficient convolution.
    pub fn mul(&self, other: &TrigPoly) -> Result<TrigPoly> {
        let (da, db) = (self.degree(), other.degree());
        let deg = da + db;
        if deg > K_MAX {
            return Err(CoreError::DegreeOverflow(deg, K_MAX));
        }
        // c_k = (a_k - i b_k)/2 for k ≥ 1, c_0 = a_0, c_{-k} = conj(c_k)
        let coeff = |p: &TrigPoly, k: isize| -> (f64, f64) {
            let ku = k.unsigned_abs();
            if ku == 0 {
                return (p.a[0], 0.0);
            }
            let ak = p.a.get(ku).copied().unwrap_or(0.0);
            let bk = p.b.get(ku - 1).copied().unwrap_or(0.0);
            if k > 0 {
                (ak / 2.0, -bk / 2.0)
            } else {
                (ak / 2.0, bk / 2.0)
            }
        };
        let mut a = vec![0.0; deg + 1];
        let mut b = vec![0.0; deg.max(1)];
        for k in 0..=(deg as isize) {
            let (mut re, mut im) = (0.0, 0.0);
            for j in -(da as isize)..=(da as isize) {
                let l = k - j;
                if l.unsigned_abs() > db {
                    continue;
                }
                let (r1, i1) = coeff(self, j);
                let (r2, i2) = coeff(other, l);
                re += r1 * r2 - i1 * i2;
                im += r1 * i2 + i1 * r2;
            }
            if k == 0 {
                a[0] = re;
            } else {
                a[k as usize] = 2.0 * re;
                b[k as usize - 1] = -2.0 * im;
            }
        }
        Ok(TrigPoly { a, b }.trimmed())
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = self.a[0];
        let (s1, c1) = t.sin_cos();
        // recurrence for sin(kt), cos(kt)
        let (mut sk, mut ck) = (s1, c1);
        for k in 1..=self.degree() {
            v += self.a.get(k).copied().unwrap_or(0.0) * ck
                + self.b.get(k - 1).copied().unwrap_or(0.0) * sk;
            let s_next = sk * c1 + ck * s1;
            let c_next = ck * c1 - sk * s1;
            sk = s_next;
            ck = c_next;
        }
        v
    }

    /// Sup-norm upper bound `Σ |coeff|` (tight enough for bookkeeping).
    pub fn coeff_l1(&self) -> f64 {
        self.a.iter().map(|v| v.abs()).sum::<f64>() + self.b.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// Grid sup over `samples` points (used by diagnostics).
    pub fn sampled_sup(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|i| {
                self.eval(2.0 * std::f64::consts::PI * i as f64 / samples as f64)
                    .abs()
            })
            .fold(0.0, f64::max)
    }

    fn trimmed(mut self) -> Self {
        let deg = self.degree();
        self.a.truncate(deg + 1);
        self.b.truncate(deg);
        if self.a.is_empty() {
            self.a.push(0.0);
        }
        self
    }
}

/// The corrugation pair `γ₁(t) = −sin(2t)/4`, `γ₂(t) = √2 sin t`, both
/// zero-mean, satisfying the inclusion identity `2γ₁' + (γ₂')² = 1`.
pub fn gammas() -> (TrigPoly, TrigPoly) {
    (TrigPoly::sin(2, -0.25), TrigPoly::sin(1, std::f64::consts::SQRT_2))
}

/// Exact mean of `γ₂²`, the constant split off the oscillatory square in
/// the induced-metric bookkeeping (equals 1 for the pair above).
pub fn gamma2_sq_mean() -> f64 {
    let (_, g2) = gammas();
    g2.mul(&g2).expect("within cap").mean()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn derivative_of_sin_is_cos() {
        let p = TrigPoly::sin(1, 1.0);
        assert_eq!(p.derivative(), TrigPoly::cos(1, 1.0));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert_eq!(TrigPoly::constant(2.5).derivative(), TrigPoly::zero());
    }

    #[test]
    fn gamma1_derivative_closed_form() {
        // γ₁' = −cos(2t)/2
        let (g1, _) = gammas();
        assert_eq!(g1.derivative(), TrigPoly::cos(2, -0.5));
    }

    #[test]
    fn primitive_of_cos_is_sin() {
        let p = TrigPoly::cos(1, 1.0);
        assert_eq!(p.zero_mean_primitive().unwrap(), TrigPoly::sin(1, 1.0));
    }

    #[test]
    fn primitive_of_sin_is_minus_cos() {
        let p = TrigPoly::sin(1, 1.0);
        assert_eq!(p.zero_mean_primitive().unwrap(), TrigPoly::cos(1, -1.0));
    }

    #[test]
    fn nonzero_mean_input_rejected() {
        let p = TrigPoly::constant(0.1);
        assert!(matches!(
            p.zero_mean_primitive(),
            Err(CoreError::NonzeroMean(_))
        ));
    }

    #[test]
    fn inclusion_identity_pointwise() {
        let (g1, g2) = gammas();
        let lhs = g1.derivative().scale(2.0).add(&{
            let d2 = g2.derivative();
            d2.mul(&d2).unwrap()
        });
        for i in 0..1024 {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 1024.0;
            assert!((lhs.eval(t) - 1.0).abs() <= 1e-13);
        }
    }

    #[test]
    fn gammas_have_zero_mean() {
        let (g1, g2) = gammas();
        assert_eq!(g1.mean(), 0.0);
        assert_eq!(g2.mean(), 0.0);
    }

    #[test]
    fn gamma2_square_mean_is_one() {
        assert!((gamma2_sq_mean() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn iterated_primitives_stay_bounded() {
        // frequencies ≥ 1, so |k|-division never amplifies
        let (_, g2) = gammas();
        let bound = g2.coeff_l1();
        let mut p = g2;
        for _ in 0..8 {
            p = p.zero_mean_primitive().unwrap();
            assert!(p.coeff_l1() <= bound + 1e-15);
        }
    }

    proptest! {
        #[test]
        fn primitive_inverts_derivative(coeffs in proptest::collection::vec(-2.0f64..2.0, 6)) {
            // random zero-mean poly: derivative(zero_mean_primitive(p)) = p
            let mut p = TrigPoly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                let tp = if k % 2 == 0 {
                    TrigPoly::sin(k / 2 + 1, *c)
                } else {
                    TrigPoly::cos(k / 2 + 1, *c)
                };
                p = p.add(&tp);
            }
            let q = p.zero_mean_primitive().unwrap().derivative();
            let diff = p.add(&q.scale(-1.0));
            prop_assert!(diff.coeff_l1() < 1e-12);
        }

        #[test]
        fn product_matches_pointwise(a in -2.0f64..2.0, b in -2.0f64..2.0, t in 0.0f64..6.28) {
            let p = TrigPoly::sin(1, a).add(&TrigPoly::cos(2, 0.5));
            let q = TrigPoly::cos(1, b).add(&TrigPoly::constant(0.3));
            let prod = p.mul(&q).unwrap();
            prop_assert!((prod.eval(t) - p.eval(t) * q.eval(t)).abs() < 1e-12);
        }
    }
}
