//! Small dense linear algebra: LU factorization with partial pivoting for
//! the fixed-size solves (k ≤ 10) and symmetric eigenvalue ranges.

/// LU factorization with partial pivoting of a k×k matrix, row-major.
#[derive(Debug, Clone)]
pub struct Lu {
    k: usize,
    lu: Vec<f64>,
    piv: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &[f64], k: usize) -> Option<Lu> {
        assert_eq!(a.len(), k * k);
        let mut lu = a.to_vec();
        let mut piv: Vec<usize> = (0..k).collect();
        for col in 0..k {
            let mut p = col;
            let mut best = lu[col * k + col].abs();
            for r in (col + 1)..k {
                let v = lu[r * k + col].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best < 1e-14 {
                return None;
            }
            if p != col {
                for c in 0..k {
                    lu.swap(col * k + c, p * k + c);
                }
                piv.swap(col, p);
            }
            let d = lu[col * k + col];
            for r in (col + 1)..k {
                let m = lu[r * k + col] / d;
                lu[r * k + col] = m;
                for c in (col + 1)..k {
                    lu[r * k + c] -= m * lu[col * k + c];
                }
            }
        }
        Some(Lu { k, lu, piv })
    }

    pub fn solve(&self, b: &[f64], out: &mut [f64]) {
        let k = self.k;
        for i in 0..k {
            out[i] = b[self.piv[i]];
        }
        for i in 0..k {
            for j in 0..i {
                out[i] = out[i] - self.lu[i * k + j] * out[j];
            }
        }
        for i in (0..k).rev() {
            for j in (i + 1)..k {
                out[i] = out[i] - self.lu[i * k + j] * out[j];
            }
            out[i] /= self.lu[i * k + i];
        }
    }
}

/// Eigenvalue range (min, max) of a symmetric matrix given densely,
/// row-major, n ≤ 4. Closed forms for n = 1,2,3; Jacobi iteration for n = 4.
pub fn sym_eig_range(m: &[f64], n: usize) -> (f64, f64) {
    match n {
        1 => (m[0], m[0]),
        2 => {
            let (a, b, c) = (m[0], m[1], m[3]);
            let tr = a + c;
            let disc = ((a - c) * (a - c) + 4.0 * b * b).sqrt();
            ((tr - disc) / 2.0, (tr + disc) / 2.0)
        }
        3 => sym_eig_3(m),
        _ => jacobi_range(m, n),
    }
}

/// Trigonometric closed form for the symmetric 3×3 spectrum.
fn sym_eig_3(m: &[f64]) -> (f64, f64) {
    let (a11, a12, a13) = (m[0], m[1], m[2]);
    let (a22, a23, a33) = (m[4], m[5], m[8]);
    let q = (a11 + a22 + a33) / 3.0;
    let p1 = a12 * a12 + a13 * a13 + a23 * a23;
    let p2 = (a11 - q).powi(2) + (a22 - q).powi(2) + (a33 - q).powi(2) + 2.0 * p1;
    if p2 < 1e-30 {
        return (q, q);
    }
    let p = (p2 / 6.0).sqrt();
    let b = |i: usize, j: usize| (m[i * 3 + j] - if i == j { q } else { 0.0 }) / p;
    let detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (detb / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let eig_max = q + 2.0 * p * phi.cos();
    let eig_min = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    (eig_min, eig_max)
}

/// Cyclic Jacobi sweeps; tolerance 1e-12 on off-diagonal mass.
fn jacobi_range(m: &[f64], n: usize) -> (f64, f64) {
    let mut a = m.to_vec();
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        lo = lo.min(a[i * n + i]);
        hi = hi.max(a[i * n + i]);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_small_system() {
        let a = [4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let lu = Lu::factor(&a, 3).unwrap();
        let b = [1.0, 2.0, 3.0];
        let mut x = [0.0; 3];
        lu.solve(&b, &mut x);
        for i in 0..3 {
            let r: f64 = (0..3).map(|j| a[i * 3 + j] * x[j]).sum();
            assert!((r - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_ranges_match_known_spectra() {
        let (lo, hi) = sym_eig_range(&[1.5, 0.5, 0.5, 1.5], 2);
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);

        // diag(1,2,3) with a rotation-free check
        let (lo, hi) = sym_eig_range(&[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0], 3);
        assert!((lo - 1.0).abs() < 1e-10 && (hi - 3.0).abs() < 1e-10);

        let m4 = [
            2.0, 0.3, 0.0, 0.1, 0.3, 1.0, 0.2, 0.0, 0.0, 0.2, 3.0, 0.4, 0.1, 0.0, 0.4, 2.5,
        ];
        let (lo, hi) = jacobi_range(&m4, 4);
        // eigenvalues bracket the Gershgorin union
        assert!(lo > 0.5 && hi < 3.6 && lo < hi);
    }
}
