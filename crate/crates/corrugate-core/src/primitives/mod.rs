//! Fixed-dimension symmetric-matrix algebra: the primitive directions
//! η_ij, the subspaces 𝒱_i, the basic decomposition into primitive
//! metrics, the gradient-absorbing decomposition, and the algebraic
//! α/π_m/π_l splitting used by the integration-by-parts engine.

mod la;
mod symmat;
mod basis;
mod algebraic;
mod kallen;

pub use algebraic::{algebraic_decompose, AlgebraicSplit, AlgebraicSplitter};
pub use basis::{h0, PrimitiveBasis};
pub use kallen::{kallen_decompose, KallenOptions, KallenResult, GRAD_COEFF};
pub use la::sym_eig_range;
pub use symmat::{eta, eta_pairs, SymMat};

/// Zeroes all entries (k,l) with min(k,l) < i, projecting onto 𝒱_i
/// (1-based family index; i = n+1 yields the zero matrix).
pub fn project_vi(i: usize, m: &SymMat) -> SymMat {
    let n = m.n();
    assert!(i >= 1 && i <= n + 1, "family index {i} out of range");
    let mut out = SymMat::zero(n);
    for k in 0..n {
        for l in k..n {
            if k + 1 >= i && l + 1 >= i {
                out.set(k, l, m.get(k, l));
            }
        }
    }
    out
}

/// True iff `m` lies in 𝒱_i up to entrywise tolerance 1e−12.
pub fn in_vi(i: usize, m: &SymMat) -> bool {
    let n = m.n();
    for k in 0..n {
        for l in k..n {
            if (k + 1 < i || l + 1 < i) && m.get(k, l).abs() > 1e-12 {
                return false;
            }
        }
    }
    true
}
