//! Order-2 central finite differences with collar consumption.


use super::field::GridField;
use crate::error::{CoreError, Result};
use crate::MAX_DIM;

/// Central-difference approximation of `D^σ f`, second-order accurate.
///
/// Compact stencils are used per axis (orders 1..=4), so the output domain
/// shrinks by `ceil(σ_a/2)` cells on each side of every differentiated axis.
pub fn fd_derivative(f: &GridField, sigma: &[usize]) -> Result<GridField> {
    let n = f.domain.n();
    if sigma.len() != n {
        return Err(CoreError::Config(format!(
            "multi-index length {} ≠ dimension {n}",
            sigma.len()
        )));
    }
    let total: usize = sigma.iter().sum();
    if total > 4 {
        return Err(CoreError::Config(format!("|σ| = {total} exceeds 4")));
    }
    let mut out = f.clone();
    for axis in 0..n {
        if sigma[axis] > 0 {
            out = axis_derivative(&out, axis, sigma[axis])?;
        }
    }
    out.check_finite("fd_derivative")?;
    Ok(out)
}

/// One-axis central stencil of the given order.
fn axis_derivative(f: &GridField, axis: usize, order: usize) -> Result<GridField> {
    let h = f.domain.h();
    // (offsets, weights, shrink): standard second-order central stencils
    let (offsets, weights, shrink): (&[isize], Vec<f64>, usize) = match order {
        1 => (&[-1, 1], vec![-0.5 / h, 0.5 / h], 1),
        2 => (&[-1, 0, 1], vec![1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h)], 1),
        3 => {
            let h3 = h * h * h;
            (
                &[-2, -1, 1, 2],
                vec![-0.5 / h3, 1.0 / h3, -1.0 / h3, 0.5 / h3],
                2,
            )
        }
        4 => {
            let h4 = h * h * h * h;
            (
                &[-2, -1, 0, 1, 2],
                vec![1.0 / h4, -4.0 / h4, 6.0 / h4, -4.0 / h4, 1.0 / h4],
                2,
            )
        }
        _ => {
            return Err(CoreError::Config(format!(
                "axis derivative order {order} unsupported"
            )))
        }
    };
    apply_stencil(f, axis, offsets, &weights, shrink)
}

pub(crate) fn apply_stencil(
    f: &GridField,
    axis: usize,
    offsets: &[isize],
    weights: &[f64],
    shrink: usize,
) -> Result<GridField> {
    let out_domain = f.domain.shrink_axis(axis, shrink, "fd_derivative")?;
    let off0 = f.domain.offset_of(&out_domain)?;
    let comps = f.comps();
    let n = f.domain.n();
    let values = super::par_map_points(&out_domain, comps, |p, _x, out| {
        let mut idx = [0usize; MAX_DIM];
        out_domain.unflat(p, &mut idx);
        for a in 0..n {
            idx[a] += off0[a];
        }
        out.fill(0.0);
        let mut src_idx = idx;
        for (o, w) in offsets.iter().zip(weights) {
            src_idx[axis] = (idx[axis] as isize + o) as usize;
            let q = f.domain.flat(&src_idx[..n]);
            for (c, v) in out.iter_mut().enumerate() {
                *v += w * f.at(q)[c];
            }
        }
    });
    GridField::from_values(out_domain, f.rank, values)
}

/// Gradient of a scalar field as a vector field on the common shrunk domain.
pub fn gradient(f: &GridField) -> Result<GridField> {
    let n = f.domain.n();
    let mut parts = Vec::with_capacity(n);
    for a in 0..n {
        let mut sigma = vec![0usize; n];
        sigma[a] = 1;
        parts.push(fd_derivative(f, &sigma)?);
    }
    // all parts live on the all-axes-shrunk domain after a mutual restrict
    let target = f.domain.shrink_all(1, "gradient")?;
    let restricted: Vec<GridField> = parts
        .iter()
        .map(|g| super::field::restrict(g, &target))
        .collect::<Result<_>>()?;
    let values = super::par_map_points(&target, n, |p, _x, out| {
        for (a, g) in restricted.iter().enumerate() {
            out[a] = g.scalar_at(p);
        }
    });
    GridField::from_values(target, super::field::Rank::Vector(n), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{GridDomain, Rank};

    #[test]
    fn second_derivative_exact_on_quadratics() {
        // f(x) = x₁² has D^(2,0) f ≡ 2, exactly under central differences
        let d = GridDomain::unit_box(2, 33, 0).unwrap();
        let f = GridField::sample_scalar(d, |x| x[0] * x[0]).unwrap();
        let g = fd_derivative(&f, &[2, 0]).unwrap();
        for p in 0..g.domain.num_points() {
            assert!((g.scalar_at(p) - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sine_derivative_taylor_bound() {
        // sup error of the central first derivative of sin is h²/6·sup|f'''|
        let h = 1e-2;
        let d = GridDomain::new(&[0.0, 0.0], &[1.0, 0.1], h, 0.0).unwrap();
        let f = GridField::sample_scalar(d, |x| x[0].sin()).unwrap();
        let g = fd_derivative(&f, &[1, 0]).unwrap();
        let mut worst = 0.0_f64;
        let mut coords = [0.0; MAX_DIM];
        for p in 0..g.domain.num_points() {
            g.domain.coords_of(p, &mut coords);
            worst = worst.max((g.scalar_at(p) - coords[0].cos()).abs());
        }
        // Taylor remainder oracle: h²/6 ≈ 1.67e-5
        assert!(worst <= h * h / 6.0 + 1e-12, "sup error {worst}");
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let d = GridDomain::unit_box(2, 17, 0).unwrap();
        let f = GridField::sample_scalar(d, |_| 3.25).unwrap();
        for sigma in [[1, 0], [0, 1], [2, 0], [1, 1]] {
            let g = fd_derivative(&f, &sigma).unwrap();
            assert_eq!(g.sup_norm(), 0.0);
        }
    }

    #[test]
    fn fd_commutes_with_restriction_bitwise() {
        let d = GridDomain::unit_box(2, 33, 0).unwrap();
        let f = GridField::sample_scalar(d.clone(), |x| (3.0 * x[0]).sin() * x[1]).unwrap();
        let inner = d.shrink_all(4, "test").unwrap();
        let a = fd_derivative(&crate::fields::restrict(&f, &inner).unwrap(), &[1, 1]).unwrap();
        let b_full = fd_derivative(&f, &[1, 1]).unwrap();
        let b = crate::fields::restrict(&b_full, &a.domain).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn domain_too_small_is_reported() {
        let d = GridDomain::unit_box(2, 3, 0).unwrap();
        let f = GridField::sample_scalar(d, |x| x[0]).unwrap();
        let r = fd_derivative(&f, &[3, 0]);
        assert!(matches!(r, Err(CoreError::DomainTooSmall { .. })));
    }

    #[test]
    fn vector_rank_preserved() {
        let d = GridDomain::unit_box(2, 17, 0).unwrap();
        let f = GridField::sample(d, Rank::Vector(3), |x, out| {
            out[0] = x[0];
            out[1] = x[1];
            out[2] = x[0] * x[1];
        })
        .unwrap();
        let g = fd_derivative(&f, &[1, 0]).unwrap();
        assert_eq!(g.rank, Rank::Vector(3));
    }
}
