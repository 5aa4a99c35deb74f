//! Mollification by a fixed radially symmetric compact bump.


use super::field::GridField;
use crate::error::{CoreError, Result};
use crate::MAX_DIM;

/// Result of [`mollify`]: the smoothed field plus a flag for the sub-grid
/// no-op case (ℓ < h), where the input is returned unchanged.
pub struct MollifyOutcome {
    pub field: GridField,
    pub subgrid_noop: bool,
}

/// Convolution with the bump `φ(x) ∝ exp(−1/(1−|x|²))` of radius `ell`,
/// normalized to unit mass by discrete quadrature (so constants are fixed
/// points to rounding). The output domain shrinks by `ell`.
pub fn mollify(f: &GridField, ell: f64) -> Result<MollifyOutcome> {
    let h = f.domain.h();
    if ell < h {
        return Ok(MollifyOutcome {
            field: f.clone(),
            subgrid_noop: true,
        });
    }
    if ell > f.domain.margin() + 1e-12 {
        return Err(CoreError::DomainTooSmall {
            op: "mollify",
            shape: f.domain.shape().to_vec(),
            shrink: (ell / h).ceil() as usize,
        });
    }
    let n = f.domain.n();
    let radius = (ell / h).floor() as usize;
    // tabulate the stencil once: offsets within the ball |x| < ell
    let mut offsets: Vec<[isize; MAX_DIM]> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut cursor = [-(radius as isize); MAX_DIM];
    for a in n..MAX_DIM {
        cursor[a] = 0;
    }
    loop {
        let r2: f64 = cursor[..n]
            .iter()
            .map(|&k| {
                let d = k as f64 * h / ell;
                d * d
            })
            .sum();
        if r2 < 1.0 {
            offsets.push(cursor);
            weights.push((-1.0 / (1.0 - r2)).exp());
        }
        // advance the odometer
        let mut a = 0;
        loop {
            if a == n {
                break;
            }
            cursor[a] += 1;
            if cursor[a] <= radius as isize {
                break;
            }
            cursor[a] = -(radius as isize);
            a += 1;
        }
        if a == n {
            break;
        }
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }

    let out_domain = f.domain.shrink_all(radius, "mollify")?;
    let off0 = f.domain.offset_of(&out_domain)?;
    let comps = f.comps();
    let values = super::par_map_points(&out_domain, comps, |p, _x, out| {
        let mut idx = [0usize; MAX_DIM];
        out_domain.unflat(p, &mut idx);
        for a in 0..n {
            idx[a] += off0[a];
        }
        out.fill(0.0);
        let mut src = [0usize; MAX_DIM];
        for (o, w) in offsets.iter().zip(&weights) {
            for a in 0..n {
                src[a] = (idx[a] as isize + o[a]) as usize;
            }
            let q = f.domain.flat(&src[..n]);
            for (c, v) in out.iter_mut().enumerate() {
                *v += w * f.at(q)[c];
            }
        }
    });
    let field = GridField::from_values(out_domain, f.rank, values)?;
    field.check_finite("mollify")?;
    Ok(MollifyOutcome {
        field,
        subgrid_noop: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::GridDomain;

    fn unit(n: usize, pts: usize, collar: usize) -> GridDomain {
        GridDomain::unit_box(n, pts, collar).unwrap()
    }

    #[test]
    fn constants_are_fixed_points() {
        let d = unit(2, 65, 8);
        let f = GridField::sample_scalar(d.clone(), |_| -1.7).unwrap();
        let out = mollify(&f, 6.0 * d.h()).unwrap();
        assert!(!out.subgrid_noop);
        for p in 0..out.field.domain.num_points() {
            assert!((out.field.scalar_at(p) + 1.7).abs() < 1e-12);
        }
    }

    #[test]
    fn subgrid_mollification_is_flagged_noop() {
        let d = unit(2, 17, 2);
        let f = GridField::sample_scalar(d.clone(), |x| x[0]).unwrap();
        let out = mollify(&f, 0.25 * d.h()).unwrap();
        assert!(out.subgrid_noop);
        assert_eq!(out.field.values(), f.values());
    }

    #[test]
    fn smoothing_error_is_second_order_in_ell() {
        // ‖f − f*φ_ℓ‖₀ for f = sin(x₁) drops by ≈4 when ℓ is halved
        let d = unit(2, 257, 40);
        let f = GridField::sample_scalar(d.clone(), |x| x[0].sin()).unwrap();
        let err_at = |ell: f64| -> f64 {
            let m = mollify(&f, ell).unwrap().field;
            let fr = crate::fields::restrict(&f, &m.domain).unwrap();
            fr.axpy(-1.0, &m).unwrap().sup_norm()
        };
        let e1 = err_at(32.0 * d.h());
        let e2 = err_at(16.0 * d.h());
        let ratio = e1 / e2;
        assert!(
            (3.5..=4.5).contains(&ratio),
            "O(ℓ²) ratio out of range: {ratio}"
        );
    }

    #[test]
    fn ell_beyond_margin_rejected() {
        let d = unit(2, 33, 2);
        let f = GridField::sample_scalar(d.clone(), |x| x[0]).unwrap();
        assert!(mollify(&f, 8.0 * d.h()).is_err());
    }
}
