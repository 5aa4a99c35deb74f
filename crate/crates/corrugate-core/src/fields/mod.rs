//! Grid-sampled function spaces on nested box domains.
//!
//! Everything downstream (decompositions, frames, corrugations) works on
//! [`GridField`]s: dense samples on a uniform axis-aligned lattice with a
//! rank tag distinguishing scalars, vectors, packed symmetric matrices and
//! maps into R^{n+1}. All operations are pure; derivative and mollification
//! operators consume collar cells instead of extrapolating, so the output
//! domain records the shrink.

mod domain;
mod field;
mod fd;
mod mollify;
mod seminorm;
mod io;

pub use domain::GridDomain;
pub use field::{GridField, Rank};
pub(crate) use field::sym_idx as sym_index;
pub use fd::fd_derivative;
pub use mollify::{mollify, MollifyOutcome};
pub use seminorm::{holder_seminorm, pair_seminorm, SeminormOptions, SeminormReport};
pub use io::{read_field, write_field, write_field_csv};

use crate::Result;

/// Exact sub-lattice extraction onto `target`, which must align with the
/// source lattice and be contained in it.
pub fn restrict(f: &GridField, target: &GridDomain) -> Result<GridField> {
    field::restrict(f, target)
}

/// Deterministic parallel map over lattice points.
///
/// `f(point_index, coords, out_comps)` fills the components at one point.
/// Chunk boundaries are fixed, so repeated runs are bit-identical.
pub fn par_map_points<F>(domain: &GridDomain, comps: usize, f: F) -> Vec<f64>
where
    F: Fn(usize, &[f64], &mut [f64]) + Sync,
{
    use rayon::prelude::*;
    let npts = domain.num_points();
    let mut values = vec![0.0; npts * comps];
    values
        .par_chunks_mut(comps * CHUNK)
        .enumerate()
        .for_each(|(chunk_id, chunk)| {
            let base = chunk_id * CHUNK;
            let mut coords = [0.0; crate::MAX_DIM];
            for (k, out) in chunk.chunks_mut(comps).enumerate() {
                let p = base + k;
                domain.coords_of(p, &mut coords);
                f(p, &coords[..domain.n()], out);
            }
        });
    values
}

/// Deterministic parallel sup of a nonnegative per-point quantity.
pub fn par_sup<F>(npts: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    par_max(npts, f).max(0.0)
}

/// Deterministic parallel max of a per-point quantity (any sign).
pub fn par_max<F>(npts: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    use rayon::prelude::*;
    (0..npts)
        .into_par_iter()
        .chunks(CHUNK)
        .map(|chunk| chunk.into_iter().map(&f).fold(f64::NEG_INFINITY, f64::max))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Deterministic parallel min of a per-point quantity.
pub fn par_min<F>(npts: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    -par_max(npts, |p| -f(p))
}

const CHUNK: usize = 1 << 14;
