//! Flat binary field container ("CGF1") and lossy CSV export.
//!
//! Layout, all little-endian:
//! magic `CGF1` | u32 n | u32 rank code | u32 m | u32 reserved |
//! f64 lo[n] | f64 hi[n] | f64 h | f64 margin | u64 extents[n] |
//! row-major f64 values (point-major, components interleaved).

use super::domain::GridDomain;
use super::field::{GridField, Rank};
use crate::error::{CoreError, Result};
use std::io::{Read, Write};

const MAGIC: &[u8; 4] = b"CGF1";

pub fn write_field<W: Write>(w: &mut W, f: &GridField) -> Result<()> {
    let n = f.domain.n();
    w.write_all(MAGIC)?;
    w.write_all(&(n as u32).to_le_bytes())?;
    w.write_all(&f.rank.code().to_le_bytes())?;
    let m = match f.rank {
        Rank::Vector(m) => m as u32,
        _ => 0,
    };
    w.write_all(&m.to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    for a in 0..n {
        w.write_all(&f.domain.lo()[a].to_le_bytes())?;
    }
    for a in 0..n {
        w.write_all(&f.domain.hi()[a].to_le_bytes())?;
    }
    w.write_all(&f.domain.h().to_le_bytes())?;
    w.write_all(&f.domain.margin().to_le_bytes())?;
    for a in 0..n {
        w.write_all(&(f.domain.shape()[a] as u64).to_le_bytes())?;
    }
    for v in f.values() {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_field<R: Read>(r: &mut R) -> Result<GridField> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(CoreError::Config(format!(
            "bad magic {:?}, expected CGF1",
            magic
        )));
    }
    let n = read_u32(r)? as usize;
    let code = read_u32(r)?;
    let m = read_u32(r)? as usize;
    let _reserved = read_u32(r)?;
    let rank = match code {
        0 => Rank::Scalar,
        1 => Rank::Vector(m),
        2 => Rank::SymMat,
        3 => Rank::Map,
        c => return Err(CoreError::Config(format!("unknown rank code {c}"))),
    };
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    for v in lo.iter_mut() {
        *v = read_f64(r)?;
    }
    for v in hi.iter_mut() {
        *v = read_f64(r)?;
    }
    let h = read_f64(r)?;
    let margin = read_f64(r)?;
    let mut extents = vec![0u64; n];
    for e in extents.iter_mut() {
        *e = read_u64(r)?;
    }
    let domain = GridDomain::new(&lo, &hi, h, margin)?;
    for (a, e) in extents.iter().enumerate() {
        if domain.shape()[a] as u64 != *e {
            return Err(CoreError::Config(format!(
                "extent mismatch on axis {a}: header {e}, derived {}",
                domain.shape()[a]
            )));
        }
    }
    let count = domain.num_points() * rank.comps(n);
    let mut values = vec![0.0; count];
    for v in values.iter_mut() {
        *v = read_f64(r)?;
    }
    GridField::from_values(domain, rank, values)
}

pub fn write_field_csv<W: Write>(w: &mut W, f: &GridField) -> Result<()> {
    let n = f.domain.n();
    let comps = f.comps();
    let mut header: Vec<String> = (1..=n).map(|a| format!("x{a}")).collect();
    header.extend((0..comps).map(|c| format!("c{c}")));
    writeln!(w, "{}", header.join(","))?;
    let mut coords = [0.0; crate::MAX_DIM];
    for p in 0..f.domain.num_points() {
        f.domain.coords_of(p, &mut coords);
        let mut row: Vec<String> = coords[..n].iter().map(|x| format!("{x:.9e}")).collect();
        row.extend(f.at(p).iter().map(|v| format!("{v:.9e}")));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::GridDomain;

    #[test]
    fn container_roundtrip_bitexact() {
        let d = GridDomain::unit_box(2, 17, 2).unwrap();
        let f = GridField::sample(d, Rank::SymMat, |x, out| {
            out[0] = 1.0 + x[0];
            out[1] = x[0] * x[1];
            out[2] = 1.0 - x[1];
        })
        .unwrap();
        let mut buf = Vec::new();
        write_field(&mut buf, &f).unwrap();
        let g = read_field(&mut buf.as_slice()).unwrap();
        assert_eq!(f.values(), g.values());
        assert_eq!(f.domain, g.domain);
        assert_eq!(f.rank, g.rank);
    }
}
