//! Binary checkpoint of a spectral field.
//!
//! Layout, all little-endian:
//!
//! ```text
//! "NSHD"  version:u8=1  n:u8  N:u32  alpha:f64  nu:f64  time:f64  seed:u64
//! for i in 0..n: for idx in 0..N^n: re:f64 im:f64
//! ```
//!
//! Coefficients are written in flat row-major FFT order.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::{SpectralVectorField, WavenumberLattice};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"NSHD";
pub const VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckpointHeader {
    pub alpha: f64,
    pub nu: f64,
    pub seed: u64,
}

pub fn write_checkpoint<W: Write>(
    mut w: W,
    field: &SpectralVectorField,
    header: &CheckpointHeader,
) -> Result<()> {
    let lat = field.lattice();
    w.write_all(MAGIC)?;
    w.write_all(&[VERSION, lat.dim() as u8])?;
    w.write_all(&(lat.resolution() as u32).to_le_bytes())?;
    w.write_all(&header.alpha.to_le_bytes())?;
    w.write_all(&header.nu.to_le_bytes())?;
    w.write_all(&field.time.to_le_bytes())?;
    w.write_all(&header.seed.to_le_bytes())?;

    let mut body = Vec::with_capacity(16 * lat.total_modes());
    for comp in field.components() {
        body.clear();
        for z in comp {
            body.extend_from_slice(&z.re.to_le_bytes());
            body.extend_from_slice(&z.im.to_le_bytes());
        }
        w.write_all(&body)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_checkpoint<R: Read>(mut r: R) -> Result<(SpectralVectorField, CheckpointHeader)> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint(format!("wrong magic {magic:?}")));
    }
    let mut small = [0u8; 2];
    r.read_exact(&mut small)?;
    if small[0] != VERSION {
        return Err(Error::Checkpoint(format!(
            "unsupported version {} (expected {VERSION})",
            small[0]
        )));
    }
    let dim = small[1] as usize;
    let resolution = read_u32(&mut r)? as usize;
    let alpha = read_f64(&mut r)?;
    let nu = read_f64(&mut r)?;
    let time = read_f64(&mut r)?;
    let seed = u64::from_le_bytes(read_array(&mut r)?);

    let lattice = WavenumberLattice::new(dim, resolution)?;
    let total = lattice.total_modes();
    let mut coeffs = Vec::with_capacity(dim);
    let mut buf = vec![0u8; 16 * total];
    for _ in 0..dim {
        r.read_exact(&mut buf)?;
        let comp = buf
            .chunks_exact(16)
            .map(|c| {
                let re = f64::from_le_bytes(c[..8].try_into().unwrap());
                let im = f64::from_le_bytes(c[8..].try_into().unwrap());
                Complex64::new(re, im)
            })
            .collect();
        coeffs.push(comp);
    }
    let mut field = SpectralVectorField::from_coeffs(&lattice, coeffs)?;
    field.time = time;
    Ok((field, CheckpointHeader { alpha, nu, seed }))
}

pub fn save(path: &Path, field: &SpectralVectorField, header: &CheckpointHeader) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_checkpoint(std::io::BufWriter::new(file), field, header)
}

pub fn load(path: &Path) -> Result<(SpectralVectorField, CheckpointHeader)> {
    let file = std::fs::File::open(path)?;
    read_checkpoint(std::io::BufReader::new(file))
}

fn read_array<R: Read, const L: usize>(r: &mut R) -> Result<[u8; L]> {
    let mut b = [0u8; L];
    r.read_exact(&mut b)?;
    Ok(b)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    Ok(u32::from_le_bytes(read_array(r)?))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    Ok(f64::from_le_bytes(read_array(r)?))
}
