//! Binary grid-field storage: a fixed 64-byte header followed by
//! row-major complex doubles, plus a JSON sidecar describing how the
//! field was generated.

use super::family::TestFamily;
use super::grid::GridFunction;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: &[u8; 8] = b"FRACFLD\0";
const VERSION: u32 = 1;
const VALUE_COMPLEX_F64: u32 = 1;

/// Sidecar metadata written next to the binary field file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldMetadata {
    pub family: TestFamily,
    pub dim: usize,
    pub size: usize,
    pub half_width: f64,
}

fn header(f: &GridFunction) -> [u8; 64] {
    let mut h = [0u8; 64];
    h[..8].copy_from_slice(MAGIC);
    h[8..12].copy_from_slice(&VERSION.to_le_bytes());
    h[12..16].copy_from_slice(&(f.dim as u32).to_le_bytes());
    h[16..24].copy_from_slice(&(f.size as u64).to_le_bytes());
    h[24..32].copy_from_slice(&f.half_width.to_le_bytes());
    h[32..36].copy_from_slice(&VALUE_COMPLEX_F64.to_le_bytes());
    h
}

/// Write the field to `path` and, when metadata is given, a JSON sidecar
/// at `path` + `.json`.
pub fn write_field(path: &Path, f: &GridFunction, meta: Option<&FieldMetadata>) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    out.write_all(&header(f))?;
    let mut buf = Vec::with_capacity(16 * f.values.len());
    for v in &f.values {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    out.write_all(&buf)?;
    if let Some(meta) = meta {
        let side = path.with_extension(format!(
            "{}json",
            path.extension()
                .map(|e| format!("{}.", e.to_string_lossy()))
                .unwrap_or_default()
        ));
        let text = serde_json::to_string_pretty(meta)?;
        std::fs::write(side, text)?;
    }
    Ok(())
}

/// Read a field written by [`write_field`].
pub fn read_field(path: &Path) -> Result<GridFunction> {
    let mut inp = std::fs::File::open(path)?;
    let mut h = [0u8; 64];
    inp.read_exact(&mut h)?;
    if &h[..8] != MAGIC {
        return Err(Error::Parse("bad magic in field file".into()));
    }
    let version = u32::from_le_bytes(h[8..12].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported field file version {version}")));
    }
    let dim = u32::from_le_bytes(h[12..16].try_into().unwrap()) as usize;
    let size = u64::from_le_bytes(h[16..24].try_into().unwrap()) as usize;
    let half_width = f64::from_le_bytes(h[24..32].try_into().unwrap());
    let tag = u32::from_le_bytes(h[32..36].try_into().unwrap());
    if tag != VALUE_COMPLEX_F64 {
        return Err(Error::Parse(format!("unsupported value type tag {tag}")));
    }
    let len = size
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::Parse("field dimensions overflow".into()))?;
    let mut buf = vec![0u8; 16 * len];
    inp.read_exact(&mut buf)?;
    let values = buf
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    GridFunction::new(dim, size, half_width, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::family::sample;

    #[test]
    fn round_trip_with_sidecar() {
        let dir = std::env::temp_dir().join("fracbed-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.bin");
        let fam = TestFamily::ModulatedGaussian { k0: 2.0 };
        let f = sample(&fam, 2, 32, 6.0).unwrap();
        let meta = FieldMetadata {
            family: fam.clone(),
            dim: 2,
            size: 32,
            half_width: 6.0,
        };
        write_field(&path, &f, Some(&meta)).unwrap();
        let g = read_field(&path).unwrap();
        assert_eq!(g.dim, 2);
        assert_eq!(g.size, 32);
        assert_eq!(g.half_width, 6.0);
        assert_eq!(f.values, g.values);
        let side: FieldMetadata =
            serde_json::from_str(&std::fs::read_to_string(dir.join("field.bin.json")).unwrap())
                .unwrap();
        assert_eq!(side.family, fam);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rejects_garbage() {
        let dir = std::env::temp_dir().join("fracbed-io-test-bad");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("junk.bin");
        std::fs::write(&path, vec![0u8; 128]).unwrap();
        assert!(matches!(read_field(&path), Err(Error::Parse(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
