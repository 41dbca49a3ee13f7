//! Little-endian binary primitives shared by the artifact file formats.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub fn write_u8<W: Write>(w: &mut W, v: u8, path: &Path) -> Result<()> {
    w.write_all(&[v]).map_err(|e| Error::io(path, e))
}

pub fn write_u32<W: Write>(w: &mut W, v: u32, path: &Path) -> Result<()> {
    w.write_all(&v.to_le_bytes()).map_err(|e| Error::io(path, e))
}

pub fn write_u64<W: Write>(w: &mut W, v: u64, path: &Path) -> Result<()> {
    w.write_all(&v.to_le_bytes()).map_err(|e| Error::io(path, e))
}

pub fn write_f32<W: Write>(w: &mut W, v: f32, path: &Path) -> Result<()> {
    w.write_all(&v.to_le_bytes()).map_err(|e| Error::io(path, e))
}

pub fn write_f64<W: Write>(w: &mut W, v: f64, path: &Path) -> Result<()> {
    w.write_all(&v.to_le_bytes()).map_err(|e| Error::io(path, e))
}

pub fn write_f32_slice<W: Write>(w: &mut W, vs: &[f32], path: &Path) -> Result<()> {
    let mut buf = Vec::with_capacity(vs.len() * 4);
    for v in vs {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf).map_err(|e| Error::io(path, e))
}

pub fn write_bytes<W: Write>(w: &mut W, vs: &[u8], path: &Path) -> Result<()> {
    w.write_all(vs).map_err(|e| Error::io(path, e))
}

/// UTF-8 string with a u32 length prefix.
pub fn write_str<W: Write>(w: &mut W, s: &str, path: &Path) -> Result<()> {
    write_u32(w, s.len() as u32, path)?;
    w.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
}

pub fn read_u8<R: Read>(r: &mut R, path: &Path) -> Result<u8> {
    let mut b = [0u8; 1];
    r.read_exact(&mut b).map_err(|e| Error::io(path, e))?;
    Ok(b[0])
}

pub fn read_u32<R: Read>(r: &mut R, path: &Path) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|e| Error::io(path, e))?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_u64<R: Read>(r: &mut R, path: &Path) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|e| Error::io(path, e))?;
    Ok(u64::from_le_bytes(b))
}

pub fn read_f32<R: Read>(r: &mut R, path: &Path) -> Result<f32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|e| Error::io(path, e))?;
    Ok(f32::from_le_bytes(b))
}

pub fn read_f64<R: Read>(r: &mut R, path: &Path) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(|e| Error::io(path, e))?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_f32_vec<R: Read>(r: &mut R, n: usize, path: &Path) -> Result<Vec<f32>> {
    let mut buf = vec![0u8; n * 4];
    r.read_exact(&mut buf).map_err(|e| Error::io(path, e))?;
    Ok(buf
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}

pub fn read_bytes<R: Read>(r: &mut R, n: usize, path: &Path) -> Result<Vec<u8>> {
    let mut buf = vec![0u8; n];
    r.read_exact(&mut buf).map_err(|e| Error::io(path, e))?;
    Ok(buf)
}

pub fn read_str<R: Read>(r: &mut R, path: &Path) -> Result<String> {
    let n = read_u32(r, path)? as usize;
    let buf = read_bytes(r, n, path)?;
    String::from_utf8(buf).map_err(|_| Error::format(path, "invalid utf-8 in string table"))
}

/// Reads and checks a 4-byte magic tag.
pub fn expect_magic<R: Read>(r: &mut R, magic: &[u8; 4], path: &Path) -> Result<()> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(|e| Error::io(path, e))?;
    if &b != magic {
        return Err(Error::format(
            path,
            format!(
                "magic mismatch: expected {:?}, found {:?}",
                String::from_utf8_lossy(magic),
                String::from_utf8_lossy(&b)
            ),
        ));
    }
    Ok(())
}
