//! Binary PGM (P5) image storage for rendered lines.

use crate::{Error, Result};
use ndarray::Array2;
use std::io::{Read, Write};
use std::path::Path;

/// Write an image as 8-bit binary PGM. Values are clamped to 0..=255 and
/// rounded.
pub fn write_pgm(pixels: &Array2<f64>, path: &Path) -> Result<()> {
    let (h, w) = pixels.dim();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = std::io::BufWriter::new(file);
    let header = format!("P5\n{w} {h}\n255\n");
    let mut bytes = Vec::with_capacity(header.len() + h * w);
    bytes.extend_from_slice(header.as_bytes());
    for r in 0..h {
        for c in 0..w {
            bytes.push(pixels[(r, c)].round().clamp(0.0, 255.0) as u8);
        }
    }
    out.write_all(&bytes).map_err(|e| Error::io(path, e))
}

pub fn read_pgm(path: &Path) -> Result<Array2<f64>> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    parse_pgm(&bytes).map_err(|msg| Error::Format {
        what: "PGM image",
        path: path.to_owned(),
        msg,
    })
}

fn parse_pgm(bytes: &[u8]) -> std::result::Result<Array2<f64>, String> {
    let mut pos = 0;
    let mut token = || -> std::result::Result<String, String> {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err("truncated header".into());
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    if token()? != "P5" {
        return Err("not a P5 PGM".into());
    }
    let w: usize = token()?.parse().map_err(|_| "bad width".to_string())?;
    let h: usize = token()?.parse().map_err(|_| "bad height".to_string())?;
    let maxval: usize = token()?.parse().map_err(|_| "bad maxval".to_string())?;
    if maxval != 255 {
        return Err(format!("unsupported maxval {maxval}"));
    }
    pos += 1; // single whitespace byte after maxval
    let need = h * w;
    if bytes.len() < pos + need {
        return Err(format!(
            "expected {need} pixel bytes, found {}",
            bytes.len().saturating_sub(pos)
        ));
    }
    let data: Vec<f64> = bytes[pos..pos + need].iter().map(|&b| b as f64).collect();
    Array2::from_shape_vec((h, w), data).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_exact_for_u8_data() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.pgm");
        let img = Array2::from_shape_fn((9, 13), |(r, c)| ((r * 31 + c * 7) % 256) as f64);
        write_pgm(&img, &path).unwrap();
        let back = read_pgm(&path).unwrap();
        assert_eq!(back, img);
    }

    #[test]
    fn rejects_wrong_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.pgm");
        std::fs::write(&path, b"P2\n1 1\n255\n0").unwrap();
        assert!(read_pgm(&path).is_err());
    }

    #[test]
    fn rejects_truncated_data() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("short.pgm");
        std::fs::write(&path, b"P5\n4 4\n255\nabc").unwrap();
        assert!(read_pgm(&path).is_err());
    }
}
