//! Glyph atlas files: a line-oriented UTF-8 format for exchanging bitmap
//! fonts.
//!
//! ```text
//! ATLAS <name> <size>
//! GLYPH <char> <rows> <cols>
//! <rows lines of two-hex-digit intensities, one pair per pixel>
//! ```
//!
//! One `ATLAS` section per size; the glyph character is a single literal
//! character (a space stands for the space glyph). Sections and glyphs are
//! written in sorted order so exports are byte-reproducible.

use super::{Bitmap, GlyphFont};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

pub fn write_atlas(font: &GlyphFont, path: &Path) -> Result<()> {
    let mut out = String::new();
    for size in font.supported_sizes() {
        writeln!(out, "ATLAS {} {}", font.name(), size).unwrap();
        let table = font.size_table(size).expect("listed size");
        for (c, bm) in table {
            writeln!(out, "GLYPH {} {} {}", c, bm.rows, bm.cols).unwrap();
            for r in 0..bm.rows {
                for col in 0..bm.cols {
                    write!(out, "{:02x}", bm.get(r, col)).unwrap();
                }
                out.push('\n');
            }
        }
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn read_atlas(path: &Path, inter_glyph_gap: usize) -> Result<GlyphFont> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let fail = |line: usize, msg: String| Error::Format {
        what: "glyph atlas",
        path: path.to_owned(),
        msg: format!("line {}: {msg}", line + 1),
    };

    let lines: Vec<&str> = text.lines().collect();
    let mut sizes: BTreeMap<u32, BTreeMap<char, Bitmap>> = BTreeMap::new();
    let mut name: Option<String> = None;
    let mut current_size: Option<u32> = None;
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        if let Some(rest) = line.strip_prefix("ATLAS ") {
            let (n, size) = rest
                .rsplit_once(' ')
                .ok_or_else(|| fail(i, "expected 'ATLAS <name> <size>'".into()))?;
            let size: u32 = size
                .parse()
                .map_err(|_| fail(i, format!("bad size {size:?}")))?;
            match &name {
                None => name = Some(n.to_owned()),
                Some(existing) if existing != n => {
                    return Err(fail(i, format!("name changed from {existing:?} to {n:?}")))
                }
                _ => {}
            }
            sizes.entry(size).or_default();
            current_size = Some(size);
            i += 1;
        } else if let Some(rest) = line.strip_prefix("GLYPH ") {
            let size = current_size.ok_or_else(|| fail(i, "GLYPH before ATLAS header".into()))?;
            let mut chars = rest.chars();
            let glyph_char = chars
                .next()
                .ok_or_else(|| fail(i, "missing glyph character".into()))?;
            if chars.next() != Some(' ') {
                return Err(fail(i, "expected space after glyph character".into()));
            }
            let dims: Vec<&str> = chars.as_str().split(' ').collect();
            if dims.len() != 2 {
                return Err(fail(i, "expected '<rows> <cols>'".into()));
            }
            let rows: usize = dims[0]
                .parse()
                .map_err(|_| fail(i, format!("bad rows {:?}", dims[0])))?;
            let cols: usize = dims[1]
                .parse()
                .map_err(|_| fail(i, format!("bad cols {:?}", dims[1])))?;
            let mut bm = Bitmap::new(rows, cols);
            for r in 0..rows {
                i += 1;
                let row = lines
                    .get(i)
                    .ok_or_else(|| fail(i, "truncated glyph rows".into()))?;
                if row.len() != cols * 2 {
                    return Err(fail(i, format!("expected {} hex digits", cols * 2)));
                }
                for c in 0..cols {
                    let v = u8::from_str_radix(&row[c * 2..c * 2 + 2], 16)
                        .map_err(|_| fail(i, "bad hex byte".into()))?;
                    bm.set(r, c, v);
                }
            }
            sizes.get_mut(&size).unwrap().insert(glyph_char, bm);
            i += 1;
        } else if line.trim().is_empty() {
            i += 1;
        } else {
            return Err(fail(i, format!("unrecognised line {line:?}")));
        }
    }

    let name = name.ok_or_else(|| fail(0, "no ATLAS header found".into()))?;
    GlyphFont::from_parts(&name, inter_glyph_gap, sizes)
}
