//! Deterministic bitmap fonts and text-line rasterisation.
//!
//! All fonts derive from one hand-drawn base glyph set ([`glyphs`]) through
//! three style parameters: horizontal width scaling, stroke dilation and
//! shear. Rendering is pure integer work, so identical inputs produce
//! identical rasters on every platform.

mod atlas;
mod glyphs;
mod image;
mod pgm;

pub use atlas::{read_atlas, write_atlas};
pub use image::{frame_slices, frames_per_char, normalize, FrameSequence, LineImage,
    MAX_TIME_STEPS};
pub use pgm::{read_pgm, write_pgm};

use crate::{Error, Result};
use std::collections::BTreeMap;

pub const MIN_SIZE: u32 = 8;
pub const MAX_SIZE: u32 = 16;
pub const INK: u8 = 255;

/// A rasterised glyph: `rows x cols` of 8-bit intensity, background 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Bitmap {
    pub fn new(rows: usize, cols: usize) -> Self {
        Bitmap {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn has_ink(&self) -> bool {
        self.data.iter().any(|&v| v > 0)
    }
}

/// Style knobs that derive a font from the base glyph set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FontStyle {
    /// Horizontal shift per row, as a fraction of the distance to the
    /// baseline; 0.0 is upright.
    pub shear: f64,
    /// Stroke weight; 1.0 is the base weight, larger values dilate ink
    /// horizontally.
    pub stroke_scale: f64,
    /// Horizontal scale; 1.0 preserves the base aspect.
    pub width_scale: f64,
}

/// A complete bitmap font: every letter plus space at every size 8..=16.
#[derive(Debug, Clone)]
pub struct GlyphFont {
    name: String,
    style: FontStyle,
    inter_glyph_gap: usize,
    /// size -> char -> bitmap
    sizes: BTreeMap<u32, BTreeMap<char, Bitmap>>,
}

impl GlyphFont {
    /// Derive a font from the base glyph set.
    pub fn build(name: &str, style: FontStyle, inter_glyph_gap: usize) -> Self {
        assert!(inter_glyph_gap >= 1, "glyphs must never touch");
        let mut sizes = BTreeMap::new();
        for size in MIN_SIZE..=MAX_SIZE {
            let mut table = BTreeMap::new();
            for (c, art) in glyphs::BASE_GLYPHS {
                table.insert(c, style_glyph(&art, size, style));
            }
            // space: blank bitmap as wide as the average letter
            let avg = (table.values().map(|b| b.cols).sum::<usize>() + 13) / 26;
            table.insert(' ', Bitmap::new(size as usize, avg.max(1)));
            sizes.insert(size, table);
        }
        GlyphFont {
            name: name.to_owned(),
            style,
            inter_glyph_gap,
            sizes,
        }
    }

    /// Reassemble a font from externally supplied bitmaps (atlas import).
    pub fn from_parts(
        name: &str,
        inter_glyph_gap: usize,
        sizes: BTreeMap<u32, BTreeMap<char, Bitmap>>,
    ) -> Result<Self> {
        for (size, table) in &sizes {
            for c in ('a'..='z').chain(std::iter::once(' ')) {
                let bm = table.get(&c).ok_or_else(|| {
                    Error::InvalidInput(format!("font {name}: size {size} missing glyph {c:?}"))
                })?;
                if bm.rows != *size as usize {
                    return Err(Error::InvalidInput(format!(
                        "font {name}: glyph {c:?} at size {size} is {} rows tall",
                        bm.rows
                    )));
                }
            }
        }
        Ok(GlyphFont {
            name: name.to_owned(),
            style: FontStyle {
                shear: 0.0,
                stroke_scale: 1.0,
                width_scale: 1.0,
            },
            inter_glyph_gap,
            sizes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn style(&self) -> FontStyle {
        self.style
    }

    pub fn inter_glyph_gap(&self) -> usize {
        self.inter_glyph_gap
    }

    pub fn supported_sizes(&self) -> Vec<u32> {
        self.sizes.keys().copied().collect()
    }

    pub fn glyph(&self, c: char, size: u32) -> Result<&Bitmap> {
        self.sizes
            .get(&size)
            .ok_or_else(|| Error::InvalidInput(format!("font {}: no size {size}", self.name)))?
            .get(&c)
            .ok_or(Error::UnsupportedChar(c))
    }

    pub(crate) fn size_table(&self, size: u32) -> Option<&BTreeMap<char, Bitmap>> {
        self.sizes.get(&size)
    }
}

/// Scale the 8-row base art to `size` rows, then apply stroke dilation and
/// shear. All arithmetic is integer or exactly-rounded, so the result is
/// bit-stable.
fn style_glyph(art: &[&str; 8], size: u32, style: FontStyle) -> Bitmap {
    let h = size as usize;
    let base_w = art[0].len();
    let w = ((base_w as f64) * (size as f64 / glyphs::BASE_HEIGHT as f64) * style.width_scale)
        .round()
        .max(1.0) as usize;

    // Partition resample: each output cell ORs over its share of base
    // cells. Upscaling shares are a single cell, so shapes and gaps are
    // never thickened; downscaling shares cover a box, so thin strokes are
    // never lost.
    let mut bm = Bitmap::new(h, w);
    for r in 0..h {
        let r0 = r * glyphs::BASE_HEIGHT / h;
        let r1 = ((r + 1) * glyphs::BASE_HEIGHT / h).max(r0 + 1);
        for c in 0..w {
            let c0 = c * base_w / w;
            let c1 = ((c + 1) * base_w / w).max(c0 + 1);
            let ink = (r0..r1.min(glyphs::BASE_HEIGHT))
                .any(|rr| (c0..c1.min(base_w)).any(|cc| art[rr].as_bytes()[cc] == b'#'));
            if ink {
                bm.set(r, c, INK);
            }
        }
    }

    let extra = (((style.stroke_scale - 1.0) * size as f64) / 8.0).round().max(0.0) as usize;
    if extra > 0 {
        bm = dilate_horizontal(&bm, extra);
    }
    if style.shear > 0.0 {
        bm = shear_rows(&bm, style.shear);
    }
    bm
}

fn dilate_horizontal(src: &Bitmap, extra: usize) -> Bitmap {
    let mut out = Bitmap::new(src.rows, src.cols + extra);
    for r in 0..src.rows {
        for c in 0..src.cols {
            if src.get(r, c) > 0 {
                for d in 0..=extra {
                    out.set(r, c + d, INK);
                }
            }
        }
    }
    out
}

fn shear_rows(src: &Bitmap, shear: f64) -> Bitmap {
    let offset = |r: usize| (shear * (src.rows - 1 - r) as f64).round() as usize;
    let max_off = offset(0);
    let mut out = Bitmap::new(src.rows, src.cols + max_off);
    for r in 0..src.rows {
        let off = offset(r);
        for c in 0..src.cols {
            if src.get(r, c) > 0 {
                out.set(r, c + off, INK);
            }
        }
    }
    out
}

/// The nine built-in fonts: six training styles and three held-out test
/// styles with unseen width, weight and slant settings.
pub fn builtin_fonts() -> Vec<GlyphFont> {
    let f = |name, shear, stroke_scale, width_scale, gap| {
        GlyphFont::build(
            name,
            FontStyle {
                shear,
                stroke_scale,
                width_scale,
            },
            gap,
        )
    };
    vec![
        // training
        f("plain", 0.0, 1.0, 1.0, 2),
        f("italic", 0.25, 1.0, 1.0, 2),
        f("bold", 0.0, 1.6, 1.0, 2),
        f("wide", 0.0, 1.0, 1.3, 2),
        f("bold-italic", 0.25, 1.6, 1.0, 2),
        f("condensed", 0.0, 1.0, 0.8, 1),
        // held-out test
        f("narrow", 0.0, 1.0, 0.65, 1),
        f("heavy", 0.0, 2.0, 1.1, 2),
        f("slant", 0.4, 1.3, 1.2, 2),
    ]
}

pub const TRAIN_FONT_NAMES: [&str; 6] =
    ["plain", "italic", "bold", "wide", "bold-italic", "condensed"];
pub const TEST_FONT_NAMES: [&str; 3] = ["narrow", "heavy", "slant"];

pub fn builtin_font(name: &str) -> Result<GlyphFont> {
    builtin_fonts()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown font {name:?}")))
}

/// Rasterise a text line: glyphs left to right separated by the font's gap,
/// background 0, ink positive is preserved from the glyph bitmaps.
pub fn render_line(text: &str, font: &GlyphFont, size: u32) -> Result<LineImage> {
    if text.is_empty() {
        return Err(Error::InvalidInput("empty text".into()));
    }
    let glyphs: Vec<&Bitmap> = text
        .chars()
        .map(|c| font.glyph(c, size))
        .collect::<Result<_>>()?;
    let gap = font.inter_glyph_gap();
    let height = size as usize;
    let width: usize =
        glyphs.iter().map(|g| g.cols).sum::<usize>() + gap * (glyphs.len() - 1);

    let mut pixels = ndarray::Array2::<f64>::zeros((height, width));
    let mut x = 0usize;
    for g in &glyphs {
        debug_assert_eq!(g.rows, height);
        for r in 0..g.rows {
            for c in 0..g.cols {
                let v = g.get(r, c);
                if v > 0 {
                    pixels[(r, x + c)] = v as f64;
                }
            }
        }
        x += g.cols + gap;
    }

    Ok(LineImage {
        pixels,
        transcript: text.to_owned(),
        font_name: font.name().to_owned(),
        font_size: size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_covers_alphabet_and_sizes() {
        for font in builtin_fonts() {
            assert_eq!(font.supported_sizes(), (8..=16).collect::<Vec<_>>());
            for size in 8..=16 {
                for c in ('a'..='z').chain(std::iter::once(' ')) {
                    let g = font.glyph(c, size).unwrap();
                    assert_eq!(g.rows, size as usize, "{} {c:?} size {size}", font.name());
                    if c != ' ' {
                        assert!(g.has_ink(), "{} {c:?} size {size} blank", font.name());
                    } else {
                        assert!(!g.has_ink());
                    }
                }
            }
        }
    }

    #[test]
    fn glyphs_stay_pairwise_distinct_in_every_font_and_size() {
        for font in builtin_fonts() {
            for size in 8..=16 {
                let letters: Vec<(char, &Bitmap)> = ('a'..='z')
                    .map(|c| (c, font.glyph(c, size).unwrap()))
                    .collect();
                for (i, (ca, a)) in letters.iter().enumerate() {
                    for (cb, b) in letters.iter().skip(i + 1) {
                        assert!(
                            a != b,
                            "font {} size {size}: {ca:?} and {cb:?} render identically",
                            font.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn render_rejects_empty_and_unknown() {
        let font = builtin_font("plain").unwrap();
        assert!(render_line("", &font, 12).is_err());
        assert!(matches!(
            render_line("aZb", &font, 12),
            Err(Error::UnsupportedChar('Z'))
        ));
    }

    #[test]
    fn widths_add_up_and_boxes_are_disjoint() {
        let font = builtin_font("plain").unwrap();
        let a = font.glyph('a', 12).unwrap().cols;
        let b = font.glyph('b', 12).unwrap().cols;
        let img = render_line("ab", &font, 12).unwrap();
        assert_eq!(img.pixels.ncols(), a + font.inter_glyph_gap() + b);
        // the gap columns carry no ink
        for c in a..a + font.inter_glyph_gap() {
            assert!(img.pixels.column(c).iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn repeated_glyph_is_a_shifted_copy() {
        let font = builtin_font("italic").unwrap();
        let img = render_line("aa", &font, 10).unwrap();
        let w = font.glyph('a', 10).unwrap().cols;
        let shift = w + font.inter_glyph_gap();
        let left = img.pixels.slice(ndarray::s![.., 0..w]);
        let right = img.pixels.slice(ndarray::s![.., shift..shift + w]);
        assert_eq!(left, right);
    }

    #[test]
    fn rendering_is_deterministic() {
        let font = builtin_font("heavy").unwrap();
        let a = render_line("deterministic", &font, 13).unwrap();
        let b = render_line("deterministic", &font, 13).unwrap();
        assert_eq!(a.pixels, b.pixels);
    }

    #[test]
    fn space_separates_words_with_blank_columns() {
        let font = builtin_font("plain").unwrap();
        let img = render_line("a a", &font, 12).unwrap();
        let aw = font.glyph('a', 12).unwrap().cols;
        let sw = font.glyph(' ', 12).unwrap().cols;
        let gap = font.inter_glyph_gap();
        for c in aw..aw + gap + sw + gap {
            assert!(img.pixels.column(c).iter().all(|&v| v == 0.0));
        }
    }
}
