//! Line-image preprocessing: height normalisation, statistical
//! normalisation, and slicing into fixed-width frame features.

use crate::{Error, Result};
use ndarray::Array2;

/// Height every line is scaled to before slicing.
pub const NORM_HEIGHT: usize = 30;
/// Column width of one frame.
pub const FRAME_WIDTH: usize = 2;
/// Feature length of one frame.
pub const FRAME_DIM: usize = NORM_HEIGHT * FRAME_WIDTH;
/// Hard cap on the number of time-steps per line.
pub const MAX_TIME_STEPS: usize = 700;

/// A rendered (or normalised) grayscale text line and its transcript.
#[derive(Debug, Clone)]
pub struct LineImage {
    pub pixels: Array2<f64>,
    pub transcript: String,
    pub font_name: String,
    pub font_size: u32,
}

/// Time-major frame features for one line: `T x 60`.
#[derive(Debug, Clone)]
pub struct FrameSequence {
    pub frames: Array2<f64>,
    pub transcript: String,
}

impl FrameSequence {
    pub fn len(&self) -> usize {
        self.frames.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.nrows() == 0
    }
}

/// Bilinear resample to height 30 (width scales with the aspect ratio),
/// then shift/scale to zero mean and unit standard deviation over all
/// pixels. A constant image maps to all zeros.
pub fn normalize(img: &LineImage) -> LineImage {
    let (h, w) = img.pixels.dim();
    assert!(h >= 1 && w >= 1, "empty image");
    let new_w = ((w as f64) * NORM_HEIGHT as f64 / h as f64).round().max(1.0) as usize;
    let resized = bilinear_resize(&img.pixels, NORM_HEIGHT, new_w);

    let n = (NORM_HEIGHT * new_w) as f64;
    let mean = resized.sum() / n;
    let var = resized.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let std = var.sqrt();
    let pixels = if std < 1e-8 {
        Array2::zeros((NORM_HEIGHT, new_w))
    } else {
        resized.mapv(|v| (v - mean) / std)
    };

    LineImage {
        pixels,
        transcript: img.transcript.clone(),
        font_name: img.font_name.clone(),
        font_size: img.font_size,
    }
}

fn bilinear_resize(src: &Array2<f64>, out_h: usize, out_w: usize) -> Array2<f64> {
    let (h, w) = src.dim();
    let mut out = Array2::zeros((out_h, out_w));
    let sy = h as f64 / out_h as f64;
    let sx = w as f64 / out_w as f64;
    for r in 0..out_h {
        // half-pixel-centre mapping, clamped at the borders
        let y = ((r as f64 + 0.5) * sy - 0.5).clamp(0.0, (h - 1) as f64);
        let y0 = y.floor() as usize;
        let y1 = (y0 + 1).min(h - 1);
        let fy = y - y0 as f64;
        for c in 0..out_w {
            let x = ((c as f64 + 0.5) * sx - 0.5).clamp(0.0, (w - 1) as f64);
            let x0 = x.floor() as usize;
            let x1 = (x0 + 1).min(w - 1);
            let fx = x - x0 as f64;
            let top = src[(y0, x0)] * (1.0 - fx) + src[(y0, x1)] * fx;
            let bot = src[(y1, x0)] * (1.0 - fx) + src[(y1, x1)] * fx;
            out[(r, c)] = top * (1.0 - fy) + bot * fy;
        }
    }
    out
}

/// Cut a normalised line into consecutive non-overlapping 2-pixel windows,
/// each flattened column-major into a 60-value frame. The width is
/// zero-padded on the right to an even number; `T = ceil(W / 2)`.
pub fn frame_slices(img: &LineImage) -> Result<FrameSequence> {
    let (h, w) = img.pixels.dim();
    if h != NORM_HEIGHT {
        return Err(Error::InvalidInput(format!(
            "frame_slices expects height {NORM_HEIGHT}, got {h}"
        )));
    }
    let t_len = w.div_ceil(FRAME_WIDTH);
    if t_len > MAX_TIME_STEPS {
        return Err(Error::LineTooLong {
            got: t_len,
            max: MAX_TIME_STEPS,
        });
    }
    let mut frames = Array2::zeros((t_len, FRAME_DIM));
    for t in 0..t_len {
        for dc in 0..FRAME_WIDTH {
            let c = t * FRAME_WIDTH + dc;
            if c >= w {
                break; // right padding stays zero
            }
            for r in 0..NORM_HEIGHT {
                frames[(t, dc * NORM_HEIGHT + r)] = img.pixels[(r, c)];
            }
        }
    }
    Ok(FrameSequence {
        frames,
        transcript: img.transcript.clone(),
    })
}

/// Average frames consumed per character: mean over the 26 letters of
/// `(glyph width + gap) / 2` at the given size.
pub fn frames_per_char(font: &super::GlyphFont, size: u32) -> Result<f64> {
    let gap = font.inter_glyph_gap() as f64;
    let mut total = 0.0;
    for c in 'a'..='z' {
        total += (font.glyph(c, size)?.cols as f64 + gap) / FRAME_WIDTH as f64;
    }
    Ok(total / 26.0)
}
