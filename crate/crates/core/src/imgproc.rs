//! Decoding-agnostic image preprocessing: greyscale conversion, shorter-side
//! resize, the 9-crop augmentation, pixel normalization and Gaussian
//! corruption. All operations are pure given their inputs; file decoding is
//! handled at the CLI boundary.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Decoded pixel grid with row-major floating intensities.
///
/// `pixels.len() == width * height * channels`, channel-interleaved.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub pixels: Vec<f32>,
}

/// Value range of the source pixels, declared by the caller of
/// [`normalize_pixels`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelRange {
    /// Source values in `[0, 255]`.
    Byte,
    /// Source values in `[0, 1]`.
    Unit,
}

impl PixelRange {
    fn max(self) -> f32 {
        match self {
            PixelRange::Byte => 255.0,
            PixelRange::Unit => 1.0,
        }
    }
}

impl RasterImage {
    pub fn new(width: usize, height: usize, channels: usize, pixels: Vec<f32>) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::UnsupportedChannels(channels));
        }
        if pixels.len() != width * height * channels {
            return Err(Error::ShapeMismatch(format!(
                "pixel buffer length {} does not match {}x{}x{}",
                pixels.len(),
                width,
                height,
                channels
            )));
        }
        Ok(RasterImage {
            width,
            height,
            channels,
            pixels,
        })
    }

    /// Constant-intensity single-channel image.
    pub fn filled(width: usize, height: usize, value: f32) -> Self {
        RasterImage {
            width,
            height,
            channels: 1,
            pixels: vec![value; width * height],
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f32 {
        self.pixels[(y * self.width + x) * self.channels + c]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, c: usize, v: f32) {
        self.pixels[(y * self.width + x) * self.channels + c] = v;
    }

    /// Clamped single-channel read; coordinates beyond the border repeat the
    /// nearest edge pixel.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> f32 {
        let xi = x.clamp(0, self.width as isize - 1) as usize;
        let yi = y.clamp(0, self.height as isize - 1) as usize;
        self.pixels[(yi * self.width + xi) * self.channels]
    }
}

/// Converts to a single luma channel with ITU-R 601 weights.
/// Single-channel input is returned unchanged.
pub fn to_greyscale(img: &RasterImage) -> Result<RasterImage> {
    match img.channels {
        1 => Ok(img.clone()),
        3 => {
            let mut pixels = Vec::with_capacity(img.width * img.height);
            for px in img.pixels.chunks_exact(3) {
                pixels.push(0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]);
            }
            Ok(RasterImage {
                width: img.width,
                height: img.height,
                channels: 1,
                pixels,
            })
        }
        c => Err(Error::UnsupportedChannels(c)),
    }
}

fn bilinear_sample(img: &RasterImage, fx: f32, fy: f32, c: usize) -> f32 {
    let x0f = fx.floor();
    let y0f = fy.floor();
    let tx = fx - x0f;
    let ty = fy - y0f;
    let x0 = (x0f as isize).clamp(0, img.width as isize - 1) as usize;
    let y0 = (y0f as isize).clamp(0, img.height as isize - 1) as usize;
    let x1 = (x0 + 1).min(img.width - 1);
    let y1 = (y0 + 1).min(img.height - 1);
    let p00 = img.get(x0, y0, c);
    let p10 = img.get(x1, y0, c);
    let p01 = img.get(x0, y1, c);
    let p11 = img.get(x1, y1, c);
    let top = p00 + (p10 - p00) * tx;
    let bot = p01 + (p11 - p01) * tx;
    top + (bot - top) * ty
}

/// Bilinear resize to exact target dimensions.
pub fn resize_exact(img: &RasterImage, new_w: usize, new_h: usize) -> Result<RasterImage> {
    if img.width == 0 || img.height == 0 {
        return Err(Error::DegenerateImage("zero dimension".into()));
    }
    if new_w == 0 || new_h == 0 {
        return Err(Error::DegenerateImage("zero target dimension".into()));
    }
    if new_w == img.width && new_h == img.height {
        return Ok(img.clone());
    }
    let sx = img.width as f32 / new_w as f32;
    let sy = img.height as f32 / new_h as f32;
    let mut pixels = Vec::with_capacity(new_w * new_h * img.channels);
    for y in 0..new_h {
        let fy = (y as f32 + 0.5) * sy - 0.5;
        for x in 0..new_w {
            let fx = (x as f32 + 0.5) * sx - 0.5;
            for c in 0..img.channels {
                pixels.push(bilinear_sample(img, fx, fy, c));
            }
        }
    }
    Ok(RasterImage {
        width: new_w,
        height: new_h,
        channels: img.channels,
        pixels,
    })
}

/// Resizes so the shorter dimension is exactly `s_g` pixels, preserving the
/// aspect ratio to the nearest integer.
pub fn resize_shorter_side(img: &RasterImage, s_g: usize) -> Result<RasterImage> {
    if s_g == 0 {
        return Err(Error::DegenerateImage("target size 0".into()));
    }
    if img.width == 0 || img.height == 0 {
        return Err(Error::DegenerateImage("zero dimension".into()));
    }
    let (new_w, new_h) = if img.width <= img.height {
        let h = ((img.height as f64 * s_g as f64 / img.width as f64).round() as usize).max(s_g);
        (s_g, h)
    } else {
        let w = ((img.width as f64 * s_g as f64 / img.height as f64).round() as usize).max(s_g);
        (w, s_g)
    };
    resize_exact(img, new_w, new_h)
}

/// The nine fixed crop positions, row by row.
pub const CROP_ORDER: [&str; 9] = ["nw", "n", "ne", "w", "c", "e", "sw", "s", "se"];

/// Offsets of the 9 crops (4 corners, 4 edges and center) in [`CROP_ORDER`]
/// order. Edge and center offsets are `floor((dim - s) / 2)`.
pub fn crop_offsets(width: usize, height: usize, s: usize) -> Result<[(usize, usize); 9]> {
    if width < s || height < s {
        return Err(Error::CropTooLarge {
            width,
            height,
            crop: s,
        });
    }
    let mx = width - s;
    let my = height - s;
    let cx = mx / 2;
    let cy = my / 2;
    Ok([
        (0, 0),
        (cx, 0),
        (mx, 0),
        (0, cy),
        (cx, cy),
        (mx, cy),
        (0, my),
        (cx, my),
        (mx, my),
    ])
}

/// Extracts an `s`x`s` window at pixel offset (`ox`, `oy`).
pub fn crop(img: &RasterImage, ox: usize, oy: usize, s: usize) -> Result<RasterImage> {
    if ox + s > img.width || oy + s > img.height {
        return Err(Error::CropTooLarge {
            width: img.width,
            height: img.height,
            crop: s,
        });
    }
    let mut pixels = Vec::with_capacity(s * s * img.channels);
    for y in oy..oy + s {
        let row = (y * img.width + ox) * img.channels;
        pixels.extend_from_slice(&img.pixels[row..row + s * img.channels]);
    }
    Ok(RasterImage {
        width: s,
        height: s,
        channels: img.channels,
        pixels,
    })
}

/// Produces the 9 crops of side `s` in fixed order (NW, N, NE, W, C, E, SW,
/// S, SE).
pub fn crop_variants(img: &RasterImage, s: usize) -> Result<Vec<RasterImage>> {
    let offsets = crop_offsets(img.width, img.height, s)?;
    offsets
        .iter()
        .map(|&(ox, oy)| crop(img, ox, oy, s))
        .collect()
}

/// Affine map of the declared source range onto `[-1, 1]`: 0 maps to -1 and
/// the range maximum to +1.
pub fn normalize_pixels(img: &RasterImage, range: PixelRange) -> RasterImage {
    let max = range.max();
    let mut out = img.clone();
    for v in &mut out.pixels {
        *v = 2.0 * (*v / max) - 1.0;
    }
    out
}

/// Inverse of [`normalize_pixels`] for the same declared range.
pub fn denormalize_pixels(img: &RasterImage, range: PixelRange) -> RasterImage {
    let max = range.max();
    let mut out = img.clone();
    for v in &mut out.pixels {
        *v = (*v + 1.0) * 0.5 * max;
    }
    out
}

/// Adds i.i.d. Gaussian noise of the given standard deviation to every
/// scalar. Values are not re-clipped afterwards; the reconstruction loss
/// targets the clean input.
pub fn add_gaussian_noise<R: Rng>(img: &RasterImage, sigma: f32, rng: &mut R) -> RasterImage {
    let mut out = img.clone();
    if sigma == 0.0 {
        return out;
    }
    let normal = Normal::new(0.0f32, sigma).expect("sigma must be non-negative and finite");
    for v in &mut out.pixels {
        *v += normal.sample(rng);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rgb(width: usize, height: usize, pixels: Vec<f32>) -> RasterImage {
        RasterImage::new(width, height, 3, pixels).unwrap()
    }

    #[test]
    fn greyscale_keeps_single_channel_input() {
        let img = RasterImage::filled(4, 3, 7.0);
        let g = to_greyscale(&img).unwrap();
        assert_eq!(g, img);
    }

    #[test]
    fn greyscale_of_equal_rgb_is_identity() {
        let img = rgb(2, 1, vec![0.4, 0.4, 0.4, 200.0, 200.0, 200.0]);
        let g = to_greyscale(&img).unwrap();
        assert!((g.get(0, 0, 0) - 0.4).abs() < 1e-6);
        assert!((g.get(1, 0, 0) - 200.0).abs() < 1e-4);
    }

    #[test]
    fn greyscale_pure_red_is_luma_weight() {
        let img = rgb(1, 1, vec![1.0, 0.0, 0.0]);
        let g = to_greyscale(&img).unwrap();
        assert!((g.get(0, 0, 0) - 0.299).abs() < 1e-7);
    }

    #[test]
    fn greyscale_is_monotone_in_intensity() {
        let a = to_greyscale(&rgb(1, 1, vec![0.2, 0.2, 0.2])).unwrap();
        let b = to_greyscale(&rgb(1, 1, vec![0.3, 0.3, 0.3])).unwrap();
        assert!(a.get(0, 0, 0) < b.get(0, 0, 0));
    }

    #[test]
    fn resize_noop_at_target() {
        let img = RasterImage::filled(96, 128, 1.0);
        let r = resize_shorter_side(&img, 96).unwrap();
        assert_eq!((r.width, r.height), (96, 128));
        assert_eq!(r.pixels, img.pixels);
    }

    #[test]
    fn resize_halves_both_dims() {
        let img = RasterImage::filled(192, 256, 3.0);
        let r = resize_shorter_side(&img, 96).unwrap();
        assert_eq!((r.width, r.height), (96, 128));
    }

    #[test]
    fn resize_wide_image() {
        let img = RasterImage::filled(256, 192, 3.0);
        let r = resize_shorter_side(&img, 96).unwrap();
        assert_eq!((r.width, r.height), (128, 96));
    }

    #[test]
    fn resize_rejects_degenerate() {
        let img = RasterImage {
            width: 0,
            height: 4,
            channels: 1,
            pixels: vec![],
        };
        assert!(resize_shorter_side(&img, 96).is_err());
    }

    #[test]
    fn crops_of_exact_size_are_all_identical() {
        let mut img = RasterImage::filled(8, 8, 0.0);
        img.set(3, 2, 0, 9.0);
        let crops = crop_variants(&img, 8).unwrap();
        assert_eq!(crops.len(), 9);
        for c in &crops {
            assert_eq!(c.pixels, img.pixels);
        }
    }

    #[test]
    fn crop_offsets_96x64_collapse_to_three() {
        let offsets = crop_offsets(96, 64, 64).unwrap();
        let xs: Vec<usize> = offsets.iter().map(|o| o.0).collect();
        assert_eq!(xs, vec![0, 16, 32, 0, 16, 32, 0, 16, 32]);
        assert!(offsets.iter().all(|o| o.1 == 0));
        let distinct: std::collections::BTreeSet<_> = offsets.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn crop_rejects_small_image() {
        let img = RasterImage::filled(32, 63, 0.0);
        assert!(matches!(
            crop_variants(&img, 64),
            Err(Error::CropTooLarge { .. })
        ));
    }

    #[test]
    fn normalize_byte_endpoints_and_midpoint() {
        let img = RasterImage::filled(1, 3, 0.0);
        let mut img = img;
        img.pixels = vec![0.0, 255.0, 127.5];
        let n = normalize_pixels(&img, PixelRange::Byte);
        assert!((n.pixels[0] + 1.0).abs() < 1e-7);
        assert!((n.pixels[1] - 1.0).abs() < 1e-7);
        assert!(n.pixels[2].abs() < 1e-7);
    }

    #[test]
    fn normalize_unit_range_affine() {
        let mut img = RasterImage::filled(1, 1, 0.25);
        img.pixels = vec![0.25];
        let n = normalize_pixels(&img, PixelRange::Unit);
        assert!((n.pixels[0] + 0.5).abs() < 1e-7);
    }

    #[test]
    fn noise_with_zero_sigma_is_identity() {
        let img = RasterImage::filled(5, 5, 0.3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let out = add_gaussian_noise(&img, 0.0, &mut rng);
        assert_eq!(out.pixels, img.pixels);
    }

    #[test]
    fn noise_sample_mean_is_centered() {
        // 10^6 scalars; the sample mean of (x~ - x) stays within 3*sigma/sqrt(n).
        let n = 1_000_000usize;
        let img = RasterImage {
            width: n,
            height: 1,
            channels: 1,
            pixels: vec![0.0; n],
        };
        let sigma = 0.05f32;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let out = add_gaussian_noise(&img, sigma, &mut rng);
        let mean: f64 = out.pixels.iter().map(|&v| v as f64).sum::<f64>() / n as f64;
        let bound = 3.0 * sigma as f64 / (n as f64).sqrt();
        assert!(
            mean.abs() <= bound,
            "sample mean {mean} exceeds bound {bound}"
        );
    }

    #[test]
    fn noise_is_deterministic_under_seed() {
        let img = RasterImage::filled(16, 16, 0.5);
        let a = add_gaussian_noise(&img, 0.05, &mut ChaCha8Rng::seed_from_u64(3));
        let b = add_gaussian_noise(&img, 0.05, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a.pixels, b.pixels);
    }

    proptest! {
        #[test]
        fn crop_variants_always_nine_of_exact_size(
            w in 8usize..40, h in 8usize..40, s in 1usize..8
        ) {
            let img = RasterImage::filled(w, h, 0.5);
            let crops = crop_variants(&img, s).unwrap();
            prop_assert_eq!(crops.len(), 9);
            for c in crops {
                prop_assert_eq!((c.width, c.height), (s, s));
            }
        }

        #[test]
        fn normalize_round_trips(v in 0.0f32..=255.0) {
            let mut img = RasterImage::filled(1, 1, v);
            img.pixels = vec![v];
            let n = normalize_pixels(&img, PixelRange::Byte);
            prop_assert!(n.pixels[0] >= -1.0 - 1e-6 && n.pixels[0] <= 1.0 + 1e-6);
            let d = denormalize_pixels(&n, PixelRange::Byte);
            prop_assert!((d.pixels[0] - v).abs() < 1e-4);
        }
    }
}
