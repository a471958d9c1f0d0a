//! Rasterization and export of spectral subsets of the complex plane.
//!
//! Membership is evaluated at pixel centers (optionally at a 2×2 subgrid)
//! with the closed-disk convention `|p(z)| ≤ 1`. Pixel evaluation is pure
//! and parallel over rows; the assembly is position-addressed, so identical
//! inputs produce identical rasters regardless of thread count. The
//! pixel-to-point map places centers symmetrically about the window center,
//! so origin-centered square windows are exactly invariant under the
//! quarter-turn/conjugation symmetry closure.

use std::io::Write as IoWrite;
use std::path::Path;

use num_complex::Complex;
use num_traits::{Float, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::roots::{complex_coeffs, horner};
use crate::{C64, IntPoly};

/// A complex-plane viewport with a pixel grid.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Window<F: Float = f64> {
    pub center: Complex<F>,
    pub half_width: F,
    pub half_height: F,
    pub nx: u32,
    pub ny: u32,
}

impl<F: Float> Window<F> {
    pub fn new(
        center: Complex<F>,
        half_width: F,
        half_height: F,
        nx: u32,
        ny: u32,
    ) -> Result<Self> {
        let ok = half_width > F::zero()
            && half_height > F::zero()
            && half_width.is_finite()
            && half_height.is_finite()
            && center.re.is_finite()
            && center.im.is_finite()
            && nx > 0
            && ny > 0;
        if !ok {
            return Err(Error::BadWindow);
        }
        Ok(Window {
            center,
            half_width,
            half_height,
            nx,
            ny,
        })
    }

    /// Origin-centered square window.
    pub fn square(half_width: F, resolution: u32) -> Result<Self> {
        Window::new(Complex::zero(), half_width, half_width, resolution, resolution)
    }

    pub fn pixel_size(&self) -> (F, F) {
        let two = F::one() + F::one();
        (
            two * self.half_width / F::from(self.nx).unwrap(),
            two * self.half_height / F::from(self.ny).unwrap(),
        )
    }

    /// Point at fractional position (fx, fy) inside pixel (x, y); (0.5, 0.5)
    /// is the center. Pixel (0, 0) is top-left.
    pub fn point_at(&self, x: u32, y: u32, fx: F, fy: F) -> Complex<F> {
        let (dx, dy) = self.pixel_size();
        let two = F::one() + F::one();
        let tx = F::from(x).unwrap() + fx - F::from(self.nx).unwrap() / two;
        let ty = F::from(y).unwrap() + fy - F::from(self.ny).unwrap() / two;
        Complex::new(self.center.re + tx * dx, self.center.im - ty * dy)
    }

    pub fn pixel_center(&self, x: u32, y: u32) -> Complex<F> {
        let half = F::from(0.5).unwrap();
        self.point_at(x, y, half, half)
    }
}

/// Per-pixel membership (0/1) or iteration-count raster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    values: Vec<u32>,
}

impl RasterImage {
    fn new(width: u32, height: u32) -> Self {
        RasterImage {
            width,
            height,
            values: vec![0; width as usize * height as usize],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn value(&self, x: u32, y: u32) -> u32 {
        self.values[y as usize * self.width as usize + x as usize]
    }

    pub fn is_member(&self, x: u32, y: u32) -> bool {
        self.value(x, y) != 0
    }

    pub fn count_members(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    /// Pixel-wise OR of another raster's membership into this one.
    pub fn merge_members(&mut self, other: &RasterImage) {
        assert_eq!((self.width, self.height), (other.width, other.height));
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            if *b != 0 {
                *a = 1;
            }
        }
    }

    /// Pixel-wise superset test on membership.
    pub fn superset_of(&self, other: &RasterImage) -> bool {
        self.width == other.width
            && self.height == other.height
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(&a, &b)| b == 0 || a != 0)
    }
}

/// Sampling scheme for membership rasters.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Sampling {
    /// One test at the pixel center.
    #[default]
    Center,
    /// Four tests on a 2×2 subgrid; a pixel is a member if any subsample is.
    Grid2x2,
}

impl Sampling {
    fn offsets<F: Float>(&self) -> Vec<(F, F)> {
        let half = F::from(0.5).unwrap();
        match self {
            Sampling::Center => vec![(half, half)],
            Sampling::Grid2x2 => {
                let a = F::from(0.25).unwrap();
                let b = F::from(0.75).unwrap();
                vec![(a, a), (b, a), (a, b), (b, b)]
            }
        }
    }
}

/// Parallel membership rasterizer: rows are computed concurrently, each
/// pixel independently.
fn raster_by<F, T>(window: &Window<F>, sampling: Sampling, test: T) -> RasterImage
where
    F: Float + Send + Sync,
    T: Fn(Complex<F>) -> bool + Sync,
{
    let mut img = RasterImage::new(window.nx, window.ny);
    let offsets = sampling.offsets::<F>();
    let nx = window.nx as usize;
    img.values
        .par_chunks_mut(nx)
        .enumerate()
        .for_each(|(y, row)| {
            for (x, out) in row.iter_mut().enumerate() {
                let member = offsets
                    .iter()
                    .any(|&(fx, fy)| test(window.point_at(x as u32, y as u32, fx, fy)));
                *out = u32::from(member);
            }
        });
    img
}

fn disk_member<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> bool {
    horner(coeffs, z).norm_sqr() <= F::one()
}

/// Raster of the preimage `p⁻¹(unit disk)`: pixel set iff `|p(z)| ≤ 1` at
/// the sample point.
pub fn raster_preimage_disk(p: &IntPoly, window: &Window) -> Result<RasterImage> {
    raster_preimage_disk_sampled(p, window, Sampling::Center)
}

pub fn raster_preimage_disk_sampled(
    p: &IntPoly,
    window: &Window,
    sampling: Sampling,
) -> Result<RasterImage> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::DegreeTooSmall {
            context: "raster_preimage_disk",
            min: 1,
        });
    }
    let coeffs = complex_coeffs::<f64>(p);
    Ok(raster_by(window, sampling, |z| disk_member(&coeffs, z)))
}

/// The eight images of a point under the group generated by `z → iz` and
/// `z → z̄`.
fn symmetry_images<F: Float>(z: Complex<F>) -> [Complex<F>; 8] {
    let rot = |w: Complex<F>| Complex::new(-w.im, w.re);
    let a = z;
    let b = rot(a);
    let c = rot(b);
    let d = rot(c);
    let e = z.conj();
    let f = rot(e);
    let g = rot(f);
    let h = rot(g);
    [a, b, c, d, e, f, g, h]
}

/// Pixel-wise OR of disk preimages over a family of polynomials. With
/// `symmetry_closure` a pixel is also set when any image of its point under
/// the quarter-turn/conjugation group is a member.
pub fn raster_union(
    polys: &[IntPoly],
    window: &Window,
    symmetry_closure: bool,
) -> Result<RasterImage> {
    raster_union_sampled(polys, window, symmetry_closure, Sampling::Center)
}

pub fn raster_union_sampled(
    polys: &[IntPoly],
    window: &Window,
    symmetry_closure: bool,
    sampling: Sampling,
) -> Result<RasterImage> {
    let coeff_sets: Vec<Vec<C64>> = polys.iter().map(complex_coeffs::<f64>).collect();
    Ok(raster_by(window, sampling, |z| {
        if symmetry_closure {
            symmetry_images(z)
                .into_iter()
                .any(|w| coeff_sets.iter().any(|c| disk_member(c, w)))
        } else {
            coeff_sets.iter().any(|c| disk_member(c, z))
        }
    }))
}

/// Escape radius `R = max(2, 1 + Σ|non-leading coefficients|)` of a monic
/// polynomial of degree ≥ 2: once `|z| ≥ R` the orbit of `z` grows strictly,
/// so it can never return to the unit disk.
pub fn escape_radius(p: &IntPoly) -> Result<f64> {
    let d = p.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooSmall {
            context: "escape_radius",
            min: 2,
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic {
            context: "escape_radius",
        });
    }
    let sum: f64 = p.coeffs()[..d]
        .iter()
        .map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::INFINITY).abs())
        .sum();
    Ok((1.0 + sum).max(2.0))
}

/// Raster of the iterated preimage `⋃_{n ≤ n_max} p⁻ⁿ(unit disk)`: pixel set
/// iff some iterate `p⁽ⁿ⁾(z)` with `1 ≤ n ≤ n_max` lands in the disk. Orbits
/// that cross the escape radius are abandoned early.
pub fn raster_iterated_preimage(p: &IntPoly, n_max: usize, window: &Window) -> Result<RasterImage> {
    raster_iterated_preimage_sampled(p, n_max, window, Sampling::Center)
}

pub fn raster_iterated_preimage_sampled(
    p: &IntPoly,
    n_max: usize,
    window: &Window,
    sampling: Sampling,
) -> Result<RasterImage> {
    let d = p.degree().unwrap_or(0);
    if d < 1 || n_max < 1 {
        return Err(Error::DegreeTooSmall {
            context: "raster_iterated_preimage",
            min: 1,
        });
    }
    let coeffs = complex_coeffs::<f64>(p);
    // degree-1 orbits cannot run away faster than linearly; no early exit
    let escape_sqr = if d >= 2 {
        let r = escape_radius(p)?;
        r * r
    } else {
        f64::INFINITY
    };
    Ok(raster_by(window, sampling, |z| {
        let mut w = z;
        for _ in 1..=n_max {
            w = horner(&coeffs, w);
            let n2 = w.norm_sqr();
            if n2 <= 1.0 {
                return true;
            }
            if n2 > escape_sqr {
                return false;
            }
        }
        false
    }))
}

/// Raster of the filled Julia set: pixel set iff the orbit stays within the
/// escape radius for `max_iter` iterations.
pub fn raster_filled_julia(p: &IntPoly, max_iter: usize, window: &Window) -> Result<RasterImage> {
    raster_filled_julia_sampled(p, max_iter, window, Sampling::Center)
}

pub fn raster_filled_julia_sampled(
    p: &IntPoly,
    max_iter: usize,
    window: &Window,
    sampling: Sampling,
) -> Result<RasterImage> {
    let coeffs = complex_coeffs::<f64>(p);
    let r = escape_radius(p)?;
    let escape_sqr = r * r;
    Ok(raster_by(window, sampling, |z| {
        let mut w = z;
        for _ in 0..max_iter {
            w = horner(&coeffs, w);
            if w.norm_sqr() > escape_sqr {
                return false;
            }
        }
        true
    }))
}

/// Iteration-count variant of the filled Julia raster: each pixel stores how
/// many iterations its orbit survived (capped at `max_iter`, bounded orbits
/// store the cap). Meant for grayscale export, not the black/white one.
pub fn raster_filled_julia_counts(
    p: &IntPoly,
    max_iter: usize,
    window: &Window,
) -> Result<RasterImage> {
    let coeffs = complex_coeffs::<f64>(p);
    let r = escape_radius(p)?;
    let escape_sqr = r * r;
    let mut img = RasterImage::new(window.nx, window.ny);
    let nx = window.nx as usize;
    img.values
        .par_chunks_mut(nx)
        .enumerate()
        .for_each(|(y, row)| {
            for (x, out) in row.iter_mut().enumerate() {
                let mut w = window.pixel_center(x as u32, y as u32);
                let mut survived = max_iter as u32;
                for n in 0..max_iter {
                    w = horner(&coeffs, w);
                    if w.norm_sqr() > escape_sqr {
                        survived = n as u32;
                        break;
                    }
                }
                *out = survived;
            }
        });
    Ok(img)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    /// Binary portable pixmap (P6, 8-bit), written byte-deterministically.
    Ppm,
    Png,
}

impl ExportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ExportFormat::Ppm => "ppm",
            ExportFormat::Png => "png",
        }
    }
}

fn rgb_buffer(img: &RasterImage, circle: Option<&Window>) -> Vec<u8> {
    let mut buf = Vec::with_capacity(img.values.len() * 3);
    for v in &img.values {
        let byte = if *v != 0 { 0u8 } else { 255u8 };
        buf.extend_from_slice(&[byte, byte, byte]);
    }
    if let Some(w) = circle {
        // reference unit circle in red: pixels within half a pixel of |z| = 1
        let (dx, dy) = w.pixel_size();
        let tol = 0.5 * dx.max(dy);
        for y in 0..img.height {
            for x in 0..img.width {
                let z = w.pixel_center(x, y);
                if (z.norm() - 1.0).abs() <= tol {
                    let at = (y as usize * img.width as usize + x as usize) * 3;
                    buf[at] = 255;
                    buf[at + 1] = 0;
                    buf[at + 2] = 0;
                }
            }
        }
    }
    buf
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = std::fs::File::create(path).map_err(io_err)?;
    f.write_all(bytes).map_err(io_err)?;
    Ok(())
}

/// Serializes the raster to PPM bytes: members black, non-members white,
/// optional red reference unit circle.
pub fn ppm_bytes(img: &RasterImage, circle: Option<&Window>) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&rgb_buffer(img, circle));
    out
}

/// Writes the raster to `path` in the requested format. The PPM path is
/// byte-deterministic; pass a window to overlay the red unit circle.
pub fn export_image(
    img: &RasterImage,
    path: &Path,
    format: ExportFormat,
    circle: Option<&Window>,
) -> Result<()> {
    match format {
        ExportFormat::Ppm => write_file(path, &ppm_bytes(img, circle)),
        ExportFormat::Png => {
            let buf = rgb_buffer(img, circle);
            image::save_buffer_with_format(
                path,
                &buf,
                img.width,
                img.height,
                image::ExtendedColorType::Rgb8,
                image::ImageFormat::Png,
            )
            .map_err(|source| Error::ImageEncode {
                path: path.to_path_buf(),
                source,
            })
        }
    }
}

/// Writes an iteration-count raster as grayscale: pixels that survived all
/// `max_value` iterations are black, fast escapes are white.
pub fn export_counts_grayscale(
    img: &RasterImage,
    max_value: u32,
    path: &Path,
    format: ExportFormat,
) -> Result<()> {
    let max = max_value.max(1);
    let mut buf = Vec::with_capacity(img.values.len() * 3);
    for &v in &img.values {
        let g = 255 - ((255 * v.min(max)) / max) as u8;
        buf.extend_from_slice(&[g, g, g]);
    }
    match format {
        ExportFormat::Ppm => {
            let mut out = format!("P6\n{} {}\n255\n", img.width, img.height).into_bytes();
            out.extend_from_slice(&buf);
            write_file(path, &out)
        }
        ExportFormat::Png => image::save_buffer_with_format(
            path,
            &buf,
            img.width,
            img.height,
            image::ExtendedColorType::Rgb8,
            image::ImageFormat::Png,
        )
        .map_err(|source| Error::ImageEncode {
            path: path.to_path_buf(),
            source,
        }),
    }
}
