//! Indicator map artifacts: CSV table and 8-bit PGM image.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::Path;

use gibc_core::factorization::IndicatorMap;
use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder};

pub const CSV_HEADER: [&str; 6] = ["x", "y", "W", "w_mono", "w_dip", "alpha_mono"];

/// Writes one row per grid point in grid index order (x fastest).
pub fn write_csv<W: io::Write>(out: W, map: &IndicatorMap) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in &map.points {
        w.serialize((p.z[0], p.z[1], p.total, p.monopole, p.dipole, p.alpha_monopole))?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_csv(path: &Path, map: &IndicatorMap) -> io::Result<()> {
    write_csv(BufWriter::new(File::create(path)?), map).map_err(io::Error::other)
}

/// `log₁₀ W` mapped linearly onto `0..=255` over the map's own range. Image
/// rows run from the top of the sampling box (largest y) to the bottom.
pub fn grayscale(map: &IndicatorMap) -> Vec<u8> {
    let (nx, ny) = (map.grid.nx, map.grid.ny);
    let logs: Vec<f64> = map.totals().map(f64::log10).collect();
    let lo = logs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let mut pixels = Vec::with_capacity(nx * ny);
    for row in 0..ny {
        let iy = ny - 1 - row;
        for ix in 0..nx {
            let v = logs[iy * nx + ix];
            let t = if span > 0.0 { (v - lo) / span } else { 0.0 };
            pixels.push((255.0 * t).round().clamp(0.0, 255.0) as u8);
        }
    }
    pixels
}

/// Binary (P5) PGM of [`grayscale`].
pub fn write_pgm<W: io::Write>(out: W, map: &IndicatorMap) -> image::ImageResult<()> {
    let encoder = PnmEncoder::new(out).with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary));
    encoder.write_image(&grayscale(map), map.grid.nx as u32, map.grid.ny as u32, ExtendedColorType::L8)
}

pub fn save_pgm(path: &Path, map: &IndicatorMap) -> io::Result<()> {
    write_pgm(BufWriter::new(File::create(path)?), map).map_err(io::Error::other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gibc_core::factorization::{PointIndicator, SamplingGrid};

    fn tiny() -> IndicatorMap {
        let grid = SamplingGrid { x_min: 0.0, x_max: 1.0, y_min: 0.0, y_max: 1.0, nx: 2, ny: 2 };
        let points = (0..4)
            .map(|i| {
                let w = 10f64.powi(i);
                PointIndicator { z: grid.point(i as usize), total: w, monopole: w / 2.0, dipole: w / 2.0, alpha_monopole: 0.1, fallbacks: 0 }
            })
            .collect();
        IndicatorMap { grid, points, delta: 0.1, morozov_fallbacks: 0, clamped_eigenvalues: 0, largest_eigenvalue: 1.0 }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &tiny()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,W,w_mono,w_dip,alpha_mono");
        assert_eq!(lines[1], "0.0,0.0,1.0,0.5,0.5,0.1");
        assert_eq!(lines[2], "1.0,0.0,10.0,5.0,5.0,0.1");
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn pgm_is_binary_graymap() {
        let mut buf = Vec::new();
        write_pgm(&mut buf, &tiny()).unwrap();
        assert!(buf.starts_with(b"P5"));
        // logs 0,1,2,3; top row holds the larger y
        assert_eq!(&buf[buf.len() - 4..], &[170, 255, 0, 85]);
    }
}
