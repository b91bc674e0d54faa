//! Netpbm graymap (PGM) reading and writing, plain (P2) and raw (P5).

use std::fs;
use std::path::Path;

use ndarray::Array2;

use super::DataError;
use crate::patches::Image;

struct Header {
    magic: [u8; 2],
    width: usize,
    height: usize,
    maxval: u32,
    /// Offset of the first raster byte.
    data_start: usize,
}

fn skip_whitespace_and_comments(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() {
        match bytes[pos] {
            b'#' => {
                while pos < bytes.len() && bytes[pos] != b'\n' && bytes[pos] != b'\r' {
                    pos += 1;
                }
            }
            b if b.is_ascii_whitespace() => pos += 1,
            _ => break,
        }
    }
    pos
}

fn read_header_int(bytes: &[u8], pos: &mut usize, field: &str) -> Result<u32, DataError> {
    *pos = skip_whitespace_and_comments(bytes, *pos);
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(DataError::MalformedHeader(format!("missing {field}")));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| DataError::MalformedHeader(format!("{field} out of range")))
}

fn parse_header(bytes: &[u8]) -> Result<Header, DataError> {
    if bytes.len() < 2 {
        return Err(DataError::MalformedHeader("file too short for a magic number".into()));
    }
    let magic = [bytes[0], bytes[1]];
    if &magic != b"P2" && &magic != b"P5" {
        return Err(DataError::UnsupportedMagic(String::from_utf8_lossy(&magic).into_owned()));
    }
    let mut pos = 2;
    let width = read_header_int(bytes, &mut pos, "width")? as usize;
    let height = read_header_int(bytes, &mut pos, "height")? as usize;
    let maxval = read_header_int(bytes, &mut pos, "maxval")?;
    if width == 0 || height == 0 {
        return Err(DataError::MalformedHeader("zero image dimension".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(DataError::MalformedHeader(format!("maxval {maxval} outside 1..=65535")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        Some(_) => return Err(DataError::MalformedHeader("no whitespace after maxval".into())),
        None => {}
    }
    Ok(Header { magic, width, height, maxval, data_start: pos })
}

/// Decodes a PGM byte buffer; pixels are divided by maxval into `[0, 1]`.
pub fn decode_pgm(bytes: &[u8]) -> Result<Image, DataError> {
    let h = parse_header(bytes)?;
    let count = h.width * h.height;
    let scale = 1.0 / h.maxval as f64;
    let data = &bytes[h.data_start.min(bytes.len())..];
    let mut raw = Vec::with_capacity(count);
    if &h.magic == b"P5" {
        let bytes_per = if h.maxval < 256 { 1 } else { 2 };
        let needed = count * bytes_per;
        if data.len() < needed {
            return Err(DataError::Truncated { expected: needed, actual: data.len() });
        }
        if bytes_per == 1 {
            raw.extend(data[..count].iter().map(|&b| b as u32));
        } else {
            raw.extend(data[..needed].chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]]) as u32));
        }
    } else {
        let mut pos = 0;
        while raw.len() < count {
            pos = skip_whitespace_and_comments(data, pos);
            if pos >= data.len() {
                return Err(DataError::Truncated { expected: count, actual: raw.len() });
            }
            let start = pos;
            while pos < data.len() && data[pos].is_ascii_digit() {
                pos += 1;
            }
            let value = std::str::from_utf8(&data[start..pos])
                .ok()
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| DataError::MalformedRaster(format!("bad sample at byte {}", h.data_start + start)))?;
            raw.push(value);
        }
    }
    if let Some(&v) = raw.iter().find(|&&v| v > h.maxval) {
        return Err(DataError::MalformedRaster(format!("sample {v} exceeds maxval {}", h.maxval)));
    }
    let pixels = Array2::from_shape_vec((h.height, h.width), raw.into_iter().map(|v| v as f64 * scale).collect())
        .expect("raster length checked");
    Ok(Image::normalized(pixels)?)
}

/// Loads a P2 or P5 PGM file.
pub fn load_pgm(path: impl AsRef<Path>) -> Result<Image, DataError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| DataError::io(path, e))?;
    decode_pgm(&bytes)
}

/// Quantizes `round(p * maxval)` and encodes as raw P5.
pub fn encode_pgm(image: &Image, maxval: u16) -> Result<Vec<u8>, DataError> {
    if maxval == 0 {
        return Err(DataError::MalformedHeader("maxval must be positive".into()));
    }
    if let Some(&v) = image.pixels().iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(DataError::OutOfRange(v));
    }
    let mut out = format!("P5\n{} {}\n{}\n", image.width(), image.height(), maxval).into_bytes();
    let wide = maxval > 255;
    for &p in image.pixels().iter() {
        let q = (p * maxval as f64).round() as u16;
        if wide {
            out.extend_from_slice(&q.to_be_bytes());
        } else {
            out.push(q as u8);
        }
    }
    Ok(out)
}

pub fn save_pgm(image: &Image, path: impl AsRef<Path>, maxval: u16) -> Result<(), DataError> {
    let path = path.as_ref();
    let bytes = encode_pgm(image, maxval)?;
    fs::write(path, bytes).map_err(|e| DataError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn plain_pgm_scaled_by_maxval() {
        let img = decode_pgm(b"P2\n# comment\n2 2\n255\n0 255\n0 255\n").unwrap();
        assert_eq!(img.pixels().iter().copied().collect::<Vec<_>>(), vec![0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn plain_and_raw_agree() {
        let plain = decode_pgm(b"P2 3 2 7\n0 1 2\n3 4 7\n").unwrap();
        let raw = decode_pgm(&[b"P5 3 2 7\n".as_slice(), &[0, 1, 2, 3, 4, 7]].concat()).unwrap();
        assert_eq!(plain, raw);
        assert_eq!((plain.height(), plain.width()), (2, 3));
    }

    #[test]
    fn sixteen_bit_raw() {
        let img = decode_pgm(&[b"P5 2 1 65535\n".as_slice(), &[0xff, 0xff, 0x80, 0x00]].concat()).unwrap();
        assert_eq!(img.pixels()[[0, 0]], 1.0);
        assert!((img.pixels()[[0, 1]] - 32768.0 / 65535.0).abs() < 1e-15);
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(decode_pgm(b"P6 1 1 255\n\0\0\0"), Err(DataError::UnsupportedMagic(_))));
        assert!(matches!(decode_pgm(b"P5 2 x 255\n"), Err(DataError::MalformedHeader(_))));
        assert!(matches!(decode_pgm(b"P5 2 2 70000\n"), Err(DataError::MalformedHeader(_))));
        assert!(matches!(decode_pgm(b"P5 2 2 255\n\x01\x02"), Err(DataError::Truncated { .. })));
        assert!(matches!(decode_pgm(b"P2 2 2 255\n1 2 3"), Err(DataError::Truncated { .. })));
        assert!(matches!(decode_pgm(b"P2 1 1 10\n11\n"), Err(DataError::MalformedRaster(_))));
    }

    #[test]
    fn save_load_within_half_step() {
        let dir = tempfile::tempdir().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let img = Image::normalized(Array2::from_shape_fn((5, 6), |_| rng.random_range(0.0..=1.0))).unwrap();
        for maxval in [255u16, 65535] {
            let path = dir.path().join(format!("r{maxval}.pgm"));
            save_pgm(&img, &path, maxval).unwrap();
            let back = load_pgm(&path).unwrap();
            let bound = 1.0 / (2.0 * maxval as f64) + 1e-15;
            for (a, b) in img.pixels().iter().zip(back.pixels().iter()) {
                assert!((a - b).abs() <= bound);
            }
        }
    }

    #[test]
    fn zero_image_payload_is_zero() {
        let img = Image::normalized(Array2::zeros((3, 3))).unwrap();
        let bytes = encode_pgm(&img, 255).unwrap();
        let header_len = b"P5\n3 3\n255\n".len();
        assert!(bytes[header_len..].iter().all(|&b| b == 0));
        assert_eq!(bytes.len(), header_len + 9);
    }

    #[test]
    fn save_rejects_out_of_range() {
        let img = Image::normalized(Array2::from_elem((1, 1), 1.5)).unwrap();
        assert!(matches!(encode_pgm(&img, 255), Err(DataError::OutOfRange(_))));
    }
}
