//! Multispectral images: band loading and saving (8-bit PNG or binary PGM,
//! raw volumes with a text sidecar), RGB composition, label rendering and
//! quantization by centroid substitution.

use std::fs;
use std::io::{BufWriter, Cursor, Write};
use std::path::{Path, PathBuf};

use crate::data::{denormalize, normalize, Dataset, FeatureVector};
use crate::error::{Error, Result};
use crate::model::Classifier;

/// `height x width` grid of `bands`-channel pixels with values in `0..=l_max`,
/// stored row-major and pixel-interleaved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultispectralImage {
    width: usize,
    height: usize,
    bands: usize,
    l_max: u32,
    pixels: Vec<u16>,
}

impl MultispectralImage {
    pub fn new(width: usize, height: usize, bands: usize, l_max: u32, pixels: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 || bands == 0 {
            return Err(Error::ShapeMismatch(format!("degenerate shape {width}x{height}x{bands}")));
        }
        if l_max == 0 || l_max > u16::MAX as u32 {
            return Err(Error::invalid("l_max", format!("{l_max} is not in 1..=65535")));
        }
        if pixels.len() != width * height * bands {
            return Err(Error::ShapeMismatch(format!(
                "{} samples for a {width}x{height}x{bands} image",
                pixels.len()
            )));
        }
        if let Some(&v) = pixels.iter().find(|&&v| v as u32 > l_max) {
            return Err(Error::OutOfRange { value: v as u32, l_max });
        }
        Ok(MultispectralImage { width, height, bands, l_max, pixels })
    }

    /// Stacks single-band planes of equal size into one image.
    pub fn from_planes(width: usize, height: usize, l_max: u32, planes: &[Vec<u16>]) -> Result<Self> {
        let n = width * height;
        for (b, p) in planes.iter().enumerate() {
            if p.len() != n {
                return Err(Error::ShapeMismatch(format!("band {b} has {} samples, expected {n}", p.len())));
            }
        }
        let mut pixels = Vec::with_capacity(n * planes.len());
        for i in 0..n {
            pixels.extend(planes.iter().map(|p| p[i]));
        }
        Self::new(width, height, planes.len(), l_max, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn samples(&self) -> &[u16] {
        &self.pixels
    }

    pub fn pixel(&self, i: usize) -> &[u16] {
        &self.pixels[i * self.bands..(i + 1) * self.bands]
    }

    pub fn pixel_iter(&self) -> impl Iterator<Item = &[u16]> {
        self.pixels.chunks_exact(self.bands)
    }

    pub fn band(&self, b: usize) -> Vec<u16> {
        self.pixel_iter().map(|p| p[b]).collect()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.bands == other.bands
            && self.l_max == other.l_max
    }

    /// Every pixel as a normalized feature vector.
    pub fn to_dataset(&self) -> Result<Dataset> {
        Dataset::from_raw(self.pixel_iter(), self.bands, self.l_max)
    }
}

/// Pools the pixels of several slices into one training set.
pub fn pooled_dataset(slices: &[MultispectralImage]) -> Result<Dataset> {
    let first = slices.first().ok_or(Error::EmptyDataset)?;
    let mut points = Vec::new();
    for s in slices {
        if s.bands != first.bands || s.l_max != first.l_max {
            return Err(Error::ShapeMismatch("slices disagree on bands or l_max".into()));
        }
        for p in s.pixel_iter() {
            points.push(normalize(p, s.l_max)?);
        }
    }
    Dataset::new(points, first.bands, first.l_max)
}

/// Class index per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelImage {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<usize>,
    pub palette_size: usize,
}

// ---------------------------------------------------------------------------
// Band files

const PNG_MAGIC: &[u8] = b"\x89PNG\r\n\x1a\n";

/// Grayscale plane read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayPlane {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

/// Reads an 8-bit grayscale PNG or binary PGM, detected by magic bytes.
pub fn read_gray(path: &Path) -> Result<GrayPlane> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(PNG_MAGIC) {
        decode_png_gray(&bytes, path)
    } else if bytes.starts_with(b"P5") {
        decode_pgm(&bytes, path)
    } else {
        Err(Error::format(path, "neither PNG nor binary PGM"))
    }
}

fn decode_png_gray(bytes: &[u8], path: &Path) -> Result<GrayPlane> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::IDENTITY);
    let mut reader = decoder.read_info().map_err(|e| Error::format(path, e.to_string()))?;
    let info = reader.info();
    if info.color_type != png::ColorType::Grayscale || info.bit_depth != png::BitDepth::Eight {
        return Err(Error::format(
            path,
            format!("expected 8-bit grayscale, found {:?} {:?}", info.color_type, info.bit_depth),
        ));
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::format(path, "image too large"))?;
    let mut buf = vec![0; size];
    let frame = reader.next_frame(&mut buf).map_err(|e| Error::format(path, e.to_string()))?;
    buf.truncate(frame.buffer_size());
    Ok(GrayPlane {
        width: frame.width as usize,
        height: frame.height as usize,
        data: buf,
    })
}

fn decode_pgm(bytes: &[u8], path: &Path) -> Result<GrayPlane> {
    // Header: magic, width, height, maxval, separated by whitespace and
    // comments, then exactly one whitespace byte before the raster.
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in fields.iter_mut() {
        loop {
            match bytes.get(pos) {
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(_) => break,
                None => return Err(Error::format(path, "truncated PGM header")),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format(path, "bad PGM header field"))?;
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::format(path, "bad PGM header terminator"));
    }
    pos += 1;
    let [width, height, maxval] = fields;
    if maxval == 0 || maxval > 255 {
        return Err(Error::format(path, format!("expected 8-bit PGM, maxval is {maxval}")));
    }
    let n = width * height;
    let raster = bytes
        .get(pos..pos + n)
        .ok_or_else(|| Error::format(path, "truncated PGM raster"))?;
    Ok(GrayPlane { width, height, data: raster.to_vec() })
}

fn is_pgm(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm"))
}

/// Writes an 8-bit grayscale plane; `.pgm` paths get binary PGM, anything
/// else PNG.
pub fn write_gray(path: &Path, plane: &GrayPlane) -> Result<()> {
    if is_pgm(path) {
        let mut out = format!("P5\n{} {}\n255\n", plane.width, plane.height).into_bytes();
        out.extend_from_slice(&plane.data);
        fs::write(path, out).map_err(|e| Error::io(path, e))
    } else {
        write_png(path, plane.width, plane.height, png::ColorType::Grayscale, 255, &widen(&plane.data))
    }
}

fn widen(data: &[u8]) -> Vec<u16> {
    data.iter().map(|&v| v as u16).collect()
}

fn write_png(
    path: &Path,
    width: usize,
    height: usize,
    color: png::ColorType,
    l_max: u32,
    samples: &[u16],
) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let w = BufWriter::new(file);
    let mut enc = png::Encoder::new(w, width as u32, height as u32);
    enc.set_color(color);
    let wide = l_max > 255;
    enc.set_depth(if wide { png::BitDepth::Sixteen } else { png::BitDepth::Eight });
    let data: Vec<u8> = if wide {
        samples.iter().flat_map(|v| v.to_be_bytes()).collect()
    } else {
        samples.iter().map(|&v| v as u8).collect()
    };
    let to_err = |e: png::EncodingError| Error::format(path, e.to_string());
    let mut writer = enc.write_header().map_err(to_err)?;
    writer.write_image_data(&data).map_err(to_err)?;
    writer.finish().map_err(to_err)
}

/// Loads one file per band into a multispectral image with `l_max` 255.
pub fn load_bands<P: AsRef<Path>>(paths: &[P]) -> Result<MultispectralImage> {
    if paths.is_empty() {
        return Err(Error::invalid("bands", "at least one band file is required"));
    }
    let planes = paths
        .iter()
        .map(|p| read_gray(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let (w, h) = (planes[0].width, planes[0].height);
    for (p, path) in planes.iter().zip(paths) {
        if (p.width, p.height) != (w, h) {
            return Err(Error::ShapeMismatch(format!(
                "{} is {}x{}, expected {w}x{h}",
                path.as_ref().display(),
                p.width,
                p.height
            )));
        }
    }
    let wide: Vec<Vec<u16>> = planes.iter().map(|p| widen(&p.data)).collect();
    MultispectralImage::from_planes(w, h, 255, &wide)
}

/// Writes each band of an 8-bit image to its own grayscale file.
pub fn save_bands<P: AsRef<Path>>(img: &MultispectralImage, paths: &[P]) -> Result<()> {
    if paths.len() != img.bands {
        return Err(Error::ShapeMismatch(format!("{} paths for {} bands", paths.len(), img.bands)));
    }
    if img.l_max > 255 {
        return Err(Error::invalid("l_max", "band files are 8-bit"));
    }
    for (b, path) in paths.iter().enumerate() {
        let plane = GrayPlane {
            width: img.width,
            height: img.height,
            data: img.band(b).into_iter().map(|v| v as u8).collect(),
        };
        write_gray(path.as_ref(), &plane)?;
    }
    Ok(())
}

/// Writes a 1- or 3-band image as a grayscale or RGB PNG (16-bit when
/// `l_max` exceeds 255).
pub fn save_png(img: &MultispectralImage, path: &Path) -> Result<()> {
    let color = match img.bands {
        1 => png::ColorType::Grayscale,
        3 => png::ColorType::Rgb,
        n => return Err(Error::ShapeMismatch(format!("cannot store {n} bands in one PNG"))),
    };
    write_png(path, img.width, img.height, color, img.l_max, &img.pixels)
}

// ---------------------------------------------------------------------------
// Raw volumes

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ByteOrder {
    Little,
    Big,
}

/// Sidecar description of a headerless volume: `width`, `height`, `slices`,
/// `bits` (8 or 16), `byte_order` (`little` or `big`) and an optional
/// `l_max`, one `key = value` per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawVolumeHeader {
    pub width: usize,
    pub height: usize,
    pub slices: usize,
    pub bits: u8,
    pub byte_order: ByteOrder,
    pub l_max: u32,
}

impl RawVolumeHeader {
    pub fn sidecar_path(raw: &Path) -> PathBuf {
        let mut s = raw.as_os_str().to_owned();
        s.push(".hdr");
        PathBuf::from(s)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let kv = crate::config::parse_key_values(text).map_err(|m| Error::format(path, m))?;
        let get = |k: &str| kv.get(k).map(String::as_str);
        let num = |k: &str| -> Result<usize> {
            get(k)
                .ok_or_else(|| Error::format(path, format!("missing `{k}`")))?
                .parse()
                .map_err(|_| Error::format(path, format!("`{k}` is not an integer")))
        };
        let bits = match get("bits").unwrap_or("8") {
            "8" => 8,
            "16" => 16,
            other => return Err(Error::format(path, format!("unsupported bits `{other}`"))),
        };
        let byte_order = match get("byte_order").unwrap_or("little") {
            "little" => ByteOrder::Little,
            "big" => ByteOrder::Big,
            other => return Err(Error::format(path, format!("unknown byte_order `{other}`"))),
        };
        let l_max = match get("l_max") {
            Some(v) => v.parse().map_err(|_| Error::format(path, "`l_max` is not an integer"))?,
            None => (1u32 << bits) - 1,
        };
        let h = RawVolumeHeader {
            width: num("width")?,
            height: num("height")?,
            slices: num("slices")?,
            bits,
            byte_order,
            l_max,
        };
        if h.width == 0 || h.height == 0 || h.slices == 0 || h.l_max == 0 || h.l_max >= 1 << bits {
            return Err(Error::format(path, "degenerate volume header"));
        }
        Ok(h)
    }

    pub fn to_text(&self) -> String {
        format!(
            "width = {}\nheight = {}\nslices = {}\nbits = {}\nbyte_order = {}\nl_max = {}\n",
            self.width,
            self.height,
            self.slices,
            self.bits,
            match self.byte_order {
                ByteOrder::Little => "little",
                ByteOrder::Big => "big",
            },
            self.l_max
        )
    }
}

/// Reads a raw single-band volume (sidecar at `<path>.hdr`) as one plane per slice.
pub fn load_raw_volume(path: &Path) -> Result<(RawVolumeHeader, Vec<Vec<u16>>)> {
    let side = RawVolumeHeader::sidecar_path(path);
    let text = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let header = RawVolumeHeader::parse(&text, &side)?;
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let per_sample = header.bits as usize / 8;
    let plane = header.width * header.height;
    let expected = plane * header.slices * per_sample;
    if bytes.len() != expected {
        return Err(Error::format(path, format!("{} bytes, header implies {expected}", bytes.len())));
    }
    let samples: Vec<u16> = match (header.bits, header.byte_order) {
        (8, _) => widen(&bytes),
        (_, ByteOrder::Little) => bytes.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]])).collect(),
        (_, ByteOrder::Big) => bytes.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect(),
    };
    if let Some(&v) = samples.iter().find(|&&v| v as u32 > header.l_max) {
        return Err(Error::OutOfRange { value: v as u32, l_max: header.l_max });
    }
    let slices = samples.chunks_exact(plane).map(<[u16]>::to_vec).collect();
    Ok((header, slices))
}

/// Writes a raw single-band volume and its sidecar.
pub fn write_raw_volume(path: &Path, header: &RawVolumeHeader, slices: &[Vec<u16>]) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path).map_err(|e| Error::io(path, e))?);
    for v in slices.iter().flatten() {
        let r = match (header.bits, header.byte_order) {
            (8, _) => out.write_all(&[*v as u8]),
            (_, ByteOrder::Little) => out.write_all(&v.to_le_bytes()),
            (_, ByteOrder::Big) => out.write_all(&v.to_be_bytes()),
        };
        r.map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))?;
    let side = RawVolumeHeader::sidecar_path(path);
    fs::write(&side, header.to_text()).map_err(|e| Error::io(&side, e))
}

/// Combines one raw volume per band into per-slice multispectral images.
pub fn load_raw_bands<P: AsRef<Path>>(paths: &[P]) -> Result<Vec<MultispectralImage>> {
    if paths.is_empty() {
        return Err(Error::invalid("volume", "at least one volume is required"));
    }
    let vols = paths
        .iter()
        .map(|p| load_raw_volume(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let h0 = &vols[0].0;
    for (h, _) in &vols {
        if (h.width, h.height, h.slices, h.l_max) != (h0.width, h0.height, h0.slices, h0.l_max) {
            return Err(Error::ShapeMismatch("band volumes disagree in shape or l_max".into()));
        }
    }
    (0..h0.slices)
        .map(|s| {
            let planes: Vec<Vec<u16>> = vols.iter().map(|(_, v)| v[s].clone()).collect();
            MultispectralImage::from_planes(h0.width, h0.height, h0.l_max, &planes)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Composition, labels, quantization

/// RGB preview with R, G and B taken from the given bands.
pub fn compose_rgb(img: &MultispectralImage, order: [usize; 3]) -> Result<MultispectralImage> {
    if let Some(&b) = order.iter().find(|&&b| b >= img.bands) {
        return Err(Error::invalid("band_order", format!("band {b} does not exist in a {}-band image", img.bands)));
    }
    let pixels = img.pixel_iter().flat_map(|p| order.map(|b| p[b])).collect();
    MultispectralImage::new(img.width, img.height, 3, img.l_max, pixels)
}

/// Label colors: the PASCAL VOC colormap, which spreads the bits of the index
/// over the three channels and is therefore injective on `0..256`.
pub fn palette() -> [[u8; 3]; 256] {
    let mut table = [[0u8; 3]; 256];
    for (i, entry) in table.iter_mut().enumerate() {
        let mut c = i;
        for j in 0..8 {
            for (ch, v) in entry.iter_mut().enumerate() {
                *v |= (((c >> ch) & 1) as u8) << (7 - j);
            }
            c >>= 3;
        }
    }
    table
}

/// Renders labels as an 8-bit RGB image using [`palette`].
pub fn render_labels(labels: &LabelImage) -> Result<MultispectralImage> {
    if labels.palette_size > 256 {
        return Err(Error::invalid("palette_size", format!("{} classes exceed the 256-color palette", labels.palette_size)));
    }
    let table = palette();
    let mut pixels = Vec::with_capacity(labels.labels.len() * 3);
    for &l in &labels.labels {
        if l >= labels.palette_size {
            return Err(Error::Malformed(format!("label {l} >= palette size {}", labels.palette_size)));
        }
        pixels.extend(table[l].iter().map(|&v| v as u16));
    }
    MultispectralImage::new(labels.width, labels.height, 3, 255, pixels)
}

/// Replaces every pixel by the prototype of its class.
pub fn quantize<C: Classifier + ?Sized>(
    img: &MultispectralImage,
    model: &C,
) -> Result<(MultispectralImage, LabelImage)> {
    if model.dim() != img.bands {
        return Err(Error::DimensionMismatch { expected: model.dim(), found: img.bands });
    }
    let codes: Vec<Vec<u16>> = model
        .prototypes()
        .iter()
        .map(|c| denormalize(c, img.l_max))
        .collect();
    let mut pixels = Vec::with_capacity(img.pixels.len());
    let mut labels = Vec::with_capacity(img.pixel_count());
    let mut x = FeatureVector::zeros(img.bands);
    let scale = img.l_max as f64;
    for p in img.pixel_iter() {
        for (xi, &v) in x.as_mut_slice().iter_mut().zip(p) {
            *xi = v as f64 / scale;
        }
        let k = model.classify(&x)?;
        pixels.extend_from_slice(&codes[k]);
        labels.push(k);
    }
    let quantized = MultispectralImage::new(img.width, img.height, img.bands, img.l_max, pixels)?;
    let labels = LabelImage {
        width: img.width,
        height: img.height,
        labels,
        palette_size: codes.len(),
    };
    Ok((quantized, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{Codebook, MethodTag};
    use rand::{Rng, SeedableRng};

    fn random_image(w: usize, h: usize, bands: usize, seed: u64) -> MultispectralImage {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let px = (0..w * h * bands).map(|_| rng.random_range(0..=255u16)).collect();
        MultispectralImage::new(w, h, bands, 255, px).unwrap()
    }

    #[test]
    fn constant_bands_stack() {
        let dir = tempfile::tempdir().unwrap();
        let paths: Vec<PathBuf> = (0..3).map(|b| dir.path().join(format!("b{b}.png"))).collect();
        for (b, p) in paths.iter().enumerate() {
            write_gray(p, &GrayPlane { width: 2, height: 2, data: vec![(b as u8 + 1) * 10; 4] }).unwrap();
        }
        let img = load_bands(&paths).unwrap();
        assert!(img.pixel_iter().all(|p| p == [10, 20, 30]));

        let single = load_bands(&paths[..1]).unwrap();
        assert_eq!(single.bands(), 1);
        assert_eq!(single.samples(), &[10, 10, 10, 10]);
    }

    #[test]
    fn band_files_round_trip_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let img = random_image(16, 16, 3, 1);
        for ext in ["png", "pgm"] {
            let first: Vec<PathBuf> = (0..3).map(|b| dir.path().join(format!("a{b}.{ext}"))).collect();
            let second: Vec<PathBuf> = (0..3).map(|b| dir.path().join(format!("c{b}.{ext}"))).collect();
            save_bands(&img, &first).unwrap();
            let loaded = load_bands(&first).unwrap();
            assert_eq!(loaded, img);
            save_bands(&loaded, &second).unwrap();
            for (a, b) in first.iter().zip(&second) {
                assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
            }
        }
    }

    #[test]
    fn band_shape_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.pgm");
        let b = dir.path().join("b.pgm");
        write_gray(&a, &GrayPlane { width: 2, height: 2, data: vec![0; 4] }).unwrap();
        write_gray(&b, &GrayPlane { width: 3, height: 2, data: vec![0; 6] }).unwrap();
        assert!(matches!(load_bands(&[a, b]), Err(Error::ShapeMismatch(_))));
        assert!(matches!(load_bands(&[dir.path().join("missing.png")]), Err(Error::Io { .. })));
    }

    #[test]
    fn pgm_with_comments() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.pgm");
        fs::write(&p, b"P5\n# made by hand\n2 1\n255\n\x07\x09").unwrap();
        assert_eq!(read_gray(&p).unwrap().data, vec![7, 9]);
    }

    #[test]
    fn raw_volume_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for (bits, order, l_max) in [(8u8, ByteOrder::Little, 255u32), (16, ByteOrder::Big, 4095), (16, ByteOrder::Little, 4095)] {
            let header = RawVolumeHeader { width: 3, height: 2, slices: 2, bits, byte_order: order, l_max };
            let slices = vec![vec![0, 1, 2, 3, 4, l_max as u16], vec![9, 8, 7, 6, 5, 4]];
            let path = dir.path().join(format!("v{bits}.raw"));
            write_raw_volume(&path, &header, &slices).unwrap();
            let (h, s) = load_raw_volume(&path).unwrap();
            assert_eq!(h, header);
            assert_eq!(s, slices);
        }
    }

    #[test]
    fn rgb_composition() {
        let img = random_image(5, 4, 3, 2);
        assert_eq!(compose_rgb(&img, [0, 1, 2]).unwrap(), img);
        let swapped = compose_rgb(&img, [2, 1, 0]).unwrap();
        assert_eq!(compose_rgb(&swapped, [2, 1, 0]).unwrap(), img);
        assert!(compose_rgb(&img, [0, 1, 3]).is_err());

        let five = random_image(6, 3, 5, 3);
        let c = compose_rgb(&five, [4, 0, 2]).unwrap();
        for (q, p) in c.pixel_iter().zip(five.pixel_iter()) {
            assert_eq!(q, [p[4], p[0], p[2]]);
        }
    }

    #[test]
    fn palette_is_injective_and_invertible() {
        let table = palette();
        let mut seen = std::collections::HashMap::new();
        for (i, c) in table.iter().enumerate() {
            assert!(seen.insert(*c, i).is_none());
        }
        let labels = LabelImage { width: 13, height: 2, labels: (0..26).map(|i| i % 13).collect(), palette_size: 13 };
        let rgb = render_labels(&labels).unwrap();
        let distinct: std::collections::HashSet<&[u16]> = rgb.pixel_iter().collect();
        assert_eq!(distinct.len(), 13);
        let back: Vec<usize> = rgb
            .pixel_iter()
            .map(|p| seen[&[p[0] as u8, p[1] as u8, p[2] as u8]])
            .collect();
        assert_eq!(back, labels.labels);

        let zeros = LabelImage { width: 2, height: 2, labels: vec![0; 4], palette_size: 1 };
        assert!(render_labels(&zeros).unwrap().samples().iter().all(|&v| v == table[0][0] as u16));
        assert!(render_labels(&LabelImage { palette_size: 300, ..zeros }).is_err());
    }

    #[test]
    fn lossless_codebook_reproduces_image() {
        let px: Vec<u16> = [[10u16, 200, 30], [90, 15, 250]]
            .iter()
            .cycle()
            .take(12)
            .flatten()
            .copied()
            .collect();
        let img = MultispectralImage::new(4, 3, 3, 255, px).unwrap();
        let cb = Codebook::new(
            vec![normalize(&[10, 200, 30], 255).unwrap(), normalize(&[90, 15, 250], 255).unwrap()],
            MethodTag::Km,
        )
        .unwrap();
        let (q, labels) = quantize(&img, &cb).unwrap();
        assert_eq!(q, img);
        assert_eq!(labels.labels, (0..12).map(|i| i % 2).collect::<Vec<_>>());
    }

    #[test]
    fn quantize_matches_nearest_centroid_oracle() {
        let img = random_image(8, 8, 3, 4);
        let data = img.to_dataset().unwrap();
        let cb = crate::baselines::kmeans_train(
            &data,
            &crate::baselines::BaselineConfig { n_outputs: 4, seed: 4, ..Default::default() },
        )
        .unwrap();
        let (q, labels) = quantize(&img, &cb).unwrap();
        for (i, p) in img.pixel_iter().enumerate() {
            let x: Vec<f64> = p.iter().map(|&v| v as f64 / 255.0).collect();
            let mut best = (0usize, f64::INFINITY);
            for (k, c) in cb.centroids().iter().enumerate() {
                let d: f64 = c.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
                if d < best.1 {
                    best = (k, d);
                }
            }
            assert_eq!(labels.labels[i], best.0);
            let want: Vec<u16> = cb.centroids()[best.0].iter().map(|v| (v * 255.0).round() as u16).collect();
            assert_eq!(q.pixel(i), &want[..]);
        }
        let distinct: std::collections::HashSet<&[u16]> = q.pixel_iter().collect();
        assert!(distinct.len() <= 4);
    }

    #[test]
    fn quantize_rejects_band_mismatch() {
        let img = random_image(2, 2, 2, 5);
        let cb = Codebook::new(vec![[0.0, 0.0, 0.0].into()], MethodTag::Km).unwrap();
        assert!(quantize(&img, &cb).is_err());
    }

    #[test]
    fn image_validation() {
        assert!(MultispectralImage::new(2, 2, 1, 255, vec![0; 3]).is_err());
        assert!(MultispectralImage::new(1, 1, 1, 255, vec![256]).is_err());
    }
}
