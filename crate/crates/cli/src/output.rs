//! Machine-readable emission: JSON with every float printed at 17
//! significant digits (scientific notation), so output is byte-stable
//! and round-trips losslessly through any IEEE-754 parser.

use nalgebra::Complex;
use serde::Serialize;
use std::io;
use sun_euler::linalg::CMatrix;

/// serde_json formatter that renders every f64 as `{:.16e}`.
pub struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes with the 17-significant-digit float format.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits utf8"))
}

/// The same float rendering for CSV cells.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Row-major [re, im] pair encoding of a complex matrix.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| {
                    let z: Complex<f64> = m[(i, j)];
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

/// Row-major flat list of a real matrix.
pub fn real_matrix_rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_render_with_17_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.5), "-5.0000000000000000e-1");
        let s = to_json_string(&vec![std::f64::consts::PI]).unwrap();
        assert_eq!(s, "[3.1415926535897931e0]");
        // lossless round-trip
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0].to_bits(), std::f64::consts::PI.to_bits());
    }

    #[test]
    fn ints_untouched() {
        #[derive(Serialize)]
        struct S {
            n: usize,
            v: f64,
        }
        let s = to_json_string(&S { n: 3, v: 2.0 }).unwrap();
        assert_eq!(s, "{\"n\":3,\"v\":2.0000000000000000e0}");
    }
}
