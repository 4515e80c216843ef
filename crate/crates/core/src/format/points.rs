use std::fmt::Write;

use crate::error::FormatError;
use crate::numeric::{format_float, ArithmeticMode, BigComplex, ExactComplex, Scalar};

use super::{complex, expect_len, Lines, FORMAT_VERSION};

/// Points read exactly; floating coordinates are kept as their exact
/// decimal value and rounded only when lifted to a working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsFile {
    /// Mode declared by an optional `mode:` line.
    pub mode: Option<ArithmeticMode>,
    pub points: Vec<Vec<ExactComplex>>,
}

/// Parses a points file: `format: 1`, an optional `mode: rational|float`
/// line, the point count, then `dim` lines of `re im` per point.
pub fn parse_points(text: &str, dim: usize) -> Result<PointsFile, FormatError> {
    let mut lines = Lines::new(text);
    lines.header()?;
    let mut mode = None;
    if let Some(line) = lines.peek() {
        if line[0].text == "mode:" {
            let line = line.to_vec();
            lines.skip();
            expect_len(&line, 2, "a mode line")?;
            mode = Some(line[1].text.parse().map_err(|e: String| line[1].error(e))?);
        }
    }
    let count_line = lines.next_line("the point count")?;
    expect_len(&count_line, 1, "the point count")?;
    let count = count_line[0].usize()?;
    let mut points = Vec::with_capacity(count);
    for p in 0..count {
        let mut coords = Vec::with_capacity(dim);
        for c in 0..dim {
            let line = lines.next_line(&format!("coordinate {} of point {}", c + 1, p + 1))?;
            expect_len(&line, 2, "a coordinate (re im)")?;
            coords.push(complex(&line[0], &line[1])?);
        }
        points.push(coords);
    }
    lines.finish()?;
    Ok(PointsFile { mode, points })
}

/// Writes floating points with enough digits to round-trip at their
/// precision.
pub fn write_points(points: &[Vec<BigComplex>]) -> String {
    let mut out = format!("format: {FORMAT_VERSION}\nmode: float\n{}\n", points.len());
    for (i, p) in points.iter().enumerate() {
        writeln!(out, "# point {}", i + 1).unwrap();
        for z in p {
            let digits = (z.bits() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
            writeln!(out, "{} {}", format_float(&z.re(), digits), format_float(&z.im(), digits)).unwrap();
        }
    }
    out
}
