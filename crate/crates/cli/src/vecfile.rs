//! Vector files: one amplitude per line as `<re> <im>`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qftqr::numerics::format_real;
use qftqr::{Complex, ComplexVector};

pub fn parse_vector_text(text: &str) -> Result<ComplexVector> {
    let mut data = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let [re, im] = toks.as_slice() else {
            bail!("line {line_no}: expected '<re> <im>', got '{trimmed}'");
        };
        let parse = |tok: &str| -> Result<f64> {
            let v: f64 = tok
                .parse()
                .with_context(|| format!("line {line_no}: invalid number '{tok}'"))?;
            if !v.is_finite() {
                bail!("line {line_no}: non-finite value '{tok}'");
            }
            Ok(v)
        };
        data.push(Complex::new(parse(re)?, parse(im)?));
    }
    if data.is_empty() {
        bail!("vector file is empty");
    }
    if !data.len().is_power_of_two() {
        bail!("vector length {} is not a power of two", data.len());
    }
    Ok(ComplexVector::new(data)?)
}

pub fn read_vector_file(path: &Path) -> Result<ComplexVector> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read vector file {}", path.display()))?;
    parse_vector_text(&text).with_context(|| format!("malformed vector file {}", path.display()))
}

/// Shortest round-trip decimal for each component, one amplitude per line.
pub fn format_vector(v: &ComplexVector) -> String {
    let mut out = String::with_capacity(v.len() * 40);
    for z in v.iter() {
        let _ = writeln!(out, "{} {}", format_real(z.re), format_real(z.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let v = parse_vector_text("1 0\n# comment\n\n0.5 -0.25\n").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1], Complex::new(0.5, -0.25));
        assert_eq!(format_vector(&v), "1 0\n0.5 -0.25\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_vector_text("").is_err());
        assert!(parse_vector_text("1 0\n0 0\n1 1\n").is_err());
        assert!(parse_vector_text("1\n0 0\n").is_err());
        assert!(parse_vector_text("1 x\n0 0\n").is_err());
        assert!(parse_vector_text("inf 0\n0 0\n").is_err());
        let err = parse_vector_text("1 0\n1 2 3\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn round_trips_exactly() {
        let v = ComplexVector::new(vec![
            Complex::new(std::f64::consts::FRAC_1_SQRT_2, -1e-300),
            Complex::new(1.0 / 3.0, 123456789.123),
        ])
        .unwrap();
        assert_eq!(parse_vector_text(&format_vector(&v)).unwrap(), v);
    }
}
