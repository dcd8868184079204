//! Parameter-box files and exact decimal output.
//!
//! Every number is read through the outward decimal parser. Writers emit the
//! exact decimal expansion of each binary endpoint, so a file written here
//! reads back to the identical intervals.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::henon::{Mode, Param};
use crate::interval::{CInterval, Interval};

/// Exact decimal expansion of a finite double.
pub fn exact_decimal(x: f64) -> String {
    assert!(x.is_finite(), "exact_decimal of a non-finite value");
    if x == 0.0 {
        return "0".into();
    }
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let sign = if neg { "-" } else { "" };
    if e >= 0 {
        return format!("{sign}{}", BigInt::from(m) << e as usize);
    }
    // m / 2^k = m·5^k / 10^k
    let k = (-e) as u32;
    let digits = (BigInt::from(m) * BigInt::from(5u8).pow(k)).to_string();
    let k = k as usize;
    let (int, frac) = if digits.len() > k {
        (digits[..digits.len() - k].to_string(), digits[digits.len() - k..].to_string())
    } else {
        ("0".to_string(), format!("{}{digits}", "0".repeat(k - digits.len())))
    };
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `x` for a point interval, `[lo, hi]` otherwise, both exact.
pub fn interval_text(i: Interval) -> String {
    if i.is_point() {
        exact_decimal(i.lo())
    } else {
        format!("[{}, {}]", exact_decimal(i.lo()), exact_decimal(i.hi()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct BoxText {
    a: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_im: Option<String>,
    c: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_im: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct BoxFileText {
    mode: Mode,
    #[serde(default, rename = "box")]
    boxes: Vec<BoxText>,
}

/// A list of parameter boxes sharing one phase-space mode.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxFile {
    pub mode: Mode,
    pub boxes: Vec<Param>,
}

fn opt_interval(s: &Option<String>) -> Result<Interval> {
    match s {
        None => Ok(Interval::ZERO),
        Some(t) => t.parse(),
    }
}

fn opt_text(i: Interval) -> Option<String> {
    (i != Interval::ZERO).then(|| interval_text(i))
}

impl BoxFile {
    pub fn parse(text: &str) -> Result<BoxFile> {
        let raw: BoxFileText = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let boxes = raw
            .boxes
            .iter()
            .map(|b| {
                let a = CInterval::new(b.a.parse()?, opt_interval(&b.a_im)?);
                let c = CInterval::new(b.c.parse()?, opt_interval(&b.c_im)?);
                Param::new(a, c, raw.mode)
            })
            .collect::<Result<_>>()?;
        Ok(BoxFile {
            mode: raw.mode,
            boxes,
        })
    }

    pub fn to_text(&self) -> String {
        let raw = BoxFileText {
            mode: self.mode,
            boxes: self
                .boxes
                .iter()
                .map(|p| BoxText {
                    a: interval_text(p.a().re),
                    a_im: opt_text(p.a().im),
                    c: interval_text(p.c().re),
                    c_im: opt_text(p.c().im),
                })
                .collect(),
        };
        toml::to_string(&raw).expect("box files always serialize")
    }

    pub fn read(path: &Path) -> Result<BoxFile> {
        BoxFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_decimals_parse_to_the_same_double() {
        for x in [0.1, -5.46875, 1e-300, 5e-324, 123456789.125, -0.35000000000000014, 1e22] {
            let s = exact_decimal(x);
            assert_eq!(Interval::from_decimal(&s).unwrap(), Interval::point(x), "{s}");
        }
        assert_eq!(exact_decimal(-5.46875), "-5.46875");
        assert_eq!(exact_decimal(8.0), "8");
    }

    #[test]
    fn box_file_round_trip() {
        let p = Param::complex(
            CInterval::ONE,
            CInterval::new("[-10.25, -9.75]".parse().unwrap(), "[0.1, 0.3]".parse().unwrap()),
        )
        .unwrap();
        let f = BoxFile {
            mode: Mode::Complex,
            boxes: vec![p],
        };
        let back = BoxFile::parse(&f.to_text()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn empty_file_has_no_boxes() {
        let f = BoxFile::parse("mode = \"real\"\n").unwrap();
        assert!(f.boxes.is_empty());
    }
}
