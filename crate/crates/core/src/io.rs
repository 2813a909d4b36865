//! Plain-text format shared by step functions and spectra.
//!
//! Line 1 is the header `radix=2,3,4;N=3`, optionally followed by further
//! `;key=value` fields. Every following line is `index,re,im`, one per coset
//! (or per character for spectra, whose header carries `kind=spectrum`).
//! Values use the shortest round-trip decimal form.

use std::io::{BufRead, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::function_space::StepFunction;
use crate::group::GroupConfig;
use crate::scalar::Real;
use crate::transform::SpectrumTable;

/// Parsed header line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub config: GroupConfig,
    /// Fields other than `radix` and `N`, in file order.
    pub fields: Vec<(String, String)>,
}

impl Header {
    pub fn new(config: &GroupConfig) -> Self {
        Self { config: config.clone(), fields: Vec::new() }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn is_spectrum(&self) -> bool {
        self.get("kind") == Some("spectrum")
    }

    pub fn parse(line: &str) -> Result<Self> {
        let config = GroupConfig::parse_header(line)?;
        let fields = line
            .trim()
            .split(';')
            .filter_map(|f| f.split_once('='))
            .filter(|(k, _)| !matches!(k.trim(), "radix" | "N"))
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .collect();
        Ok(Self { config, fields })
    }
}

impl std::fmt::Display for Header {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.config.header())?;
        for (k, v) in &self.fields {
            write!(f, ";{k}={v}")?;
        }
        Ok(())
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_rows<T: Real, W: Write>(out: &mut W, header: &Header, values: &[Complex<T>]) -> Result<()> {
    writeln!(out, "{header}").map_err(io_err)?;
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{i},{:?},{:?}", v.re, v.im).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

fn read_rows<T: Real, R: BufRead>(input: R) -> Result<(Header, Vec<Complex<T>>)> {
    let mut lines = input.lines();
    let first = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?.map_err(io_err)?;
    let header = Header::parse(&first)?;
    let order = header.config.order();
    let mut values = Vec::with_capacity(order);
    for (row, line) in lines.enumerate() {
        let line = line.map_err(io_err)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let mut next = |what: &str| {
            parts
                .next()
                .map(str::trim)
                .ok_or_else(|| Error::Parse(format!("line {}: missing {what}", row + 2)))
        };
        let index: usize = next("index")?
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", row + 2)))?;
        let re: f64 = next("re")?.parse().map_err(|e| Error::Parse(format!("line {}: {e}", row + 2)))?;
        let im: f64 = next("im")?.parse().map_err(|e| Error::Parse(format!("line {}: {e}", row + 2)))?;
        if index != values.len() {
            return Err(Error::Parse(format!("line {}: expected index {}, found {index}", row + 2, values.len())));
        }
        values.push(Complex::new(T::lit(re), T::lit(im)));
    }
    if values.len() != order {
        return Err(Error::LengthMismatch { expected: order, found: values.len() });
    }
    Ok((header, values))
}

/// Writes `f` with the given header; the header config must match `f`.
pub fn write_step_function<T: Real, W: Write>(out: &mut W, f: &StepFunction<T>, header: &Header) -> Result<()> {
    if &header.config != f.config() {
        return Err(Error::ConfigMismatch);
    }
    write_rows(out, header, f.values())
}

pub fn read_step_function<T: Real, R: BufRead>(input: R) -> Result<(StepFunction<T>, Header)> {
    let (header, values) = read_rows(input)?;
    if header.is_spectrum() {
        return Err(Error::Parse("file holds a spectrum, not a step function".into()));
    }
    Ok((StepFunction::from_values(&header.config, values)?, header))
}

/// Writes a spectrum; `kind=spectrum` is added to the header if absent.
pub fn write_spectrum<T: Real, W: Write>(out: &mut W, spectrum: &SpectrumTable<T>, header: &Header) -> Result<()> {
    if &header.config != spectrum.config() {
        return Err(Error::ConfigMismatch);
    }
    let mut header = header.clone();
    if !header.is_spectrum() {
        header.fields.retain(|(k, _)| k != "kind");
        header.fields.insert(0, ("kind".into(), "spectrum".into()));
    }
    write_rows(out, &header, spectrum.coefficients())
}

pub fn read_spectrum<T: Real, R: BufRead>(input: R) -> Result<(SpectrumTable<T>, Header)> {
    let (header, values) = read_rows(input)?;
    if !header.is_spectrum() {
        return Err(Error::Parse("header lacks kind=spectrum".into()));
    }
    Ok((SpectrumTable::from_coefficients(&header.config, values)?, header))
}
