//! File formats: boundary and coefficient JSON, field and mean CSV, and the
//! flag syntaxes for complex numbers and grids.

use std::io::{Read, Write};

use abh_core::dirichlet::{BoundaryFunction, EvalGrid};
use abh_core::series::CoefficientSeq;
use abh_core::{Error, ParamPair64, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One Fourier mode `{"m", "re", "im"}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeJson {
    pub m: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundaryJson {
    Constant { value: [f64; 2] },
    Fourier { coeffs: Vec<ModeJson> },
    Samples { values: Vec<[f64; 2]> },
}

impl BoundaryJson {
    pub fn into_boundary(self) -> Result<BoundaryFunction<f64>> {
        let c = |v: [f64; 2]| Complex64::new(v[0], v[1]);
        match self {
            Self::Constant { value } => Ok(BoundaryFunction::constant(c(value))),
            Self::Fourier { coeffs } => {
                if coeffs.iter().any(|m| !m.re.is_finite() || !m.im.is_finite()) {
                    return Err(Error::InvalidBoundary("non-finite Fourier coefficient".into()));
                }
                Ok(BoundaryFunction::fourier(coeffs.iter().map(|m| (m.m, Complex64::new(m.re, m.im)))))
            }
            Self::Samples { values } => BoundaryFunction::samples(values.into_iter().map(c).collect()),
        }
    }

    pub fn from_boundary(f: &BoundaryFunction<f64>) -> Self {
        match f {
            BoundaryFunction::Constant(v) => Self::Constant { value: [v.re, v.im] },
            BoundaryFunction::Fourier(map) => Self::Fourier {
                coeffs: map.iter().map(|(&m, c)| ModeJson { m, re: c.re, im: c.im }).collect(),
            },
            BoundaryFunction::Samples(s) => Self::Samples { values: s.values().iter().map(|v| [v.re, v.im]).collect() },
        }
    }
}

pub fn parse_boundary(text: &str) -> Result<BoundaryFunction<f64>> {
    let json: BoundaryJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidBoundary(format!("boundary JSON: {e}")))?;
    json.into_boundary()
}

pub fn boundary_to_json(f: &BoundaryFunction<f64>) -> String {
    serde_json::to_string_pretty(&BoundaryJson::from_boundary(f)).expect("boundary serializes")
}

/// Series coefficients together with the parameters they belong to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientsJson {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub max_m: usize,
    pub coeffs: Vec<ModeJson>,
}

impl CoefficientsJson {
    pub fn new(params: &ParamPair64, seq: &CoefficientSeq<f64>) -> Self {
        Self {
            alpha: [params.alpha.re, params.alpha.im],
            beta: [params.beta.re, params.beta.im],
            max_m: seq.max_m(),
            coeffs: seq.iter().map(|(m, c)| ModeJson { m, re: c.re, im: c.im }).collect(),
        }
    }

    pub fn params(&self) -> Result<ParamPair64> {
        ParamPair64::new(
            Complex64::new(self.alpha[0], self.alpha[1]),
            Complex64::new(self.beta[0], self.beta[1]),
        )
    }

    pub fn sequence(&self) -> Result<CoefficientSeq<f64>> {
        CoefficientSeq::new(self.max_m, self.coeffs.iter().map(|m| (m.m, Complex64::new(m.re, m.im))))
    }
}

pub fn parse_coefficients(text: &str) -> Result<CoefficientsJson> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("coefficient JSON: {e}")))
}

/// A field value at `z = r e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRow {
    pub r: f64,
    pub theta: f64,
    pub value: Complex64,
}

/// A mean `M_p(r, w)` with its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanRow {
    pub r: f64,
    pub mp: f64,
    pub bound: f64,
    pub margin: f64,
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("CSV: {e}"))
}

fn write_rows<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row.into_iter().map(fmt_f64)).map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)
}

fn read_rows<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rd = csv::Reader::from_reader(input);
    let found: Vec<String> = rd.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    if found != header {
        return Err(csv_error(format!("expected columns {header:?}, found {found:?}")));
    }
    rd.records()
        .map(|rec| {
            rec.map_err(csv_error)?
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(csv_error))
                .collect()
        })
        .collect()
}

pub const FIELD_HEADER: [&str; 4] = ["r", "theta", "re", "im"];
pub const MEANS_HEADER: [&str; 4] = ["r", "Mp", "bound", "margin"];

pub fn write_field_csv<W: Write>(out: W, rows: &[FieldRow]) -> Result<()> {
    write_rows(out, &FIELD_HEADER, rows.iter().map(|r| vec![r.r, r.theta, r.value.re, r.value.im]))
}

pub fn read_field_csv<R: Read>(input: R) -> Result<Vec<FieldRow>> {
    Ok(read_rows(input, &FIELD_HEADER)?
        .into_iter()
        .map(|v| FieldRow { r: v[0], theta: v[1], value: Complex64::new(v[2], v[3]) })
        .collect())
}

pub fn write_means_csv<W: Write>(out: W, rows: &[MeanRow]) -> Result<()> {
    write_rows(out, &MEANS_HEADER, rows.iter().map(|r| vec![r.r, r.mp, r.bound, r.margin]))
}

pub fn read_means_csv<R: Read>(input: R) -> Result<Vec<MeanRow>> {
    Ok(read_rows(input, &MEANS_HEADER)?
        .into_iter()
        .map(|v| MeanRow { r: v[0], mp: v[1], bound: v[2], margin: v[3] })
        .collect())
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().map_err(|_| Error::InvalidArgument(format!("{what}: cannot parse '{s}'")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("{what}: '{s}' is not finite")))
    }
}

/// `"re,im"` or a bare real `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re, "complex")?, parse_f64(im, "complex")?)),
        None => Ok(Complex64::new(parse_f64(s, "complex")?, 0.0)),
    }
}

/// `"a,b"` as two reals.
pub fn parse_real_pair(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidArgument(format!("expected 'a,b', got '{s}'")))?;
    Ok((parse_f64(a, "pair")?, parse_f64(b, "pair")?))
}

/// `"k,l"` as two non-negative integers.
pub fn parse_order(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("expected 'k,l' with integers >= 0, got '{s}'"));
    let (k, l) = s.split_once(',').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, l.trim().parse().map_err(|_| bad())?))
}

/// Comma-separated reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|x| parse_f64(x, "list")).collect()
}

/// `"p"` with `inf` accepted.
pub fn parse_exponent(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" | "infinity" | "Inf" => Ok(f64::INFINITY),
        other => parse_f64(other, "p"),
    }
}

/// `"r0:r1:nr,ntheta"`: `nr` radii evenly spaced from `r0` to `r1`, each with
/// `ntheta` uniform angles.
pub fn parse_grid(s: &str) -> Result<EvalGrid<f64>> {
    let bad = |why: &str| Error::InvalidArgument(format!("grid '{s}': {why}"));
    let (radial, ntheta) = s.split_once(',').ok_or_else(|| bad("expected r0:r1:nr,ntheta"))?;
    let parts: Vec<&str> = radial.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected r0:r1:nr,ntheta"));
    }
    let r0 = parse_f64(parts[0], "grid r0")?;
    let r1 = parse_f64(parts[1], "grid r1")?;
    let nr: usize = parts[2].trim().parse().map_err(|_| bad("nr must be a positive integer"))?;
    let nt: usize = ntheta.trim().parse().map_err(|_| bad("ntheta must be a positive integer"))?;
    if nr == 0 || nt == 0 {
        return Err(bad("counts must be positive"));
    }
    let radii = if nr == 1 {
        vec![r0]
    } else {
        (0..nr).map(|i| r0 + (r1 - r0) * i as f64 / (nr - 1) as f64).collect()
    };
    EvalGrid::new(radii, nt)
}
