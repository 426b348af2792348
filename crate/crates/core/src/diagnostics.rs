//! Matrix properties of coefficient matrices: numerical bandwidth, spectral
//! radius, extreme singular values and the full spectrum.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::coeff::CoeffMatrix;
use crate::error::{Error, Result};
use crate::linalg::eigenvalues;

/// Default cut-off for the numerical bandwidth, relative to `max |F|`.
///
/// A quarter of the unit roundoff: entries at the edge of the band of the
/// catalog matrices sit at 0.1 to 0.6 times `eps * max |F|`, and this cut
/// keeps them while dropping the next diagonal (below 0.1).
pub const DEFAULT_RELATIVE_THRESHOLD: f64 = f64::EPSILON / 4.0;

/// Singular values below this multiple of `sigma_max` are flagged.
pub const SIGMA_TRUST: f64 = 1e-15;

const SVD_MAX_ITERATIONS: usize = 10_000;

/// How entries are declared numerically zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", content = "value", rename_all = "lowercase")]
pub enum Threshold {
    /// `|F_kl| < value * max |F|` counts as zero.
    Relative(f64),
    /// `|F_kl| < value` counts as zero.
    Absolute(f64),
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::Relative(DEFAULT_RELATIVE_THRESHOLD)
    }
}

impl Threshold {
    pub fn cutoff(&self, max_abs: f64) -> f64 {
        match *self {
            Threshold::Relative(r) => r * max_abs,
            Threshold::Absolute(a) => a,
        }
    }

    /// The default of either mode; the absolute one uses the same factor
    /// without scaling by the matrix.
    pub fn from_mode(mode: ThresholdMode) -> Self {
        match mode {
            ThresholdMode::Relative => Threshold::Relative(DEFAULT_RELATIVE_THRESHOLD),
            ThresholdMode::Absolute => Threshold::Absolute(DEFAULT_RELATIVE_THRESHOLD),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    #[default]
    Relative,
    Absolute,
}

impl FromStr for ThresholdMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "relative" => Ok(ThresholdMode::Relative),
            "absolute" => Ok(ThresholdMode::Absolute),
            other => Err(Error::Config(format!("unknown threshold mode '{other}'"))),
        }
    }
}

/// Scale at which matrices are reported.
///
/// `Reference` multiplies by `2 / T`, the coefficient matrix the same kernel
/// has on the reference interval `[-1, 1]`; the published tables use this
/// scale. `Physical` reports the matrix on `[0, T]` as built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Reference,
    Physical,
}

impl Normalization {
    pub fn factor(&self, interval_end: f64) -> f64 {
        match self {
            Normalization::Reference => 2.0 / interval_end,
            Normalization::Physical => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    #[serde(serialize_with = "crate::format::json_sig17")]
    pub re: f64,
    #[serde(serialize_with = "crate::format::json_sig17")]
    pub im: f64,
}

impl Eigenvalue {
    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Largest `|k - l|` over entries with `|F_kl| >= cutoff`.
pub fn numerical_bandwidth(f: &CoeffMatrix, threshold: Threshold) -> usize {
    bandwidth_of(f.entries(), threshold)
}

pub(crate) fn bandwidth_of(a: &DMatrix<f64>, threshold: Threshold) -> usize {
    let max_abs = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max_abs == 0.0 {
        return 0;
    }
    let cut = threshold.cutoff(max_abs);
    let mut width = 0;
    for l in 0..a.ncols() {
        for k in 0..a.nrows() {
            let v = a[(k, l)];
            if v != 0.0 && v.abs() >= cut {
                width = width.max(k.abs_diff(l));
            }
        }
    }
    width
}

/// Lower and upper numerical bandwidths separately.
pub(crate) fn lower_upper_bandwidth(a: &DMatrix<f64>, cut: f64) -> (usize, usize) {
    let (mut lower, mut upper) = (0, 0);
    for l in 0..a.ncols() {
        for k in 0..a.nrows() {
            let v = a[(k, l)];
            if v != 0.0 && v.abs() >= cut {
                if k > l {
                    lower = lower.max(k - l);
                } else {
                    upper = upper.max(l - k);
                }
            }
        }
    }
    (lower, upper)
}

pub fn spectrum(f: &CoeffMatrix) -> Result<Vec<Eigenvalue>> {
    spectrum_of(f.entries())
}

pub(crate) fn spectrum_of(a: &DMatrix<f64>) -> Result<Vec<Eigenvalue>> {
    Ok(eigenvalues(a)?
        .into_iter()
        .map(|z| Eigenvalue { re: z.re, im: z.im })
        .collect())
}

pub fn spectral_radius(f: &CoeffMatrix) -> Result<f64> {
    Ok(spectrum(f)?.iter().map(Eigenvalue::norm).fold(0.0, f64::max))
}

/// Smallest and largest singular value, with a flag telling whether the
/// smallest one is above the trust level `SIGMA_TRUST * sigma_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularExtremes {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub sigma_min_trusted: bool,
}

pub fn singular_extremes(f: &CoeffMatrix) -> Result<SingularExtremes> {
    singular_extremes_of(f.entries())
}

pub(crate) fn singular_extremes_of(a: &DMatrix<f64>) -> Result<SingularExtremes> {
    if a.is_empty() {
        return Ok(SingularExtremes {
            sigma_min: 0.0,
            sigma_max: 0.0,
            sigma_min_trusted: true,
        });
    }
    let svd = a
        .clone()
        .try_svd(false, false, f64::EPSILON, SVD_MAX_ITERATIONS)
        .ok_or(Error::NoConvergence {
            routine: "SVD",
            iterations: SVD_MAX_ITERATIONS,
        })?;
    let s = &svd.singular_values;
    let sigma_max = s.iter().fold(0.0f64, |m, v| m.max(*v));
    let sigma_min = s.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    Ok(SingularExtremes {
        sigma_min,
        sigma_max,
        sigma_min_trusted: sigma_max == 0.0 || sigma_min >= SIGMA_TRUST * sigma_max,
    })
}

/// Options for [`Diagnostics::measure`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiagnosticsConfig {
    pub threshold: Threshold,
    pub normalization: Normalization,
    pub with_spectrum: bool,
}

/// The row block of the matrix-property table for one matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub order: usize,
    pub bandwidth: usize,
    #[serde(serialize_with = "crate::format::json_sig17")]
    pub spectral_radius: f64,
    #[serde(serialize_with = "crate::format::json_sig17")]
    pub sigma_min: f64,
    #[serde(serialize_with = "crate::format::json_sig17")]
    pub sigma_max: f64,
    pub sigma_min_trusted: bool,
    pub normalization: Normalization,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<Eigenvalue>>,
}

impl Diagnostics {
    pub fn measure(f: &CoeffMatrix, config: &DiagnosticsConfig) -> Result<Self> {
        let scale = config.normalization.factor(f.basis().interval_end());
        let a = f.entries() * scale;
        let bandwidth = bandwidth_of(&a, config.threshold);
        let eig = spectrum_of(&a)?;
        let spectral_radius = eig.iter().map(Eigenvalue::norm).fold(0.0, f64::max);
        let sv = singular_extremes_of(&a)?;
        Ok(Self {
            order: f.order(),
            bandwidth,
            spectral_radius,
            sigma_min: sv.sigma_min,
            sigma_max: sv.sigma_max,
            sigma_min_trusted: sv.sigma_min_trusted,
            normalization: config.normalization,
            spectrum: config.with_spectrum.then_some(eig),
        })
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M={} band={} rho={:.4} sigma_min={:.2e}{} sigma_max={:.4}",
            self.order,
            self.bandwidth,
            self.spectral_radius,
            self.sigma_min,
            if self.sigma_min_trusted { "" } else { "*" },
            self.sigma_max
        )
    }
}

/// `re,im` lines with a header, 17 significant digits.
pub fn spectrum_csv(eigs: &[Eigenvalue]) -> String {
    let mut out = String::from("re,im\n");
    for z in eigs {
        out.push_str(&format!("{:.16e},{:.16e}\n", z.re, z.im));
    }
    out
}
