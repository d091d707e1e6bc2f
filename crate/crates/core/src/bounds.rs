//! Energy of a self-loop graph and every upper/lower bound on it, with
//! defined-ness and equality flags.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::SelfLoopGraph;
use crate::spectral::{self, ShiftedSpectrum, Spectrum, SpectralError};

/// Default equality-detection tolerance.
pub const DEFAULT_EQ_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("the improved upper bound needs n >= 2, got n = {0}")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Identifier for one bound, used in sweep reports and on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Gutman,
    Improved,
    Lambda1Lower,
    Lambda1Upper,
    PairProduct,
    SpectralLower,
    Ozeki,
    SpreadRatio,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::Gutman,
        BoundId::Improved,
        BoundId::Lambda1Lower,
        BoundId::Lambda1Upper,
        BoundId::PairProduct,
        BoundId::SpectralLower,
        BoundId::Ozeki,
        BoundId::SpreadRatio,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::Gutman => "gutman",
            BoundId::Improved => "improved",
            BoundId::Lambda1Lower => "lambda1_lower",
            BoundId::Lambda1Upper => "lambda1_upper",
            BoundId::PairProduct => "pair_product",
            BoundId::SpectralLower => "spectral_lower",
            BoundId::Ozeki => "ozeki",
            BoundId::SpreadRatio => "spread_ratio",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("unknown bound id {0:?}")]
pub struct UnknownBoundId(pub String);

impl FromStr for BoundId {
    type Err = UnknownBoundId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| UnknownBoundId(s.to_string()))
    }
}

/// A lower bound given as a square root: the signed radicand is kept so the
/// verifier can see when the bound goes vacuous, the value is clamped at 0.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClampedBound {
    pub value: f64,
    pub radicand: f64,
}

impl ClampedBound {
    fn from_radicand(radicand: f64) -> Self {
        Self {
            value: radicand.max(0.0).sqrt(),
            radicand,
        }
    }
}

/// Per-bound equality flags at the report tolerance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct EqualityFlags {
    pub gutman: bool,
    pub improved: bool,
    pub lambda1_lower: bool,
    pub lambda1_upper: bool,
    pub pair_product: bool,
    pub spectral_lower: bool,
    pub ozeki: bool,
    /// None when the bound itself is undefined.
    pub spread_ratio: Option<bool>,
}

impl EqualityFlags {
    pub fn get(&self, id: BoundId) -> Option<bool> {
        match id {
            BoundId::Gutman => Some(self.gutman),
            BoundId::Improved => Some(self.improved),
            BoundId::Lambda1Lower => Some(self.lambda1_lower),
            BoundId::Lambda1Upper => Some(self.lambda1_upper),
            BoundId::PairProduct => Some(self.pair_product),
            BoundId::SpectralLower => Some(self.spectral_lower),
            BoundId::Ozeki => Some(self.ozeki),
            BoundId::SpreadRatio => self.spread_ratio,
        }
    }
}

/// Energy plus every bound value for one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub spectrum: Vec<f64>,
    pub energy: f64,
    pub lambda1: f64,
    pub gutman_upper: f64,
    pub improved_upper: f64,
    pub improved_radicand: f64,
    pub lambda1_lower: f64,
    pub lambda1_upper: f64,
    pub pair_product_lhs: f64,
    pub pair_product_rhs: f64,
    pub spectral_lower: ClampedBound,
    pub ozeki_lower: ClampedBound,
    /// None when lambda_1 = lambda_n (all eigenvalues equal).
    pub spread_ratio_lower: Option<f64>,
    pub equality_flags: EqualityFlags,
}

/// E(G_S): sum of |lambda_i - sigma/n|.
pub fn energy(mu: &ShiftedSpectrum) -> f64 {
    mu.mu().iter().map(|x| x.abs()).sum()
}

/// The self-loop McClelland bound: sqrt(n(2m + sigma - sigma^2/n)).
pub fn gutman_upper(n: usize, m: usize, sigma: usize) -> f64 {
    let (n, m, sigma) = (n as f64, m as f64, sigma as f64);
    (n * (2.0 * m + sigma - sigma * sigma / n)).sqrt()
}

/// Improved upper bound: subtracts (n/2)(|mu|_max - |mu|_min)^2 inside the
/// radical. The radicand is nonnegative for every graph; the signed value is
/// returned alongside so callers can assert that.
pub fn improved_upper(
    n: usize,
    m: usize,
    sigma: usize,
    mu: &ShiftedSpectrum,
) -> Result<(f64, f64), BoundsError> {
    if n < 2 {
        return Err(BoundsError::OrderTooSmall(n));
    }
    let nf = n as f64;
    let gap = mu.abs_max() - mu.abs_min();
    let radicand = gutman_upper(n, m, sigma).powi(2) - nf / 2.0 * gap * gap;
    Ok((radicand.max(0.0).sqrt(), radicand))
}

/// Bounds on lambda_1: ((2m + sigma)/n, sqrt(2m + sigma)).
pub fn lambda1_bounds(n: usize, m: usize, sigma: usize) -> (f64, f64) {
    let s = 2.0 * m as f64 + sigma as f64;
    (s / n as f64, s.sqrt())
}

/// Pairwise-product inequality: lhs = sum over i<j of |mu_i||mu_j|, via the
/// identity ((sum|mu|)^2 - sum mu^2)/2; rhs = m + sigma(n - sigma)/(2n).
pub fn pair_product(mu: &ShiftedSpectrum, n: usize, m: usize, sigma: usize) -> (f64, f64) {
    let abs_sum: f64 = mu.mu().iter().map(|x| x.abs()).sum();
    let sq_sum: f64 = mu.mu().iter().map(|x| x * x).sum();
    let lhs = (abs_sum * abs_sum - sq_sum) / 2.0;
    let (nf, mf, sf) = (n as f64, m as f64, sigma as f64);
    let rhs = mf + sf * (nf - sf) / (2.0 * nf);
    (lhs, rhs)
}

/// Lower bound sqrt(2 lambda_1^2 - 2 sigma^2/n), clamped.
pub fn spectral_lower(lambda1: f64, n: usize, sigma: usize) -> ClampedBound {
    let sf = sigma as f64;
    ClampedBound::from_radicand(2.0 * lambda1 * lambda1 - 2.0 * sf * sf / n as f64)
}

/// Ozeki-based lower bound: same radical as the improved upper bound but
/// subtracting (n^2/3)(|mu|_max - |mu|_min)^2, clamped.
pub fn ozeki_lower(n: usize, m: usize, sigma: usize, mu: &ShiftedSpectrum) -> ClampedBound {
    let nf = n as f64;
    let gap = mu.abs_max() - mu.abs_min();
    ClampedBound::from_radicand(gutman_upper(n, m, sigma).powi(2) - nf * nf / 3.0 * gap * gap)
}

/// Spread-ratio lower bound (4m + 2 sigma - 2 sigma^2/n)/(lambda_1 - lambda_n);
/// None when the spread is below `tol` (all eigenvalues equal).
pub fn spread_ratio_lower(
    spec: &Spectrum,
    n: usize,
    m: usize,
    sigma: usize,
    tol: f64,
) -> Option<f64> {
    let spread = spec.lambda_max() - spec.lambda_min();
    if spread <= tol {
        return None;
    }
    let (nf, mf, sf) = (n as f64, m as f64, sigma as f64);
    Some((4.0 * mf + 2.0 * sf - 2.0 * sf * sf / nf) / spread)
}

/// Ultimate energy of a real tuple: sum of |x_i - mean|.
pub fn ultimate_energy(x: &[f64]) -> f64 {
    assert!(!x.is_empty());
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter().map(|v| (v - mean).abs()).sum()
}

/// Lower bound 2 sum (x_i - mean)^2 / (max - min) on the ultimate energy;
/// None when all entries are equal.
pub fn ultimate_energy_lower(x: &[f64], tol: f64) -> Option<f64> {
    assert!(x.len() >= 2);
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let max = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = x.iter().cloned().fold(f64::INFINITY, f64::min);
    if max - min <= tol {
        return None;
    }
    let ss: f64 = x.iter().map(|v| (v - mean) * (v - mean)).sum();
    Some(2.0 * ss / (max - min))
}

/// Relative-absolute hybrid equality test: |a - b| <= tol * max(1, |reference|).
pub fn nearly_equal(a: f64, b: f64, reference: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * reference.abs().max(1.0)
}

/// Computes every bound for `g` from an already-computed spectrum.
pub fn bound_report_from_spectrum(
    g: &SelfLoopGraph,
    spec: &Spectrum,
    tol: f64,
) -> Result<BoundReport, BoundsError> {
    let (n, m, sigma) = (g.order(), g.edge_count(), g.loop_count());
    let mu = spectral::shifted_spectrum(spec, n, sigma);
    let energy = energy(&mu);
    let lambda1 = spec.lambda_max();

    let gutman = gutman_upper(n, m, sigma);
    let (improved, improved_radicand) = if n >= 2 {
        improved_upper(n, m, sigma, &mu)?
    } else {
        // Degenerate single-vertex case: nothing to subtract.
        (gutman, gutman * gutman)
    };
    let (l1_lo, l1_hi) = lambda1_bounds(n, m, sigma);
    let (pp_lhs, pp_rhs) = pair_product(&mu, n, m, sigma);
    let spectral_lo = spectral_lower(lambda1, n, sigma);
    let ozeki_lo = ozeki_lower(n, m, sigma, &mu);
    let spread_lo = spread_ratio_lower(spec, n, m, sigma, tol);

    let equality_flags = EqualityFlags {
        gutman: nearly_equal(energy, gutman, energy, tol),
        improved: nearly_equal(energy, improved, energy, tol),
        lambda1_lower: nearly_equal(l1_lo, lambda1, lambda1, tol),
        lambda1_upper: nearly_equal(l1_hi, lambda1, lambda1, tol),
        pair_product: nearly_equal(pp_lhs, pp_rhs, pp_rhs, tol),
        spectral_lower: nearly_equal(energy, spectral_lo.value, energy, tol),
        ozeki: nearly_equal(energy, ozeki_lo.value, energy, tol),
        spread_ratio: spread_lo.map(|b| nearly_equal(energy, b, energy, tol)),
    };

    Ok(BoundReport {
        n,
        m,
        sigma,
        spectrum: spec.values().to_vec(),
        energy,
        lambda1,
        gutman_upper: gutman,
        improved_upper: improved,
        improved_radicand,
        lambda1_lower: l1_lo,
        lambda1_upper: l1_hi,
        pair_product_lhs: pp_lhs,
        pair_product_rhs: pp_rhs,
        spectral_lower: spectral_lo,
        ozeki_lower: ozeki_lo,
        spread_ratio_lower: spread_lo,
        equality_flags,
    })
}

/// Computes the spectrum and every bound for `g`.
pub fn bound_report(g: &SelfLoopGraph, tol: f64) -> Result<BoundReport, BoundsError> {
    let spec = spectral::eigenvalues(g, spectral::DEFAULT_TOL)?;
    bound_report_from_spectrum(g, &spec, tol)
}
