//! JSON report for one graph: stable key order, reals rounded to 12
//! significant digits before serialization.

use serde::Serialize;
use sle_core::bounds::BoundReport;
use sle_core::extremal::EqualityClassification;
use sle_core::FamilyTag;

/// Rounds to 12 significant digits so the JSON decimal form re-parses to the
/// same value the library computed at that precision.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

fn round12_opt(x: Option<f64>) -> Option<f64> {
    x.map(round12)
}

#[derive(Serialize)]
pub struct ReportFile {
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub spectrum: Vec<f64>,
    pub energy: f64,
    pub bounds: BoundsSection,
    pub equality_flags: FlagsSection,
    pub families: FamiliesSection,
}

#[derive(Serialize)]
pub struct BoundsSection {
    pub gutman_upper: f64,
    pub improved_upper: f64,
    pub improved_radicand: f64,
    pub lambda1: f64,
    pub lambda1_lower: f64,
    pub lambda1_upper: f64,
    pub pair_product_lhs: f64,
    pub pair_product_rhs: f64,
    pub spectral_lower: f64,
    pub spectral_lower_radicand: f64,
    pub ozeki_lower: f64,
    pub ozeki_lower_radicand: f64,
    /// null marks UNDEFINED (zero spectral spread).
    pub spread_ratio_lower: Option<f64>,
}

#[derive(Serialize)]
pub struct FlagsSection {
    pub gutman: bool,
    pub improved: bool,
    pub lambda1_lower: bool,
    pub lambda1_upper: bool,
    pub pair_product: bool,
    pub spectral_lower: bool,
    pub ozeki: bool,
    pub spread_ratio: Option<bool>,
}

#[derive(Serialize)]
pub struct FamiliesSection {
    pub gutman: Option<FamilyTag>,
    pub lemma23: Option<FamilyTag>,
    pub lambda1_sigma: Option<usize>,
    pub thm38_condition: Option<bool>,
}

pub fn build(report: &BoundReport, families: &EqualityClassification) -> ReportFile {
    ReportFile {
        n: report.n,
        m: report.m,
        sigma: report.sigma,
        spectrum: report.spectrum.iter().map(|&l| round12(l)).collect(),
        energy: round12(report.energy),
        bounds: BoundsSection {
            gutman_upper: round12(report.gutman_upper),
            improved_upper: round12(report.improved_upper),
            improved_radicand: round12(report.improved_radicand),
            lambda1: round12(report.lambda1),
            lambda1_lower: round12(report.lambda1_lower),
            lambda1_upper: round12(report.lambda1_upper),
            pair_product_lhs: round12(report.pair_product_lhs),
            pair_product_rhs: round12(report.pair_product_rhs),
            spectral_lower: round12(report.spectral_lower.value),
            spectral_lower_radicand: round12(report.spectral_lower.radicand),
            ozeki_lower: round12(report.ozeki_lower.value),
            ozeki_lower_radicand: round12(report.ozeki_lower.radicand),
            spread_ratio_lower: round12_opt(report.spread_ratio_lower),
        },
        equality_flags: FlagsSection {
            gutman: report.equality_flags.gutman,
            improved: report.equality_flags.improved,
            lambda1_lower: report.equality_flags.lambda1_lower,
            lambda1_upper: report.equality_flags.lambda1_upper,
            pair_product: report.equality_flags.pair_product,
            spectral_lower: report.equality_flags.spectral_lower,
            ozeki: report.equality_flags.ozeki,
            spread_ratio: report.equality_flags.spread_ratio,
        },
        families: FamiliesSection {
            gutman: families.gutman_family,
            lemma23: families.lemma23_family,
            lambda1_sigma: families.lambda1_family_sigma,
            thm38_condition: families.thm38_condition,
        },
    }
}
