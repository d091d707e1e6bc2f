//! Exhaustive enumeration of labeled self-loop graphs and brute-force
//! verification of every bound and equality characterization.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, BoundId, BoundReport, UnknownBoundId};
use crate::extremal;
use crate::graph::SelfLoopGraph;
use crate::spectral::{self, SpectralError};

/// Hard order cap: 2^(n(n+1)/2) labeled graphs stay enumerable up to here.
pub const MAX_SWEEP_ORDER: usize = 8;
/// Isomorphism deduplication uses the factorial canonical scan.
pub const MAX_DEDUP_ORDER: usize = 7;
/// Witness codes stored per (bound, order); the interesting sets are tiny.
pub const WITNESS_CAP: usize = 1000;

const CHUNK_BITS: u64 = 1 << 14;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("order {0} out of range for enumeration")]
    OrderTooLarge(usize),
    #[error("order {0} out of range for isomorphism dedup (max {MAX_DEDUP_ORDER})")]
    DedupOrderTooLarge(usize),
    #[error(transparent)]
    UnknownBoundId(#[from] UnknownBoundId),
    #[error("eigensolver failed on graph n={n} bits={bits}: {source}")]
    NoConvergence {
        n: usize,
        bits: u64,
        source: SpectralError,
    },
}

/// Index of one labeled graph: `bits` packs n(n-1)/2 edge bits (pairs in
/// lexicographic order, bit 0 first) followed by n loop bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphIndex {
    pub n: usize,
    pub bits: u64,
}

impl GraphIndex {
    /// Number of labeled self-loop graphs of order n.
    pub fn space_size(n: usize) -> u64 {
        1u64 << (n * (n + 1) / 2)
    }

    pub fn decode(&self) -> SelfLoopGraph {
        let n = self.n;
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if (self.bits >> k) & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        let loops: Vec<usize> = (0..n).filter(|v| (self.bits >> (k + v)) & 1 == 1).collect();
        SelfLoopGraph::from_edge_list(n, &edges, &loops).expect("index encodes a valid graph")
    }
}

/// Streams all labeled graphs of order `n`, or one representative per
/// isomorphism class when `dedup` is set.
pub fn enumerate_graphs(
    n: usize,
    dedup: bool,
) -> Result<impl Iterator<Item = SelfLoopGraph>, VerifyError> {
    if n == 0 || n > MAX_SWEEP_ORDER {
        return Err(VerifyError::OrderTooLarge(n));
    }
    if dedup && n > MAX_DEDUP_ORDER {
        return Err(VerifyError::DedupOrderTooLarge(n));
    }
    let mut seen = HashSet::new();
    Ok((0..GraphIndex::space_size(n)).filter_map(move |bits| {
        let g = GraphIndex { n, bits }.decode();
        if dedup {
            let code = g.canonical_code().expect("order within dedup limit");
            if !seen.insert(code) {
                return None;
            }
        }
        Some(g)
    }))
}

/// One bound inequality that failed at tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub n: usize,
    pub bits: u64,
    pub check: String,
    pub energy: f64,
    pub bound: f64,
}

/// One disagreement between a paper characterization and the numerics.
/// `paper_only`: the characterization predicts equality, the numbers do not.
/// `empirical_only`: equality holds on a graph outside the stated family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub theorem: String,
    pub direction: String,
    pub n: usize,
    pub code: String,
    pub example_bits: u64,
}

/// Aggregate result of a sweep. Witness and mismatch sets are keyed by
/// canonical code, so the contents are independent of iteration schedule.
#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub max_n: usize,
    pub tol: f64,
    pub dedup: bool,
    pub graphs_checked: u64,
    pub violations: Vec<Violation>,
    pub equality_witnesses: BTreeMap<String, BTreeMap<usize, BTreeSet<String>>>,
    pub characterization_mismatches: Vec<Mismatch>,
    pub max_trace_residual: f64,
    pub elapsed_seconds: f64,
}

impl SweepSummary {
    pub fn witnesses(&self, kind: &str, n: usize) -> BTreeSet<String> {
        self.equality_witnesses
            .get(kind)
            .and_then(|per_n| per_n.get(&n))
            .cloned()
            .unwrap_or_default()
    }

    pub fn mismatches_for(&self, theorem: &str) -> Vec<&Mismatch> {
        self.characterization_mismatches
            .iter()
            .filter(|m| m.theorem == theorem)
            .collect()
    }
}

#[derive(Default)]
struct Partial {
    graphs_checked: u64,
    violations: Vec<Violation>,
    witnesses: BTreeMap<String, BTreeMap<usize, BTreeSet<String>>>,
    mismatches: BTreeSet<Mismatch>,
    max_trace_residual: f64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.graphs_checked += other.graphs_checked;
        self.violations.extend(other.violations);
        for (kind, per_n) in other.witnesses {
            let entry = self.witnesses.entry(kind).or_default();
            for (n, codes) in per_n {
                entry.entry(n).or_default().extend(codes);
            }
        }
        self.mismatches.extend(other.mismatches);
        self.max_trace_residual = self.max_trace_residual.max(other.max_trace_residual);
        self
    }

    fn add_witness(&mut self, kind: &str, n: usize, code: String) {
        let set = self
            .witnesses
            .entry(kind.to_string())
            .or_default()
            .entry(n)
            .or_default();
        if set.len() < WITNESS_CAP {
            set.insert(code);
        }
    }
}

/// Checks every bound and every characterization on all labeled graphs of
/// order 1..=max_n. The paper's inequalities must hold everywhere; the two
/// suspect equality clauses are audited and reported, never treated as
/// violations.
pub fn verify_all(max_n: usize, tol: f64, dedup: bool) -> Result<SweepSummary, VerifyError> {
    if max_n == 0 || max_n > MAX_SWEEP_ORDER {
        return Err(VerifyError::OrderTooLarge(max_n));
    }
    if dedup && max_n > MAX_DEDUP_ORDER {
        return Err(VerifyError::DedupOrderTooLarge(max_n));
    }
    let start = Instant::now();
    let mut total = Partial::default();
    for n in 1..=max_n {
        let partial = if dedup {
            let mut acc = Partial::default();
            let mut seen = HashSet::new();
            for bits in 0..GraphIndex::space_size(n) {
                let g = GraphIndex { n, bits }.decode();
                if !seen.insert(g.canonical_code().expect("dedup order checked")) {
                    continue;
                }
                check_graph(&g, GraphIndex { n, bits }, tol, &mut acc)?;
            }
            acc
        } else {
            let space = GraphIndex::space_size(n);
            let chunks: Vec<(u64, u64)> = (0..space)
                .step_by(CHUNK_BITS as usize)
                .map(|lo| (lo, (lo + CHUNK_BITS).min(space)))
                .collect();
            chunks
                .into_par_iter()
                .map(|(lo, hi)| {
                    let mut acc = Partial::default();
                    for bits in lo..hi {
                        let idx = GraphIndex { n, bits };
                        check_graph(&idx.decode(), idx, tol, &mut acc)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>, VerifyError>>()?
                .into_iter()
                .fold(Partial::default(), Partial::merge)
        };
        total = total.merge(partial);
    }
    // Re-apply the witness cap after merging chunk partials.
    for per_n in total.witnesses.values_mut() {
        for codes in per_n.values_mut() {
            while codes.len() > WITNESS_CAP {
                let last = codes.iter().next_back().cloned().expect("nonempty");
                codes.remove(&last);
            }
        }
    }
    Ok(SweepSummary {
        max_n,
        tol,
        dedup,
        graphs_checked: total.graphs_checked,
        violations: total.violations,
        equality_witnesses: total.witnesses,
        characterization_mismatches: total.mismatches.into_iter().collect(),
        max_trace_residual: total.max_trace_residual,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

fn check_graph(
    g: &SelfLoopGraph,
    idx: GraphIndex,
    tol: f64,
    acc: &mut Partial,
) -> Result<(), VerifyError> {
    let n = g.order();
    let spec = spectral::eigenvalues(g, spectral::DEFAULT_TOL).map_err(|source| {
        VerifyError::NoConvergence {
            n,
            bits: idx.bits,
            source,
        }
    })?;
    let report = bounds::bound_report_from_spectrum(g, &spec, tol)
        .expect("n >= 1 report never fails");
    acc.graphs_checked += 1;

    let residual = spectral::trace_residuals(g, &spec).max();
    acc.max_trace_residual = acc.max_trace_residual.max(residual);

    let slack = tol * report.energy.abs().max(1.0);
    let mut violate = |check: &str, bound: f64, target: f64| {
        acc.violations.push(Violation {
            n,
            bits: idx.bits,
            check: check.to_string(),
            energy: target,
            bound,
        });
    };

    let e = report.energy;
    if e > report.gutman_upper + slack {
        violate("gutman", report.gutman_upper, e);
    }
    if e > report.improved_upper + slack {
        violate("improved", report.improved_upper, e);
    }
    if report.improved_upper > report.gutman_upper + slack {
        violate("improved_vs_gutman", report.improved_upper, report.gutman_upper);
    }
    if report.improved_radicand < -tol {
        violate("improved_radicand_negative", report.improved_radicand, 0.0);
    }
    // Consequence of the Lagrange-identity step: the radicand dominates E^2/n.
    if report.improved_radicand < e * e / n as f64 - tol {
        violate("improved_radicand_vs_energy", report.improved_radicand, e * e / n as f64);
    }
    // Strict improvement whenever the |mu| spread is genuinely positive.
    let mu = spectral::shifted_spectrum(&spec, n, g.loop_count());
    if n >= 2
        && mu.abs_max() - mu.abs_min() > 1e-6
        && report.gutman_upper - report.improved_upper <= 1e-9
    {
        violate("improved_strictness", report.improved_upper, report.gutman_upper);
    }
    let l1_slack = tol * report.lambda1.abs().max(1.0);
    if report.lambda1 < report.lambda1_lower - l1_slack {
        violate("lambda1_lower", report.lambda1_lower, report.lambda1);
    }
    if report.lambda1 > report.lambda1_upper + l1_slack {
        violate("lambda1_upper", report.lambda1_upper, report.lambda1);
    }
    let pp_slack = tol * report.pair_product_rhs.abs().max(1.0);
    if report.pair_product_lhs < report.pair_product_rhs - pp_slack {
        violate("pair_product", report.pair_product_rhs, report.pair_product_lhs);
    }
    if report.spectral_lower.value > e + slack {
        violate("spectral_lower", report.spectral_lower.value, e);
    }
    if report.ozeki_lower.value > e + slack {
        violate("ozeki", report.ozeki_lower.value, e);
    }
    if let Some(b) = report.spread_ratio_lower {
        if b > e + slack {
            violate("spread_ratio", b, e);
        }
    }

    let any_flag = BoundId::ALL
        .iter()
        .any(|&id| report.equality_flags.get(id) == Some(true));
    let comps = g.connected_components();
    let connected = comps.len() == 1;
    let all_abs_mu_equal = mu.abs_max() - mu.abs_min() <= tol;
    let thm33_empirical = bounds::nearly_equal(
        report.lambda1,
        report.lambda1_upper,
        report.lambda1,
        tol,
    );

    let gutman_family = extremal::gutman_family_of_components(&comps);
    let lambda1_family = extremal::lambda1_family_of_components(&comps);
    let lemma23_family = if connected {
        extremal::matches_lemma23_family(g).expect("connected")
    } else {
        None
    };

    let needs_code = any_flag
        || (connected && all_abs_mu_equal)
        || thm33_empirical
        || gutman_family.is_some()
        || lambda1_family.is_some()
        || lemma23_family.is_some();
    if !needs_code {
        return Ok(());
    }
    let code = g
        .canonical_code()
        .expect("sweep order within canonical limit")
        .to_string();

    for id in BoundId::ALL {
        if report.equality_flags.get(id) == Some(true) {
            acc.add_witness(id.as_str(), n, code.clone());
        }
    }
    if connected && all_abs_mu_equal {
        acc.add_witness("lemma23", n, code.clone());
    }
    if thm33_empirical {
        acc.add_witness("thm33", n, code.clone());
    }

    let mut mismatch = |theorem: &str, direction: &str| {
        acc.mismatches.insert(Mismatch {
            theorem: theorem.to_string(),
            direction: direction.to_string(),
            n,
            code: code.clone(),
            example_bits: idx.bits,
        });
    };

    // Cross-validations: structural family membership vs numeric equality.
    record_iff(&mut mismatch, "thm24", gutman_family.is_some(), report.equality_flags.gutman);
    if connected {
        record_iff(&mut mismatch, "lemma23", lemma23_family.is_some(), all_abs_mu_equal);
    }
    record_iff(&mut mismatch, "thm33", lambda1_family.is_some(), thm33_empirical);
    if let (Some(cond), Some(eq)) = (
        extremal::thm38_equality_condition(&spec, n, g.loop_count(), tol).ok(),
        report.equality_flags.spread_ratio,
    ) {
        record_iff(&mut mismatch, "thm38", cond, eq);
    }

    // Audited clauses (known-suspect): recorded as findings only.
    let lemma31_paper = g.edge_count() == 0
        && (g.loop_count() == 0 || g.loop_count() == n);
    record_iff(&mut mismatch, "lemma31", lemma31_paper, report.equality_flags.pair_product);
    let thm34_paper = (g.edge_count() == 0 && g.loop_count() == 0)
        || (n == 1 && g.loop_count() == 1);
    record_iff(&mut mismatch, "thm34", thm34_paper, report.equality_flags.spectral_lower);

    Ok(())
}

fn record_iff(
    mismatch: &mut impl FnMut(&str, &str),
    theorem: &str,
    structural: bool,
    empirical: bool,
) {
    match (structural, empirical) {
        (true, false) => mismatch(theorem, "paper_only"),
        (false, true) => mismatch(theorem, "empirical_only"),
        _ => {}
    }
}

/// One row of an extremal search: a graph ranked by its gap to a bound.
#[derive(Debug, Clone)]
pub struct ExtremalEntry {
    pub code: String,
    pub graph: SelfLoopGraph,
    pub energy: f64,
    pub bound: f64,
    pub gap: f64,
}

/// Ranks isomorphism classes of order `n` by ascending |bound - energy|
/// (|bound - lambda_1| for the lambda_1 bounds). Graphs where the bound is
/// undefined are skipped.
pub fn find_extremal(
    n: usize,
    sigma_filter: Option<usize>,
    bound_id: BoundId,
    top_k: usize,
) -> Result<Vec<ExtremalEntry>, VerifyError> {
    if n == 0 || n > MAX_DEDUP_ORDER {
        return Err(VerifyError::OrderTooLarge(n));
    }
    let mut entries = Vec::new();
    for g in enumerate_graphs(n, true)? {
        if let Some(sigma) = sigma_filter {
            if g.loop_count() != sigma {
                continue;
            }
        }
        let report = bounds::bound_report(&g, bounds::DEFAULT_EQ_TOL).map_err(|e| match e {
            bounds::BoundsError::Spectral(source) => VerifyError::NoConvergence {
                n,
                bits: g.packed_bits(),
                source,
            },
            bounds::BoundsError::OrderTooSmall(_) => unreachable!("n >= 1"),
        })?;
        let (bound, target) = match bound_value(&report, bound_id) {
            Some(pair) => pair,
            None => continue,
        };
        entries.push(ExtremalEntry {
            code: g.canonical_code().expect("order checked").to_string(),
            energy: report.energy,
            bound,
            gap: (bound - target).abs(),
            graph: g,
        });
    }
    entries.sort_by(|a, b| {
        a.gap
            .partial_cmp(&b.gap)
            .expect("gaps are finite")
            .then_with(|| a.code.cmp(&b.code))
    });
    entries.truncate(top_k);
    Ok(entries)
}

fn bound_value(report: &BoundReport, id: BoundId) -> Option<(f64, f64)> {
    match id {
        BoundId::Gutman => Some((report.gutman_upper, report.energy)),
        BoundId::Improved => Some((report.improved_upper, report.energy)),
        BoundId::Lambda1Lower => Some((report.lambda1_lower, report.lambda1)),
        BoundId::Lambda1Upper => Some((report.lambda1_upper, report.lambda1)),
        BoundId::PairProduct => Some((report.pair_product_rhs, report.pair_product_lhs)),
        BoundId::SpectralLower => Some((report.spectral_lower.value, report.energy)),
        BoundId::Ozeki => Some((report.ozeki_lower.value, report.energy)),
        BoundId::SpreadRatio => report.spread_ratio_lower.map(|b| (b, report.energy)),
    }
}
