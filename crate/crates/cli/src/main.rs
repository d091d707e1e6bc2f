//! `sle`: energy and bounds of graphs with self-loops, plus exhaustive
//! verification sweeps over all small graphs.

mod graphfile;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use sle_core::bounds::{self, BoundId, BoundReport, DEFAULT_EQ_TOL};
use sle_core::extremal;
use sle_core::graph::{make_family, FamilyTag, SelfLoopGraph};
use sle_core::spectral::{self, DEFAULT_TOL};
use sle_core::verify;

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "sle", version, about = "Energy of graphs with self-loops")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the spectrum and energy of a graph file
    Energy { file: PathBuf },
    /// Print every bound, radicand, and equality flag for a graph file
    Bounds {
        file: PathBuf,
        /// Emit the machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Check every bound and characterization over all graphs up to an order
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Reduce the sweep to one representative per isomorphism class
        #[arg(long)]
        dedup: bool,
        /// Worker threads (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the JSON summary here instead of stdout
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit a named graph family as a graph file
    Family {
        /// One of: k1, k1_hat, k2, k2_tilde, k2_hat, kn, kn_hat, nk1,
        /// nk1_hat, half_k2, half_k2_tilde, half_k2_hat,
        /// half_k1_union_half_k1_hat, ksigma_hat_union_isolated
        tag: String,
        #[arg(long)]
        n: usize,
        /// Clique size for ksigma_hat_union_isolated
        #[arg(long)]
        sigma: Option<usize>,
    },
    /// Rank isomorphism classes by their gap to a bound
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: Option<usize>,
        /// One of: gutman, improved, lambda1_lower, lambda1_upper,
        /// pair_product, spectral_lower, ozeki, spread_ratio
        #[arg(long)]
        bound: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Energy { file } => cmd_energy(&file),
        Command::Bounds { file, json } => cmd_bounds(&file, json),
        Command::Verify {
            max_n,
            tol,
            dedup,
            jobs,
            report,
        } => cmd_verify(max_n, tol, dedup, jobs, report.as_deref()),
        Command::Family { tag, n, sigma } => cmd_family(&tag, n, sigma),
        Command::Extremal {
            n,
            sigma,
            bound,
            top,
        } => cmd_extremal(n, sigma, &bound, top),
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn load_graph(path: &Path) -> Result<SelfLoopGraph, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    graphfile::parse(&text).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn compute_report(g: &SelfLoopGraph) -> Result<BoundReport, ExitCode> {
    bounds::bound_report(g, DEFAULT_EQ_TOL).map_err(|e| fail(EXIT_NUMERIC, e))
}

fn fmt12(x: f64) -> String {
    format!("{x:.12}")
}

fn cmd_energy(file: &Path) -> ExitCode {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let spec = match spectral::eigenvalues(&g, DEFAULT_TOL) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_NUMERIC, e),
    };
    let mu = spectral::shifted_spectrum(&spec, g.order(), g.loop_count());
    println!(
        "n {}  m {}  sigma {}",
        g.order(),
        g.edge_count(),
        g.loop_count()
    );
    println!(
        "spectrum {}",
        spec.values().iter().map(|&l| fmt12(l)).collect::<Vec<_>>().join(" ")
    );
    println!("energy {}", fmt12(bounds::energy(&mu)));
    ExitCode::SUCCESS
}

fn cmd_bounds(file: &Path, json: bool) -> ExitCode {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let r = match compute_report(&g) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let spec = spectral::eigenvalues(&g, DEFAULT_TOL).expect("already computed once");
    let families = extremal::classify(&g, &spec, DEFAULT_EQ_TOL);

    if json {
        let file = report::build(&r, &families);
        println!("{}", serde_json::to_string_pretty(&file).expect("serializable"));
        return ExitCode::SUCCESS;
    }

    let eq = |b: bool| if b { "equal" } else { "-" };
    println!("n {}  m {}  sigma {}", r.n, r.m, r.sigma);
    println!(
        "spectrum            {}",
        r.spectrum.iter().map(|&l| fmt12(l)).collect::<Vec<_>>().join(" ")
    );
    println!("energy              {}", fmt12(r.energy));
    println!(
        "gutman_upper        {}  {}",
        fmt12(r.gutman_upper),
        eq(r.equality_flags.gutman)
    );
    println!(
        "improved_upper      {}  (radicand {})  {}",
        fmt12(r.improved_upper),
        fmt12(r.improved_radicand),
        eq(r.equality_flags.improved)
    );
    println!(
        "lambda1             {}  in [{}, {}]  lower={} upper={}",
        fmt12(r.lambda1),
        fmt12(r.lambda1_lower),
        fmt12(r.lambda1_upper),
        eq(r.equality_flags.lambda1_lower),
        eq(r.equality_flags.lambda1_upper)
    );
    println!(
        "pair_product        lhs {} >= rhs {}  {}",
        fmt12(r.pair_product_lhs),
        fmt12(r.pair_product_rhs),
        eq(r.equality_flags.pair_product)
    );
    println!(
        "spectral_lower      {}  (radicand {})  {}",
        fmt12(r.spectral_lower.value),
        fmt12(r.spectral_lower.radicand),
        eq(r.equality_flags.spectral_lower)
    );
    println!(
        "ozeki_lower         {}  (radicand {})  {}",
        fmt12(r.ozeki_lower.value),
        fmt12(r.ozeki_lower.radicand),
        eq(r.equality_flags.ozeki)
    );
    match r.spread_ratio_lower {
        Some(b) => println!(
            "spread_ratio_lower  {}  {}",
            fmt12(b),
            eq(r.equality_flags.spread_ratio == Some(true))
        ),
        None => println!("spread_ratio_lower  UNDEFINED"),
    }
    let tag = |t: Option<FamilyTag>| t.map_or("-".to_string(), |t| t.to_string());
    println!(
        "families            gutman={} lemma23={} lambda1_sigma={} thm38={}",
        tag(families.gutman_family),
        tag(families.lemma23_family),
        families
            .lambda1_family_sigma
            .map_or("-".to_string(), |s| s.to_string()),
        families
            .thm38_condition
            .map_or("UNDEFINED".to_string(), |b| b.to_string())
    );
    ExitCode::SUCCESS
}

fn cmd_verify(
    max_n: usize,
    tol: f64,
    dedup: bool,
    jobs: Option<usize>,
    report_path: Option<&Path>,
) -> ExitCode {
    if max_n == 0 || max_n > verify::MAX_SWEEP_ORDER {
        return fail(EXIT_USAGE, format!("--max-n must be in 1..=8, got {max_n}"));
    }
    if dedup && max_n > verify::MAX_DEDUP_ORDER {
        return fail(EXIT_USAGE, "--dedup requires --max-n <= 7");
    }
    if !(tol > 0.0) {
        return fail(EXIT_USAGE, "--tol must be positive");
    }
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return fail(EXIT_USAGE, "--jobs must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            return fail(EXIT_USAGE, e);
        }
    }
    let summary = match verify::verify_all(max_n, tol, dedup) {
        Ok(s) => s,
        Err(e @ verify::VerifyError::NoConvergence { .. }) => return fail(EXIT_NUMERIC, e),
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let json = serde_json::to_string_pretty(&summary).expect("serializable");
    match report_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                return fail(EXIT_USAGE, format!("{}: {e}", path.display()));
            }
            eprintln!(
                "checked {} graphs (n<={}) in {:.2}s: {} violations, {} findings; report at {}",
                summary.graphs_checked,
                summary.max_n,
                summary.elapsed_seconds,
                summary.violations.len(),
                summary.characterization_mismatches.len(),
                path.display()
            );
        }
        None => println!("{json}"),
    }
    if summary.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATIONS)
    }
}

fn cmd_family(tag: &str, n: usize, sigma: Option<usize>) -> ExitCode {
    let tag = match (tag, sigma) {
        ("k1", _) => FamilyTag::K1,
        ("k1_hat", _) => FamilyTag::K1Hat,
        ("k2", _) => FamilyTag::K2,
        ("k2_tilde", _) => FamilyTag::K2Tilde,
        ("k2_hat", _) => FamilyTag::K2Hat,
        ("kn", _) => FamilyTag::Kn,
        ("kn_hat", _) => FamilyTag::KnHat,
        ("nk1", _) => FamilyTag::NK1,
        ("nk1_hat", _) => FamilyTag::NK1Hat,
        ("half_k2", _) => FamilyTag::HalfK2,
        ("half_k2_tilde", _) => FamilyTag::HalfK2Tilde,
        ("half_k2_hat", _) => FamilyTag::HalfK2Hat,
        ("half_k1_union_half_k1_hat", _) => FamilyTag::HalfK1UnionHalfK1Hat,
        ("ksigma_hat_union_isolated", Some(sigma)) => {
            FamilyTag::KSigmaHatUnionIsolated { sigma }
        }
        ("ksigma_hat_union_isolated", None) => {
            return fail(EXIT_USAGE, "ksigma_hat_union_isolated needs --sigma");
        }
        (other, _) => return fail(EXIT_USAGE, format!("unknown family tag {other:?}")),
    };
    match make_family(tag, n) {
        Ok(g) => {
            print!("{}", graphfile::serialize(&g));
            ExitCode::SUCCESS
        }
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn cmd_extremal(n: usize, sigma: Option<usize>, bound: &str, top: usize) -> ExitCode {
    let bound_id = match BoundId::from_str(bound) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let rows = match verify::find_extremal(n, sigma, bound_id, top) {
        Ok(r) => r,
        Err(e @ verify::VerifyError::NoConvergence { .. }) => return fail(EXIT_NUMERIC, e),
        Err(e) => return fail(EXIT_USAGE, e),
    };
    println!("rank  gap             energy          bound           code  graph");
    for (i, row) in rows.iter().enumerate() {
        println!(
            "{:<5} {} {} {} {}  {}",
            i + 1,
            fmt12(row.gap),
            fmt12(row.energy),
            fmt12(row.bound),
            row.code,
            graphfile::one_liner(&row.graph)
        );
    }
    ExitCode::SUCCESS
}
