//! Command line front end.
//!
//! Subcommands: `bounds`, `construct`, `verify`, `analyze`, `search`.
//! Exit codes: 0 on success or a valid code, 1 on an invalid code, 2 on
//! usage errors. `SPREADKIT_THREADS` caps the worker count.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::bounds::{bounds_table, BoundsRecord};
use crate::codes::{lifted_mrd, multi_component, SubspaceCode};
use crate::search::{max_partial_spread, SearchLimits};
use crate::spread_file::SpreadFile;
use crate::verify::{hyperplane_spectrum, partition_type, verify_spread};
use crate::{analysis, Error, Result};

#[derive(Parser)]
#[command(
    name = "spreadkit",
    version,
    about = "Partial spreads and constant-dimension subspace codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct RangeArg {
    lo: u32,
    hi: u32,
}

fn parse_range(s: &str) -> std::result::Result<RangeArg, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| format!("invalid range bound '{lo}'"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("invalid range bound '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(RangeArg { lo, hi })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Method {
    MultiComponent,
    LiftedMrd,
}

#[derive(Subcommand)]
enum Command {
    /// Print lower/upper/exact bounds for A_q(n, 2k; k)
    Bounds {
        /// Field sizes, comma separated (prime powers)
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Codeword dimension or range A..B
        #[arg(long, value_parser = parse_range)]
        k: RangeArg,
        /// Ambient dimension or range A..B
        #[arg(long, value_parser = parse_range)]
        n: RangeArg,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Build a code, verify it, and write it as a spread file
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        method: Method,
        /// Target subspace distance (lifted-mrd only; defaults to 2k)
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the partial-spread property of a spread file
    Verify {
        file: PathBuf,
        /// List the uncovered points
        #[arg(long)]
        holes: bool,
        /// Print the hyperplane spectrum
        #[arg(long)]
        spectrum: bool,
        /// Reject codewords that are not stored in canonical form
        #[arg(long)]
        strict: bool,
    },
    /// Hyperplane analyses of a spread file
    Analyze {
        file: PathBuf,
        /// Solve the standard equations for the code's parameters
        #[arg(long)]
        standard_equations: bool,
        /// Print the vector space partition type (holes as points)
        #[arg(long)]
        partition_type: bool,
    },
    /// Brute-force maximum partial spread search (tiny instances)
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Wall clock budget in seconds
        #[arg(long)]
        time_limit: Option<f64>,
        /// Disable fixing the lexicographically least subspace
        #[arg(long)]
        no_symmetry: bool,
        /// Write the witness as a spread file
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the CLI on the given argument vector and returns the process exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_thread_pool();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output on stdout with exit 0.
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    let outcome = match cli.command {
        Command::Bounds { q, k, n, format } => cmd_bounds(&q, k, n, format),
        Command::Construct { q, n, k, method, d, out } => cmd_construct(q, n, k, method, d, &out),
        Command::Verify { file, holes, spectrum, strict } => {
            cmd_verify(&file, holes, spectrum, strict)
        }
        Command::Analyze { file, standard_equations, partition_type } => {
            cmd_analyze(&file, standard_equations, partition_type)
        }
        Command::Search { q, n, k, time_limit, no_symmetry, out } => {
            cmd_search(q, n, k, time_limit, no_symmetry, out.as_deref())
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("SPREADKIT_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Format(_)
        | Error::DuplicateCodeword
        | Error::MixedDimensions
        | Error::NotASpread => 1,
        _ => 2,
    }
}

fn opt_big(v: &Option<BigUint>) -> String {
    v.as_ref().map_or_else(String::new, |b| b.to_string())
}

fn cmd_bounds(qs: &[u64], k: RangeArg, n: RangeArg, format: TableFormat) -> Result<i32> {
    let table = bounds_table(qs, k.lo..=k.hi, n.lo..=n.hi)?;
    match format {
        TableFormat::Csv => {
            println!("q,n,k,lower,upper,exact,lower_rule,upper_rule,gap");
            for r in &table {
                println!(
                    "{},{},{},{},{},{},{},{},{}",
                    r.q,
                    r.n,
                    r.k,
                    r.lower,
                    r.upper,
                    opt_big(&r.exact),
                    r.lower_rule,
                    r.upper_rule,
                    r.gap()
                );
            }
        }
        TableFormat::Json => {
            for r in &table {
                println!("{}", record_json(r));
            }
        }
        TableFormat::Text => {
            let header = ["q", "n", "k", "lower", "upper", "exact", "gap", "lower_rule", "upper_rule"];
            let rows: Vec<[String; 9]> = table
                .iter()
                .map(|r| {
                    [
                        r.q.to_string(),
                        r.n.to_string(),
                        r.k.to_string(),
                        r.lower.to_string(),
                        r.upper.to_string(),
                        r.exact.as_ref().map_or_else(|| "-".into(), |e| e.to_string()),
                        r.gap().to_string(),
                        r.lower_rule.to_string(),
                        r.upper_rule.to_string(),
                    ]
                })
                .collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let fmt_row = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
            println!("{}", fmt_row(&header));
            for row in &rows {
                println!("{}", fmt_row(row));
            }
        }
    }
    Ok(0)
}

fn record_json(r: &BoundsRecord) -> String {
    let opt_num = |v: &Option<BigUint>| v.as_ref().map_or_else(|| "null".into(), |b| b.to_string());
    let opt_rule = |v: &Option<crate::bounds::Rule>| {
        v.map_or_else(|| "null".into(), |rule| format!("\"{rule}\""))
    };
    format!(
        "{{\"q\":{},\"n\":{},\"k\":{},\"lower\":{},\"upper\":{},\"exact\":{},\"lower_rule\":\"{}\",\"upper_rule\":\"{}\",\"exact_rule\":{},\"gap\":{},\"r\":{},\"t\":{},\"s_lower\":{},\"s_construction\":{}}}",
        r.q,
        r.n,
        r.k,
        r.lower,
        r.upper,
        opt_num(&r.exact),
        r.lower_rule,
        r.upper_rule,
        opt_rule(&r.exact_rule),
        r.gap(),
        r.r,
        r.t,
        opt_num(&r.s_lower),
        opt_num(&r.s_construction),
    )
}

fn cmd_construct(
    q: u64,
    n: u32,
    k: u32,
    method: Method,
    d: Option<u32>,
    out: &Path,
) -> Result<i32> {
    let (code, method_name) = match method {
        Method::MultiComponent => {
            if d.is_some() {
                return Err(Error::Parameter(
                    "--d applies to lifted-mrd only; multi-component always has distance 2k".into(),
                ));
            }
            (multi_component(q, n, k)?, "multi-component")
        }
        Method::LiftedMrd => (lifted_mrd(q, n, k, d.unwrap_or(2 * k))?, "lifted-mrd"),
    };
    let declared = code.declared_min_subspace_distance().expect("constructions declare a distance");
    let report = verify_spread(&code);
    println!("method: {method_name}");
    println!("parameters: q={q} n={n} k={k}");
    println!("codewords: {}", code.len());
    match report.min_subspace_distance {
        Some(min) => println!("minimum subspace distance: {min}"),
        None => println!("minimum subspace distance: n/a (single codeword)"),
    }
    let ok = if declared == 2 * k {
        println!("partial spread: {}", report.valid);
        if let Some(holes) = &report.hole_count {
            println!("holes: {holes}");
        }
        report.valid
    } else {
        let ok = report.min_subspace_distance.is_none_or(|min| min >= declared);
        println!("subspace distance at least {declared}: {ok}");
        ok
    };
    SpreadFile::from_code(&code, Some(method_name)).write(out)?;
    println!("written: {}", out.display());
    Ok(if ok { 0 } else { 1 })
}

fn load(file: &Path, strict: bool) -> Result<SubspaceCode> {
    SpreadFile::read(file)?.to_code(strict)
}

fn cmd_verify(file: &Path, holes: bool, spectrum: bool, strict: bool) -> Result<i32> {
    let code = load(file, strict)?;
    let report = verify_spread(&code);
    println!("file: {}", file.display());
    println!("field: {}", code.ctx());
    println!("ambient dimension: {}", code.ambient_dim());
    println!("codeword dimension: {}", code.dim());
    println!("codewords: {}", report.codeword_count);
    match report.min_subspace_distance {
        Some(min) => println!("minimum subspace distance: {min}"),
        None => println!("minimum subspace distance: n/a (single codeword)"),
    }
    println!("valid partial spread: {}", report.valid);
    if let Some((i, j)) = report.witness_pair {
        println!("violating pair: codewords {i} and {j} intersect nontrivially");
    }
    if let Some(count) = &report.hole_count {
        println!("holes: {count}");
    }
    if holes && report.valid {
        let hole_points = crate::verify::compute_holes(&code)?;
        println!("hole points ({}):", hole_points.len());
        for p in &hole_points {
            let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
            println!("  ({})", coords.join(" "));
        }
    }
    if spectrum && report.valid {
        let spectrum = hyperplane_spectrum(&code)?;
        println!("hyperplane spectrum ({} hyperplanes):", spectrum.records.len());
        for (section, count) in &spectrum.by_type {
            println!("  {section}: {count}");
        }
    }
    Ok(if report.valid { 0 } else { 1 })
}

fn big_to_u64(b: &BigUint, what: &str) -> Result<u64> {
    b.to_u64()
        .ok_or_else(|| Error::TooLarge(format!("{what} does not fit in 64 bits")))
}

fn cmd_analyze(file: &Path, standard_equations: bool, partition: bool) -> Result<i32> {
    if standard_equations == partition {
        return Err(Error::Parameter(
            "pass exactly one of --standard-equations and --partition-type".into(),
        ));
    }
    let code = load(file, false)?;
    let report = verify_spread(&code);
    if !report.valid {
        println!("valid partial spread: false");
        return Ok(1);
    }
    if partition {
        let with_holes = partition_type(&code, true)?;
        let without = partition_type(&code, false)?;
        println!("codeword type: {without}");
        println!("partition type (holes as points): {with_holes}");
        println!(
            "full vector space partition: {}",
            with_holes.is_full_partition(code.ctx().q(), code.ambient_dim() as u32)
        );
        return Ok(0);
    }

    // Standard equations: derive the feasible hyperplane profiles of this
    // code. A hyperplane with i contained codewords carries
    // L(i) = |H| - i |F_q^k| - (|C| - i) |F_q^{k-1}| holes (point counts),
    // L(i) <= total holes, and L(i) = 0 or L(i) >= q + 1 by the tail bound.
    let q = code.ctx().q();
    let n = code.ambient_dim() as u32;
    let k = code.dim() as u32;
    let m = code.len() as u64;
    let points = |d: u32| -> BigUint {
        if d == 0 {
            BigUint::zero()
        } else {
            (BigUint::from(q).pow(d) - BigUint::one()) / BigUint::from(q - 1)
        }
    };
    let holes = report.hole_count.clone().expect("valid spread");
    let hyperplane_points = points(n - 1);
    let mut profiles: Vec<(u64, u64)> = Vec::new();
    for i in 0..=m {
        let used = BigUint::from(i) * points(k) + BigUint::from(m - i) * points(k - 1);
        if used > hyperplane_points {
            continue;
        }
        let l = &hyperplane_points - used;
        if l > holes {
            continue;
        }
        if !l.is_zero() && l < BigUint::from(q + 1) {
            continue;
        }
        profiles.push((i, big_to_u64(&l, "hole count")?));
    }
    let span_bound = if holes.is_zero() {
        None
    } else {
        // dim span(holes) >= smallest L with (q^L - 1)/(q - 1) >= holes.
        Some((1..=n).find(|&d| points(d) >= holes).expect("holes fit in the ambient space"))
    };
    println!("code: q={q} n={n} k={k} size={m} holes={holes}");
    let profile_list: Vec<String> =
        profiles.iter().map(|(i, l)| format!("(i={i}, holes={l})")).collect();
    println!("feasible hyperplane profiles: {}", profile_list.join(" "));
    let sol = analysis::solve_standard_equations(n, k, q, m, &profiles, span_bound)?;
    println!(
        "standard equations: sum a_i = {},  sum i a_i = {},  sum C(i,2) a_i = {}",
        sol.equation_rhs[0], sol.equation_rhs[1], sol.equation_rhs[2]
    );
    let var_names: Vec<String> = profiles.iter().map(|(i, _)| format!("a_{i}")).collect();
    println!(
        "free variables: {}",
        sol.free_vars
            .iter()
            .map(|&f| var_names[f].clone())
            .collect::<Vec<_>>()
            .join(", ")
    );
    for (idx, form) in sol.general.iter().enumerate() {
        if sol.free_vars.contains(&idx) {
            continue;
        }
        let mut expr = form.constant.to_string();
        for (j, coef) in form.free_coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            expr.push_str(&format!(" + ({coef}) {}", var_names[sol.free_vars[j]]));
        }
        println!("  {} = {}", var_names[idx], expr);
    }
    if let Some((lo, hi)) = &sol.free_range {
        println!(
            "nonnegativity range: {lo} <= {} <= {hi}",
            var_names[sol.free_vars[0]]
        );
    }
    print_spectra("solutions", &sol.solutions, &var_names);
    if let (Some(allowed), Some(filtered)) = (&sol.span_allowed, &sol.span_filtered) {
        if let Some(idx) = sol.span_profile {
            let values: Vec<String> = allowed.iter().map(|v| v.to_string()).collect();
            println!(
                "span constraint: {} in {{{}}} (hole span dimension >= {})",
                var_names[idx],
                values.join(", "),
                span_bound.unwrap_or(0),
            );
            if !sol.span_rule_validated {
                println!("  (span rule instantiated beyond q = 2; unvalidated)");
            }
            print_spectra("admissible spectra", filtered, &var_names);
        }
    }
    // The observed spectrum must be one of the admissible solutions.
    let spectrum = hyperplane_spectrum(&code)?;
    let observed_map = spectrum.by_contained();
    let observed: Vec<BigUint> = profiles
        .iter()
        .map(|(i, _)| BigUint::from(observed_map.get(&(*i as usize)).copied().unwrap_or(0)))
        .collect();
    let classified: u64 = observed_map
        .iter()
        .filter(|(i, _)| profiles.iter().any(|(pi, _)| *pi == **i as u64))
        .map(|(_, c)| *c)
        .sum();
    let observed_strs: Vec<String> = observed.iter().map(|v| v.to_string()).collect();
    println!("observed spectrum: ({})", observed_strs.join(", "));
    let consistent = classified == spectrum.records.len() as u64
        && sol.solutions.contains(&observed);
    println!("observed spectrum among solutions: {consistent}");
    Ok(0)
}

fn print_spectra(label: &str, spectra: &[Vec<BigUint>], var_names: &[String]) {
    const SHOWN: usize = 24;
    println!(
        "{label} ({} total) over ({}):",
        spectra.len(),
        var_names.join(", ")
    );
    for s in spectra.iter().take(SHOWN) {
        let cells: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        println!("  ({})", cells.join(", "));
    }
    if spectra.len() > SHOWN {
        println!("  ... {} more", spectra.len() - SHOWN);
    }
}

fn cmd_search(
    q: u64,
    n: u32,
    k: u32,
    time_limit: Option<f64>,
    no_symmetry: bool,
    out: Option<&Path>,
) -> Result<i32> {
    let limits = SearchLimits {
        time: time_limit.map(std::time::Duration::from_secs_f64),
        node_budget: None,
        symmetry: !no_symmetry,
    };
    let result = max_partial_spread(q, n, k, &limits)?;
    if result.proved_optimal {
        println!("maximum = {} (proved)", result.best_size);
    } else {
        println!("best found = {} (not proved, budget exhausted)", result.best_size);
    }
    println!("nodes explored: {}", result.nodes_explored);
    println!("elapsed: {:.3}s", result.elapsed.as_secs_f64());
    if let Some(path) = out {
        SpreadFile::from_code(&result.witness, Some("search")).write(path)?;
        println!("witness written: {}", path.display());
    }
    Ok(0)
}
