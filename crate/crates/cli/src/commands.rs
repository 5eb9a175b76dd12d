use std::fs;
use std::path::Path;

use expander_forge::bounds::{
    audit_first_moment, is_mu_pair, mu_pair_sum, mu_pair_table, xyz_bound, MuPair, MuPairBound,
};
use expander_forge::cheeger::{cheeger_exact_with_guard, cheeger_upper, guard_from_env};
use expander_forge::construct::{
    balanced_boundary_subset, expander_family, steklov_test_function, two_tree_split, FamilySpec,
    StandardBaseProvider,
};
use expander_forge::format::{parse, to_text};
use expander_forge::graph::{build_graph, check_parameters, topology, MultiGraph};
use expander_forge::rational::{big_to_f64, parse_ratio};
use expander_forge::rule::NRule;
use expander_forge::sampler::{estimate_connectivity, sample_partition, SampleConfig};
use expander_forge::spectra::{laplacian_spectrum, spectral_report, steklov_spectrum, DEFAULT_TOL};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::failure::Failure;
use crate::manifest::OutDir;
use crate::{AuditArgs, BoundsArgs, CheegerArgs, FamilyArgs, SampleArgs, SweepArgs};

fn resolve_guard(flag: Option<usize>) -> Result<usize, Failure> {
    match flag {
        Some(g) => Ok(g),
        None => Ok(guard_from_env()?),
    }
}

fn float(x: f64) -> String {
    format!("{x:.12}")
}

fn ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn csv_bytes<F>(header: &[&str], fill: F) -> Result<Vec<u8>, Failure>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<(), Failure>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    fill(&mut w)?;
    w.into_inner().map_err(|e| Failure { code: 1, message: e.to_string() })
}

fn read_graph(path: &Path) -> Result<MultiGraph, Failure> {
    let text = fs::read_to_string(path)?;
    Ok(parse(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

struct TrialRow {
    connected: bool,
    lambda1: f64,
    sigma1: Option<f64>,
    h: Option<Ratio<u64>>,
    genus: i64,
}

/// `q`-quantile of sorted data by nearest rank.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let idx = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1;
    sorted[idx]
}

#[derive(Serialize)]
struct SampleSummary {
    chi: usize,
    n: usize,
    trials: u64,
    seed: u64,
    connected_fraction: f64,
    lambda1_quantiles: Vec<(f64, f64)>,
    sigma1_quantiles: Vec<(f64, f64)>,
}

const QUANTILES: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

pub fn sample(a: &SampleArgs, argv: &[String]) -> Result<(), Failure> {
    let cfg = SampleConfig::new(a.chi, a.n, a.trials, a.seed)?;
    let guard = resolve_guard(a.guard)?;
    let rows: Vec<TrialRow> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| -> Result<TrialRow, Failure> {
            let g = build_graph(&sample_partition(&cfg, t)?);
            let connected = g.is_connected();
            let lambda1 = laplacian_spectrum(&g)?.lambda1;
            let sigma1 = if connected && g.boundary_count() >= 2 {
                Some(steklov_spectrum(&g)?[1])
            } else {
                None
            };
            let h = if connected && g.vertex_count() <= guard {
                Some(cheeger_exact_with_guard(&g, guard)?.h)
            } else {
                None
            };
            Ok(TrialRow { connected, lambda1, sigma1, h, genus: topology(&g)?.genus })
        })
        .collect::<Result<_, _>>()?;

    let connected = rows.iter().filter(|r| r.connected).count();
    let fraction = connected as f64 / rows.len() as f64;
    let mut lambdas: Vec<f64> = rows.iter().map(|r| r.lambda1).collect();
    lambdas.sort_by(f64::total_cmp);
    let mut sigmas: Vec<f64> = rows.iter().filter_map(|r| r.sigma1).collect();
    sigmas.sort_by(f64::total_cmp);
    let quantiles = |v: &[f64]| -> Vec<(f64, f64)> {
        if v.is_empty() {
            Vec::new()
        } else {
            QUANTILES.iter().map(|&q| (q, quantile(v, q))).collect()
        }
    };

    let header = ["trial", "connected", "lambda1", "sigma1", "h_exact_or_blank", "genus"];
    let bytes = csv_bytes(&header, |w| {
        for (t, r) in rows.iter().enumerate() {
            w.write_record([
                t.to_string(),
                r.connected.to_string(),
                float(r.lambda1),
                r.sigma1.map(float).unwrap_or_default(),
                r.h.as_ref().map(ratio).unwrap_or_default(),
                r.genus.to_string(),
            ])?;
        }
        // trial = "summary": connected fraction and median λ1, σ1
        w.write_record([
            "summary".to_string(),
            float(fraction),
            float(quantile(&lambdas, 0.5)),
            if sigmas.is_empty() { String::new() } else { float(quantile(&sigmas, 0.5)) },
            String::new(),
            String::new(),
        ])?;
        Ok(())
    })?;
    let summary = SampleSummary {
        chi: cfg.chi,
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        connected_fraction: fraction,
        lambda1_quantiles: quantiles(&lambdas),
        sigma1_quantiles: quantiles(&sigmas),
    };
    let mut out = OutDir::create(&a.out)?;
    out.write("sample.csv", &bytes)?;
    out.write("sample_summary.json", &serde_json::to_vec_pretty(&summary)?)?;
    out.finish(argv, Some(a.seed))?;
    Ok(())
}

pub fn sweep(a: &SweepArgs, argv: &[String]) -> Result<(), Failure> {
    let rule: NRule = a.rule.parse()?;
    if a.trials == 0 {
        return Err(Failure::invalid("trials must be at least 1"));
    }
    let header = ["chi", "n", "trials", "connected_fraction", "ci_low", "ci_high", "seed", "n_requested"];
    let bytes = csv_bytes(&header, |w| {
        for &chi in &a.chi {
            let (requested, n) = rule.apply(chi)?;
            let est = estimate_connectivity(&SampleConfig::new(chi, n, a.trials, a.seed)?)?;
            w.write_record([
                chi.to_string(),
                n.to_string(),
                a.trials.to_string(),
                float(est.fraction),
                float(est.ci_low),
                float(est.ci_high),
                a.seed.to_string(),
                requested.to_string(),
            ])?;
        }
        Ok(())
    })?;
    let mut out = OutDir::create(&a.out)?;
    out.write("sweep.csv", &bytes)?;
    out.finish(argv, Some(a.seed))?;
    Ok(())
}

#[derive(Serialize)]
struct BoundsJson {
    chi: usize,
    n: usize,
    mu: String,
    sum: String,
    sum_float: f64,
    rows: usize,
}

pub fn bounds(a: &BoundsArgs, argv: &[String]) -> Result<(), Failure> {
    check_parameters(a.chi, a.n)?;
    let mu = parse_ratio(&a.mu)?;
    let sum = mu_pair_sum(a.chi, a.n, &mu)?;
    let table = if a.all_triples {
        all_triples(a.chi, a.n)?
    } else {
        mu_pair_table(a.chi, a.n, &mu)?
    };
    let mu_text = ratio(&mu);
    let summary = csv_bytes(&["chi", "n", "mu", "sum_num", "sum_den", "sum_float"], |w| {
        w.write_record([
            a.chi.to_string(),
            a.n.to_string(),
            mu_text.clone(),
            sum.numer().to_string(),
            sum.denom().to_string(),
            format!("{:e}", big_to_f64(&sum)),
        ])?;
        Ok(())
    })?;
    let header = ["a", "b", "s", "mu_pair", "x", "y", "z", "product", "product_float"];
    let pairs = csv_bytes(&header, |w| {
        for (p, b) in &table {
            w.write_record([
                p.a.to_string(),
                p.b.to_string(),
                p.s.to_string(),
                is_mu_pair(p.a, p.b, p.s, a.chi, a.n, &mu).to_string(),
                b.x.to_string(),
                b.y.to_string(),
                b.z.to_string(),
                b.product.to_string(),
                format!("{:e}", big_to_f64(&b.product)),
            ])?;
        }
        Ok(())
    })?;
    let json = BoundsJson {
        chi: a.chi,
        n: a.n,
        mu: mu_text,
        sum: sum.to_string(),
        sum_float: big_to_f64(&sum),
        rows: table.len(),
    };
    let mut out = OutDir::create(&a.out)?;
    out.write("bounds.csv", &summary)?;
    out.write("pairs.csv", &pairs)?;
    out.write("bounds.json", &serde_json::to_vec_pretty(&json)?)?;
    out.finish(argv, None)?;
    Ok(())
}

fn all_triples(chi: usize, n: usize) -> Result<Vec<(MuPair, MuPairBound)>, Failure> {
    let max_size = (chi + n) / 2;
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=chi {
            if a + b == 0 || a + b > max_size {
                continue;
            }
            for s in 0..=3 * b + a {
                out.push((MuPair { a, b, s }, xyz_bound(chi, n, a, b, s)?));
            }
        }
    }
    Ok(out)
}

pub fn audit(a: &AuditArgs, argv: &[String]) -> Result<(), Failure> {
    let report = audit_first_moment(a.chi, a.n, a.a, a.b, a.s, a.trials, a.seed)?;
    if let Some(dir) = &a.out {
        let mut out = OutDir::create(dir)?;
        out.write("audit.json", &serde_json::to_vec_pretty(&report)?)?;
        out.finish(argv, Some(a.seed))?;
    }
    print_json(&report)
}

struct FamilyRow {
    g: u64,
    n: usize,
    chi: usize,
    h_lower: Option<Ratio<u64>>,
    lambda1: f64,
    h_exact: Option<Ratio<u64>>,
    text: String,
}

pub fn family(a: &FamilyArgs, argv: &[String]) -> Result<(), Failure> {
    let theta = parse_ratio(&a.theta)?;
    if a.g_min == 0 || a.g_min > a.g_max {
        return Err(Failure::invalid("need 1 ≤ g-min ≤ g-max"));
    }
    let guard = resolve_guard(a.guard)?;
    let spec = FamilySpec::new(theta)?;
    let provider = StandardBaseProvider::with_guard(guard);
    let rows: Vec<FamilyRow> = (a.g_min..=a.g_max)
        .into_par_iter()
        .map(|g| -> Result<FamilyRow, Failure> {
            let member = expander_family(&spec, g, &provider)?;
            let graph = &member.graph;
            let h_exact = if graph.vertex_count() <= guard {
                Some(cheeger_exact_with_guard(graph, guard)?.h)
            } else {
                None
            };
            Ok(FamilyRow {
                g,
                n: graph.boundary_count(),
                chi: graph.interior_count(),
                h_lower: member.h_lower,
                lambda1: laplacian_spectrum(graph)?.lambda1,
                h_exact,
                text: to_text(graph),
            })
        })
        .collect::<Result<_, _>>()?;

    let header = ["g", "n", "chi", "h_lower", "lambda1", "h_exact", "cheeger_ok"];
    let manifest = csv_bytes(&header, |w| {
        for r in &rows {
            let cheeger_ok = r.h_exact.map(|h| {
                let h = *h.numer() as f64 / *h.denom() as f64;
                r.lambda1 >= h * h / 18.0 - DEFAULT_TOL
            });
            w.write_record([
                r.g.to_string(),
                r.n.to_string(),
                r.chi.to_string(),
                r.h_lower.as_ref().map(ratio).unwrap_or_default(),
                float(r.lambda1),
                r.h_exact.as_ref().map(ratio).unwrap_or_default(),
                cheeger_ok.map(|b| b.to_string()).unwrap_or_default(),
            ])?;
        }
        Ok(())
    })?;
    let mut out = OutDir::create(&a.out)?;
    for r in &rows {
        out.write(&format!("g{:03}.graph", r.g), r.text.as_bytes())?;
    }
    out.write("manifest.csv", &manifest)?;
    out.finish(argv, None)?;
    Ok(())
}

pub fn spectra(path: &Path) -> Result<(), Failure> {
    let g = read_graph(path)?;
    print_json(&spectral_report(&g)?)
}

pub fn cheeger(a: &CheegerArgs) -> Result<(), Failure> {
    let g = read_graph(&a.graph)?;
    let cert = if a.upper {
        cheeger_upper(&g, !a.no_sweep)?
    } else {
        cheeger_exact_with_guard(&g, resolve_guard(a.guard)?)?
    };
    print_json(&cert)
}

#[derive(Serialize)]
struct SplitJson {
    split: expander_forge::construct::TreeSplit,
    balanced: Option<expander_forge::construct::BalancedSubset>,
    rayleigh: Option<String>,
    genus_bound: Option<String>,
}

pub fn split(path: &Path) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let split = two_tree_split(&g)?;
    let n = g.boundary_count();
    let (balanced, rayleigh, genus_bound) = if n >= 2 {
        let h = balanced_boundary_subset(&g)?;
        let (_, r) = steklov_test_function(&g, &h)?;
        let genus = expander_forge::graph::cycle_rank(&g);
        let bound = Ratio::new(16 * (genus as u64 + 1), 3 * n as u64);
        (Some(h), Some(r.to_string()), Some(ratio(&bound)))
    } else {
        (None, None, None)
    };
    print_json(&SplitJson { split, balanced, rayleigh, genus_bound })
}
