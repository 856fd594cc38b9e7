//! Command implementations and exit-code policy.

use crate::render;
use crate::report::{RunReport, Status};
use crate::{CheckKind, Cli, Command, ExportFamily, Format, SpectrumFamily};
use midspec::combinatorics::binomial;
use midspec::graphs::{build_hypercube, build_johnson, build_middle_cube, SparseGraph};
use midspec::hamiltonian::{find_hamiltonian_cycle, verify_cycle, CycleCertificate, SearchStatus};
use midspec::spectrum::{
    certify_by_moments, characteristic_polynomial_oracle, charpoly_from_spectrum, full_eigenbasis,
    incidence_matrix, lift_block, middle_cube_spectrum, multiplicity_sequence, sign_flip,
    verify_eigenvector, IncidenceSpec, SpectrumTable, MAX_EIGENBASIS_K,
};
use num::BigInt;
use serde_json::json;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

/// Default node-expansion budget for `hamilton`; enough for k <= 3 with
/// a wide margin (the k = 3 search needs about 450k expansions).
const DEFAULT_BUDGET: u64 = 10_000_000;

/// First nine terms of OEIS A050166, the concatenation of the positive-
/// eigenvalue multiplicities for k = 1, 2, 3.
const A050166_PREFIX: [u32; 9] = [1, 2, 1, 4, 5, 1, 6, 14, 14];

pub fn dispatch(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Spectrum { k, family, n, m } => cmd_spectrum(cli, *k, *family, *n, *m),
        Command::Table { kmax, oeis } => cmd_table(cli, *kmax, *oeis),
        Command::Verify {
            k,
            checks,
            allow_skip,
        } => cmd_verify(cli, *k, checks, *allow_skip),
        Command::Eigenbasis { k, r, negative } => cmd_eigenbasis(cli, *k, *r, *negative),
        Command::Hamilton { k, budget, labels } => cmd_hamilton(cli, *k, *budget, *labels),
        Command::Export { family, k, n, m } => cmd_export(cli, *family, *k, *n, *m),
    }
}

/// Write the payload to --out when given (with a confirmation on stderr
/// unless --quiet), otherwise to stdout.
fn emit_payload(cli: &Cli, payload: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => {
            fs::write(path, payload)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            if !cli.quiet {
                eprintln!("wrote {}", path.display());
            }
        }
        None => print!("{payload}"),
    }
    Ok(())
}

fn cmd_spectrum(
    cli: &Cli,
    k: Option<u32>,
    family: SpectrumFamily,
    n: Option<u32>,
    m: Option<u32>,
) -> Result<ExitCode, String> {
    let table = match family {
        SpectrumFamily::Middle => {
            let k = k.ok_or("spectrum: the middle family requires --k")?;
            if k == 0 {
                return Err("spectrum: --k must be at least 1".into());
            }
            middle_cube_spectrum(k).map_err(|e| e.to_string())?
        }
        SpectrumFamily::Johnson => {
            let n = n.ok_or("spectrum: the johnson family requires --n")?;
            let m = m.ok_or("spectrum: the johnson family requires --m")?;
            midspec::spectrum::johnson_spectrum(n, m).map_err(|e| e.to_string())?
        }
    };
    emit_payload(cli, &render::spectrum(&table, cli.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(cli: &Cli, kmax: u32, oeis: bool) -> Result<ExitCode, String> {
    if kmax == 0 {
        return Err("table: --kmax must be at least 1".into());
    }
    let mut tables: Vec<(u32, SpectrumTable)> = Vec::new();
    for k in 1..=kmax {
        tables.push((2 * k + 1, middle_cube_spectrum(k).map_err(|e| e.to_string())?));
    }
    let oeis_part = if oeis {
        let sequence = multiplicity_sequence(kmax).map_err(|e| e.to_string())?;
        let prefix_len = sequence.len().min(A050166_PREFIX.len());
        let matched = sequence[..prefix_len]
            .iter()
            .zip(&A050166_PREFIX[..prefix_len])
            .all(|(got, &want)| *got == BigInt::from(want));
        Some((sequence, matched))
    } else {
        None
    };
    emit_payload(
        cli,
        &render::grid(&tables, kmax, oeis_part.as_ref(), cli.format),
    )?;
    Ok(ExitCode::SUCCESS)
}

/// Per-check default and hard caps on k. --max-k (or MIDSPEC_MAX_K)
/// replaces the default; the hard cap always wins.
fn check_cap(kind: CheckKind, max_k: Option<u32>) -> u32 {
    let (default_cap, hard_cap) = match kind {
        CheckKind::Eigen => (5, MAX_EIGENBASIS_K),
        CheckKind::Msq => (5, midspec::spectrum::MAX_MSQ_K),
        CheckKind::Moments => (6, midspec::graphs::MAX_MIDDLE_CUBE_K),
        CheckKind::Rank => (5, 6),
        CheckKind::Charpoly => (3, 3),
    };
    max_k.unwrap_or(default_cap).min(hard_cap)
}

fn check_name(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Eigen => "eigen",
        CheckKind::Msq => "msq",
        CheckKind::Moments => "moments",
        CheckKind::Rank => "rank",
        CheckKind::Charpoly => "charpoly",
    }
}

/// Requested checks in canonical order, deduplicated; empty means all.
fn selected_checks(requested: &[CheckKind]) -> Vec<CheckKind> {
    const ALL: [CheckKind; 5] = [
        CheckKind::Eigen,
        CheckKind::Msq,
        CheckKind::Moments,
        CheckKind::Rank,
        CheckKind::Charpoly,
    ];
    if requested.is_empty() {
        return ALL.to_vec();
    }
    ALL.iter()
        .copied()
        .filter(|kind| requested.contains(kind))
        .collect()
}

fn cmd_verify(
    cli: &Cli,
    k: u32,
    requested: &[CheckKind],
    allow_skip: bool,
) -> Result<ExitCode, String> {
    if k == 0 {
        return Err("verify: --k must be at least 1".into());
    }
    let started = Instant::now();
    let selected = selected_checks(requested);
    let mut report = RunReport::new("verify");
    report.param("k", k);
    report.param(
        "checks",
        selected
            .iter()
            .map(|kind| check_name(*kind))
            .collect::<Vec<_>>()
            .join(","),
    );
    if allow_skip {
        report.param("allow_skip", true);
    }
    for kind in selected {
        let cap = check_cap(kind, cli.max_k);
        if k > cap {
            report.check(
                check_name(kind),
                Status::Skip,
                format!("skipped: over cap (max k for {} is {cap})", check_name(kind)),
            );
            continue;
        }
        let (status, detail) = run_check(kind, k).map_err(|e| e.to_string())?;
        report.check(check_name(kind), status, detail);
    }
    report.finish(started.elapsed());
    emit_payload(cli, &report.render(cli.format, cli.quiet))?;
    Ok(match report.result {
        Status::Fail => ExitCode::from(2),
        Status::Skip if !allow_skip => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn run_check(kind: CheckKind, k: u32) -> midspec::Result<(Status, String)> {
    match kind {
        CheckKind::Eigen => {
            let g = build_middle_cube(k)?;
            let mut certified = 0u64;
            for block in full_eigenbasis(k)? {
                for i in 0..block.vectors.rows() {
                    if !verify_eigenvector(&g, block.vectors.row(i), block.eigenvalue) {
                        return Ok((
                            Status::Fail,
                            format!(
                                "row {i} of the r={} block is not an eigenvector for {}",
                                block.r, block.eigenvalue
                            ),
                        ));
                    }
                    certified += 1;
                }
            }
            let expected = BigInt::from(2) * binomial(2 * k as u64 + 1, k as i64);
            if BigInt::from(certified) != expected {
                return Ok((
                    Status::Fail,
                    format!("certified {certified} eigenvectors; expected {expected}"),
                ));
            }
            Ok((Status::Pass, format!("{certified} eigenvectors certified")))
        }
        CheckKind::Msq => {
            let ok = midspec::spectrum::verify_m_squared(k)?;
            let v = build_middle_cube(k)?.num_vertices();
            Ok(if ok {
                (
                    Status::Pass,
                    format!("squared adjacency matches the two-block form on {v} vertices"),
                )
            } else {
                (Status::Fail, "squared adjacency mismatch".into())
            })
        }
        CheckKind::Moments => {
            let g = build_middle_cube(k)?;
            let t = middle_cube_spectrum(k)?;
            let d = t.distinct_count();
            let ok = certify_by_moments(&g, &t)?;
            Ok(if ok {
                (Status::Pass, format!("traces p=0..{d} match the spectrum"))
            } else {
                (Status::Fail, "trace mismatch against claimed spectrum".into())
            })
        }
        CheckKind::Rank => {
            let n = 2 * k + 1;
            for r in 1..=k {
                let inc = incidence_matrix(&IncidenceSpec { n, i: r, j: r - 1 })?;
                let rank = inc.to_rational().rref().rank;
                let expected = binomial(n as u64, r as i64 - 1);
                if BigInt::from(rank) != expected {
                    return Ok((
                        Status::Fail,
                        format!("rank at r={r} is {rank}; expected {expected}"),
                    ));
                }
            }
            Ok((
                Status::Pass,
                format!("containment ranks r=1..{k} all full at n={n}"),
            ))
        }
        CheckKind::Charpoly => {
            let g = build_middle_cube(k)?;
            let oracle = characteristic_polynomial_oracle(&g)?;
            let expansion = charpoly_from_spectrum(&middle_cube_spectrum(k)?);
            Ok(if oracle == expansion {
                (
                    Status::Pass,
                    format!("all {} coefficients agree", oracle.len()),
                )
            } else {
                (Status::Fail, "coefficient mismatch".into())
            })
        }
    }
}

fn cmd_eigenbasis(cli: &Cli, k: u32, r: u32, negative: bool) -> Result<ExitCode, String> {
    let cap = cli.max_k.unwrap_or(5).min(MAX_EIGENBASIS_K);
    if k == 0 || k > cap {
        return Err(format!("eigenbasis: --k must satisfy 1 <= k <= {cap}"));
    }
    if r > k {
        return Err("eigenbasis: --r must satisfy r <= k".into());
    }
    let block = lift_block(k, r).map_err(|e| e.to_string())?;
    let block = if negative { sign_flip(&block) } else { block };
    if !cli.quiet {
        eprintln!(
            "eigenbasis k={} r={} eigenvalue={} rows={} cols={}",
            block.k,
            block.r,
            block.eigenvalue,
            block.vectors.rows(),
            block.vectors.cols()
        );
    }
    emit_payload(cli, &block.to_text())?;
    Ok(ExitCode::SUCCESS)
}

/// Certificate JSON: vertex indices plus, on request, the subset labels
/// walked through (consecutive labels differ by one element).
fn certificate_json(
    g: &SparseGraph,
    cert: &CycleCertificate,
    with_labels: bool,
) -> Result<serde_json::Value, String> {
    let mut value = json!({
        "graph_order": cert.graph_order,
        "vertices": cert.vertices,
    });
    if with_labels {
        let labels = g
            .labels()
            .ok_or("hamilton: this graph carries no subset labels")?;
        let walked: Vec<Vec<u32>> = cert
            .vertices
            .iter()
            .map(|&v| labels[v as usize].elements())
            .collect();
        value["labels"] = json!(walked);
    }
    Ok(value)
}

fn cmd_hamilton(
    cli: &Cli,
    k: u32,
    budget: Option<u64>,
    labels: bool,
) -> Result<ExitCode, String> {
    if k == 0 {
        return Err("hamilton: --k must be at least 1".into());
    }
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let g = build_middle_cube(k).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let outcome = find_hamiltonian_cycle(&g, budget);
    let mut report = RunReport::new("hamilton");
    report.param("k", k);
    report.param("budget", budget);

    let exit = match outcome.status {
        SearchStatus::Found => {
            let cert = outcome.certificate.expect("found implies certificate");
            let verified = verify_cycle(&g, &cert);
            report.check(
                "hamiltonian_cycle",
                if verified { Status::Pass } else { Status::Fail },
                format!(
                    "cycle of length {} {} after {} expansions",
                    cert.vertices.len(),
                    if verified { "verified" } else { "REJECTED" },
                    outcome.expansions
                ),
            );
            let value = certificate_json(&g, &cert, labels)?;
            match &cli.out {
                Some(path) => {
                    let mut body =
                        serde_json::to_string_pretty(&value).expect("certificate serializes");
                    body.push('\n');
                    fs::write(path, body)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    report.param("out", path.display().to_string());
                }
                None => report.certificate = Some(value),
            }
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        SearchStatus::BudgetExhausted => {
            report.check(
                "hamiltonian_cycle",
                Status::Fail,
                format!("unknown: budget exhausted after {} expansions", outcome.expansions),
            );
            ExitCode::from(2)
        }
        SearchStatus::ParityInfeasible => {
            report.check(
                "hamiltonian_cycle",
                Status::Fail,
                "unknown: bipartition classes differ so no cycle exists".to_string(),
            );
            ExitCode::from(2)
        }
        SearchStatus::Exhausted => {
            report.check(
                "hamiltonian_cycle",
                Status::Fail,
                format!(
                    "unknown: search space exhausted after {} expansions",
                    outcome.expansions
                ),
            );
            ExitCode::from(2)
        }
    };
    report.finish(started.elapsed());
    // The report always goes to stdout; --out is reserved for the
    // certificate file.
    print!("{}", report.render(cli.format, cli.quiet));
    Ok(exit)
}

fn cmd_export(
    cli: &Cli,
    family: ExportFamily,
    k: Option<u32>,
    n: Option<u32>,
    m: Option<u32>,
) -> Result<ExitCode, String> {
    let g = match family {
        ExportFamily::Hypercube => {
            let n = n.ok_or("export: the hypercube family requires --n")?;
            build_hypercube(n).map_err(|e| e.to_string())?
        }
        ExportFamily::Middle => {
            let k = k.ok_or("export: the middle family requires --k")?;
            build_middle_cube(k).map_err(|e| e.to_string())?
        }
        ExportFamily::Johnson => {
            let n = n.ok_or("export: the johnson family requires --n")?;
            let m = m.ok_or("export: the johnson family requires --m")?;
            build_johnson(n, m).map_err(|e| e.to_string())?
        }
    };
    let payload = match cli.format {
        Format::Json => g.to_json_string(),
        Format::Table => g.to_edge_list(),
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (u, v) in g.edges() {
                s.push_str(&format!("{u},{v}\n"));
            }
            s
        }
    };
    emit_payload(cli, &payload)?;
    Ok(ExitCode::SUCCESS)
}
