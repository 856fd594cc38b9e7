//! Text, CSV, and JSON renderers for spectra and the multi-row
//! eigenvalue grid.

use crate::Format;
use midspec::spectrum::SpectrumTable;
use num::BigInt;
use serde::Serialize;
use std::fmt::Write as _;

/// Render a single spectrum. Text: `order N` then one `value multiplicity`
/// line per eigenvalue, ascending. CSV: the same rows under a header.
pub fn spectrum(t: &SpectrumTable, format: Format) -> String {
    match format {
        Format::Table => {
            let mut s = format!("order {}\n", t.order());
            for (value, mult) in t.iter() {
                writeln!(s, "{value} {mult}").unwrap();
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("eigenvalue,multiplicity\n");
            for (value, mult) in t.iter() {
                writeln!(s, "{value},{mult}").unwrap();
            }
            s
        }
        Format::Json => t.to_json_string(),
    }
}

#[derive(Serialize)]
struct EntryDoc {
    value: i64,
    multiplicity: String,
}

#[derive(Serialize)]
struct RowDoc {
    n: u32,
    order: u64,
    eigenvalues: Vec<EntryDoc>,
}

#[derive(Serialize)]
struct GridDoc {
    k_max: u32,
    rows: Vec<RowDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oeis_prefix_match: Option<bool>,
}

/// Render the grid of multiplicities for k = 1..=k_max: one row per n =
/// 2k+1, one column per eigenvalue -(k_max+1)..-1, 1..k_max+1, blank cells
/// where an eigenvalue does not occur. `oeis` optionally carries the
/// concatenated multiplicity sequence and its prefix comparison.
pub fn grid(
    tables: &[(u32, SpectrumTable)],
    k_max: u32,
    oeis: Option<&(Vec<BigInt>, bool)>,
    format: Format,
) -> String {
    let top = k_max as i64 + 1;
    let columns: Vec<i64> = (-top..=-1).chain(1..=top).collect();
    match format {
        Format::Table => {
            let mut cells: Vec<Vec<String>> = Vec::new();
            let header: Vec<String> = std::iter::once("n".to_string())
                .chain(columns.iter().map(|c| c.to_string()))
                .collect();
            cells.push(header);
            for (n, t) in tables {
                let row: Vec<String> = std::iter::once(n.to_string())
                    .chain(columns.iter().map(|&c| {
                        let m = t.multiplicity(c);
                        if m == BigInt::from(0) {
                            String::new()
                        } else {
                            m.to_string()
                        }
                    }))
                    .collect();
                cells.push(row);
            }
            let widths: Vec<usize> = (0..cells[0].len())
                .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap())
                .collect();
            let mut s = String::new();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:>w$}"))
                    .collect();
                writeln!(s, "{}", line.join("  ").trim_end()).unwrap();
            }
            if let Some((sequence, matched)) = oeis {
                let terms: Vec<String> = sequence.iter().map(|x| x.to_string()).collect();
                writeln!(s, "sequence: {}", terms.join(" ")).unwrap();
                writeln!(s, "oeis_prefix_match: {matched}").unwrap();
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("n");
            for c in &columns {
                write!(s, ",{c}").unwrap();
            }
            s.push('\n');
            for (n, t) in tables {
                write!(s, "{n}").unwrap();
                for &c in &columns {
                    let m = t.multiplicity(c);
                    if m == BigInt::from(0) {
                        s.push(',');
                    } else {
                        write!(s, ",{m}").unwrap();
                    }
                }
                s.push('\n');
            }
            if let Some((sequence, matched)) = oeis {
                let terms: Vec<String> = sequence.iter().map(|x| x.to_string()).collect();
                writeln!(s, "sequence,{}", terms.join(" ")).unwrap();
                writeln!(s, "oeis_prefix_match,{matched}").unwrap();
            }
            s
        }
        Format::Json => {
            let rows = tables
                .iter()
                .map(|(n, t)| RowDoc {
                    n: *n,
                    order: t.order(),
                    eigenvalues: t
                        .iter()
                        .map(|(value, mult)| EntryDoc {
                            value,
                            multiplicity: mult.to_string(),
                        })
                        .collect(),
                })
                .collect();
            let doc = GridDoc {
                k_max,
                rows,
                sequence: oeis.map(|(seq, _)| seq.iter().map(|x| x.to_string()).collect()),
                oeis_prefix_match: oeis.map(|(_, matched)| *matched),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("grid serializes");
            s.push('\n');
            s
        }
    }
}
