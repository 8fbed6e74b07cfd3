//! Chern numbers of the standard rank-3 examples.

use serde::Serialize;

use crate::analysis::{chern_rank3, ChernPair};
use crate::corpus;
use crate::lattice::RankTwoProfile;
use crate::matroid::Matroid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub name: String,
    pub c1sq: i64,
    pub c2: i64,
    /// `c1sq / c2` in lowest terms, `-` when `c2 = 0`.
    pub ratio: String,
    /// The ratio rounded to two decimals with trailing zeros dropped.
    pub approx: String,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn exact_ratio(p: ChernPair) -> String {
    if p.c2 == 0 {
        return "-".into();
    }
    let g = gcd(p.c1sq, p.c2);
    let (a, b) = (p.c1sq / g, p.c2 / g);
    if b == 1 {
        a.to_string()
    } else {
        format!("{a}/{b}")
    }
}

/// Rounds half up; the Chern numbers in the table are nonnegative.
pub fn approx_ratio(p: ChernPair) -> String {
    if p.c2 == 0 {
        return "-".into();
    }
    let hundredths = (200 * p.c1sq + p.c2) / (2 * p.c2);
    let (whole, frac) = (hundredths / 100, hundredths % 100);
    match frac {
        0 => whole.to_string(),
        f if f % 10 == 0 => format!("{whole}.{}", f / 10),
        f => format!("{whole}.{f:02}"),
    }
}

fn row(name: &str, m: &Matroid) -> TableRow {
    let p = chern_rank3(&RankTwoProfile::of(m).expect("table matroids are simple of rank 3"));
    TableRow {
        name: name.into(),
        c1sq: p.c1sq,
        c2: p.c2,
        ratio: exact_ratio(p),
        approx: approx_ratio(p),
    }
}

/// The thirteen rows, computed from the closed forms on the actual matroids.
pub fn reference_table() -> Vec<TableRow> {
    let mut rows: Vec<TableRow> = [3, 4, 5, 7, 9]
        .iter()
        .map(|&n| row(&format!("U(3,{n})"), &Matroid::uniform(3, n).unwrap()))
        .collect();
    rows.extend(
        [2, 4, 8, 9]
            .iter()
            .map(|&q| row(&format!("PG(2,{q})"), &Matroid::pg2(q).unwrap())),
    );
    rows.push(row("non-Fano", &corpus::non_fano()));
    rows.push(row("Pappus", &corpus::pappus()));
    rows.push(row("non-Pappus", &corpus::non_pappus()));
    rows.push(row("Braid", &corpus::braid()));
    rows
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("name,c1sq,c2,ratio,approx\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.name, r.c1sq, r.c2, r.ratio, r.approx));
    }
    out
}
