//! Named matroids used throughout the tests, the CLI and the reference table.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

fn lines(v: &[[usize; 3]]) -> Vec<Subset> {
    v.iter().map(|l| l.iter().copied().collect()).collect()
}

const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

// Points a0 a1 a2 = 0 1 2 on one line, b0 b1 b2 = 3 4 5 on another, and the
// cross-joins c0 = a0b1.a1b0, c1 = a0b2.a2b0, c2 = a1b2.a2b1 = 6 7 8.
const PAPPUS_LINES: [[usize; 3]; 9] = [
    [0, 1, 2],
    [3, 4, 5],
    [0, 4, 6],
    [1, 3, 6],
    [0, 5, 7],
    [2, 3, 7],
    [1, 5, 8],
    [2, 4, 8],
    [6, 7, 8],
];

// Edges of K4: 01 02 03 12 13 23 -> 0..6; the lines are the four triangles.
const BRAID_LINES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];

pub fn fano() -> Matroid {
    Matroid::from_rank2_flats(7, &lines(&FANO_LINES))
        .expect("Fano lines form a linear space")
        .with_name("PG(2,2)")
}

/// The Fano plane with the line `{2, 4, 5}` relaxed.
pub fn non_fano() -> Matroid {
    Matroid::from_rank2_flats(7, &lines(&FANO_LINES[..6]))
        .expect("non-Fano lines form a linear space")
        .with_name("non-Fano")
}

pub fn pappus() -> Matroid {
    Matroid::from_rank2_flats(9, &lines(&PAPPUS_LINES))
        .expect("Pappus lines form a linear space")
        .with_name("Pappus")
}

/// The Pappus configuration without the line through the three cross-joins.
pub fn non_pappus() -> Matroid {
    Matroid::from_rank2_flats(9, &lines(&PAPPUS_LINES[..8]))
        .expect("non-Pappus lines form a linear space")
        .with_name("non-Pappus")
}

/// The graphic matroid of `K4`, i.e. the braid arrangement.
pub fn braid() -> Matroid {
    Matroid::from_rank2_flats(6, &lines(&BRAID_LINES))
        .expect("triangles of K4 form a linear space")
        .with_name("Braid")
}

/// `n - 1` collinear points and one point off the line; the last element is a coloop.
pub fn near_pencil(n: usize) -> Matroid {
    let line: Subset = (0..n - 1).collect();
    Matroid::from_rank2_flats(n, &[line])
        .expect("a single line is a linear space")
        .with_name(format!("near-pencil({n})"))
}

/// Spanning trees of `K4`, as edge triples in the labeling used by [`braid`].
pub fn k4_spanning_trees() -> Vec<Subset> {
    let mut trees = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let t: Subset = [a, b, c].into_iter().collect();
                if !BRAID_LINES.iter().any(|l| l.iter().copied().collect::<Subset>() == t) {
                    trees.push(t);
                }
            }
        }
    }
    trees
}

/// Names accepted by [`builtin`], besides the parametric `pg2-Q` and `u-R-N`.
pub const BUILTIN_NAMES: [&str; 5] = ["fano", "nonfano", "pappus", "nonpappus", "braid"];

/// Looks up a builtin matroid by name: `fano`, `nonfano`, `pappus`,
/// `nonpappus`, `braid`, `pg2-Q` or `u-R-N`.
pub fn builtin(name: &str) -> Result<Matroid> {
    let bad = || Error::InvalidInput(format!("unknown builtin matroid '{name}'"));
    let parse = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name {
        "fano" => Ok(fano()),
        "nonfano" => Ok(non_fano()),
        "pappus" => Ok(pappus()),
        "nonpappus" => Ok(non_pappus()),
        "braid" => Ok(braid()),
        _ => {
            if let Some(q) = name.strip_prefix("pg2-") {
                Matroid::pg2(parse(q)?)
            } else if let Some(rest) = name.strip_prefix("u-") {
                let (r, n) = rest.split_once('-').ok_or_else(bad)?;
                Matroid::uniform(parse(r)?, parse(n)?)
            } else {
                Err(bad())
            }
        }
    }
}

/// Rank-3 matroids known to come from arrangements of pseudolines (in fact
/// real line arrangements): `U(3,n)` for `3 <= n <= 9`, non-Fano, Pappus,
/// non-Pappus and Braid.
pub fn pseudoline_corpus() -> Vec<Matroid> {
    let mut out: Vec<Matroid> = (3..=9).map(|n| Matroid::uniform(3, n).unwrap()).collect();
    out.extend([non_fano(), pappus(), non_pappus(), braid()]);
    out
}

/// Every named matroid of the reference table plus a few small extras, all
/// of rank 3 and at most 9 elements.
pub fn rank3_corpus() -> Vec<Matroid> {
    let mut out: Vec<Matroid> = (3..=9).map(|n| Matroid::uniform(3, n).unwrap()).collect();
    out.extend([fano(), non_fano(), pappus(), non_pappus(), braid()]);
    out.extend((4..=8).map(near_pencil));
    out
}
