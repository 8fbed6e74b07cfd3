//! Isomorph-free enumeration of simple rank-3 matroids and the Chern pairs
//! they realize.
//!
//! A simple rank-3 matroid is determined by its lines with at least three
//! points, and any family of such lines meeting pairwise in at most one
//! point (none of them the whole ground set) defines one. Families are grown
//! one line at a time and deduplicated level by level with a canonical
//! labeling of the line family.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{chern_rank3, ChernPair};
use crate::canonical::{canonical_labeling, Certificate};
use crate::error::{Error, Result};
use crate::lattice::RankTwoProfile;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set the enumerator accepts.
pub const HARD_CAP: usize = 9;

/// A simple rank-3 matroid given by its lines of size at least three, in
/// canonical labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSpace {
    pub n: usize,
    pub lines: Vec<Subset>,
    certificate: Certificate,
}

impl LinearSpace {
    fn canonical(n: usize, lines: &[Subset]) -> Self {
        let tagged: Vec<(u8, Subset)> = lines.iter().map(|&l| (0, l)).collect();
        let labeling = canonical_labeling(n, &tagged);
        let lines = labeling
            .certificate
            .iter()
            .map(|&(_, bits)| Subset::from_bits(bits))
            .collect();
        LinearSpace {
            n,
            lines,
            certificate: labeling.certificate,
        }
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::from_rank2_flats(self.n, &self.lines).expect("enumerated families are linear spaces")
    }

    pub fn profile(&self) -> RankTwoProfile {
        let mut t: BTreeMap<usize, u64> = BTreeMap::new();
        let mut covered = 0;
        for l in &self.lines {
            *t.entry(l.len()).or_default() += 1;
            covered += l.len() * (l.len() - 1) / 2;
        }
        let pairs = self.n * (self.n - 1) / 2 - covered;
        if pairs > 0 {
            t.insert(2, pairs as u64);
        }
        RankTwoProfile::new(self.n, t).expect("line families cover each pair at most once")
    }

    /// Some element lies off a line containing all the others. With three
    /// points that line is a pair, which is never listed.
    pub fn has_coloop(&self) -> bool {
        self.n == 3 || self.lines.iter().any(|l| l.len() == self.n - 1)
    }

    /// Lines written as digit strings, e.g. `012 034`; `-` for none.
    pub fn encoding(&self) -> String {
        if self.lines.is_empty() {
            return "-".into();
        }
        let words: Vec<String> = self
            .lines
            .iter()
            .map(|l| l.iter().map(|e| char::from_digit(e as u32, 36).unwrap()).collect())
            .collect();
        words.join(" ")
    }
}

fn check_range(n: usize) -> Result<()> {
    if n > HARD_CAP {
        return Err(Error::TooLarge { n, limit: HARD_CAP });
    }
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "a simple rank-3 matroid needs at least 3 elements, got {n}"
        )));
    }
    Ok(())
}

/// All subsets that could serve as a line: at least three points, not the
/// whole ground set.
fn candidate_lines(n: usize) -> Vec<Subset> {
    (0u128..1 << n)
        .map(Subset::from_bits)
        .filter(|s| s.len() >= 3 && s.len() < n)
        .collect()
}

/// Every simple rank-3 matroid on `n` elements up to isomorphism, as line
/// families in canonical labeling, ordered by certificate.
pub fn enumerate_linear_spaces(n: usize) -> Result<Vec<LinearSpace>> {
    check_range(n)?;
    let candidates = candidate_lines(n);
    let mut all: BTreeMap<Certificate, LinearSpace> = BTreeMap::new();
    let mut level = vec![LinearSpace::canonical(n, &[])];
    while !level.is_empty() {
        for space in &level {
            all.insert(space.certificate.clone(), space.clone());
        }
        let next: BTreeMap<Certificate, LinearSpace> = level
            .par_iter()
            .flat_map_iter(|space| {
                candidates
                    .iter()
                    .filter(|&&c| !space.lines.contains(&c) && space.lines.iter().all(|l| l.intersection(c).len() <= 1))
                    .map(|&c| {
                        let mut lines = space.lines.clone();
                        lines.push(c);
                        let ext = LinearSpace::canonical(n, &lines);
                        (ext.certificate.clone(), ext)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        level = next.into_values().collect();
    }
    Ok(all.into_values().collect())
}

/// Every simple rank-3 matroid on `n` elements, one per isomorphism class.
pub fn enumerate_rank3(n: usize) -> Result<Vec<Matroid>> {
    Ok(enumerate_linear_spaces(n)?.iter().map(LinearSpace::matroid).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeographyRecord {
    pub n: usize,
    pub pair: ChernPair,
    /// Line family of the first class (in enumeration order) with this pair.
    pub witness: String,
    pub count: usize,
}

/// The distinct Chern pairs over all classes on `n` elements, sorted by
/// pair.
pub fn geography(n: usize, coloop_free: bool) -> Result<Vec<GeographyRecord>> {
    let spaces = enumerate_linear_spaces(n)?;
    let mut by_pair: BTreeMap<ChernPair, GeographyRecord> = BTreeMap::new();
    for s in spaces.iter().filter(|s| !coloop_free || !s.has_coloop()) {
        let pair = chern_rank3(&s.profile());
        by_pair
            .entry(pair)
            .or_insert_with(|| GeographyRecord {
                n,
                pair,
                witness: s.encoding(),
                count: 0,
            })
            .count += 1;
    }
    Ok(by_pair.into_values().collect())
}

pub const CSV_HEADER: &str = "n,c1sq,c2,classes,witness";

pub fn geography_csv(records: &[GeographyRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(out, "{},{},{},{},{}", r.n, r.pair.c1sq, r.pair.c2, r.count, r.witness).unwrap();
    }
    out
}

/// Distinct profiles, handy for identity checks that only need `t_m`.
pub fn profiles(n: usize) -> Result<BTreeSet<RankTwoProfile>> {
    Ok(enumerate_linear_spaces(n)?.iter().map(LinearSpace::profile).collect())
}
