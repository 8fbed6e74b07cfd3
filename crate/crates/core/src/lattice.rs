//! The lattice of flats with its Möbius function, and the invariants read
//! off it: characteristic polynomial, beta invariant and the rank-2 profile.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Flats indexed in increasing rank order (ties broken by bitmask), with
/// covering relations and lazily computed Möbius rows.
#[derive(Debug)]
pub struct FlatLattice {
    n: usize,
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    level_start: Vec<usize>,
    index: HashMap<Subset, usize>,
    covers: Vec<Vec<usize>>,
    mobius: Vec<OnceLock<Vec<i64>>>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Self {
        let mut flats = Vec::with_capacity(m.num_flats());
        let mut ranks = Vec::with_capacity(m.num_flats());
        let mut level_start = Vec::with_capacity(m.rank() + 2);
        for (k, level) in m.flats_by_rank().iter().enumerate() {
            level_start.push(flats.len());
            for &f in level {
                flats.push(f);
                ranks.push(k);
            }
        }
        level_start.push(flats.len());
        let index = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let covers = (0..flats.len())
            .map(|i| {
                let k = ranks[i];
                if k == m.rank() {
                    return Vec::new();
                }
                (level_start[k + 1]..level_start[k + 2])
                    .filter(|&j| flats[i].is_subset(flats[j]))
                    .collect()
            })
            .collect();
        let mobius = (0..flats.len()).map(|_| OnceLock::new()).collect();
        FlatLattice {
            n: m.n(),
            flats,
            ranks,
            level_start,
            index,
            covers,
            mobius,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the top element.
    pub fn rank(&self) -> usize {
        self.level_start.len() - 2
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, i: usize) -> Subset {
        self.flats[i]
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// Indices of the flats of rank `k`.
    pub fn level(&self, k: usize) -> Range<usize> {
        self.level_start[k]..self.level_start[k + 1]
    }

    pub fn index_of(&self, f: Subset) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.flats[i].is_subset(self.flats[j])
    }

    /// `mu(F, G)` for fixed `F` and every `G`.
    pub fn mobius_row(&self, lo: usize) -> &[i64] {
        self.mobius[lo].get_or_init(|| {
            let mut row = vec![0i64; self.flats.len()];
            row[lo] = 1;
            let base = self.flats[lo];
            let start = self.level_start[self.ranks[lo]];
            let from = self
                .level_start
                .get(self.ranks[lo] + 1)
                .copied()
                .unwrap_or(self.flats.len());
            for g in from..self.flats.len() {
                if !base.is_proper_subset(self.flats[g]) {
                    continue;
                }
                let below = self.level_start[self.ranks[g]];
                let mut sum = 0i64;
                for h in start..below {
                    if row[h] != 0 && self.flats[h].is_subset(self.flats[g]) {
                        sum = sum.checked_add(row[h]).expect("Möbius value overflow");
                    }
                }
                row[g] = sum.checked_neg().expect("Möbius value overflow");
            }
            row
        })
    }

    pub fn mobius(&self, lo: usize, hi: usize) -> i64 {
        self.mobius_row(lo)[hi]
    }

    pub fn mobius_from_bottom(&self, i: usize) -> i64 {
        self.mobius(self.bottom(), i)
    }

    /// Beta invariant of the minor whose lattice of flats is `[lo, hi]`,
    /// i.e. `M|hi / lo`. Requires `lo < hi`.
    pub fn interval_beta(&self, lo: usize, hi: usize) -> i64 {
        assert!(lo != hi && self.leq(lo, hi), "interval must be nontrivial");
        let r = (self.ranks[hi] - self.ranks[lo]) as i64;
        let row = self.mobius_row(lo);
        // reduced characteristic polynomial at 1 equals chi'(1)
        let derivative: i64 = (lo..=hi)
            .filter(|&g| row[g] != 0 && self.flats[g].is_subset(self.flats[hi]))
            .map(|g| row[g] * (r - (self.ranks[g] - self.ranks[lo]) as i64))
            .sum();
        if (r - 1) % 2 == 0 {
            derivative
        } else {
            -derivative
        }
    }
}

/// A characteristic polynomial, coefficients listed from the leading term down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    pub coefficients: Vec<i64>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coefficients.iter().fold(0, |acc, &c| acc * x + c)
    }

    /// Quotient by `x - 1`, or `None` when the division is not exact.
    pub fn reduced(&self) -> Option<CharPoly> {
        let mut quotient = Vec::with_capacity(self.coefficients.len() - 1);
        let mut carry = 0i64;
        for &c in &self.coefficients[..self.coefficients.len() - 1] {
            carry += c;
            quotient.push(carry);
        }
        (carry + self.coefficients.last().unwrap() == 0).then_some(CharPoly {
            coefficients: quotient,
        })
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = d - i;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (p, mag) {
                (0, m) => m.to_string(),
                (_, 1) => String::new(),
                (_, m) => m.to_string(),
            };
            let var = match p {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{p}"),
            };
            if !first {
                write!(f, " {sign} {body}{var}")?;
            } else {
                write!(f, "{sign}{body}{var}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn require_loopless(m: &Matroid) -> Result<()> {
    if !m.is_loopless() {
        return Err(Error::Loop(m.loops().to_vec()));
    }
    Ok(())
}

/// `chi(x) = sum over flats F of mu(0, F) x^(r - r(F))`.
pub fn char_poly(m: &Matroid) -> Result<CharPoly> {
    require_loopless(m)?;
    let lattice = FlatLattice::new(m);
    char_poly_of(&lattice)
}

pub fn char_poly_of(lattice: &FlatLattice) -> Result<CharPoly> {
    let r = lattice.rank();
    let mut coefficients = vec![0i64; r + 1];
    let row = lattice.mobius_row(lattice.bottom());
    for (i, &mu) in row.iter().enumerate() {
        coefficients[lattice.rank_of(i)] += mu;
    }
    Ok(CharPoly { coefficients })
}

/// Crapo's beta invariant, `(-1)^(r-1)` times the reduced characteristic
/// polynomial at 1. Always nonnegative.
pub fn beta(m: &Matroid) -> Result<i64> {
    require_loopless(m)?;
    if m.n() == 0 {
        return Err(Error::InvalidInput("beta of the empty matroid".into()));
    }
    let chi = char_poly(m)?;
    let reduced = chi
        .reduced()
        .expect("characteristic polynomial vanishes at 1 for nonempty loopless matroids");
    let value = reduced.eval(1);
    Ok(if (m.rank() - 1) % 2 == 0 { value } else { -value })
}

/// Histogram of the sizes of the rank-2 flats of a simple rank-3 matroid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankTwoProfile {
    pub n: usize,
    /// `t[m]` is the number of rank-2 flats with exactly `m` elements.
    pub t: BTreeMap<usize, u64>,
}

impl RankTwoProfile {
    /// A profile, checked against `sum C(m,2) t_m = C(n,2)` and `2 <= m < n`.
    pub fn new(n: usize, t: BTreeMap<usize, u64>) -> Result<Self> {
        let p = RankTwoProfile {
            n,
            t: t.into_iter().filter(|&(_, c)| c > 0).collect(),
        };
        if let Some((&m, _)) = p.t.iter().find(|&(&m, _)| m < 2 || m >= n) {
            return Err(Error::InvalidInput(format!(
                "line size {m} is impossible in a simple rank-3 matroid on {n} elements"
            )));
        }
        if !p.pair_identity_holds() {
            return Err(Error::InvalidInput(format!(
                "profile {:?} does not cover each of the C({n},2) pairs exactly once",
                p.t
            )));
        }
        Ok(p)
    }

    pub fn of(m: &Matroid) -> Result<Self> {
        if m.rank() != 3 {
            return Err(Error::Rank {
                expected: 3,
                found: m.rank(),
            });
        }
        if !m.is_simple() {
            return Err(Error::NotSimple);
        }
        let mut t = BTreeMap::new();
        for f in m.flats_of_rank(2) {
            *t.entry(f.len()).or_insert(0) += 1;
        }
        Ok(RankTwoProfile { n: m.n(), t })
    }

    /// Profile of `U(3,n)`: all `C(n,2)` lines are pairs.
    pub fn uniform(n: usize) -> Self {
        RankTwoProfile {
            n,
            t: BTreeMap::from([(2, (n * (n - 1) / 2) as u64)]),
        }
    }

    pub fn count(&self, m: usize) -> u64 {
        self.t.get(&m).copied().unwrap_or(0)
    }

    /// Total number of rank-2 flats.
    pub fn lines(&self) -> u64 {
        self.t.values().sum()
    }

    /// `(m, t_m)` pairs as signed integers, for the closed-form sums.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.t.iter().map(|(&m, &c)| (m as i64, c as i64))
    }

    /// `n^2 - n = sum (m^2 - m) t_m`.
    pub fn pair_identity_holds(&self) -> bool {
        let n = self.n as i64;
        n * n - n == self.terms().map(|(m, t)| (m * m - m) * t).sum::<i64>()
    }
}
