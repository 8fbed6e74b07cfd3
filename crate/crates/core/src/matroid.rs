//! Matroids stored through their lattice of flats.
//!
//! Every constructor materializes all flats up front, grouped by rank. Rank,
//! closure and minors are then answered from the flats alone.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::subset::{Subset, MAX_ELEMENTS};

/// A matroid on the ground set `{0, .., n-1}`.
///
/// `flats_by_rank[k]` holds the flats of rank `k`, sorted by bitmask. The
/// matroid's rank is `flats_by_rank.len() - 1`.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    flats_by_rank: Vec<Vec<Subset>>,
    name: Option<String>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.flats_by_rank == other.flats_by_rank
    }
}

impl Eq for Matroid {}

/// A minor together with the original label of each of its elements.
#[derive(Clone, Debug)]
pub struct Minor {
    pub matroid: Matroid,
    /// `origin[i]` is the element of the parent matroid relabeled to `i`.
    pub origin: Vec<usize>,
}

fn check_ground_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ELEMENTS,
        });
    }
    Ok(())
}

fn check_within(n: usize, s: Subset) -> Result<()> {
    if !s.is_subset(Subset::full(n)) {
        return Err(Error::InvalidInput(format!(
            "subset {s} is not contained in the ground set of size {n}"
        )));
    }
    Ok(())
}

fn binomial_subsets(n: usize, k: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

impl Matroid {
    fn from_sorted_levels(n: usize, levels: Vec<BTreeSet<Subset>>) -> Self {
        Matroid {
            n,
            flats_by_rank: levels.into_iter().map(|l| l.into_iter().collect()).collect(),
            name: None,
        }
    }

    /// Builds a matroid from an explicit list of flats per rank, checking the
    /// flat axioms.
    pub fn from_flats(n: usize, flats_by_rank: Vec<Vec<Subset>>) -> Result<Self> {
        check_ground_size(n)?;
        let mut levels = Vec::with_capacity(flats_by_rank.len());
        for level in flats_by_rank {
            let set: BTreeSet<Subset> = level.into_iter().collect();
            for &f in &set {
                check_within(n, f)?;
            }
            levels.push(set);
        }
        let m = Self::from_sorted_levels(n, levels);
        m.validate()?;
        Ok(m)
    }

    /// Builds the matroid of a rank oracle by growing closures level by level.
    fn from_rank_oracle(n: usize, rank: impl Fn(Subset) -> usize) -> Self {
        let closure = |s: Subset| {
            let r = rank(s);
            (0..n)
                .filter(|&e| !s.contains(e) && rank(s.with(e)) == r)
                .fold(s, |acc, e| acc.with(e))
        };
        let full = Subset::full(n);
        let mut levels = vec![BTreeSet::from([closure(Subset::EMPTY)])];
        while !levels.last().unwrap().contains(&full) {
            let mut next = BTreeSet::new();
            for &f in levels.last().unwrap() {
                for e in full.difference(f).iter() {
                    next.insert(closure(f.with(e)));
                }
            }
            levels.push(next);
        }
        Self::from_sorted_levels(n, levels)
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        check_ground_size(n)?;
        if r == 0 || r > n {
            return Err(Error::InvalidInput(format!(
                "uniform matroid needs 1 <= r <= n, got r={r}, n={n}"
            )));
        }
        let mut flats_by_rank: Vec<Vec<Subset>> = (0..r)
            .map(|k| {
                let mut level = binomial_subsets(n, k);
                level.sort();
                level
            })
            .collect();
        flats_by_rank.push(vec![Subset::full(n)]);
        Ok(Matroid {
            n,
            flats_by_rank,
            name: Some(format!("U({r},{n})")),
        })
    }

    /// The simple rank-3 matroid whose lines of three or more points are
    /// `big_flats`; every pair of points not on such a line spans a two-point line.
    pub fn from_rank2_flats(n: usize, big_flats: &[Subset]) -> Result<Self> {
        check_ground_size(n)?;
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "a simple rank-3 matroid needs at least 3 elements, got {n}"
            )));
        }
        let full = Subset::full(n);
        for &f in big_flats {
            check_within(n, f)?;
            if f.len() < 3 {
                return Err(Error::InvalidInput(format!(
                    "listed flat {f} has fewer than 3 elements"
                )));
            }
            if f == full {
                return Err(Error::InvalidInput(format!(
                    "listed flat {f} is the whole ground set; the matroid would have rank 2"
                )));
            }
        }
        for (i, &a) in big_flats.iter().enumerate() {
            for &b in &big_flats[i + 1..] {
                let shared = a.intersection(b).len();
                if shared >= 2 {
                    return Err(Error::InvalidLinearSpace {
                        first: a.to_vec(),
                        second: b.to_vec(),
                        shared,
                    });
                }
            }
        }
        let mut covered = vec![false; n * n];
        for &f in big_flats {
            for a in f.iter() {
                for b in f.iter() {
                    covered[a * n + b] = true;
                }
            }
        }
        let mut lines: BTreeSet<Subset> = big_flats.iter().copied().collect();
        for a in 0..n {
            for b in a + 1..n {
                if !covered[a * n + b] {
                    lines.insert(Subset::singleton(a).with(b));
                }
            }
        }
        let levels = vec![
            BTreeSet::from([Subset::EMPTY]),
            (0..n).map(Subset::singleton).collect(),
            lines,
            BTreeSet::from([full]),
        ];
        Ok(Self::from_sorted_levels(n, levels))
    }

    /// The matroid with the given bases. The basis exchange axiom is checked
    /// exhaustively.
    pub fn from_bases(n: usize, bases: &[Subset]) -> Result<Self> {
        check_ground_size(n)?;
        let Some(&first) = bases.first() else {
            return Err(Error::NotAMatroid("the list of bases is empty".into()));
        };
        let r = first.len();
        let set: HashSet<Subset> = bases.iter().copied().collect();
        for &b in &set {
            check_within(n, b)?;
            if b.len() != r {
                return Err(Error::NotAMatroid(format!(
                    "bases {first} and {b} have different sizes"
                )));
            }
        }
        for &b1 in &set {
            for &b2 in &set {
                for x in b1.difference(b2).iter() {
                    let exchanged = b2
                        .difference(b1)
                        .iter()
                        .any(|y| set.contains(&b1.without(x).with(y)));
                    if !exchanged {
                        return Err(Error::NotAMatroid(format!(
                            "exchange fails for {b1} - {x} against {b2}"
                        )));
                    }
                }
            }
        }
        let bases: Vec<Subset> = set.into_iter().collect();
        Ok(Self::from_rank_oracle(n, |s| {
            bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
        }))
    }

    /// The projective plane `PG(2, q)` over `GF(q)`.
    pub fn pg2(q: usize) -> Result<Self> {
        let field = FiniteField::new(q)?;
        // normalized vectors: first nonzero coordinate is 1
        let mut points = Vec::new();
        for a in 0..q {
            for b in 0..q {
                points.push([1, a, b]);
            }
        }
        for b in 0..q {
            points.push([0, 1, b]);
        }
        points.push([0, 0, 1]);
        let n = points.len();
        let lines: Vec<Subset> = points
            .iter()
            .map(|l| (0..n).filter(|&p| field.dot(l, &points[p]) == 0).collect())
            .collect();
        let mut m = Self::from_rank2_flats(n, &lines)?;
        m.name = Some(format!("PG(2,{q})"));
        Ok(m)
    }

    /// Checks the flat axioms: unique bottom and top, incomparable flats within
    /// a rank, closure under intersection, and the covering partition.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::NotAMatroid(msg));
        let full = Subset::full(self.n);
        if self.flats_by_rank.is_empty() || self.flats_by_rank[0].len() != 1 {
            return bad("there must be exactly one flat of rank 0".into());
        }
        if self.flats_by_rank.last().unwrap() != &vec![full] {
            return bad("the only flat of top rank must be the ground set".into());
        }
        for (k, level) in self.flats_by_rank.iter().enumerate() {
            for (i, &a) in level.iter().enumerate() {
                for &b in &level[i + 1..] {
                    if a.is_subset(b) || b.is_subset(a) {
                        return bad(format!("flats {a} and {b} of rank {k} are comparable"));
                    }
                }
            }
        }
        let all: HashSet<Subset> = self.flats().collect();
        for a in self.flats() {
            for b in self.flats() {
                if !all.contains(&a.intersection(b)) {
                    return bad(format!("intersection of flats {a} and {b} is not a flat"));
                }
            }
        }
        for (k, level) in self.flats_by_rank.iter().enumerate().take(self.rank()) {
            for &f in level {
                let mut seen = f;
                for &g in &self.flats_by_rank[k + 1] {
                    if f.is_proper_subset(g) {
                        let part = g.difference(f);
                        if !part.intersection(seen).is_empty() {
                            return bad(format!("covers of {f} overlap outside it"));
                        }
                        seen = seen.union(part);
                    }
                }
                if seen != full {
                    return bad(format!("covers of {f} do not exhaust the ground set"));
                }
            }
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn rank(&self) -> usize {
        self.flats_by_rank.len() - 1
    }

    pub fn flats_by_rank(&self) -> &[Vec<Subset>] {
        &self.flats_by_rank
    }

    pub fn flats_of_rank(&self, k: usize) -> &[Subset] {
        self.flats_by_rank.get(k).map_or(&[], |v| v.as_slice())
    }

    /// All flats in increasing rank order.
    pub fn flats(&self) -> impl Iterator<Item = Subset> + '_ {
        self.flats_by_rank.iter().flatten().copied()
    }

    pub fn num_flats(&self) -> usize {
        self.flats_by_rank.iter().map(Vec::len).sum()
    }

    fn closure_and_rank(&self, s: Subset) -> (Subset, usize) {
        for (k, level) in self.flats_by_rank.iter().enumerate() {
            if let Some(&f) = level.iter().find(|f| s.is_subset(**f)) {
                return (f, k);
            }
        }
        panic!("subset {s} is not contained in the ground set");
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        self.closure_and_rank(s).1
    }

    /// The smallest flat containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        self.closure_and_rank(s).0
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn loops(&self) -> Subset {
        self.flats_by_rank[0][0]
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// Elements `i` with `r(E - i) = r(E) - 1`.
    pub fn coloops(&self) -> Subset {
        let full = self.ground_set();
        let r = self.rank();
        (0..self.n)
            .filter(|&i| r > 0 && self.rank_of(full.without(i)) == r - 1)
            .collect()
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        self.is_loopless() && self.flats_of_rank(1).iter().all(|f| f.len() == 1)
    }

    /// Lines with at least three points of a rank-3 matroid.
    pub fn big_rank2_flats(&self) -> Vec<Subset> {
        self.flats_of_rank(2)
            .iter()
            .copied()
            .filter(|f| f.len() >= 3)
            .collect()
    }

    /// All bases, by brute force over `r`-subsets.
    pub fn bases(&self) -> Vec<Subset> {
        binomial_subsets(self.n, self.rank())
            .into_iter()
            .filter(|&b| self.rank_of(b) == b.len())
            .collect()
    }

    /// Relabels element `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Matroid> {
        let image: Subset = perm.iter().copied().filter(|&i| i < self.n).collect();
        if perm.len() != self.n || image.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        let levels = self
            .flats_by_rank
            .iter()
            .map(|level| level.iter().map(|f| f.map(perm)).collect())
            .collect();
        let mut m = Self::from_sorted_levels(self.n, levels);
        m.name = self.name.clone();
        Ok(m)
    }

    fn relabel_onto(&self, keep: Subset, levels: Vec<BTreeSet<Subset>>) -> Minor {
        let origin = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in origin.iter().enumerate() {
            index[old] = new;
        }
        let levels = levels
            .into_iter()
            .map(|level| level.into_iter().map(|f| f.map(&index)).collect())
            .collect();
        Minor {
            matroid: Self::from_sorted_levels(origin.len(), levels),
            origin,
        }
    }

    /// `M / X`, with rank function `r(S + X) - r(X)`.
    pub fn contract(&self, x: Subset) -> Result<Minor> {
        check_within(self.n, x)?;
        let (cl, rx) = self.closure_and_rank(x);
        let mut levels = vec![BTreeSet::new(); self.rank() - rx + 1];
        for (k, level) in self.flats_by_rank.iter().enumerate().skip(rx) {
            for &f in level {
                if cl.is_subset(f) {
                    levels[k - rx].insert(f.difference(x));
                }
            }
        }
        Ok(self.relabel_onto(self.ground_set().difference(x), levels))
    }

    /// `M | T`, with rank function `r(S)` for `S` inside `T`.
    pub fn restrict(&self, t: Subset) -> Result<Minor> {
        check_within(self.n, t)?;
        let rt = self.rank_of(t);
        let mut levels = vec![BTreeSet::new(); rt + 1];
        for f in self.flats() {
            let s = f.intersection(t);
            levels[self.rank_of(s)].insert(s);
        }
        Ok(self.relabel_onto(t, levels))
    }

    /// `M \ X`, the restriction to the complement of `X`.
    pub fn delete(&self, x: Subset) -> Result<Minor> {
        check_within(self.n, x)?;
        self.restrict(self.ground_set().difference(x))
    }
}
