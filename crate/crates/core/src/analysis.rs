//! Closed forms for Chern numbers and the checks built on them.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::intersection::{chern_number, ChernExponents};
use crate::lattice::RankTwoProfile;
use crate::matroid::Matroid;

/// `(c1^2, c2)` of a rank-3 matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChernPair {
    pub c1sq: i64,
    pub c2: i64,
}

impl ChernPair {
    pub fn new(c1sq: i64, c2: i64) -> Self {
        ChernPair { c1sq, c2 }
    }
}

pub fn chern_rank3(p: &RankTwoProfile) -> ChernPair {
    let n = p.n as i64;
    let c1sq = 9 - 5 * n + p.terms().map(|(m, t)| (3 * m - 4) * t).sum::<i64>();
    let c2 = 3 - 2 * n + p.terms().map(|(m, t)| (m - 1) * t).sum::<i64>();
    ChernPair { c1sq, c2 }
}

/// `(3 - n)^2 - sum (2 - m)^2 t_m`, which agrees with the first closed form
/// whenever the profile covers every pair of points once.
pub fn c1sq_alt(p: &RankTwoProfile) -> i64 {
    let n = p.n as i64;
    (3 - n).pow(2) - p.terms().map(|(m, t)| (2 - m).pow(2) * t).sum::<i64>()
}

/// Binomial coefficient that is zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Chern numbers of `U(r, n)`: `(-1)^d prod C(n - (d - i) - 2, i)^{k_i}`.
pub fn uniform_chern(r: usize, n: usize, e: &ChernExponents) -> i64 {
    assert!(r >= 1 && r <= n, "U({r},{n}) is not a uniform matroid");
    let d = (r - 1) as i64;
    let n = n as i64;
    let sign = if d % 2 == 0 { 1 } else { -1 };
    e.as_slice().iter().enumerate().fold(sign, |acc, (i, &k)| {
        let i = i as i64 + 1;
        acc * binomial(n - (d - i) - 2, i).pow(k as u32)
    })
}

/// Chern numbers of the projective plane of order `q`.
pub fn pg_chern(q: u64) -> ChernPair {
    let q = q as i64;
    let c2 = q * q * q - q * q - q + 1;
    ChernPair { c1sq: 3 * c2, c2 }
}

/// `5 c2 - 2 c1^2`, computed from the closed forms and from
/// `-3 - sum (m - 3) t_m`; the two must agree.
pub fn melchior_gap(p: &RankTwoProfile) -> i64 {
    let c = chern_rank3(p);
    let gap = 5 * c.c2 - 2 * c.c1sq;
    let direct = -3 - p.terms().map(|(m, t)| (m - 3) * t).sum::<i64>();
    assert_eq!(gap, direct, "Melchior gap identity fails for {p:?}");
    gap
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EqualityCase {
    None,
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub holds: bool,
    pub equality_case: EqualityCase,
    pub witness: serde_json::Value,
}

fn label(m: &Matroid) -> serde_json::Value {
    m.name().map_or(serde_json::Value::Null, |s| json!(s))
}

/// No two-point-set is a line, so every pair spans a rank-2 flat of size 2.
fn is_uniform_profile(p: &RankTwoProfile) -> bool {
    p.t.keys().all(|&m| m == 2)
}

/// The equality case of the De Bruijn-Erdos bound that a coloop-free simple
/// rank-3 matroid can reach: as many lines as points.
fn is_projective_plane(m: &Matroid, p: &RankTwoProfile) -> bool {
    m.coloops().is_empty() && p.lines() == p.n as u64
}

/// `0 <= c1^2` and `0 <= c2`, with `c1^2 = 0` exactly when there is a coloop.
pub fn verify_positivity(m: &Matroid) -> Result<TheoremReport> {
    let p = RankTwoProfile::of(m)?;
    let c = chern_rank3(&p);
    let has_coloop = !m.coloops().is_empty();
    let zero = c.c1sq == 0;
    Ok(TheoremReport {
        theorem: "positivity".into(),
        holds: c.c1sq >= 0 && c.c2 >= 0 && zero == has_coloop,
        equality_case: if zero { EqualityCase::Left } else { EqualityCase::None },
        witness: json!({
            "name": label(m),
            "n": p.n,
            "c1sq": c.c1sq,
            "c2": c.c2,
            "coloop": has_coloop,
        }),
    })
}

/// `c1^2 <= c1^2(U(3,n))` and `c2 <= c2(U(3,n))`.
pub fn verify_uniform_bounds(m: &Matroid) -> Result<TheoremReport> {
    let p = RankTwoProfile::of(m)?;
    let c = chern_rank3(&p);
    let u = chern_rank3(&RankTwoProfile::uniform(p.n));
    let uniform = is_uniform_profile(&p);
    let attained = c == u;
    Ok(TheoremReport {
        theorem: "uniform-bounds".into(),
        holds: c.c1sq <= u.c1sq && c.c2 <= u.c2 && (c.c1sq != u.c1sq || uniform),
        equality_case: if attained { EqualityCase::Right } else { EqualityCase::None },
        witness: json!({
            "name": label(m),
            "n": p.n,
            "c1sq": c.c1sq,
            "c2": c.c2,
            "uniform_c1sq": u.c1sq,
            "uniform_c2": u.c2,
        }),
    })
}

/// `(2n - 6)/(n - 2) <= c1^2 / c2 <= 3` for coloop-free simple rank-3
/// matroids, with left equality only for `U(3,n)` and right equality only
/// for projective planes. Compared by cross-multiplication.
pub fn verify_ratio(m: &Matroid) -> Result<TheoremReport> {
    let p = RankTwoProfile::of(m)?;
    let coloops = m.coloops();
    if !coloops.is_empty() {
        return Err(Error::Coloop(coloops.to_vec()));
    }
    let c = chern_rank3(&p);
    if c.c2 == 0 {
        return Err(Error::Coloop(Vec::new()));
    }
    let n = p.n as i64;
    let left = (n - 2) * c.c1sq - (2 * n - 6) * c.c2;
    let right = 3 * c.c2 - c.c1sq;
    let uniform = is_uniform_profile(&p);
    let plane = is_projective_plane(m, &p);
    let equality_case = match (left == 0, right == 0) {
        (true, _) => EqualityCase::Left,
        (false, true) => EqualityCase::Right,
        _ => EqualityCase::None,
    };
    Ok(TheoremReport {
        theorem: "ratio".into(),
        holds: left >= 0 && right >= 0 && (left == 0) == uniform && (right == 0) == plane,
        equality_case,
        witness: json!({
            "name": label(m),
            "n": p.n,
            "c1sq": c.c1sq,
            "c2": c.c2,
            "lower": [2 * n - 6, n - 2],
            "upper": 3,
        }),
    })
}

/// Compares `|c(M)|` from the intersection engine with `|c(U(r,n))|`.
/// A failed comparison is a finding about the conjecture, not an error.
pub fn conjecture_check(m: &Matroid, e: &ChernExponents) -> Result<TheoremReport> {
    let value = chern_number(m, e)?;
    let bound = uniform_chern(m.rank(), m.n(), e);
    let is_uniform = *m == Matroid::uniform(m.rank(), m.n())?;
    let equal = value.abs() == bound.abs();
    Ok(TheoremReport {
        theorem: "uniform-conjecture".into(),
        holds: value.abs() <= bound.abs() && (!equal || is_uniform || bound == 0),
        equality_case: if equal { EqualityCase::Right } else { EqualityCase::None },
        witness: json!({
            "name": label(m),
            "n": m.n(),
            "rank": m.rank(),
            "exponents": e.as_slice(),
            "value": value,
            "uniform_value": bound,
        }),
    })
}
