//! Acceptance checks. Runs without the libtest harness so that each criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use matroid_chern::analysis::{
    c1sq_alt, chern_rank3, conjecture_check, melchior_gap, pg_chern, verify_positivity, verify_ratio,
    verify_uniform_bounds, ChernPair, EqualityCase,
};
use matroid_chern::geography::{enumerate_rank3, geography, geography_csv};
use matroid_chern::table::reference_table;
use matroid_chern::{chern_number, corpus, BergmanFan, ChernExponents, Matroid, RankTwoProfile};

type Outcome = Result<String, String>;

fn binom(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn rank3_pair_by_definition(p: &RankTwoProfile) -> ChernPair {
    let n = p.n as i64;
    let mut c1 = 9 - 5 * n;
    let mut c2 = 3 - 2 * n;
    for (&m, &t) in &p.t {
        c1 += (3 * m as i64 - 4) * t as i64;
        c2 += (m as i64 - 1) * t as i64;
    }
    ChernPair::new(c1, c2)
}

fn exps2() -> [ChernExponents; 2] {
    [ChernExponents::new(vec![2, 0]), ChernExponents::new(vec![0, 1])]
}

fn within(start: Instant, budget: Duration, what: &str) -> Outcome {
    let took = start.elapsed();
    if took > budget {
        Err(format!("{what} took {took:.2?}, budget {budget:?}"))
    } else {
        Ok(format!("{what} in {took:.2?}"))
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let expected: [(&str, i64, i64); 13] = [
        ("U(3,3)", 0, 0),
        ("U(3,4)", 1, 1),
        ("U(3,5)", 4, 3),
        ("U(3,7)", 16, 10),
        ("U(3,9)", 36, 21),
        ("PG(2,2)", 9, 3),
        ("PG(2,4)", 135, 45),
        ("PG(2,8)", 1323, 441),
        ("PG(2,9)", 1920, 640),
        ("non-Fano", 10, 4),
        ("Pappus", 27, 12),
        ("non-Pappus", 28, 13),
        ("Braid", 5, 2),
    ];
    let rows = reference_table();
    if rows.len() != expected.len() {
        return Err(format!("{} rows", rows.len()));
    }
    for (row, (name, c1, c2)) in rows.iter().zip(expected) {
        if row.name != name || row.c1sq != c1 || row.c2 != c2 {
            return Err(format!("row {row:?}, expected {name} ({c1}, {c2})"));
        }
    }
    within(start, Duration::from_secs(5), "13 rows")
}

fn engine_matches_closed_form() -> Outcome {
    let start = Instant::now();
    let mut matroids = Vec::new();
    for n in 3..=7 {
        matroids.extend(enumerate_rank3(n).map_err(|e| e.to_string())?);
    }
    matroids.extend([corpus::pappus(), corpus::non_pappus(), Matroid::uniform(3, 9).unwrap()]);
    for m in &matroids {
        let p = RankTwoProfile::of(m).map_err(|e| e.to_string())?;
        let closed = rank3_pair_by_definition(&p);
        let [e20, e01] = exps2();
        let engine = ChernPair::new(
            chern_number(m, &e20).map_err(|e| e.to_string())?,
            chern_number(m, &e01).map_err(|e| e.to_string())?,
        );
        if engine != closed {
            return Err(format!("profile {:?}: engine {engine:?}, closed form {closed:?}", p.t));
        }
    }
    within(start, Duration::from_secs(60), &format!("{} matroids", matroids.len()))
}

fn uniform_closed_form() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for r in 2..=4usize {
        for n in r..=8usize {
            let m = Matroid::uniform(r, n).unwrap();
            let d = (r - 1) as i64;
            for e in ChernExponents::all(r - 1) {
                let mut expected = if d % 2 == 0 { 1 } else { -1 };
                for (i, &k) in e.as_slice().iter().enumerate() {
                    let i = i as i64 + 1;
                    expected *= binom(n as i64 - (d - i) - 2, i).pow(k as u32);
                }
                let got = chern_number(&m, &e).map_err(|x| x.to_string())?;
                if got != expected {
                    return Err(format!("U({r},{n}) {e}: engine {got}, formula {expected}"));
                }
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(120), &format!("{checked} uniform Chern numbers"))
}

fn balancing() -> Outcome {
    let mut matroids = corpus::rank3_corpus();
    matroids.extend([
        Matroid::uniform(2, 5).unwrap(),
        Matroid::uniform(4, 6).unwrap(),
        Matroid::uniform(4, 7).unwrap(),
        Matroid::pg2(3).unwrap(),
    ]);
    for n in 3..=7 {
        matroids.extend(enumerate_rank3(n).map_err(|e| e.to_string())?);
    }
    let mut cycles = 0;
    for m in &matroids {
        let fan = BergmanFan::new(m).map_err(|e| e.to_string())?;
        for k in 0..=fan.d() {
            let w = fan.csm_cycle(k).map_err(|e| e.to_string())?;
            if !fan.check_balanced(&w) {
                return Err(format!("csm_{k} of {:?} is not balanced", m.name()));
            }
            cycles += 1;
        }
    }
    Ok(format!("{cycles} CSM cycles over {} matroids", matroids.len()))
}

fn identities() -> Outcome {
    let mut count = 0;
    for n in 3..=8 {
        for m in enumerate_rank3(n).map_err(|e| e.to_string())? {
            let p = RankTwoProfile::of(&m).map_err(|e| e.to_string())?;
            let lhs = (n * n - n) as u64;
            let rhs: u64 = p.t.iter().map(|(&s, &t)| (s * s - s) as u64 * t).sum();
            if lhs != rhs {
                return Err(format!("pair identity fails for {:?}", p.t));
            }
            if c1sq_alt(&p) != chern_rank3(&p).c1sq {
                return Err(format!("c1^2 forms disagree for {:?}", p.t));
            }
            count += 1;
        }
    }
    Ok(format!("{count} profiles"))
}

fn theorems() -> Outcome {
    let mut count = 0;
    for n in 3..=8 {
        for m in enumerate_rank3(n).map_err(|e| e.to_string())? {
            let mut reports = vec![
                verify_positivity(&m).map_err(|e| e.to_string())?,
                verify_uniform_bounds(&m).map_err(|e| e.to_string())?,
            ];
            if m.coloops().is_empty() {
                reports.push(verify_ratio(&m).map_err(|e| e.to_string())?);
            }
            if let Some(r) = reports.iter().find(|r| !r.holds) {
                return Err(format!("{} fails: {}", r.theorem, r.witness));
            }
            count += 1;
        }
    }
    let fano = verify_ratio(&corpus::fano()).map_err(|e| e.to_string())?;
    if fano.equality_case != EqualityCase::Right {
        return Err("Fano does not attain the upper ratio bound".into());
    }
    for n in 4..=9 {
        let r = verify_ratio(&Matroid::uniform(3, n).unwrap()).map_err(|e| e.to_string())?;
        if r.equality_case != EqualityCase::Left {
            return Err(format!("U(3,{n}) does not attain the lower ratio bound"));
        }
    }
    Ok(format!("{count} matroids, equality cases as expected"))
}

fn pg_formula() -> Outcome {
    for q in [2usize, 3, 4, 8, 9] {
        let m = Matroid::pg2(q).map_err(|e| e.to_string())?;
        let p = RankTwoProfile::of(&m).map_err(|e| e.to_string())?;
        let q = q as i64;
        let c2 = q * q * q - q * q - q + 1;
        let expected = ChernPair::new(3 * c2, c2);
        if pg_chern(q as u64) != expected || rank3_pair_by_definition(&p) != expected {
            return Err(format!("PG(2,{q})"));
        }
    }
    Ok("q = 2, 3, 4, 8, 9".into())
}

fn conjecture_scan() -> Outcome {
    let mut witnesses = Vec::new();
    let mut count = 0;
    for n in 3..=7 {
        for m in enumerate_rank3(n).map_err(|e| e.to_string())? {
            for e in exps2() {
                let r = conjecture_check(&m, &e).map_err(|x| x.to_string())?;
                if !r.holds {
                    witnesses.push(r.witness.to_string());
                }
                count += 1;
            }
        }
    }
    if witnesses.is_empty() {
        Ok(format!("{count} comparisons, no violations"))
    } else {
        Err(format!("violations: {}", witnesses.join("; ")))
    }
}

fn melchior() -> Outcome {
    let corpus = corpus::pseudoline_corpus();
    for m in &corpus {
        let p = RankTwoProfile::of(m).map_err(|e| e.to_string())?;
        let gap = melchior_gap(&p);
        if gap < 0 {
            return Err(format!("{:?}: gap {gap}", m.name()));
        }
    }
    Ok(format!("{} pseudoline-realizable matroids", corpus.len()))
}

fn determinism() -> Outcome {
    let run = |threads: usize| -> Result<BTreeMap<(usize, bool), String>, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| {
            let mut out = BTreeMap::new();
            for n in 3..=7 {
                for coloop_free in [false, true] {
                    let records = geography(n, coloop_free).map_err(|e| e.to_string())?;
                    out.insert((n, coloop_free), geography_csv(&records));
                }
            }
            Ok(out)
        })
    };
    let one = run(1)?;
    let many = run(4)?;
    if one == many {
        Ok("1 vs 4 threads byte-identical".into())
    } else {
        Err("CSV differs between thread counts".into())
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("table reproduction", table_reproduction),
        ("engine vs rank-3 closed form", engine_matches_closed_form),
        ("uniform closed form", uniform_closed_form),
        ("balancing", balancing),
        ("identity suite", identities),
        ("theorem suite", theorems),
        ("projective plane formula", pg_formula),
        ("conjecture scan", conjecture_scan),
        ("Melchior gap", melchior),
        ("geography determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
