use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use matroid_chern::analysis::{self, chern_rank3, uniform_chern, TheoremReport};
use matroid_chern::corpus;
use matroid_chern::geography::{self, HARD_CAP};
use matroid_chern::intersection::chern_number;
use matroid_chern::io::{matroid_to_json, parse_matroid};
use matroid_chern::lattice::{self, RankTwoProfile};
use matroid_chern::table;
use matroid_chern::{BergmanFan, ChernExponents, Error, Matroid};

/// Largest enumeration size allowed without an explicit opt-in.
const DEFAULT_ENUM_CAP: usize = 8;
const CAP_ENV: &str = "MATROID_ENUM_CAP";

#[derive(Parser)]
#[command(name = "matroid-chern", version, about = "Chern numbers of matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; defaults to csv for `geography` and `table`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Default)]
#[group(multiple = false)]
struct Target {
    /// Matroid JSON file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Uniform matroid U(R,N).
    #[arg(long, num_args = 2, value_names = ["R", "N"])]
    uniform: Option<Vec<usize>>,
    /// Projective plane of order Q.
    #[arg(long, value_name = "Q")]
    pg2: Option<usize>,
    /// fano, nonfano, pappus, nonpappus, braid, pg2-Q or u-R-N.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

impl Target {
    fn is_set(&self) -> bool {
        self.file.is_some() || self.uniform.is_some() || self.pg2.is_some() || self.builtin.is_some()
    }

    fn load(&self) -> Result<Matroid, Error> {
        if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            return parse_matroid(&text).map(|l| l.matroid).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("{}: {location}", path.display()),
                    message,
                },
                other => other,
            });
        }
        if let Some(rn) = &self.uniform {
            return Matroid::uniform(rn[0], rn[1]);
        }
        if let Some(q) = self.pg2 {
            return Matroid::pg2(q);
        }
        if let Some(name) = &self.builtin {
            return corpus::builtin(name);
        }
        Err(Error::InvalidInput(
            "no matroid given; use --file, --uniform, --pg2 or --builtin".into(),
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a matroid and print it in the JSON interchange format.
    Construct(#[command(flatten)] Target),
    /// Flats, characteristic polynomial, beta invariant and line profile.
    Invariants(#[command(flatten)] Target),
    /// CSM cycle weights.
    Csm {
        #[command(flatten)]
        target: Target,
        /// Only the cycle of this dimension.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Chern numbers.
    Chern {
        #[command(flatten)]
        target: Target,
        /// Always use the intersection engine, even when a closed form exists.
        #[arg(long)]
        engine: bool,
        /// Exponents k_1,...,k_d; all valid vectors when omitted.
        #[arg(long, value_delimiter = ',')]
        exponents: Option<Vec<usize>>,
    },
    /// Check the rank-3 theorems (and the uniform-bound conjecture).
    Verify {
        #[command(flatten)]
        target: Target,
        /// Check every simple rank-3 matroid on N elements instead.
        #[arg(long)]
        n: Option<usize>,
        /// Permit N = 9 with --n.
        #[arg(long)]
        allow_n9: bool,
    },
    /// Chern pairs realized by simple rank-3 matroids on N elements.
    Geography {
        #[arg(long)]
        n: usize,
        /// Skip matroids with a coloop.
        #[arg(long)]
        coloop_free: bool,
        /// Permit N = 9.
        #[arg(long)]
        allow_n9: bool,
    },
    /// Chern numbers of the standard rank-3 examples.
    Table,
}

struct Output {
    text: String,
    violations: Vec<String>,
}

impl Output {
    fn json(v: &Value) -> Self {
        Output {
            text: format!("{}\n", serde_json::to_string_pretty(v).unwrap()),
            violations: Vec::new(),
        }
    }
}

fn enumeration_cap(allow_n9: bool) -> Result<usize, Error> {
    if allow_n9 {
        return Ok(HARD_CAP);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|c| c.min(HARD_CAP))
            .map_err(|_| Error::InvalidInput(format!("{CAP_ENV} must be an integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn check_enum_size(n: usize, allow_n9: bool) -> Result<(), Error> {
    let cap = enumeration_cap(allow_n9)?;
    if n > HARD_CAP {
        return Err(Error::TooLarge { n, limit: HARD_CAP });
    }
    if n > cap {
        return Err(Error::InvalidInput(format!(
            "enumeration on {n} elements is slow; pass --allow-n9 or set {CAP_ENV}={n}"
        )));
    }
    Ok(())
}

fn subset_lists(m: &Matroid, level: usize) -> Vec<Vec<usize>> {
    m.flats_of_rank(level).iter().map(|f| f.to_vec()).collect()
}

fn invariants(m: &Matroid) -> Result<Value, Error> {
    let mut v = json!({
        "name": m.name(),
        "n": m.n(),
        "rank": m.rank(),
        "flats_per_rank": m.flats_by_rank().iter().map(Vec::len).collect::<Vec<_>>(),
        "loops": m.loops().to_vec(),
        "coloops": m.coloops().to_vec(),
        "simple": m.is_simple(),
    });
    if m.is_loopless() && m.n() > 0 {
        let chi = lattice::char_poly(m)?;
        v["char_poly"] = json!(chi.to_string());
        v["char_poly_coefficients"] = json!(chi.coefficients);
        v["beta"] = json!(lattice::beta(m)?);
    }
    if m.rank() == 3 && m.is_simple() {
        let p = RankTwoProfile::of(m)?;
        v["rank2_flats"] = json!(subset_lists(m, 2));
        v["profile"] = json!(p.t);
    }
    Ok(v)
}

fn csm_json(fan: &BergmanFan, k: usize) -> Result<Value, Error> {
    let w = fan.csm_cycle(k)?;
    let weights: Vec<Value> = w
        .iter()
        .map(|(chain, &x)| {
            let flats: Vec<Vec<usize>> = chain.indices().iter().map(|&f| fan.lattice().flat(f).to_vec()).collect();
            json!({"chain": flats, "w": x})
        })
        .collect();
    Ok(json!({"k": k, "weights": weights}))
}

fn is_uniform(m: &Matroid) -> bool {
    Matroid::uniform(m.rank(), m.n()).is_ok_and(|u| u == *m)
}

fn chern_value(m: &Matroid, e: &ChernExponents, engine: bool) -> Result<(i64, &'static str), Error> {
    if !engine {
        if is_uniform(m) && e.as_slice().len() + 1 == m.rank() && e.weighted_degree() + 1 == m.rank() {
            return Ok((uniform_chern(m.rank(), m.n(), e), "closed-form"));
        }
        if m.rank() == 3 && m.is_simple() {
            let pair = chern_rank3(&RankTwoProfile::of(m)?);
            match e.as_slice() {
                [2, 0] => return Ok((pair.c1sq, "closed-form")),
                [0, 1] => return Ok((pair.c2, "closed-form")),
                _ => {}
            }
        }
    }
    Ok((chern_number(m, e)?, "intersection"))
}

fn theorem_reports(m: &Matroid) -> Result<Vec<TheoremReport>, Error> {
    let mut reports = vec![analysis::verify_positivity(m)?, analysis::verify_uniform_bounds(m)?];
    if m.coloops().is_empty() {
        reports.push(analysis::verify_ratio(m)?);
    }
    for e in ChernExponents::all(m.rank() - 1) {
        reports.push(analysis::conjecture_check(m, &e)?);
    }
    Ok(reports)
}

fn verify(matroids: &[Matroid]) -> Result<Output, Error> {
    let mut text = String::new();
    let mut violations = Vec::new();
    for m in matroids {
        for r in theorem_reports(m)? {
            let line = serde_json::to_string(&r).unwrap();
            if !r.holds && r.theorem != "uniform-conjecture" {
                violations.push(line.clone());
            }
            text.push_str(&line);
            text.push('\n');
        }
    }
    Ok(Output { text, violations })
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let format = cli.format;
    if format == Some(Format::Csv) && !matches!(cli.command, Command::Geography { .. } | Command::Table) {
        return Err(Error::InvalidInput("csv output is only available for geography and table".into()));
    }
    let out = match &cli.command {
        Command::Construct(target) => Output::json(&matroid_to_json(&target.load()?)),
        Command::Invariants(target) => Output::json(&invariants(&target.load()?)?),
        Command::Csm { target, k } => {
            let fan = BergmanFan::new(&target.load()?)?;
            match k {
                Some(k) => Output::json(&csm_json(&fan, *k)?),
                None => {
                    let all: Vec<Value> = (0..=fan.d()).map(|k| csm_json(&fan, k)).collect::<Result<_, _>>()?;
                    Output::json(&Value::Array(all))
                }
            }
        }
        Command::Chern {
            target,
            engine,
            exponents,
        } => {
            let m = target.load()?;
            let d = m.rank().saturating_sub(1);
            let list = match exponents {
                Some(k) => vec![ChernExponents::new(k.clone())],
                None => ChernExponents::all(d),
            };
            let mut results = Vec::new();
            for e in &list {
                let (value, method) = chern_value(&m, e, *engine)?;
                results.push(json!({"exponents": e.as_slice(), "value": value, "method": method}));
            }
            if results.len() == 1 {
                Output::json(&results[0])
            } else {
                Output::json(&Value::Array(results))
            }
        }
        Command::Verify { target, n, allow_n9 } => {
            let matroids = match (target.is_set(), n) {
                (true, Some(_)) => {
                    return Err(Error::InvalidInput("give either a matroid or --n, not both".into()))
                }
                (true, None) => vec![target.load()?],
                (false, Some(n)) => {
                    check_enum_size(*n, *allow_n9)?;
                    geography::enumerate_rank3(*n)?
                }
                (false, None) => corpus::rank3_corpus(),
            };
            verify(&matroids)?
        }
        Command::Geography {
            n,
            coloop_free,
            allow_n9,
        } => {
            check_enum_size(*n, *allow_n9)?;
            let records = geography::geography(*n, *coloop_free)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => Output {
                    text: geography::geography_csv(&records),
                    violations: Vec::new(),
                },
                Format::Json => Output::json(&serde_json::to_value(&records).unwrap()),
            }
        }
        Command::Table => {
            let rows = table::reference_table();
            match format.unwrap_or(Format::Csv) {
                Format::Csv => Output {
                    text: table::table_csv(&rows),
                    violations: Vec::new(),
                },
                Format::Json => Output::json(&serde_json::to_value(&rows).unwrap()),
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if !out.violations.is_empty() {
                eprintln!("theorem violation:\n{}", out.violations.join("\n"));
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
