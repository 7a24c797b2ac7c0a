//! Command-line driver. Each subcommand builds a [`RunReport`]; the binary
//! prints it and exits with [`RunReport::exit_code`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::census::{self, h};
use crate::ci::{self, CompleteIntersection};
use crate::cover::divisor_image;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gen::{self, Bundle, GenConfig, Generator, SmoothnessVerdict};
use crate::lift::{self, LiftFamily};
use crate::poly::Poly;

pub const MAX_N: usize = 4;
/// Cap on the degree of generated or parsed forms. Derived images of degree
/// `2k` may go beyond it.
pub const MAX_DEGREE: u32 = 14;

pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const NOT_IN_IDEAL_SQUARE: i32 = 3;
    pub const DEGENERATE_DECOMPOSITION: i32 = 4;
    pub const ZERO_BRANCH: i32 = 5;
    pub const CAP_EXCEEDED: i32 = 6;
    pub const OTHER: i32 = 7;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::UnknownBundle(_) => exit::PARSE,
        Error::NotInIdealSquare => exit::NOT_IN_IDEAL_SQUARE,
        Error::DegenerateDecomposition => exit::DEGENERATE_DECOMPOSITION,
        Error::ZeroBranch => exit::ZERO_BRANCH,
        Error::CapExceeded(_) => exit::CAP_EXCEEDED,
        _ => exit::OTHER,
    }
}

#[derive(Parser, Debug)]
#[command(name = "doublecover", version, about = "Double covers of P^n and lifts of doubled hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Coefficient field: `Q` or `Fp:<prime>`.
    #[arg(long, default_value = "Fp:101")]
    pub field: Field,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
    /// Run the brute-force oracles as well.
    #[arg(long)]
    pub verify: bool,
    /// Number of random family members / trials.
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lift a doubled hypersurface from a bundle file.
    Lift {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension, Severi, corank and ledger tables.
    Census {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: u32,
        /// A single `k` or an inclusive range `lo..hi`.
        #[arg(long, default_value = "3..8")]
        k: KRange,
        /// Table printed by `--out csv`.
        #[arg(long, value_enum, default_value = "dim")]
        table: Table,
        #[command(flatten)]
        common: Common,
    },
    /// Random cover and divisor: push forward, lift, recover the branch.
    Roundtrip {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 6)]
        k: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert function of the square of a complete intersection ideal.
    Hilbert {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 12)]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a canned or random bundle.
    Gen {
        /// Canned bundle name; omit together with `--random`.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        random: bool,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = 6)]
        k: u32,
        /// Write the bundle here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Dim,
    Severi,
    Cork,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct KRange {
    pub lo: u32,
    pub hi: u32,
}

impl std::str::FromStr for KRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<KRange> {
        let bad = || Error::Parse(format!("bad k range {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim_start_matches('=').trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let k = s.trim().parse().map_err(|_| bad())?;
                (k, k)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(KRange { lo, hi })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub prng: String,
    pub input_digest: String,
    pub seed: u64,
    pub field: Field,
    pub timings_ms: BTreeMap<String, f64>,
    pub payload: Value,
    pub checks: Vec<Check>,
    /// Smoothness is sampled over a finite field, never proved.
    pub notes: Vec<String>,
    #[serde(skip)]
    pub csv: Option<String>,
}

impl RunReport {
    fn new(command: &str, digest_input: &[u8], common: &Common) -> RunReport {
        RunReport {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            prng: gen::PRNG_NAME.into(),
            input_digest: hex::encode(Sha256::digest(digest_input)),
            seed: common.seed,
            field: common.field,
            timings_ms: BTreeMap::new(),
            payload: Value::Null,
            checks: Vec::new(),
            notes: Vec::new(),
            csv: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, reason: impl FnOnce() -> String) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            reason: (!pass).then(reason),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            exit::OK
        } else {
            exit::CHECK_FAILED
        }
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings_ms
            .insert(phase.into(), t.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn render(&self, out: OutFormat) -> String {
        match out {
            OutFormat::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            OutFormat::Csv => match &self.csv {
                Some(s) => s.clone(),
                None => to_csv(&self.checks),
            },
        }
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("flat rows");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf8")
}

fn smoothness_note() -> String {
    "smoothness verdicts come from finite-field point sampling and are evidence, not proof".into()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::CapExceeded(format!("n = {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

fn check_degree(deg: u32) -> Result<()> {
    if deg > MAX_DEGREE {
        return Err(Error::CapExceeded(format!("degree {deg} above {MAX_DEGREE}")));
    }
    Ok(())
}

fn ci_degree(fk: &Poly, fkd: &Poly) -> u32 {
    fk.degree().unwrap_or(0).max(fkd.degree().unwrap_or(0))
}

fn gen_config(common: &Common) -> GenConfig {
    GenConfig::with_seed(common.seed, common.field)
}

/// Prime to sample smoothness over: the working prime, or the configured
/// small prime when working over `Q`.
fn sample_prime(field: Field, cfg: &GenConfig) -> u64 {
    match field {
        Field::Prime(p) => p,
        Field::Rational => cfg.smooth_prime,
    }
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses, runs and renders.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            return Outcome {
                code: exit::PARSE,
                stdout: String::new(),
                stderr: e.to_string(),
            }
        }
        Err(e) => {
            return Outcome {
                code: exit::OK,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
    };
    match execute(&cli) {
        Ok(Output::Report(r, out)) => Outcome {
            code: r.exit_code(),
            stdout: r.render(out),
            stderr: String::new(),
        },
        Ok(Output::Text(code, stdout, stderr)) => Outcome { code, stdout, stderr },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub enum Output {
    Report(RunReport, OutFormat),
    Text(i32, String, String),
}

pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Lift { input, common } => {
            let bytes = std::fs::read(input)
                .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
            let text = String::from_utf8(bytes.clone())
                .map_err(|_| Error::Parse("input is not UTF-8".into()))?;
            let bundle = Bundle::parse(&text)?;
            Ok(Output::Report(cmd_lift(&bundle, &bytes, common)?, common.out))
        }
        Command::Census {
            n,
            d,
            k,
            table,
            common,
        } => Ok(Output::Report(cmd_census(*n, *d, *k, *table, common)?, common.out)),
        Command::Roundtrip { n, d, k, common } => {
            Ok(Output::Report(cmd_roundtrip(*n, *d, *k, common)?, common.out))
        }
        Command::Hilbert {
            n,
            a,
            b,
            m_max,
            common,
        } => Ok(Output::Report(cmd_hilbert(*n, *a, *b, *m_max, common)?, common.out)),
        Command::Gen {
            name,
            random,
            n,
            d,
            k,
            output,
            common,
        } => {
            let bundle = match (name, random) {
                (Some(name), _) => gen::canned(name)?.change_field(common.field)?,
                (None, true) => random_bundle(*n, *d, *k, common)?,
                (None, false) => {
                    return Err(Error::InvalidArgument("gen needs --name or --random".into()))
                }
            };
            let mut code = exit::OK;
            let mut msg = String::new();
            if common.verify && bundle.get("g").is_some() {
                let r = cmd_lift(&bundle, bundle.to_json_string().as_bytes(), common)?;
                code = r.exit_code();
                if code != exit::OK {
                    msg = r.render(OutFormat::Json);
                }
            }
            let text = bundle.to_json_string() + "\n";
            match output {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    Ok(Output::Text(code, String::new(), msg))
                }
                None => Ok(Output::Text(code, text, msg)),
            }
        }
    }
}

fn random_bundle(n: usize, d: u32, k: u32, common: &Common) -> Result<Bundle> {
    check_n(n)?;
    check_degree(k)?;
    check_degree(2 * d)?;
    let mut g = Generator::new(gen_config(common))?;
    let s = g.random_cover_divisor(n, d, k)?;
    let (img, _) = divisor_image(&s.divisor)?;
    Ok(Bundle {
        name: "random".into(),
        n,
        d: Some(d),
        k: Some(k),
        description: format!("random cover and divisor, seed {}, field {}", common.seed, common.field),
        polys: vec![
            ("g2d".into(), s.cover.branch().clone()),
            ("fk".into(), s.divisor.fk().clone()),
            ("fkd".into(), s.divisor.fkd().clone()),
            ("g".into(), img),
        ],
    })
}

#[derive(Serialize)]
struct MemberOut {
    a: String,
    f_hat: String,
    g_hat: String,
    verified: bool,
    in_ideal: bool,
    smoothness: Option<SmoothnessVerdict>,
}

fn member_rows(
    fam: &LiftFamily,
    g: &Poly,
    params: Vec<Poly>,
    prime: u64,
    trials: usize,
    seed: u64,
) -> Result<Vec<MemberOut>> {
    params
        .into_par_iter()
        .enumerate()
        .map(|(i, a)| {
            let m = lift::family_member(fam, &a)?;
            let verified = lift::verify_lift(g, &fam.ci, &m, &fam.scalar);
            let in_ideal = lift::contact_in_ideal(&fam.ci, &m)?;
            let smoothness = if m.g_hat.is_zero() {
                None
            } else {
                lift::smoothness_sample(&m.g_hat, prime, trials, seed.wrapping_add(i as u64)).ok()
            };
            Ok(MemberOut {
                a: a.to_string(),
                f_hat: m.f_hat.to_string(),
                g_hat: m.g_hat.to_string(),
                verified,
                in_ideal,
                smoothness,
            })
        })
        .collect()
}

/// Lifts the `g` of a bundle (or the image of its cover divisor) along
/// `Z = (fkd, fk)`.
pub fn cmd_lift(bundle: &Bundle, raw: &[u8], common: &Common) -> Result<RunReport> {
    let mut rep = RunReport::new("lift", raw, common);
    let b = bundle.change_field(common.field)?;
    let role = |r: &str| {
        b.get(r)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("bundle has no {r:?} polynomial")))
    };
    let fk = role("fk")?;
    let fkd = role("fkd")?;
    let g2d = b.get("g2d").cloned();
    check_n(fk.ring().n())?;
    let g = match b.get("g") {
        Some(g) => g.clone(),
        None => {
            let g2d = g2d.clone().ok_or_else(|| Error::Parse("bundle has neither g nor g2d".into()))?;
            &fk.pow(2) - &(&g2d * &fkd.pow(2))
        }
    };
    check_degree(ci_degree(&fk, &fkd))?;
    let ci = CompleteIntersection::new(fkd, fk)?;
    let fam = rep.time("lift", || lift::lift_branch(&g, &ci))?;
    let cfg = gen_config(common);
    let mut rng = Generator::new(cfg.clone())?;
    let mut params = vec![Poly::zero(g.ring())];
    params.extend((0..common.samples).map(|_| fam.random_param(&mut rng)));
    let prime = sample_prime(common.field, &cfg);
    let rows = rep.time("members", || {
        member_rows(&fam, &g, params, prime, cfg.trials, common.seed)
    })?;
    for (i, r) in rows.iter().enumerate() {
        rep.check(format!("verify_lift[{i}]"), r.verified, || format!("identity fails for a = {}", r.a));
        rep.check(format!("contact_in_ideal[{i}]"), r.in_ideal, || {
            format!("f_hat not in I_Z for a = {}", r.a)
        });
    }
    let (a, k) = ci.degrees();
    let (k, d) = (k, k - a);
    if k > d {
        let kernel = rep.time("kernel", || ci::decomposition_kernel_dim(&ci, 2 * k as i64));
        rep.check("family_dim_equals_kernel", kernel == fam.dimension(), || {
            format!("kernel {kernel}, family {}", fam.dimension())
        });
    }
    let injective = lift::family_injectivity_check(&fam, common.samples, common.seed)?;
    rep.check("family_injective", injective, || "two parameters gave proportional branch loci".into());
    let mut recovered = Value::Null;
    if let Some(g2d) = &g2d {
        let rec = lift::recover_branch(&fam, g2d)?;
        let ok = rec.as_ref().is_some_and(|r| r.matches);
        rep.check("branch_recovered", ok, || "original branch class not in the family".into());
        recovered = rec
            .map(|r| json!({"a": r.member.a.to_string(), "matches": r.matches}))
            .unwrap_or(Value::Null);
    }
    rep.payload = json!({
        "bundle": b.name,
        "n": ci.n(),
        "d": d,
        "k": k,
        "scalar": fam.scalar.to_string(),
        "f_tilde": fam.f_tilde.to_string(),
        "g_tilde": fam.g_tilde.to_string(),
        "g_d": fam.g_d.to_string(),
        "family_dim": fam.dimension(),
        "family_dim_formula": h(ci.n(), 2 * d as i64 - k as i64),
        "members": rows,
        "recovery": recovered,
    });
    rep.notes.push(smoothness_note());
    rep.csv = Some(to_csv(&rep.checks));
    Ok(rep)
}

#[derive(Serialize)]
struct AgreementRow {
    k: u32,
    m: i64,
    i2_formula: i64,
    i2_oracle: usize,
    kernel: usize,
    kernel_formula: i64,
    fiber_dim: i64,
}

pub fn cmd_census(n: usize, d: u32, k: KRange, table: Table, common: &Common) -> Result<RunReport> {
    check_n(n)?;
    check_degree(k.hi)?;
    check_degree(2 * d)?;
    let digest = format!("census n={n} d={d} k={}..{}", k.lo, k.hi);
    let mut rep = RunReport::new("census", digest.as_bytes(), common);
    let ks: Vec<u32> = (k.lo.max(d)..=k.hi).collect();
    let dims = ks
        .iter()
        .map(|&k| census::dim_report(n, k, d))
        .collect::<Result<Vec<_>>>()?;
    let severi = ks
        .iter()
        .map(|&k| census::severi_report(k, d))
        .collect::<Result<Vec<_>>>()?;
    let cork = (1..=k.hi.max(8))
        .map(census::cork_report)
        .collect::<Result<Vec<_>>>()?;
    let ledger = census::prop64_ledger();
    let quartic = census::quartic_extension_counts();
    let totaro = census::totaro_check()?;

    for s in &severi {
        rep.check(format!("severi_excess[k={}]", s.k), s.excess == census::severi_excess_formula(d), || {
            format!("excess {} for d = {d}", s.excess)
        });
    }
    for c in cork.iter().filter(|c| c.k >= 4) {
        let fib = census::dim_report(2, c.k, 3)?.fiber_dim;
        rep.check(format!("cork_minus_one_is_fiber[k={}]", c.k), c.cork_phi - 1 == fib, || {
            format!("cork {} vs fiber {fib}", c.cork_phi)
        });
    }
    rep.check("ledger_rows", ledger.row_y == [10, 0, 0] && ledger.row_s == [20, 1, 0] && ledger.row_c == [19, 1, 0], || {
        format!("{ledger:?}")
    });
    rep.check("quartic_counts", quartic == (10, 1), || format!("{quartic:?}"));
    for (name, ok) in &totaro {
        rep.check(format!("weighted_sextic[{name}]"), *ok, || "not weighted homogeneous of degree 6".into());
    }

    let mut agreement = Vec::new();
    if common.verify {
        let cfg = gen_config(common);
        let results = rep.time("oracles", || {
            ks.par_iter()
                .map(|&kk| -> Result<Option<AgreementRow>> {
                    if kk == d {
                        return Ok(None);
                    }
                    let mut g = Generator::new(GenConfig {
                        seed: cfg.seed.wrapping_add(kk as u64),
                        ..cfg.clone()
                    })?;
                    let ci = g.random_smooth_ci(n, kk - d, kk)?.ci;
                    let m = 2 * kk as i64;
                    let (di, ki) = (d as i64, kk as i64);
                    Ok(Some(AgreementRow {
                        k: kk,
                        m,
                        i2_formula: ci::i2_dim_formula(n, kk - d, kk, m),
                        i2_oracle: ci::i2_dim_oracle(&ci, m),
                        kernel: ci::decomposition_kernel_dim(&ci, m),
                        kernel_formula: h(n, 2 * di - ki) + h(n, di - ki),
                        fiber_dim: census::dim_report(n, kk, d)?.fiber_dim,
                    }))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        agreement = results.into_iter().flatten().collect();
        for r in &agreement {
            rep.check(format!("i2_dim[k={}]", r.k), r.i2_formula == r.i2_oracle as i64, || {
                format!("formula {} oracle {}", r.i2_formula, r.i2_oracle)
            });
            rep.check(format!("kernel[k={}]", r.k), r.kernel as i64 == r.kernel_formula && r.kernel_formula == r.fiber_dim, || {
                format!("kernel {} formula {} fiber {}", r.kernel, r.kernel_formula, r.fiber_dim)
            });
        }
        let f = match common.field {
            Field::Rational => Field::Prime(32003),
            f => f,
        };
        let ring3 = crate::poly::RingCtx::projective(3, f)?;
        let mut g = Generator::new(GenConfig::with_seed(common.seed, f))?;
        let q = g.random_poly(&ring3, 2)?;
        let s = g.random_poly(&ring3, 4)?;
        let oracle = census::quartic_extension_oracle(&q, &s)?;
        rep.check("quartic_counts_oracle", oracle == quartic, || format!("oracle {oracle:?}"));
        if n == 2 {
            for kk in ks.iter().copied().filter(|&kk| (4..=7).contains(&kk)) {
                let ci = g.random_smooth_ci(2, kk - 3, kk)?.ci;
                let c = census::cubics_through_nodes(&ci)? as i64;
                let want = h(2, 6 - kk as i64);
                rep.check(format!("cubics_through_nodes[k={kk}]"), c == want, || format!("rank {c}, expected {want}"));
            }
        }
        rep.notes.push(smoothness_note());
    }

    rep.payload = json!({
        "dim": dims,
        "severi": severi,
        "cork": cork,
        "quartic_extension_counts": [quartic.0, quartic.1],
        "ledger": ledger,
        "unprojection": census::unprojection_row(),
        "agreement": agreement,
    });
    rep.csv = Some(match table {
        Table::Dim => to_csv(&dims),
        Table::Severi => to_csv(&severi),
        Table::Cork => to_csv(&cork),
    });
    Ok(rep)
}

pub fn cmd_roundtrip(n: usize, d: u32, k: u32, common: &Common) -> Result<RunReport> {
    check_n(n)?;
    check_degree(k)?;
    check_degree(2 * d)?;
    let digest = format!("roundtrip n={n} d={d} k={k}");
    let mut rep = RunReport::new("roundtrip", digest.as_bytes(), common);
    let bundle = rep.time("generate", || random_bundle(n, d, k, common))?;
    let mut inner = cmd_lift(&bundle, digest.as_bytes(), common)?;
    let fiber = census::dim_report(n, k, d)?.fiber_dim;
    let measured = inner.payload["family_dim"].as_u64().unwrap_or(0) as i64;
    rep.checks.append(&mut inner.checks);
    rep.check("family_dim_equals_fiber_dim", measured == fiber, || {
        format!("measured {measured}, census {fiber}")
    });
    rep.timings_ms.append(&mut inner.timings_ms);
    rep.payload = json!({
        "n": n,
        "d": d,
        "k": k,
        "fiber_dim": fiber,
        "family_dim": measured,
        "bundle": bundle.to_json(),
        "lift": inner.payload,
    });
    rep.notes = inner.notes;
    rep.csv = Some(to_csv(&rep.checks));
    Ok(rep)
}

#[derive(Serialize)]
struct HilbertRow {
    n: usize,
    a: u32,
    b: u32,
    m: u32,
    formula: i64,
    oracle: Option<usize>,
    kernel: Option<usize>,
    unknowns: i64,
}

pub fn cmd_hilbert(n: usize, a: u32, b: u32, m_max: u32, common: &Common) -> Result<RunReport> {
    check_n(n)?;
    check_degree(m_max)?;
    if a == 0 || a > b {
        return Err(Error::InvalidArgument(format!("need 1 <= a <= b, got ({a}, {b})")));
    }
    let digest = format!("hilbert n={n} a={a} b={b} m_max={m_max}");
    let mut rep = RunReport::new("hilbert", digest.as_bytes(), common);
    let sample = if common.verify {
        let mut g = Generator::new(gen_config(common))?;
        let s = g.random_smooth_ci(n, a, b)?;
        rep.notes.push(smoothness_note());
        Some(s)
    } else {
        None
    };
    let ci = sample.as_ref().map(|s| &s.ci);
    let rows: Vec<HilbertRow> = rep.time("table", || {
        (0..=m_max)
            .into_par_iter()
            .map(|m| {
                let mi = m as i64;
                let (ai, bi) = (a as i64, b as i64);
                HilbertRow {
                    n,
                    a,
                    b,
                    m,
                    formula: ci::i2_dim_formula(n, a, b, mi),
                    oracle: ci.map(|c| ci::i2_dim_oracle(c, mi)),
                    kernel: ci.map(|c| ci::decomposition_kernel_dim(c, mi)),
                    unknowns: h(n, mi - 2 * ai) + h(n, mi - ai - bi) + h(n, mi - 2 * bi),
                }
            })
            .collect()
    });
    for r in &rows {
        if let (Some(o), Some(kd)) = (r.oracle, r.kernel) {
            rep.check(format!("i2_dim[m={}]", r.m), r.formula == o as i64, || {
                format!("formula {} oracle {o}", r.formula)
            });
            rep.check(format!("rank_nullity[m={}]", r.m), o + kd == r.unknowns as usize, || {
                format!("rank {o} + kernel {kd} != {}", r.unknowns)
            });
        }
    }
    rep.payload = json!({
        "rows": rows,
        "instance": sample.map(|s| json!({
            "f_a": s.ci.f_a().to_string(),
            "f_b": s.ci.f_b().to_string(),
            "smoothness": s.verdict,
            "attempts": s.attempts,
        })),
    });
    rep.csv = Some(to_csv(&rows));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let o = run(std::iter::once("doublecover").chain(args.iter().copied()));
        (o.code, o.stdout + &o.stderr)
    }

    #[test]
    fn k_range_parse() {
        assert_eq!("3..8".parse::<KRange>().unwrap(), KRange { lo: 3, hi: 8 });
        assert_eq!("5".parse::<KRange>().unwrap(), KRange { lo: 5, hi: 5 });
        assert!("8..3".parse::<KRange>().is_err());
    }

    #[test]
    fn census_defaults_pass() {
        let (code, out) = run_args(&["census", "--verify"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let fib: Vec<i64> = v["payload"]["dim"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["fiber_dim"].as_i64().unwrap())
            .collect();
        assert_eq!(fib, vec![10, 6, 3, 1, 0, 0]);
    }

    #[test]
    fn census_csv_columns() {
        let (_, out) = run_args(&["census", "--out", "csv"]);
        assert_eq!(out.lines().next().unwrap(), "n,k,d,dim_Vd,dim_VW,dim_Z,dim_W,fiber_dim");
    }

    #[test]
    fn caps_enforced() {
        assert_eq!(run_args(&["roundtrip", "--n", "5"]).0, exit::CAP_EXCEEDED);
        assert_eq!(run_args(&["hilbert", "--a", "1", "--b", "2", "--m-max", "15"]).0, exit::CAP_EXCEEDED);
    }

    #[test]
    fn bad_flags() {
        assert_eq!(run_args(&["census", "--field", "Fp:100"]).0, exit::PARSE);
        assert_eq!(run_args(&["frobnicate"]).0, exit::PARSE);
    }
}
