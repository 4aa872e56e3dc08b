//! Command-line front end and the parameter file format.
//!
//! Exit status: 0 when every requested check passes, 1 when a verification
//! fails (with the witness printed), 2 on usage or input errors. Reports go
//! to standard output and are byte-deterministic given flags and seed;
//! timing and confirmations go to standard error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::Ratio;

use crate::analysis::{
    certify_distance, check_claims_punctured, check_claims_rate_half, exact_min_distance,
    gv_report, j_profile, AnalysisError, CertOutcome, Certificate, CertifyMode, DistanceReport,
    SearchOptions, DEFAULT_BUDGET,
};
use crate::codec::{build_alpha_star, derive_params, encode, generator_matrix, puncture_plan,
    AlphaSampler};
use crate::cyclic::prefix_weight;
use crate::params::{verify_irreducible, CodeParams, IrreducibilityVerdict, ParamsError};
use crate::rng::XorShift64Star;
use crate::sidon::{bose_chowla, verify_sidon, SidonSet, SidonViolation};
use crate::Error;

pub const PARAM_FORMAT: &str = "wozencraft-params-v1";

/// verify re-runs randomized lemma checks this many times by default.
const DEFAULT_TRIALS: u64 = 1000;
const DEFAULT_SEED: u64 = 1;
/// verify cross-checks certificates against exhaustive search only up to
/// this many codewords, to stay fast on large configurations.
const CROSS_CHECK_LIMIT: u128 = 1 << 20;

const EXIT_PASS: i32 = 0;
const EXIT_VERIFICATION_FAILED: i32 = 1;

#[derive(Parser)]
#[command(
    name = "wozencraft",
    version,
    about = "Explicit codes from Sidon sets in F_q[x]/(x^k'-1): construction, encoding, and distance verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an Artin prime above a floor and derive a full parameter set
    Params {
        /// Field order (prime power)
        #[arg(long)]
        q: u64,
        /// Lower bound for the dimension k
        #[arg(long = "min-k")]
        min_k: u64,
        /// Destination file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Bose-Chowla Sidon set for a prime p and verify it
    Sidon {
        /// Prime order of the set
        #[arg(long)]
        p: u64,
    },
    /// Export the generator matrix
    Genmat {
        /// Parameter file
        #[arg(long)]
        params: PathBuf,
        /// Puncture to this rate, given exactly as a/b
        #[arg(long)]
        rate: Option<String>,
        /// Destination file
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode one message
    Encode {
        /// Parameter file
        #[arg(long)]
        params: PathBuf,
        /// Comma-separated message symbols, k of them
        #[arg(long)]
        message: String,
    },
    /// Distance report: theorem bounds, certification, exhaustive search
    Distance {
        /// Parameter file
        #[arg(long)]
        params: PathBuf,
        /// Scan every nonzero message
        #[arg(long)]
        exact: bool,
        /// Certify distance >= C by low-weight enumeration
        #[arg(long)]
        certify: Option<u64>,
        /// Codeword scan limit (default 2^28)
        #[arg(long)]
        budget: Option<u64>,
        /// Stop at the first codeword of weight below C
        #[arg(long = "prove-at-least")]
        prove_at_least: Option<u64>,
        /// Machine-readable key,value output
        #[arg(long)]
        csv: bool,
    },
    /// Run the full property suite against a parameter file
    Verify {
        /// Parameter file
        #[arg(long)]
        params: PathBuf,
        /// Randomized trials per lemma check
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        /// Seed for the randomized checks
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exact distances of random multipliers vs the Sidon multiplier
    Ensemble {
        /// Parameter file
        #[arg(long)]
        params: PathBuf,
        /// Number of random multipliers
        #[arg(long)]
        samples: u64,
        /// Seed for the multiplier stream
        #[arg(long)]
        seed: u64,
        /// Machine-readable output
        #[arg(long)]
        csv: bool,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.cmd {
        Command::Params { q, min_k, out } => cmd_params(q, min_k, out),
        Command::Sidon { p } => cmd_sidon(p),
        Command::Genmat { params, rate, out } => cmd_genmat(&params, rate.as_deref(), &out),
        Command::Encode { params, message } => cmd_encode(&params, &message),
        Command::Distance {
            params,
            exact,
            certify,
            budget,
            prove_at_least,
            csv,
        } => cmd_distance(&params, exact, certify, budget, prove_at_least, csv),
        Command::Verify {
            params,
            trials,
            seed,
        } => cmd_verify(&params, trials, seed),
        Command::Ensemble {
            params,
            samples,
            seed,
            csv,
        } => cmd_ensemble(&params, samples, seed, csv),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn join_commas(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_spaces(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| format!("--rate: expected an exact rational a/b, got `{s}`"))?;
    let num: u64 = a
        .trim()
        .parse()
        .map_err(|_| format!("--rate: bad numerator `{a}`"))?;
    let den: u64 = b
        .trim()
        .parse()
        .map_err(|_| format!("--rate: bad denominator `{b}`"))?;
    if den == 0 {
        return Err("--rate: denominator must be nonzero".into());
    }
    Ok(Ratio::new(num, den))
}

/// Serializes a parameter set in the fixed key order. parse(render(p))
/// reconstructs p exactly, and render(parse(text)) == text for files this
/// function wrote.
pub fn render_param_file(p: &CodeParams) -> String {
    let rate = p.rate();
    let mut s = String::new();
    let _ = writeln!(s, "format = {PARAM_FORMAT}");
    let _ = writeln!(s, "q = {}", p.q);
    let _ = writeln!(s, "kprime = {}", p.kprime);
    let _ = writeln!(s, "k = {}", p.k);
    let _ = writeln!(s, "d = {}", p.d);
    let _ = writeln!(s, "sidon_modulus = {}", p.sidon.modulus);
    let _ = writeln!(s, "sidon = {}", join_commas(&p.sidon.elements));
    let _ = writeln!(s, "alpha_coeffs = {}", join_commas(&p.alpha));
    let _ = writeln!(s, "rate = {}/{}", rate.numer(), rate.denom());
    let _ = writeln!(s, "kept = {}", p.kept);
    s
}

const PARAM_KEYS: [&str; 10] = [
    "format",
    "q",
    "kprime",
    "k",
    "d",
    "sidon_modulus",
    "sidon",
    "alpha_coeffs",
    "rate",
    "kept",
];

/// Parses and fully re-validates a parameter file. Unknown, duplicate, and
/// missing keys are all rejected, as is any structural inconsistency.
pub fn parse_param_file(text: &str) -> Result<CodeParams, String> {
    let mut seen: BTreeMap<&str, String> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
        let key = key.trim();
        let canon = PARAM_KEYS
            .iter()
            .find(|&&k| k == key)
            .ok_or_else(|| format!("line {}: unknown key `{key}`", i + 1))?;
        if seen.insert(canon, value.trim().to_string()).is_some() {
            return Err(format!("line {}: duplicate key `{key}`", i + 1));
        }
    }
    for key in PARAM_KEYS {
        if !seen.contains_key(key) {
            return Err(format!("missing key `{key}`"));
        }
    }
    if seen["format"] != PARAM_FORMAT {
        return Err(format!(
            "unsupported format `{}`, expected `{PARAM_FORMAT}`",
            seen["format"]
        ));
    }
    let int = |key: &str| -> Result<u64, String> {
        seen[key]
            .parse::<u64>()
            .map_err(|_| format!("key `{key}`: bad integer `{}`", seen[key]))
    };
    let list = |key: &str| -> Result<Vec<u64>, String> {
        seen[key]
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("key `{key}`: bad integer `{x}`"))
            })
            .collect()
    };
    let q = int("q")?;
    let kprime = int("kprime")?;
    let k = int("k")? as usize;
    let d = int("d")?;
    let kept = int("kept")? as usize;
    let sidon = SidonSet {
        p: d,
        modulus: int("sidon_modulus")?,
        elements: list("sidon")?,
        generator_code: None,
    };
    let alpha = list("alpha_coeffs")?;
    let params = CodeParams {
        q,
        kprime,
        k,
        d,
        sidon,
        alpha,
        kept,
    };
    let stated = parse_ratio(&seen["rate"]).map_err(|e| e.replace("--rate", "key `rate`"))?;
    if stated != params.rate() {
        return Err(ParamsError::RateMismatch {
            stated,
            derived: params.rate(),
        }
        .to_string());
    }
    params.validate().map_err(|e| e.to_string())?;
    Ok(params)
}

fn load_params(path: &Path) -> Result<CodeParams, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_param_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// The real-valued punctured distance bound d - sqrt(k-kept) -
/// (k-kept)^(1/4) - 1. Can be negative (vacuous) at desk scales.
fn punctured_bound(d: u64, k: usize, kept: usize) -> f64 {
    let removed = (k - kept) as f64;
    d as f64 - removed.sqrt() - removed.powf(0.25) - 1.0
}

fn budget_error(e: &Error, flag_hint: &str) -> Option<String> {
    if let Error::Analysis(AnalysisError::BudgetExceeded { required, budget }) = e {
        Some(format!(
            "search space {required} exceeds the budget {budget}; {flag_hint}"
        ))
    } else {
        None
    }
}

fn cmd_params(q: u64, min_k: u64, out: Option<PathBuf>) -> Result<i32, String> {
    let params = derive_params(q, min_k, None).map_err(|e| e.to_string())?;
    let text = render_param_file(&params);
    match out {
        Some(path) => {
            fs::write(&path, &text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            eprintln!("wrote parameter file to {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

fn cmd_sidon(p: u64) -> Result<i32, String> {
    let set = bose_chowla(p).map_err(|e| e.to_string())?;
    println!("bose-chowla set, p = {}, modulus = {}", set.p, set.modulus);
    println!("elements: {}", join_commas(&set.elements));
    match verify_sidon(&set.elements, set.modulus) {
        Ok(()) => {
            let pairs = set.elements.len() * (set.elements.len() - 1);
            println!(
                "sidon verification: PASS ({pairs} ordered differences distinct mod {})",
                set.modulus
            );
            Ok(EXIT_PASS)
        }
        Err(v) => {
            println!(
                "sidon verification: FAIL ({} - {} = {} - {} = {} mod {})",
                v.first.0, v.first.1, v.second.0, v.second.1, v.difference, set.modulus
            );
            Ok(EXIT_VERIFICATION_FAILED)
        }
    }
}

fn cmd_genmat(path: &Path, rate: Option<&str>, out: &Path) -> Result<i32, String> {
    let mut params = load_params(path)?;
    if let Some(r) = rate {
        let ratio = parse_ratio(r)?;
        params.kept = puncture_plan(ratio, params.k).map_err(|e| format!("--rate: {e}"))?;
    }
    let matrix = generator_matrix(&params).map_err(|e| e.to_string())?;
    fs::write(out, matrix.render())
        .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    eprintln!(
        "wrote {} x {} generator matrix over F_{} to {}",
        matrix.k,
        matrix.n,
        matrix.q,
        out.display()
    );
    Ok(EXIT_PASS)
}

fn cmd_encode(path: &Path, message: &str) -> Result<i32, String> {
    let params = load_params(path)?;
    let symbols: Vec<u64> = message
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("--message: bad symbol `{x}`"))
        })
        .collect::<Result<_, _>>()?;
    let codeword = encode(&params, &symbols).map_err(|e| format!("--message: {e}"))?;
    println!("{}", join_spaces(&codeword));
    Ok(EXIT_PASS)
}

struct DistanceFacts {
    mode: CertifyMode,
    alpha_is_star: bool,
    claims_bound: Option<u64>,
    punctured: Option<(f64, Option<u64>)>,
    certificate: Option<Certificate>,
    report: Option<DistanceReport>,
}

fn gather_distance_facts(
    params: &CodeParams,
    exact: bool,
    certify: Option<u64>,
    budget: u64,
    prove_at_least: Option<u64>,
) -> Result<DistanceFacts, String> {
    let mode = if params.kept == params.k {
        CertifyMode::RateHalf
    } else {
        CertifyMode::Punctured
    };
    let alpha_star =
        build_alpha_star(params.k, &params.sidon).expect("validated params fit alpha*");
    let alpha_is_star = params.alpha == alpha_star;

    let claims_bound = (alpha_is_star && mode == CertifyMode::RateHalf).then_some(params.d);
    let punctured = (alpha_is_star && mode == CertifyMode::Punctured).then(|| {
        let bound = punctured_bound(params.d, params.k, params.kept);
        let implied = (bound >= 1.0).then(|| bound.ceil() as u64);
        (bound, implied)
    });

    let certificate = match certify {
        Some(c) => Some(
            certify_distance(params, &params.alpha, c, mode, budget).map_err(|e| {
                budget_error(&e, "raise --budget").unwrap_or_else(|| e.to_string())
            })?,
        ),
        None => None,
    };

    let report = if exact || prove_at_least.is_some() {
        let options = SearchOptions {
            budget,
            prove_at_least,
        };
        Some(
            exact_min_distance(params, &params.alpha, options).map_err(|e| {
                budget_error(&e, "raise --budget").unwrap_or_else(|| e.to_string())
            })?,
        )
    } else {
        None
    };

    Ok(DistanceFacts {
        mode,
        alpha_is_star,
        claims_bound,
        punctured,
        certificate,
        report,
    })
}

fn mode_label(mode: CertifyMode) -> &'static str {
    match mode {
        CertifyMode::RateHalf => "rate-1/2",
        CertifyMode::Punctured => "punctured",
    }
}

fn cmd_distance(
    path: &Path,
    exact: bool,
    certify: Option<u64>,
    budget: Option<u64>,
    prove_at_least: Option<u64>,
    csv: bool,
) -> Result<i32, String> {
    let params = load_params(path)?;
    let budget = budget.unwrap_or(DEFAULT_BUDGET);
    let facts = gather_distance_facts(&params, exact, certify, budget, prove_at_least)?;
    if let Some(r) = &facts.report {
        eprintln!("scan took {} ms", r.elapsed.as_millis());
    }
    let mut failed = false;

    // every established lower bound must sit at or below the exact value
    let mut bounds: Vec<(String, u64)> = Vec::new();
    if let Some(d) = facts.claims_bound {
        bounds.push(("claims bound".into(), d));
    }
    if let Some((_, Some(implied))) = facts.punctured {
        bounds.push(("punctured bound".into(), implied));
    }
    if let Some(cert) = &facts.certificate {
        if cert.outcome == CertOutcome::Pass {
            bounds.push(("certificate".into(), cert.c));
        } else {
            failed = true;
        }
    }
    let exact_value = facts.report.as_ref().and_then(|r| r.exact_distance);
    if facts
        .report
        .as_ref()
        .is_some_and(|r| r.disproof.is_some())
    {
        failed = true;
    }

    let rate = params.rate();
    if csv {
        println!("key,value");
        println!("q,{}", params.q);
        println!("kprime,{}", params.kprime);
        println!("k,{}", params.k);
        println!("kept,{}", params.kept);
        println!("n,{}", params.n());
        println!("rate,{}/{}", rate.numer(), rate.denom());
        println!("mode,{}", mode_label(facts.mode));
        println!("alpha_is_star,{}", facts.alpha_is_star);
        if let Some(d) = facts.claims_bound {
            println!("claims_bound,{d}");
        }
        if let Some((bound, implied)) = facts.punctured {
            println!("punctured_bound,{bound:.9}");
            match implied {
                Some(c) => println!("punctured_implied,{c}"),
                None => println!("punctured_implied,vacuous"),
            }
        }
        if let Some(cert) = &facts.certificate {
            println!("certificate_c,{}", cert.c);
            println!("certificate_enumerated,{}", cert.enumerated);
            match &cert.outcome {
                CertOutcome::Pass => println!("certificate_outcome,pass"),
                CertOutcome::Fail(w) => {
                    println!("certificate_outcome,fail");
                    println!(
                        "certificate_witness_support,{}",
                        w.support
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    println!("certificate_witness_coeffs,{}", join_spaces(&w.coeffs));
                    println!("certificate_witness_product_weight,{}", w.product_weight);
                    println!(
                        "certificate_witness_required,{} {}",
                        w.required_low, w.required_high
                    );
                }
            }
        }
        if let Some(r) = &facts.report {
            println!("examined,{}", r.search_space);
            if let Some(d) = r.exact_distance {
                println!("exact_distance,{d}");
                println!(
                    "exact_witness,{}",
                    join_spaces(r.witness.as_ref().expect("witness with exact"))
                );
            }
            if let Some(dp) = &r.disproof {
                println!("disproof_threshold,{}", dp.threshold);
                println!("disproof_weight,{}", dp.weight);
                println!("disproof_witness,{}", join_spaces(&dp.witness));
            }
        }
    } else {
        println!("distance report");
        println!(
            "q = {}, kprime = {}, k = {}, kept = {}, n = {}, rate = {}/{}",
            params.q,
            params.kprime,
            params.k,
            params.kept,
            params.n(),
            rate.numer(),
            rate.denom()
        );
        println!("mode: {}", mode_label(facts.mode));
        match facts.claims_bound {
            Some(d) => println!("claims bound: distance >= {d} (alpha is the sidon multiplier)"),
            None if facts.mode == CertifyMode::RateHalf => {
                println!("claims bound: not applicable (alpha differs from the sidon multiplier)")
            }
            None => {}
        }
        if let Some((bound, implied)) = facts.punctured {
            match implied {
                Some(c) => println!(
                    "punctured bound: d - sqrt(k-kept) - (k-kept)^(1/4) - 1 = {bound:.9}, implies distance >= {c}"
                ),
                None => println!(
                    "punctured bound: d - sqrt(k-kept) - (k-kept)^(1/4) - 1 = {bound:.9} (vacuous at this scale, printed not asserted)"
                ),
            }
        }
        if let Some(cert) = &facts.certificate {
            match &cert.outcome {
                CertOutcome::Pass => println!(
                    "certificate (c = {}, {}): PASS, enumerated {} ring elements",
                    cert.c,
                    mode_label(cert.mode),
                    cert.enumerated
                ),
                CertOutcome::Fail(w) => {
                    println!(
                        "certificate (c = {}, {}): FAIL after {} ring elements",
                        cert.c,
                        mode_label(cert.mode),
                        cert.enumerated
                    );
                    println!(
                        "  witness y: support [{}], coeffs [{}], product weight {}, required range [{}, {}]",
                        w.support
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        join_commas(&w.coeffs),
                        w.product_weight,
                        w.required_low,
                        w.required_high
                    );
                }
            }
        }
        if let Some(r) = &facts.report {
            match (&r.exact_distance, &r.disproof) {
                (Some(d), _) => {
                    println!("exact search: distance = {d}");
                    println!(
                        "  witness message: {}",
                        join_commas(r.witness.as_ref().expect("witness with exact"))
                    );
                }
                (None, Some(dp)) => {
                    println!("exact search: threshold {} disproved", dp.threshold);
                    println!("  witness message: {}", join_commas(&dp.witness));
                    println!("  codeword weight: {}", dp.weight);
                }
                (None, None) => unreachable!("scan yields a distance or a disproof"),
            }
            println!("  examined: {} codewords", r.search_space);
        }
        if let Some(exact_d) = exact_value {
            for (name, b) in &bounds {
                if *b <= exact_d {
                    println!("consistency: {name} {b} <= exact {exact_d}");
                } else {
                    println!("consistency: VIOLATION {name} {b} > exact {exact_d}");
                }
            }
        }
    }
    if let Some(exact_d) = exact_value {
        if bounds.iter().any(|(_, b)| *b > exact_d) {
            failed = true;
        }
    }
    Ok(if failed {
        EXIT_VERIFICATION_FAILED
    } else {
        EXIT_PASS
    })
}

struct Suite {
    passed: u64,
    failed: u64,
    skipped: u64,
    flagged: u64,
}

impl Suite {
    fn new() -> Self {
        Suite {
            passed: 0,
            failed: 0,
            skipped: 0,
            flagged: 0,
        }
    }
    fn pass(&mut self, line: String) {
        println!("[PASS] {line}");
        self.passed += 1;
    }
    fn fail(&mut self, line: String) {
        println!("[FAIL] {line}");
        self.failed += 1;
    }
    fn skip(&mut self, line: String) {
        println!("[SKIP] {line}");
        self.skipped += 1;
    }
    // known-benign anomaly: reported but not counted against the suite
    fn flag(&mut self, line: String) {
        println!("[FLAG] {line}");
        self.flagged += 1;
    }
    fn check(&mut self, outcome: Result<String, String>) {
        match outcome {
            Ok(line) => self.pass(line),
            Err(line) => self.fail(line),
        }
    }
}

fn random_support(rng: &mut XorShift64Star, kprime: usize, w: usize) -> Vec<usize> {
    let mut support = Vec::with_capacity(w);
    while support.len() < w {
        let s = rng.gen_range(kprime as u64) as usize;
        if !support.contains(&s) {
            support.push(s);
        }
    }
    support
}

fn cmd_verify(path: &Path, trials: u64, seed: u64) -> Result<i32, String> {
    let params = load_params(path)?;
    let ring = params.ring().map_err(|e| e.to_string())?;
    let kprime = ring.kprime();
    let k = params.k;
    let kept = params.kept;
    let d = params.d;
    let elements = params.sidon.elements.clone();
    let mut suite = Suite::new();

    println!(
        "verify: q = {}, kprime = {}, k = {}, kept = {}, trials = {}, seed = {}",
        params.q, params.kprime, k, kept, trials, seed
    );

    // Sidon property, from scratch
    suite.check(match verify_sidon(&elements, params.sidon.modulus) {
        Ok(()) => Ok(format!(
            "sidon: {} elements, all differences distinct mod {}",
            elements.len(),
            params.sidon.modulus
        )),
        Err(v) => Err(format!(
            "sidon: {} - {} collides with {} - {} (= {} mod {})",
            v.first.0, v.first.1, v.second.0, v.second.1, v.difference, params.sidon.modulus
        )),
    });

    // irreducibility of the all-ones modulus
    suite.check(match verify_irreducible(params.q, params.kprime) {
        Ok(IrreducibilityVerdict::Irreducible { order }) => Ok(format!(
            "irreducible: ord_{}({}) = {} = k' - 1",
            params.kprime, params.q, order
        )),
        Ok(IrreducibilityVerdict::Reducible { witness_order }) => Err(format!(
            "irreducible: ord_{}({}) = {} < k' - 1, modulus is reducible",
            params.kprime, params.q, witness_order
        )),
        Err(e) => Err(format!("irreducible: {e}")),
    });

    // reduction weight lemma on random ring elements
    let mut rng = XorShift64Star::new(seed);
    let mut lemma_witness: Option<Vec<u64>> = None;
    let mut truncated_witness: Option<Vec<u64>> = None;
    for _ in 0..trials {
        let coeffs: Vec<u64> = (0..kprime).map(|_| rng.gen_range(params.q)).collect();
        let f = ring.element(coeffs.clone()).expect("symbols in range");
        let ws = ring.weights(&f, Some(kept)).expect("kept within range");
        if ws.wt < ws.wt_tilde.min(k.saturating_sub(ws.wt_tilde)) && lemma_witness.is_none() {
            lemma_witness = Some(coeffs.clone());
        }
        let raw = prefix_weight(f.coeffs(), kept);
        let wt_r = ws.wt_r.expect("requested truncation");
        if wt_r < raw.min(kept - raw) && truncated_witness.is_none() {
            truncated_witness = Some(coeffs);
        }
    }
    suite.check(match &lemma_witness {
        None => Ok(format!(
            "reduction weight lemma: {trials} random ring elements"
        )),
        Some(w) => Err(format!(
            "reduction weight lemma: violated by f = {}",
            join_commas(w)
        )),
    });
    suite.check(match &truncated_witness {
        None => Ok(format!(
            "truncated weight lemma: {trials} random ring elements, window {kept}"
        )),
        Some(w) => Err(format!(
            "truncated weight lemma: violated by f = {}",
            join_commas(w)
        )),
    });

    // distance claims: exhaustive small supports, then random ones up to
    // weight d
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for i in 0..kprime {
        supports.push(vec![i]);
    }
    for i in 0..kprime {
        for j in i + 1..kprime {
            supports.push(vec![i, j]);
        }
    }
    let exhaustive = supports.len();
    for _ in 0..trials {
        let w = 1 + rng.gen_range(d) as usize;
        supports.push(random_support(&mut rng, kprime, w));
    }
    let mut claims_failure: Option<String> = None;
    let mut claims_violations: u64 = 0;
    let mut punctured_failure: Option<String> = None;
    let mut punctured_violations: u64 = 0;
    for s in &supports {
        let full = j_profile(&elements, s, kprime, kprime).expect("valid support");
        if let Err(e) = check_claims_rate_half(&full, d, k) {
            claims_violations += 1;
            claims_failure.get_or_insert(format!("support [{}]: {e}", join_spaces(
                &s.iter().map(|&x| x as u64).collect::<Vec<_>>(),
            )));
        }
        let window = j_profile(&elements, s, kprime, kept).expect("valid support");
        if let Err(e) = check_claims_punctured(&window, d, k) {
            punctured_violations += 1;
            punctured_failure.get_or_insert(format!("support [{}]: {e}", join_spaces(
                &s.iter().map(|&x| x as u64).collect::<Vec<_>>(),
            )));
        }
    }
    // The claim bounds count collisions among shifted copies of the element
    // set, so they hold as stated only when the pairwise differences stay
    // distinct mod k', not just mod the set modulus. When k' merges two
    // differences, violations are expected: report them for analysis without
    // failing the suite, since the distance guarantee rests on the
    // certificate check, not on these bounds.
    let wraparound = verify_sidon(&elements, params.kprime);
    let total_supports = supports.len();
    let flag_detail = |v: &SidonViolation| {
        format!(
            "set differences collide mod k' = {}: {} - {} matches {} - {} (= {}), so the claimed bounds are not guaranteed at this k'; logged for analysis",
            params.kprime, v.first.0, v.first.1, v.second.0, v.second.1, v.difference
        )
    };
    match (&claims_failure, &wraparound) {
        (None, _) => suite.pass(format!(
            "rate-1/2 claims: {exhaustive} exhaustive supports (w <= 2) + {trials} random (w <= {d})"
        )),
        (Some(msg), Ok(())) => suite.fail(format!("rate-1/2 claims: {msg}")),
        (Some(msg), Err(v)) => suite.flag(format!(
            "rate-1/2 claims: {claims_violations} of {total_supports} supports exceed the claimed bounds (first: {msg}); {}",
            flag_detail(v)
        )),
    }
    match (&punctured_failure, &wraparound) {
        (None, _) => suite.pass(format!(
            "punctured claims: window {kept}, same {total_supports} supports"
        )),
        (Some(msg), Ok(())) => suite.fail(format!("punctured claims: {msg}")),
        (Some(msg), Err(v)) => suite.flag(format!(
            "punctured claims: {punctured_violations} of {total_supports} supports exceed the claimed bounds (first: {msg}); {}",
            flag_detail(v)
        )),
    }

    // certification at the theorem's strength
    let mut established: Option<u64> = None;
    if kept == k {
        match certify_distance(
            &params,
            &params.alpha,
            d,
            CertifyMode::RateHalf,
            DEFAULT_BUDGET,
        ) {
            Ok(cert) => match cert.outcome {
                CertOutcome::Pass => {
                    established = Some(d);
                    suite.pass(format!(
                        "certificate: c = {d} (rate-1/2), enumerated {} ring elements",
                        cert.enumerated
                    ));
                }
                CertOutcome::Fail(w) => suite.fail(format!(
                    "certificate: c = {d} fails at support [{}], coeffs [{}], product weight {}",
                    w.support
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    join_commas(&w.coeffs),
                    w.product_weight
                )),
            },
            Err(e) => suite.skip(format!("certificate: {e}")),
        }
    } else {
        let bound = punctured_bound(d, k, kept);
        if bound >= 1.0 {
            let c = bound.floor() as u64;
            match certify_distance(
                &params,
                &params.alpha,
                c,
                CertifyMode::Punctured,
                DEFAULT_BUDGET,
            ) {
                Ok(cert) => match cert.outcome {
                    CertOutcome::Pass => {
                        established = Some(c);
                        suite.pass(format!(
                            "certificate: c = {c} (punctured, bound {bound:.9}), enumerated {} ring elements",
                            cert.enumerated
                        ));
                    }
                    CertOutcome::Fail(w) => suite.fail(format!(
                        "certificate: c = {c} (punctured) fails at support [{}], product weight {}",
                        w.support
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        w.product_weight
                    )),
                },
                Err(e) => suite.skip(format!("certificate: {e}")),
            }
        } else {
            suite.skip(format!(
                "certificate: punctured bound {bound:.9} < 1 is vacuous at this scale"
            ));
        }
    }

    // certificate soundness against the exhaustive scan, when affordable
    let space = (params.q as u128).pow(k as u32) - 1;
    if space <= CROSS_CHECK_LIMIT {
        match exact_min_distance(&params, &params.alpha, SearchOptions::default()) {
            Ok(report) => {
                let exact = report.exact_distance.expect("full scan");
                match established {
                    Some(c) if c > exact => suite.fail(format!(
                        "exact cross-check: certified {c} exceeds exact {exact}, witness {}",
                        join_commas(report.witness.as_ref().expect("witness with exact"))
                    )),
                    Some(c) => suite.pass(format!(
                        "exact cross-check: certified {c} <= exact {exact} over {} messages",
                        report.search_space
                    )),
                    None => suite.pass(format!(
                        "exact cross-check: exact distance {exact} over {} messages (no certified bound to compare)",
                        report.search_space
                    )),
                }
            }
            Err(e) => suite.skip(format!("exact cross-check: {e}")),
        }
    } else {
        suite.skip(format!(
            "exact cross-check: space {space} exceeds the quick limit {CROSS_CHECK_LIMIT}"
        ));
    }

    let total = suite.passed + suite.failed;
    if suite.failed == 0 {
        if suite.flagged > 0 {
            println!(
                "verify: PASS ({} checks, {} skipped, {} flagged)",
                total, suite.skipped, suite.flagged
            );
        } else {
            println!(
                "verify: PASS ({} checks, {} skipped)",
                total, suite.skipped
            );
        }
        Ok(EXIT_PASS)
    } else {
        println!("verify: FAIL ({} of {} checks failed)", suite.failed, total);
        Ok(EXIT_VERIFICATION_FAILED)
    }
}

fn cmd_ensemble(path: &Path, samples: u64, seed: u64, csv: bool) -> Result<i32, String> {
    let params = load_params(path)?;
    let too_big = "parameter space too large for the ensemble scan (needs q^k - 1 <= 2^28)";
    let alpha_star =
        build_alpha_star(params.k, &params.sidon).expect("validated params fit alpha*");
    let star = exact_min_distance(&params, &alpha_star, SearchOptions::default())
        .map_err(|e| budget_error(&e, too_big).unwrap_or_else(|| e.to_string()))?;
    let star_distance = star.exact_distance.expect("full scan");

    let mut sampler = AlphaSampler::new(params.q, params.k, seed);
    let mut distances: Vec<u64> = Vec::with_capacity(samples as usize);
    for _ in 0..samples {
        let alpha = sampler.next_alpha();
        let report = exact_min_distance(&params, &alpha, SearchOptions::default())
            .map_err(|e| budget_error(&e, too_big).unwrap_or_else(|| e.to_string()))?;
        distances.push(report.exact_distance.expect("full scan"));
    }
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for &dist in &distances {
        *histogram.entry(dist).or_insert(0) += 1;
    }

    let rate = params.rate();
    let rate_value = params.k as f64 / params.n() as f64;
    let gv = gv_report(params.q, params.n(), rate_value);
    let at_least_star = distances.iter().filter(|&&x| x >= star_distance).count();
    let at_least_gv = distances
        .iter()
        .filter(|&&x| x as f64 >= gv.gv_distance)
        .count();

    if csv {
        println!("key,value");
        println!("q,{}", params.q);
        println!("kprime,{}", params.kprime);
        println!("k,{}", params.k);
        println!("kept,{}", params.kept);
        println!("n,{}", params.n());
        println!("rate,{}/{}", rate.numer(), rate.denom());
        println!("samples,{samples}");
        println!("seed,{seed}");
        println!("alpha_star_distance,{star_distance}");
        println!("gv_delta,{:.9}", gv.delta);
        println!("gv_distance,{:.9}", gv.gv_distance);
        println!("samples_at_least_alpha_star,{at_least_star}");
        println!("samples_at_least_gv,{at_least_gv}");
        println!();
        println!("distance,count");
        for (dist, count) in &histogram {
            println!("{dist},{count}");
        }
        println!();
        println!("sample,distance");
        for (i, dist) in distances.iter().enumerate() {
            println!("{i},{dist}");
        }
    } else {
        println!("ensemble report");
        println!(
            "q = {}, kprime = {}, k = {}, kept = {}, n = {}, rate = {}/{}",
            params.q,
            params.kprime,
            params.k,
            params.kept,
            params.n(),
            rate.numer(),
            rate.denom()
        );
        println!("samples = {samples}, seed = {seed}");
        println!("alpha* distance: {star_distance}");
        println!(
            "gv baseline: delta = {:.9}, delta * n = {:.9}",
            gv.delta, gv.gv_distance
        );
        println!("sample distances:");
        for (i, dist) in distances.iter().enumerate() {
            println!("  sample {i}: {dist}");
        }
        println!("distance histogram:");
        for (dist, count) in &histogram {
            println!("  {dist}: {count}");
        }
        println!("samples with distance >= alpha* distance: {at_least_star} of {samples}");
        println!("samples with distance >= gv baseline: {at_least_gv} of {samples}");
    }
    Ok(EXIT_PASS)
}
