//! The verification engine: shifted-set profiles, the combinatorial claims
//! behind the distance theorem, certification by low-weight enumeration,
//! exhaustive minimum distance, weight distributions, and the
//! Gilbert-Varshamov baseline.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::codec::encode_in_ring;
use crate::cyclic::{hamming_weight, prefix_weight};
use crate::galois::FieldDesc;
use crate::params::CodeParams;
use crate::sidon::BOUND_SLACK;
use crate::Error;

/// Exhaustive searches refuse to scan more codewords than this unless the
/// caller raises the budget explicitly.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Spaces larger than this are split into a fixed number of chunks for
/// parallel scanning. The decomposition never depends on the worker count,
/// so merged results are identical to a single-threaded pass.
const CHUNK_THRESHOLD: u64 = 1 << 16;
const NUM_CHUNKS: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("support set is empty")]
    EmptySupport,
    #[error("support index {index} is outside [0, {kprime})")]
    SupportOutOfRange { index: usize, kprime: usize },
    #[error("support contains a repeated index {0}")]
    RepeatedSupport(usize),
    #[error("window {window} exceeds limit {limit}")]
    BadWindow { window: usize, limit: usize },
    #[error("profile window {got} does not match the expected {expected}")]
    WindowMismatch { got: usize, expected: usize },
    #[error("claim violated: {claim} at w = {w}: actual {actual}, bound {bound}")]
    ClaimViolation {
        claim: &'static str,
        w: usize,
        actual: f64,
        bound: f64,
    },
    #[error("certification target c = {0} must be at least 1")]
    BadTarget(u64),
    #[error("search space {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

/// How many window positions j see the shifted Sidon set meet the support
/// in exactly m points, for m = 0..=w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JProfile {
    /// Support size.
    pub w: usize,
    /// Number of positions tallied: k' for the full code, kept for the
    /// punctured check block.
    pub window: usize,
    /// counts[m] = number of j in [0, window) with exactly m hits.
    pub counts: Vec<u64>,
}

/// Tallies |(j - A) mod k' . S| over j in [0, window).
pub fn j_profile(
    elements: &[u64],
    support: &[usize],
    kprime: usize,
    window: usize,
) -> Result<JProfile, AnalysisError> {
    if support.is_empty() {
        return Err(AnalysisError::EmptySupport);
    }
    if window == 0 || window > kprime {
        return Err(AnalysisError::BadWindow {
            window,
            limit: kprime,
        });
    }
    let mut in_support = vec![false; kprime];
    for &s in support {
        if s >= kprime {
            return Err(AnalysisError::SupportOutOfRange { index: s, kprime });
        }
        if in_support[s] {
            return Err(AnalysisError::RepeatedSupport(s));
        }
        in_support[s] = true;
    }
    let w = support.len();
    let mut counts = vec![0u64; w + 1];
    for j in 0..window {
        let mut m = 0usize;
        for &a in elements {
            let shifted = (j + kprime - (a as usize % kprime)) % kprime;
            if in_support[shifted] {
                m += 1;
            }
        }
        counts[m] += 1;
    }
    Ok(JProfile {
        w,
        window,
        counts,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimMargin {
    pub name: &'static str,
    pub actual: f64,
    pub bound: f64,
    /// true: require actual >= bound; false: require actual <= bound.
    pub is_lower_bound: bool,
}

impl ClaimMargin {
    /// Nonnegative means the claim holds (up to the shared float slack).
    pub fn margin(&self) -> f64 {
        if self.is_lower_bound {
            self.actual - self.bound
        } else {
            self.bound - self.actual
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimsReport {
    pub w: usize,
    pub checks: Vec<ClaimMargin>,
}

fn enforce(w: usize, checks: Vec<ClaimMargin>) -> Result<ClaimsReport, AnalysisError> {
    for c in &checks {
        if c.margin() < -BOUND_SLACK {
            return Err(AnalysisError::ClaimViolation {
                claim: c.name,
                w,
                actual: c.actual,
                bound: c.bound,
            });
        }
    }
    Ok(ClaimsReport { w, checks })
}

/// The three facts behind the rate-1/2 distance theorem, checked on a
/// profile over the full window k': at least wd - w(w-1) singles, at least
/// k - wd empties, and pair incidences capped by w(w-1). All integer
/// comparisons, no slack needed.
pub fn check_claims_rate_half(
    profile: &JProfile,
    d: u64,
    k: usize,
) -> Result<ClaimsReport, AnalysisError> {
    if profile.window != k + 1 {
        return Err(AnalysisError::WindowMismatch {
            got: profile.window,
            expected: k + 1,
        });
    }
    let w = profile.w;
    let wd = w as i64 * d as i64;
    let pair_cap = (w * w.saturating_sub(1)) as i64;
    let singles = profile.counts[1] as i64;
    let empties = profile.counts[0] as i64;
    let pair_sum: i64 = profile
        .counts
        .iter()
        .enumerate()
        .skip(2)
        .map(|(m, &c)| (m * (m - 1) / 2) as i64 * c as i64)
        .sum();
    let checks = vec![
        ClaimMargin {
            name: "singles lower bound",
            actual: singles as f64,
            bound: (wd - pair_cap) as f64,
            is_lower_bound: true,
        },
        ClaimMargin {
            name: "empties lower bound",
            actual: empties as f64,
            bound: (k as i64 - wd) as f64,
            is_lower_bound: true,
        },
        ClaimMargin {
            name: "pair incidence cap",
            actual: pair_sum as f64,
            bound: pair_cap as f64,
            is_lower_bound: false,
        },
    ];
    enforce(w, checks)
}

/// The punctured-window versions, on a profile over the kept coordinates:
/// |J1| >= w(d - sqrt(k-kept) - (k-kept)^(1/4) - 1) - w^2 and
/// |J0| >= kept - w(sqrt(kept) + kept^(1/4) + 1). Real-valued bounds,
/// compared with the shared slack.
pub fn check_claims_punctured(
    profile: &JProfile,
    d: u64,
    k: usize,
) -> Result<ClaimsReport, AnalysisError> {
    if profile.window > k {
        return Err(AnalysisError::WindowMismatch {
            got: profile.window,
            expected: k,
        });
    }
    let w = profile.w as f64;
    let kept = profile.window as f64;
    let removed = (k - profile.window) as f64;
    let singles_bound =
        w * (d as f64 - removed.sqrt() - removed.powf(0.25) - 1.0) - w * w;
    let empties_bound = kept - w * (kept.sqrt() + kept.powf(0.25) + 1.0);
    let checks = vec![
        ClaimMargin {
            name: "punctured singles lower bound",
            actual: profile.counts[1] as f64,
            bound: singles_bound,
            is_lower_bound: true,
        },
        ClaimMargin {
            name: "punctured empties lower bound",
            actual: profile.counts[0] as f64,
            bound: empties_bound,
            is_lower_bound: true,
        },
    ];
    enforce(profile.w, checks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifyMode {
    /// Weight of the full ring product, bounded by k.
    RateHalf,
    /// Weight of the first `kept` raw product coordinates, bounded by kept.
    Punctured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertWitness {
    /// Nonzero coefficient indices of the violating y.
    pub support: Vec<usize>,
    /// Coefficients on those indices, in support order.
    pub coeffs: Vec<u64>,
    pub product_weight: usize,
    pub required_low: i64,
    pub required_high: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertOutcome {
    Pass,
    Fail(CertWitness),
}

/// Result of enumerating every ring element of weight below c against the
/// two-sided product-weight condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub c: u64,
    pub mode: CertifyMode,
    /// Ring elements inspected before passing or failing.
    pub enumerated: u64,
    pub outcome: CertOutcome,
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn advance_combination(idx: &mut [usize], kprime: usize) -> bool {
    let w = idx.len();
    for i in (0..w).rev() {
        if idx[i] < kprime - w + i {
            idx[i] += 1;
            for j in i + 1..w {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn advance_pattern(coeffs: &mut [u64], q: u64) -> bool {
    for i in (0..coeffs.len()).rev() {
        if coeffs[i] < q - 1 {
            coeffs[i] += 1;
            for c in coeffs[i + 1..].iter_mut() {
                *c = 1;
            }
            return true;
        }
    }
    false
}

/// Proves distance >= c by enumerating every y with 1 <= weight(y) <= c-1
/// (the condition is vacuous at weight >= c) and checking
/// c - wt(y) <= product weight <= limit - (c - wt(y)), with the product
/// weight and limit chosen by mode. Supports advance lexicographically and
/// coefficient patterns as an odometer, so a failure witness is
/// deterministic.
pub fn certify_distance(
    params: &CodeParams,
    alpha: &[u64],
    c: u64,
    mode: CertifyMode,
    budget: u64,
) -> Result<Certificate, Error> {
    if c == 0 {
        return Err(AnalysisError::BadTarget(c).into());
    }
    let ring = params.ring()?;
    let field = ring.field().clone();
    let kprime = ring.kprime();
    let q = field.order();
    let k = ring.k();
    let limit = match mode {
        CertifyMode::RateHalf => k,
        CertifyMode::Punctured => params.kept,
    };

    let mut required: u128 = 0;
    for w in 1..c {
        if w as usize >= kprime {
            break;
        }
        required += binomial(kprime as u64, w) * (q as u128 - 1).pow(w as u32);
    }
    if required > budget as u128 {
        return Err(AnalysisError::BudgetExceeded {
            required,
            budget,
        }
        .into());
    }

    // alpha * x^s for every shift s: rotating the embedded vector
    let alpha_ring = ring.from_prefix(alpha)?;
    let rotations: Vec<Vec<u64>> = (0..kprime)
        .map(|s| {
            let mut rot = vec![0u64; kprime];
            for (i, &cf) in alpha_ring.coeffs().iter().enumerate() {
                rot[(i + s) % kprime] = cf;
            }
            rot
        })
        .collect();

    let mut enumerated = 0u64;
    let mut product = vec![0u64; kprime];
    for w in 1..c as usize {
        if w >= kprime {
            break;
        }
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut coeffs = vec![1u64; w];
            loop {
                enumerated += 1;
                for p in product.iter_mut() {
                    *p = 0;
                }
                for (i, &s) in support.iter().enumerate() {
                    let cf = coeffs[i];
                    for (j, &r) in rotations[s].iter().enumerate() {
                        if r != 0 {
                            product[j] = field.add(product[j], field.mul(cf, r));
                        }
                    }
                }
                let pw = match mode {
                    CertifyMode::RateHalf => hamming_weight(&product),
                    CertifyMode::Punctured => prefix_weight(&product, limit),
                };
                let low = c as i64 - w as i64;
                let high = limit as i64 - low;
                if (pw as i64) < low || (pw as i64) > high {
                    return Ok(Certificate {
                        c,
                        mode,
                        enumerated,
                        outcome: CertOutcome::Fail(CertWitness {
                            support: support.clone(),
                            coeffs: coeffs.clone(),
                            product_weight: pw,
                            required_low: low,
                            required_high: high,
                        }),
                    });
                }
                if !advance_pattern(&mut coeffs, q) {
                    break;
                }
            }
            if !advance_combination(&mut support, kprime) {
                break;
            }
        }
    }
    Ok(Certificate {
        c,
        mode,
        enumerated,
        outcome: CertOutcome::Pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    /// Follows from the combinatorial claims (the construction theorem).
    Claims,
    /// Established by certify_distance enumeration.
    Enumeration,
}

impl std::fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundMethod::Claims => write!(f, "claims"),
            BoundMethod::Enumeration => write!(f, "enumeration"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedBound {
    pub bound: u64,
    pub method: BoundMethod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disproof {
    pub threshold: u64,
    pub weight: u64,
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceReport {
    /// Attached by callers that also ran a certificate or hold a theorem
    /// bound; when exact_distance is present too, bound <= exact.
    pub certified_lower_bound: Option<CertifiedBound>,
    pub exact_distance: Option<u64>,
    /// Minimum-weight message, smallest integer code among the minima.
    pub witness: Option<Vec<u64>>,
    /// Present when an early-exit threshold was disproved; the search then
    /// stopped before establishing the exact distance.
    pub disproof: Option<Disproof>,
    /// Messages examined.
    pub search_space: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: u64,
    /// Stop at the first codeword of weight below this threshold.
    pub prove_at_least: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            prove_at_least: None,
        }
    }
}

struct ScanOutcome {
    min_weight: u32,
    min_code: u64,
    examined: u64,
    /// First threshold violation in this chunk's enumeration order.
    violation: Option<(u64, u32)>,
}

/// q = 2 engine: check rows are bitmasks, messages step in Gray-code order
/// so each step is one XOR and two popcounts. The minimum and its witness
/// are key-compared as (weight, message code), which matches what a naive
/// ascending-code loop reports.
fn scan_bits(rows: &[u64], lo: u64, hi: u64, prove: Option<u32>) -> ScanOutcome {
    let mut msg = lo ^ (lo >> 1);
    let mut check = 0u64;
    let mut m = msg;
    while m != 0 {
        check ^= rows[m.trailing_zeros() as usize];
        m &= m - 1;
    }
    let mut out = ScanOutcome {
        min_weight: u32::MAX,
        min_code: u64::MAX,
        examined: 0,
        violation: None,
    };
    for code in lo..hi {
        if code != lo {
            let flip = code.trailing_zeros() as usize;
            msg ^= 1u64 << flip;
            check ^= rows[flip];
        }
        let w = msg.count_ones() + check.count_ones();
        out.examined += 1;
        if w < out.min_weight || (w == out.min_weight && msg < out.min_code) {
            out.min_weight = w;
            out.min_code = msg;
        }
        if let Some(t) = prove {
            if w < t {
                out.violation = Some((msg, w));
                break;
            }
        }
    }
    out
}

/// Generic engine: base-q odometer over message codes with incremental
/// check-block updates. One digit change costs O(kept) field operations.
fn scan_generic(
    field: &FieldDesc,
    rows: &[Vec<u64>],
    k: usize,
    kept: usize,
    lo: u64,
    hi: u64,
    prove: Option<u32>,
) -> ScanOutcome {
    let q = field.order();
    let mut digits = vec![0u64; k];
    let mut c = lo;
    for d in digits.iter_mut() {
        *d = c % q;
        c /= q;
    }
    let mut check = vec![0u64; kept];
    for (i, &di) in digits.iter().enumerate() {
        if di == 0 {
            continue;
        }
        for j in 0..kept {
            check[j] = field.add(check[j], field.mul(di, rows[i][j]));
        }
    }
    let mut wt_msg = digits.iter().filter(|&&d| d != 0).count() as u32;
    let mut wt_chk = check.iter().filter(|&&c| c != 0).count() as u32;

    let mut out = ScanOutcome {
        min_weight: u32::MAX,
        min_code: u64::MAX,
        examined: 0,
        violation: None,
    };
    for code in lo..hi {
        if code != lo {
            // increment the base-q odometer, updating weights in place
            let mut i = 0;
            loop {
                let old = digits[i];
                let new = if old + 1 == q { 0 } else { old + 1 };
                digits[i] = new;
                let delta = field.sub(new, old);
                for j in 0..kept {
                    let prev = check[j];
                    let next = field.add(prev, field.mul(delta, rows[i][j]));
                    wt_chk += u32::from(next != 0);
                    wt_chk -= u32::from(prev != 0);
                    check[j] = next;
                }
                wt_msg += u32::from(new != 0);
                wt_msg -= u32::from(old != 0);
                if new != 0 {
                    break;
                }
                i += 1;
            }
        }
        let w = wt_msg + wt_chk;
        out.examined += 1;
        if w < out.min_weight || (w == out.min_weight && code < out.min_code) {
            out.min_weight = w;
            out.min_code = code;
        }
        if let Some(t) = prove {
            if w < t {
                out.violation = Some((code, w));
                break;
            }
        }
    }
    out
}

fn decode_message(code: u64, q: u64, k: usize) -> Vec<u64> {
    let mut digits = vec![0u64; k];
    let mut c = code;
    for d in digits.iter_mut() {
        *d = c % q;
        c /= q;
    }
    digits
}

fn check_rows(params: &CodeParams, alpha: &[u64]) -> Result<Vec<Vec<u64>>, Error> {
    let ring = params.ring()?;
    ring.from_prefix(alpha)?;
    let mut rows = Vec::with_capacity(params.k);
    let mut basis = vec![0u64; params.k];
    for i in 0..params.k {
        basis[i] = 1;
        let cw = encode_in_ring(&ring, alpha, &basis, params.kept);
        rows.push(cw[params.k..].to_vec());
        basis[i] = 0;
    }
    Ok(rows)
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    // codes 1..=total, split deterministically
    let chunks = if total <= CHUNK_THRESHOLD {
        1
    } else {
        NUM_CHUNKS
    };
    (0..chunks)
        .map(|i| {
            let lo = 1 + ((total as u128 * i as u128) / chunks as u128) as u64;
            let hi = 1 + ((total as u128 * (i + 1) as u128) / chunks as u128) as u64;
            (lo, hi)
        })
        .filter(|(lo, hi)| lo < hi)
        .collect()
}

fn run_scan(
    field: &FieldDesc,
    rows: &[Vec<u64>],
    k: usize,
    kept: usize,
    total: u64,
    prove: Option<u32>,
) -> ScanOutcome {
    let q = field.order();
    let use_bits = q == 2 && k <= 63 && kept <= 64;
    let bit_rows: Vec<u64> = if use_bits {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &c)| acc | (c << j))
            })
            .collect()
    } else {
        Vec::new()
    };
    let outcomes: Vec<ScanOutcome> = chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            if use_bits {
                scan_bits(&bit_rows, lo, hi, prove)
            } else {
                scan_generic(field, rows, k, kept, lo, hi, prove)
            }
        })
        .collect();
    let mut merged = ScanOutcome {
        min_weight: u32::MAX,
        min_code: u64::MAX,
        examined: 0,
        violation: None,
    };
    for o in outcomes {
        merged.examined += o.examined;
        if o.min_weight < merged.min_weight
            || (o.min_weight == merged.min_weight && o.min_code < merged.min_code)
        {
            merged.min_weight = o.min_weight;
            merged.min_code = o.min_code;
        }
        if merged.violation.is_none() {
            merged.violation = o.violation;
        }
    }
    merged
}

/// Scans every nonzero message and returns the minimum codeword weight,
/// with the smallest-code witness. With `prove_at_least`, each chunk stops
/// at its first violation and the report carries a disproof instead of an
/// exact value.
pub fn exact_min_distance(
    params: &CodeParams,
    alpha: &[u64],
    options: SearchOptions,
) -> Result<DistanceReport, Error> {
    let start = Instant::now();
    let space = (params.q as u128).pow(params.k as u32);
    let nonzero = space - 1;
    if nonzero > options.budget as u128 {
        return Err(AnalysisError::BudgetExceeded {
            required: nonzero,
            budget: options.budget,
        }
        .into());
    }
    let field = params.field()?;
    let rows = check_rows(params, alpha)?;
    let prove = options.prove_at_least.map(|t| t as u32);
    let outcome = run_scan(&field, &rows, params.k, params.kept, nonzero as u64, prove);

    let report = if let Some((code, weight)) = outcome.violation {
        DistanceReport {
            certified_lower_bound: None,
            exact_distance: None,
            witness: None,
            disproof: Some(Disproof {
                threshold: options.prove_at_least.expect("violation implies threshold"),
                weight: weight as u64,
                witness: decode_message(code, params.q, params.k),
            }),
            search_space: outcome.examined,
            elapsed: start.elapsed(),
        }
    } else {
        DistanceReport {
            certified_lower_bound: None,
            exact_distance: Some(outcome.min_weight as u64),
            witness: Some(decode_message(outcome.min_code, params.q, params.k)),
            disproof: None,
            search_space: outcome.examined,
            elapsed: start.elapsed(),
        }
    };
    Ok(report)
}

/// Histogram of codeword weights over the whole message space, zero
/// included.
pub fn weight_distribution(
    params: &CodeParams,
    alpha: &[u64],
    budget: u64,
) -> Result<BTreeMap<usize, u64>, Error> {
    let space = (params.q as u128).pow(params.k as u32);
    if space > budget as u128 {
        return Err(AnalysisError::BudgetExceeded {
            required: space,
            budget,
        }
        .into());
    }
    let field = params.field()?;
    let rows = check_rows(params, alpha)?;
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    let q = field.order();
    let k = params.k;
    let kept = params.kept;
    if q == 2 && k <= 63 && kept <= 64 {
        let bit_rows: Vec<u64> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &c)| acc | (c << j))
            })
            .collect();
        let mut msg = 0u64;
        let mut check = 0u64;
        for code in 0..space as u64 {
            if code != 0 {
                let flip = code.trailing_zeros() as usize;
                msg ^= 1u64 << flip;
                check ^= bit_rows[flip];
            }
            *hist
                .entry((msg.count_ones() + check.count_ones()) as usize)
                .or_insert(0) += 1;
        }
    } else {
        let mut digits = vec![0u64; k];
        let mut check = vec![0u64; kept];
        for code in 0..space as u64 {
            if code != 0 {
                let mut i = 0;
                loop {
                    let old = digits[i];
                    let new = if old + 1 == q { 0 } else { old + 1 };
                    digits[i] = new;
                    let delta = field.sub(new, old);
                    for j in 0..kept {
                        check[j] = field.add(check[j], field.mul(delta, rows[i][j]));
                    }
                    if new != 0 {
                        break;
                    }
                    i += 1;
                }
            }
            let w = digits.iter().filter(|&&d| d != 0).count()
                + check.iter().filter(|&&c| c != 0).count();
            *hist.entry(w).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GvReport {
    pub q: u64,
    pub n: usize,
    pub rate: f64,
    /// h_q^(-1)(1 - rate), found by bisection.
    pub delta: f64,
    /// delta * n: the weight a GV-meeting code of this length would reach.
    pub gv_distance: f64,
}

/// q-ary entropy h_q(x) = x log_q(q-1) - x log_q(x) - (1-x) log_q(1-x).
pub fn entropy_q(q: u64, x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let qf = q as f64;
    let logq = |v: f64| v.ln() / qf.ln();
    x * logq(qf - 1.0) - x * logq(x) - (1.0 - x) * logq(1.0 - x)
}

/// Inverts the entropy on [0, 1 - 1/q] by bisection to 1e-9.
pub fn gv_report(q: u64, n: usize, rate: f64) -> GvReport {
    assert!(rate > 0.0 && rate < 1.0, "rate must be in (0,1)");
    let target = 1.0 - rate;
    let mut lo = 0.0f64;
    let mut hi = 1.0 - 1.0 / q as f64;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if entropy_q(q, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = 0.5 * (lo + hi);
    GvReport {
        q,
        n,
        rate,
        delta,
        gv_distance: delta * n as f64,
    }
}
