//! Bose-Chowla Sidon sets and the window-count bounds they obey.
//!
//! A Sidon set modulo n has all pairwise differences of distinct elements
//! distinct mod n. The Bose-Chowla construction produces a p-element Sidon
//! set modulo p^2 - 1 from a primitive root of F_{p^2}: exactly the index
//! sets whose shifted copies meet message supports almost always in at most
//! one point, which is what the distance argument needs.

use std::collections::HashMap;

use thiserror::Error;

use crate::galois::{is_prime, FieldDesc, GaloisError};

/// Slack for comparing integer counts against real-valued bounds; applied
/// in the direction that widens the admissible interval.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SidonError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("no prime strictly below {0}")]
    NoPrime(f64),
    #[error("window length {m} not in 1..={k}")]
    BadWindow { m: usize, k: usize },
    #[error("set with modulus {modulus} is too long for ring degree {kprime} (need modulus <= k'-2)")]
    WindowPrecondition { modulus: u64, kprime: usize },
    #[error("window count {count} escapes [{lower}, {upper}]")]
    BoundViolation {
        count: usize,
        lower: f64,
        upper: f64,
    },
}

/// Two ordered pairs of set elements with the same difference mod n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonViolation {
    pub first: (u64, u64),
    pub second: (u64, u64),
    pub difference: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonSet {
    /// Prime order parameter: the set has exactly p elements.
    pub p: u64,
    /// Differences are distinct modulo p^2 - 1.
    pub modulus: u64,
    /// Strictly increasing, each in [1, p^2 - 2].
    pub elements: Vec<u64>,
    /// Code of the primitive root of F_{p^2} used to build the set;
    /// absent when the set was loaded from a file.
    pub generator_code: Option<u64>,
}

/// Largest prime strictly less than `x`.
pub fn largest_prime_below(x: f64) -> Result<u64, SidonError> {
    if !(x > 2.0) {
        return Err(SidonError::NoPrime(x));
    }
    let mut n = x.ceil() as u64;
    while n >= 2 {
        if (n as f64) < x && is_prime(n) {
            return Ok(n);
        }
        n -= 1;
    }
    Err(SidonError::NoPrime(x))
}

/// The Bose-Chowla set {i in [1, p^2-2] : g^i + g^(p*i) = 1} for the
/// canonical primitive root g of F_{p^2}. Deterministic because both the
/// field modulus and g are canonical.
pub fn bose_chowla(p: u64) -> Result<SidonSet, SidonError> {
    let field = FieldDesc::new(p, 2)?;
    let g = field.primitive_root().code();
    let n = p * p - 1;
    let g_p = field.pow(g, p);
    let mut elements = Vec::with_capacity(p as usize);
    // g^i and g^(p*i) advance incrementally: O(p^2) multiplications total
    let mut gi = 1u64;
    let mut gpi = 1u64;
    for i in 1..n {
        gi = field.mul(gi, g);
        gpi = field.mul(gpi, g_p);
        if field.add(gi, gpi) == 1 {
            elements.push(i);
        }
    }
    assert_eq!(elements.len() as u64, p, "Bose-Chowla set must have p elements");
    Ok(SidonSet {
        p,
        modulus: n,
        elements,
        generator_code: Some(g),
    })
}

/// Checks that all ordered pairwise differences of distinct elements are
/// distinct mod `modulus`; the first collision (in index order) is returned.
pub fn verify_sidon(elements: &[u64], modulus: u64) -> Result<(), SidonViolation> {
    let mut seen: HashMap<u64, (u64, u64)> = HashMap::new();
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            if i == j {
                continue;
            }
            let diff = (a % modulus + modulus - b % modulus) % modulus;
            if let Some(&(x, y)) = seen.get(&diff) {
                return Err(SidonViolation {
                    first: (x, y),
                    second: (a, b),
                    difference: diff,
                });
            }
            seen.insert(diff, (a, b));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowBounds {
    /// |{a in A : (s + a) mod k' < m}|
    pub count: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Counts the elements of the shifted set (s + A) mod k' that land in the
/// window [0, m), and checks the count against
/// d - (sqrt(k-m) + (k-m)^(1/4) + 2) <= count <= sqrt(m) + m^(1/4) + 1.
/// Both bounds come from the Lindstrom order bound applied to the pieces of
/// A inside and outside the window.
pub fn window_count_bounds(
    set: &SidonSet,
    s: u64,
    m: usize,
    kprime: usize,
) -> Result<WindowBounds, SidonError> {
    let k = kprime - 1;
    if m == 0 || m > k {
        return Err(SidonError::BadWindow { m, k });
    }
    // the proof slices A by consecutive residues, so A must fit below k'-1
    if set.modulus > (k - 1) as u64 {
        return Err(SidonError::WindowPrecondition {
            modulus: set.modulus,
            kprime,
        });
    }
    let count = set
        .elements
        .iter()
        .filter(|&&a| ((s + a) % kprime as u64) < m as u64)
        .count();
    let d = set.p as f64;
    let out = (k - m) as f64;
    let lower = d - (out.sqrt() + out.powf(0.25) + 2.0);
    let mwin = m as f64;
    let upper = mwin.sqrt() + mwin.powf(0.25) + 1.0;
    let c = count as f64;
    if c < lower - BOUND_SLACK || c > upper + BOUND_SLACK {
        return Err(SidonError::BoundViolation {
            count,
            lower,
            upper,
        });
    }
    Ok(WindowBounds {
        count,
        lower,
        upper,
    })
}
