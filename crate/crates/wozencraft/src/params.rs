//! Code parameter discovery and validation.
//!
//! A valid configuration needs a prime k' with q a primitive root mod k',
//! which makes the all-ones polynomial p(x) of degree k'-1 irreducible over
//! F_q and realizes F_{q^k} with k = k'-1. On top of that sit a Sidon prime
//! d (largest prime below sqrt(k)), the Bose-Chowla set of order d, the
//! alpha coefficient vector, and the puncturing choice.

use num_rational::Ratio;
use thiserror::Error;

use crate::cyclic::CyclicRing;
use crate::galois::{
    factorize, is_prime, multiplicative_order_mod_prime, FieldDesc, GaloisError,
};
use crate::poly;
use crate::sidon::{verify_sidon, SidonSet, SidonViolation};

/// Artin-prime search scans candidates up to `k_min` times this factor
/// unless an explicit cap is given.
pub const ARTIN_CAP_MULTIPLIER: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("search floor k_min = {0} must be at least 2")]
    BadSearchFloor(u64),
    #[error("no prime k' in ({k_min}, {cap}] has {q} as a primitive root")]
    SearchExhausted { q: u64, k_min: u64, cap: u64 },
    #[error("k' = {0} is not prime")]
    KprimeNotPrime(u64),
    #[error("q = {q} and k' = {kprime} are not coprime")]
    NotCoprime { q: u64, kprime: u64 },
    #[error("order of {q} mod {kprime} is {order}, not k'-1 = {expected}")]
    WrongOrder {
        q: u64,
        kprime: u64,
        order: u64,
        expected: u64,
    },
    #[error("k = {k} does not match k' - 1 = {expected}")]
    WrongK { k: usize, expected: u64 },
    #[error("Sidon order d = {d} is not prime")]
    DNotPrime { d: u64 },
    #[error("Sidon order d = {d} with d^2 > k = {k}")]
    DTooLarge { d: u64, k: usize },
    #[error("Sidon prime field mismatch: d = {d} but set has p = {p}")]
    DMismatch { d: u64, p: u64 },
    #[error("Sidon modulus {got}, expected d^2 - 1 = {expected}")]
    SidonModulusMismatch { got: u64, expected: u64 },
    #[error("Sidon set has {got} elements, expected {expected}")]
    SidonSizeMismatch { got: usize, expected: u64 },
    #[error("Sidon elements must be strictly increasing in [1, {max}]; found {element}")]
    SidonElementRange { element: u64, max: u64 },
    #[error("Sidon property fails: {0:?}")]
    NotSidon(SidonViolation),
    #[error("alpha has {got} coefficients, expected k = {expected}")]
    AlphaLength { got: usize, expected: usize },
    #[error("alpha must be a nonzero vector")]
    AlphaZero,
    #[error("alpha coefficient {value} at index {index} is out of range for q = {q}")]
    AlphaSymbolRange { index: usize, value: u64, q: u64 },
    #[error("kept = {kept} not in 1..={k}")]
    KeptOutOfRange { kept: usize, k: usize },
    #[error("stated rate {stated} differs from k/(k+kept) = {derived}")]
    RateMismatch {
        stated: Ratio<u64>,
        derived: Ratio<u64>,
    },
}

/// The field F_q for a prime-power order q.
pub fn field_from_order(q: u64) -> Result<FieldDesc, ParamsError> {
    if q < 2 {
        return Err(ParamsError::NotPrimePower(q));
    }
    let factors = factorize(q);
    let p = factors[0];
    if factors.iter().any(|&f| f != p) {
        return Err(ParamsError::NotPrimePower(q));
    }
    Ok(FieldDesc::new(p, factors.len() as u32)?)
}

/// Smallest prime k' > k_min with q a primitive root mod k'. The search is
/// capped (Artin's conjecture is assumed, not proven) and failure is
/// explicit.
pub fn find_artin_prime(q: u64, k_min: u64, cap: Option<u64>) -> Result<u64, ParamsError> {
    field_from_order(q)?;
    if k_min < 2 {
        return Err(ParamsError::BadSearchFloor(k_min));
    }
    let cap = cap.unwrap_or_else(|| k_min.saturating_mul(ARTIN_CAP_MULTIPLIER));
    for n in (k_min + 1)..=cap {
        if !is_prime(n) || q % n == 0 {
            continue;
        }
        if multiplicative_order_mod_prime(q, n)? == n - 1 {
            return Ok(n);
        }
    }
    Err(ParamsError::SearchExhausted { q, k_min, cap })
}

/// The all-ones polynomial 1 + x + ... + x^(k'-1), as its coefficient
/// vector. Its coefficients are the code 1 in every F_q.
pub fn cyclotomic_modulus(kprime: usize) -> Vec<u64> {
    assert!(kprime >= 2, "modulus degree must be at least 1");
    vec![1; kprime]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    /// Order of q mod k' equals k' - 1.
    Irreducible { order: u64 },
    /// The witness is the (too small) multiplicative order of q mod k'.
    Reducible { witness_order: u64 },
}

/// Decides irreducibility of the all-ones polynomial over F_q by the
/// primitive-root criterion: irreducible iff ord_{k'}(q) = k' - 1.
/// At small sizes this is cross-checked against the order of x in
/// F_q[x]/(p(x)), which must be exactly k' whenever the verdict is
/// irreducible.
pub fn verify_irreducible(q: u64, kprime: u64) -> Result<IrreducibilityVerdict, ParamsError> {
    if !is_prime(kprime) {
        return Err(ParamsError::KprimeNotPrime(kprime));
    }
    if q % kprime == 0 {
        return Err(ParamsError::NotCoprime { q, kprime });
    }
    let order = multiplicative_order_mod_prime(q, kprime)?;
    let verdict = if order == kprime - 1 {
        IrreducibilityVerdict::Irreducible { order }
    } else {
        IrreducibilityVerdict::Reducible {
            witness_order: order,
        }
    };
    if kprime <= 64 {
        let fd = field_from_order(q)?;
        let p_poly = cyclotomic_modulus(kprime as usize);
        let x = [0u64, 1];
        // x^k' = 1 holds in F_q[x]/(p) regardless of irreducibility, since
        // p(x) divides x^k' - 1
        assert_eq!(poly::pow_mod(&fd, &x, kprime, &p_poly), vec![1]);
        if matches!(verdict, IrreducibilityVerdict::Irreducible { .. }) {
            let mut t = poly::rem(&fd, &x, &p_poly);
            for j in 1..kprime {
                assert_ne!(t, vec![1], "x^{j} = 1 contradicts irreducibility");
                t = poly::rem(&fd, &poly::mul(&fd, &t, &x), &p_poly);
            }
        }
    }
    Ok(verdict)
}

/// A complete, serializable code configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub q: u64,
    pub kprime: u64,
    pub k: usize,
    /// Sidon order: largest prime below sqrt(k).
    pub d: u64,
    pub sidon: SidonSet,
    /// Length-k coefficient vector of alpha, low-degree first.
    pub alpha: Vec<u64>,
    /// Number of retained check coordinates; k for rate 1/2.
    pub kept: usize,
}

impl CodeParams {
    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.k as u64, (self.k + self.kept) as u64)
    }

    /// Codeword length.
    pub fn n(&self) -> usize {
        self.k + self.kept
    }

    pub fn field(&self) -> Result<FieldDesc, ParamsError> {
        field_from_order(self.q)
    }

    pub fn ring(&self) -> Result<CyclicRing, ParamsError> {
        let field = self.field()?;
        Ok(CyclicRing::new(field, self.kprime as usize).expect("kprime >= 2"))
    }

    /// Re-checks every structural invariant. Called on every file load, so
    /// a tampered or inconsistent parameter file cannot reach the encoder.
    pub fn validate(&self) -> Result<(), ParamsError> {
        field_from_order(self.q)?;
        if !is_prime(self.kprime) {
            return Err(ParamsError::KprimeNotPrime(self.kprime));
        }
        if self.q % self.kprime == 0 {
            return Err(ParamsError::NotCoprime {
                q: self.q,
                kprime: self.kprime,
            });
        }
        if self.k as u64 != self.kprime - 1 {
            return Err(ParamsError::WrongK {
                k: self.k,
                expected: self.kprime - 1,
            });
        }
        let order = multiplicative_order_mod_prime(self.q, self.kprime)?;
        if order != self.kprime - 1 {
            return Err(ParamsError::WrongOrder {
                q: self.q,
                kprime: self.kprime,
                order,
                expected: self.kprime - 1,
            });
        }
        if !is_prime(self.d) {
            return Err(ParamsError::DNotPrime { d: self.d });
        }
        if self.d * self.d > self.k as u64 {
            return Err(ParamsError::DTooLarge {
                d: self.d,
                k: self.k,
            });
        }
        if self.sidon.p != self.d {
            return Err(ParamsError::DMismatch {
                d: self.d,
                p: self.sidon.p,
            });
        }
        let expected_modulus = self.d * self.d - 1;
        if self.sidon.modulus != expected_modulus {
            return Err(ParamsError::SidonModulusMismatch {
                got: self.sidon.modulus,
                expected: expected_modulus,
            });
        }
        if self.sidon.elements.len() as u64 != self.d {
            return Err(ParamsError::SidonSizeMismatch {
                got: self.sidon.elements.len(),
                expected: self.d,
            });
        }
        let max_element = expected_modulus - 1;
        let mut prev = 0u64;
        for &a in &self.sidon.elements {
            // prev starts at 0, so `a <= prev` also enforces a >= 1
            if a > max_element || a <= prev {
                return Err(ParamsError::SidonElementRange {
                    element: a,
                    max: max_element,
                });
            }
            prev = a;
        }
        verify_sidon(&self.sidon.elements, self.sidon.modulus).map_err(ParamsError::NotSidon)?;
        if self.alpha.len() != self.k {
            return Err(ParamsError::AlphaLength {
                got: self.alpha.len(),
                expected: self.k,
            });
        }
        for (index, &value) in self.alpha.iter().enumerate() {
            if value >= self.q {
                return Err(ParamsError::AlphaSymbolRange {
                    index,
                    value,
                    q: self.q,
                });
            }
        }
        if self.alpha.iter().all(|&c| c == 0) {
            return Err(ParamsError::AlphaZero);
        }
        if self.kept == 0 || self.kept > self.k {
            return Err(ParamsError::KeptOutOfRange {
                kept: self.kept,
                k: self.k,
            });
        }
        Ok(())
    }
}
