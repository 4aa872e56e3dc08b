//! Exact arithmetic in prime fields F_p and extension fields F_{p^e}.
//!
//! Elements are canonical integer codes in `[0, q)`: the element
//! `sum c_i t^i` over the monomial basis encodes as `sum c_i p^i`.
//! Extension fields use the lexicographically smallest monic irreducible
//! modulus (coefficients compared low-degree first), so every field of a
//! given order is bit-identical across runs.

use thiserror::Error;

use crate::poly;

/// Largest supported field order. Group orders beyond this are rejected
/// rather than risking silent overflow in `u64` products.
pub const MAX_ORDER: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{e} exceeds the supported maximum 2^31")]
    OrderTooLarge { p: u64, e: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0} is not a unit")]
    NotAUnit(u64),
    #[error("code {code} is out of range for a field of order {q}")]
    CodeOutOfRange { code: u64, q: u64 },
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Prime factorization with multiplicity, ascending. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<u64> {
    assert!(n >= 1 && n <= 1 << 40, "factorize argument out of range");
    let mut n = n;
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        while n % f == 0 {
            out.push(f);
            n /= f;
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow_mod_u64(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus <= MAX_ORDER, "modulus out of range");
    let mut result = 1u64 % modulus;
    let mut base = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    result
}

/// Least `d >= 1` with `g^d = 1` in a group of order `group_order`,
/// found by stripping prime factors from the group order.
fn order_from_group<F: Fn(u64) -> bool>(group_order: u64, is_one_at: F) -> u64 {
    let mut d = group_order;
    let mut factors = factorize(group_order);
    factors.dedup();
    for ell in factors {
        while d % ell == 0 && is_one_at(d / ell) {
            d /= ell;
        }
    }
    d
}

/// Multiplicative order of `g` modulo a prime `modulus`.
pub fn multiplicative_order_mod_prime(g: u64, modulus: u64) -> Result<u64, GaloisError> {
    if !is_prime(modulus) {
        return Err(GaloisError::NotPrime(modulus));
    }
    let g = g % modulus;
    if g == 0 {
        return Err(GaloisError::NotAUnit(g));
    }
    Ok(order_from_group(modulus - 1, |e| {
        pow_mod_u64(g, e, modulus) == 1
    }))
}

/// A finite field F_{p^e} with its canonical modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDesc {
    p: u64,
    e: u32,
    /// Monic modulus of degree `e`, low-degree first; empty when `e == 1`.
    modulus: Vec<u64>,
    q: u64,
}

impl FieldDesc {
    /// Constructs F_{p^e}. For `e > 1` the modulus is the lexicographically
    /// smallest monic irreducible of degree `e` over F_p.
    pub fn new(p: u64, e: u32) -> Result<Self, GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if e == 0 {
            return Err(GaloisError::OrderTooLarge { p, e });
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(p)
                .filter(|&v| v <= MAX_ORDER)
                .ok_or(GaloisError::OrderTooLarge { p, e })?;
        }
        let modulus = if e == 1 {
            Vec::new()
        } else {
            Self::canonical_modulus(p, e)
        };
        Ok(FieldDesc { p, e, modulus, q })
    }

    /// Lex-min search: candidate low coefficients (c_0, ..., c_{e-1}) are
    /// ordered with c_0 as the most significant comparison key.
    fn canonical_modulus(p: u64, e: u32) -> Vec<u64> {
        let base = FieldDesc {
            p,
            e: 1,
            modulus: Vec::new(),
            q: p,
        };
        let e = e as usize;
        let mut low = vec![0u64; e];
        loop {
            let mut candidate = low.clone();
            candidate.push(1);
            if rabin_irreducible(&base, &candidate) {
                return candidate;
            }
            // odometer with the highest-degree coefficient fastest
            let mut i = e;
            loop {
                assert!(i > 0, "no irreducible of degree {e} over F_{p}");
                i -= 1;
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low-degree first; empty for prime fields.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn element(&self, code: u64) -> Result<FieldElement, GaloisError> {
        if code >= self.q {
            return Err(GaloisError::CodeOutOfRange { code, q: self.q });
        }
        Ok(FieldElement {
            code,
            field: self.clone(),
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            code: 0,
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            code: 1 % self.q,
            field: self.clone(),
        }
    }

    fn decode(&self, code: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.e as usize];
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let mut c = 0u64;
        for &d in digits.iter().rev() {
            c = c * self.p + d;
        }
        c
    }

    /// Sum of two element codes. Codes must be `< q`.
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    /// Difference `a - b` of two element codes.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.e == 1 {
            return (a + self.p - b) % self.p;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let diff: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        self.encode(&diff)
    }

    /// Product of two element codes.
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.q && b < self.q);
        if self.e == 1 {
            return a * b % self.p;
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus, top coefficient down
        for idx in (e..prod.len()).rev() {
            let c = prod[idx];
            if c == 0 {
                continue;
            }
            prod[idx] = 0;
            for t in 0..e {
                let sub = c * self.modulus[t] % self.p;
                prod[idx - e + t] = (prod[idx - e + t] + self.p - sub) % self.p;
            }
        }
        self.encode(&prod[..e])
    }

    /// `a^n` by square-and-multiply.
    pub fn pow(&self, a: u64, mut n: u64) -> u64 {
        let mut result = 1 % self.q;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        result
    }

    /// Multiplicative inverse of a nonzero code.
    pub fn inv(&self, a: u64) -> Result<u64, GaloisError> {
        if a == 0 {
            return Err(GaloisError::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero code.
    pub fn element_order(&self, a: u64) -> Result<u64, GaloisError> {
        if a == 0 {
            return Err(GaloisError::NotAUnit(a));
        }
        if self.q == 2 {
            return Ok(1);
        }
        Ok(order_from_group(self.q - 1, |e| self.pow(a, e) == 1))
    }

    /// The element with the smallest integer code whose order is `q - 1`.
    /// For F_2 the trivial group makes code 1 the conventional answer.
    pub fn primitive_root(&self) -> FieldElement {
        if self.q == 2 {
            return self.one();
        }
        for code in 1..self.q {
            if self.element_order(code).expect("nonzero code") == self.q - 1 {
                return FieldElement {
                    code,
                    field: self.clone(),
                };
            }
        }
        unreachable!("every finite field has a primitive root")
    }
}

/// Rabin test: `f` of degree `e` is irreducible over F_p iff
/// `x^(p^e) = x (mod f)` and `gcd(x^(p^(e/l)) - x, f) = 1` for each prime `l | e`.
fn rabin_irreducible(base: &FieldDesc, f: &[u64]) -> bool {
    let p = base.characteristic();
    let e = (f.len() - 1) as u64;
    let x = vec![0, 1];
    // frobenius[j] = x^(p^(j+1)) mod f
    let mut frobenius = Vec::with_capacity(e as usize);
    let mut t = poly::rem(base, &x, f);
    for _ in 0..e {
        t = poly::pow_mod(base, &t, p, f);
        frobenius.push(t.clone());
    }
    if poly::sub(base, &frobenius[e as usize - 1], &x) != Vec::<u64>::new() {
        return false;
    }
    let mut prime_divisors = factorize(e);
    prime_divisors.dedup();
    for ell in prime_divisors {
        let diff = poly::sub(base, &frobenius[(e / ell) as usize - 1], &x);
        if poly::gcd(base, &diff, f).len() != 1 {
            return false;
        }
    }
    true
}

/// An element of a specific field, carrying its field identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    code: u64,
    field: FieldDesc,
}

impl FieldElement {
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check_same_field(&self, rhs: &FieldElement) -> Result<(), GaloisError> {
        if self.field != rhs.field {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.check_same_field(rhs)?;
        Ok(FieldElement {
            code: self.field.add(self.code, rhs.code),
            field: self.field.clone(),
        })
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.check_same_field(rhs)?;
        Ok(FieldElement {
            code: self.field.sub(self.code, rhs.code),
            field: self.field.clone(),
        })
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement, GaloisError> {
        self.check_same_field(rhs)?;
        Ok(FieldElement {
            code: self.field.mul(self.code, rhs.code),
            field: self.field.clone(),
        })
    }

    pub fn inv(&self) -> Result<FieldElement, GaloisError> {
        Ok(FieldElement {
            code: self.field.inv(self.code)?,
            field: self.field.clone(),
        })
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        FieldElement {
            code: self.field.pow(self.code, n),
            field: self.field.clone(),
        }
    }

    pub fn multiplicative_order(&self) -> Result<u64, GaloisError> {
        self.field.element_order(self.code)
    }
}
