//! Dense univariate polynomial arithmetic over a `FieldDesc`.
//!
//! Coefficients are field codes, low-degree first. The zero polynomial is
//! the empty vector, so `len() - 1` is always the degree of a trimmed
//! nonzero polynomial.

use crate::galois::FieldDesc;

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[cfg(test)]
pub(crate) fn add(fd: &FieldDesc, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = fd.add(x, y);
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(fd: &FieldDesc, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = fd.sub(x, y);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(fd: &FieldDesc, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            out[i + j] = fd.add(out[i + j], fd.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` by `m`, which must have a unit leading coefficient.
pub(crate) fn rem(fd: &FieldDesc, a: &[u64], m: &[u64]) -> Vec<u64> {
    assert!(!m.is_empty(), "division by the zero polynomial");
    let lead_inv = fd.inv(*m.last().unwrap()).expect("unit leading coefficient");
    let deg_m = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > deg_m {
        let factor = fd.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - deg_m;
        for (t, &mc) in m.iter().enumerate() {
            let sub = fd.mul(factor, mc);
            r[shift + t] = fd.sub(r[shift + t], sub);
        }
        trim(&mut r);
    }
    r
}

/// Monic greatest common divisor.
pub(crate) fn gcd(fd: &FieldDesc, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(fd, &x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = fd.inv(lead).expect("nonzero leading coefficient");
        for c in x.iter_mut() {
            *c = fd.mul(*c, inv);
        }
    }
    x
}

/// `base^exp mod m` by square-and-multiply.
pub(crate) fn pow_mod(fd: &FieldDesc, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut result = rem(fd, &[1], m);
    let mut acc = rem(fd, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = rem(fd, &mul(fd, &result, &acc), m);
        }
        acc = rem(fd, &mul(fd, &acc, &acc), m);
        exp >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldDesc;

    #[test]
    fn rem_small_cases() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        // x^2 mod (x^2 + x + 1) = x + 1
        assert_eq!(rem(&f2, &[0, 0, 1], &[1, 1, 1]), vec![1, 1]);
        // (x^3 + 1) mod (x + 1) = 0 over F_2
        assert_eq!(rem(&f2, &[1, 0, 0, 1], &[1, 1]), Vec::<u64>::new());
    }

    #[test]
    fn gcd_detects_shared_factor() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        // (x+1)(x+2) = x^2 + 2 over F_3, shares (x+1) with (x+1)^2 = x^2+2x+1
        let g = gcd(&f3, &[2, 0, 1], &[1, 2, 1]);
        assert_eq!(g, vec![1, 1]);
        // coprime pair
        assert_eq!(gcd(&f3, &[1, 1], &[2, 1]).len(), 1);
    }

    #[test]
    fn pow_mod_fermat() {
        // x^4 = x mod any irreducible quadratic over F_2
        let f2 = FieldDesc::new(2, 1).unwrap();
        assert_eq!(pow_mod(&f2, &[0, 1], 4, &[1, 1, 1]), vec![0, 1]);
    }

    #[test]
    fn mul_then_divide_round_trip() {
        let f5 = FieldDesc::new(5, 1).unwrap();
        let a = vec![1, 2, 3];
        let b = vec![4, 0, 0, 1];
        let prod = mul(&f5, &a, &b);
        assert_eq!(rem(&f5, &prod, &b), Vec::<u64>::new());
        let shifted = add(&f5, &prod, &[2]);
        assert_eq!(rem(&f5, &shifted, &b), vec![2]);
    }
}
