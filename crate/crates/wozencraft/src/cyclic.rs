//! The cyclic ring R = F_q[x]/(x^k' - 1) and the weight bookkeeping that
//! connects it to the extension field F_{q^k}.
//!
//! With k' prime and q a primitive root mod k', the all-ones polynomial
//! p(x) = 1 + x + ... + x^(k'-1) is irreducible, so R/(p) is a field with
//! k = k' - 1. Field elements are length-k coefficient prefixes; reducing a
//! ring element mod p just subtracts its top coefficient from the rest.

use thiserror::Error;

use crate::galois::FieldDesc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("ring modulus degree {0} is too small (need k' >= 2)")]
    DegreeTooSmall(usize),
    #[error("element has {got} coefficients, ring context expects {expected}")]
    ContextMismatch { got: usize, expected: usize },
    #[error("coefficient {value} at index {index} is out of range for order {q}")]
    BadCoefficient { index: usize, value: u64, q: u64 },
    #[error("truncation length {m} not in 1..={k}")]
    BadTruncation { m: usize, k: usize },
    #[error("prefix of length {got} does not fit below degree {kprime}")]
    PrefixTooLong { got: usize, kprime: usize },
    #[error("exponent {0} is not below the ring degree")]
    BadExponent(u64),
}

/// An element of R as its dense coefficient vector, low-degree first.
/// The vector length is the ring context k'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn kprime(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Indices of nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn hamming_weight(v: &[u64]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

/// Weight of the first `m` coordinates, on the raw vector.
pub fn prefix_weight(v: &[u64], m: usize) -> usize {
    hamming_weight(&v[..m.min(v.len())])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSummary {
    /// Nonzero count over all k' coefficients.
    pub wt_tilde: usize,
    /// Weight of the reduction mod p.
    pub wt: usize,
    /// Weight of the first m entries of the reduction, when m was given.
    pub wt_r: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicRing {
    field: FieldDesc,
    kprime: usize,
}

impl CyclicRing {
    pub fn new(field: FieldDesc, kprime: usize) -> Result<Self, CyclicError> {
        if kprime < 2 {
            return Err(CyclicError::DegreeTooSmall(kprime));
        }
        Ok(CyclicRing { field, kprime })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn kprime(&self) -> usize {
        self.kprime
    }

    /// Dimension of the residue field: k = k' - 1.
    pub fn k(&self) -> usize {
        self.kprime - 1
    }

    fn check_context(&self, f: &RingElement) -> Result<(), CyclicError> {
        if f.coeffs.len() != self.kprime {
            return Err(CyclicError::ContextMismatch {
                got: f.coeffs.len(),
                expected: self.kprime,
            });
        }
        Ok(())
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<RingElement, CyclicError> {
        if coeffs.len() != self.kprime {
            return Err(CyclicError::ContextMismatch {
                got: coeffs.len(),
                expected: self.kprime,
            });
        }
        for (index, &value) in coeffs.iter().enumerate() {
            if value >= self.field.order() {
                return Err(CyclicError::BadCoefficient {
                    index,
                    value,
                    q: self.field.order(),
                });
            }
        }
        Ok(RingElement { coeffs })
    }

    /// Embeds a low-degree coefficient prefix (such as a field element or a
    /// message vector) by zero-padding up to degree k' - 1.
    pub fn from_prefix(&self, prefix: &[u64]) -> Result<RingElement, CyclicError> {
        if prefix.len() > self.kprime {
            return Err(CyclicError::PrefixTooLong {
                got: prefix.len(),
                kprime: self.kprime,
            });
        }
        let mut coeffs = prefix.to_vec();
        coeffs.resize(self.kprime, 0);
        self.element(coeffs)
    }

    /// Sum of x^a over the given exponents, each with coefficient 1.
    pub fn from_support(&self, exponents: &[u64]) -> Result<RingElement, CyclicError> {
        let mut coeffs = vec![0u64; self.kprime];
        for &a in exponents {
            if a >= self.kprime as u64 {
                return Err(CyclicError::BadExponent(a));
            }
            coeffs[a as usize] = self.field.add(coeffs[a as usize], 1);
        }
        Ok(RingElement { coeffs })
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            coeffs: vec![0; self.kprime],
        }
    }

    pub fn one(&self) -> RingElement {
        let mut coeffs = vec![0; self.kprime];
        coeffs[0] = 1;
        RingElement { coeffs }
    }

    pub fn monomial(&self, j: usize) -> RingElement {
        assert!(j < self.kprime, "exponent beyond ring degree");
        let mut coeffs = vec![0; self.kprime];
        coeffs[j] = 1;
        RingElement { coeffs }
    }

    /// Cyclic convolution: coefficient j of the product collects every
    /// f_i * g_l with i + l = j (mod k').
    pub fn mul(&self, f: &RingElement, g: &RingElement) -> Result<RingElement, CyclicError> {
        self.check_context(f)?;
        self.check_context(g)?;
        let kp = self.kprime;
        let mut out = vec![0u64; kp];
        for (i, &x) in f.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (l, &y) in g.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let mut j = i + l;
                if j >= kp {
                    j -= kp;
                }
                out[j] = self.field.add(out[j], self.field.mul(x, y));
            }
        }
        Ok(RingElement { coeffs: out })
    }

    /// The image of f in the residue field, as a length-k coefficient vector:
    /// f mod p = f - b_k * p has entry i equal to b_i - b_k.
    pub fn reduce_mod_p(&self, f: &RingElement) -> Vec<u64> {
        debug_assert_eq!(f.coeffs.len(), self.kprime);
        let top = f.coeffs[self.kprime - 1];
        f.coeffs[..self.kprime - 1]
            .iter()
            .map(|&b| self.field.sub(b, top))
            .collect()
    }

    /// All three weights of f at once; `m` asks additionally for the weight
    /// of the first m coordinates of the reduction.
    pub fn weights(&self, f: &RingElement, m: Option<usize>) -> Result<WeightSummary, CyclicError> {
        self.check_context(f)?;
        if let Some(m) = m {
            if m == 0 || m > self.k() {
                return Err(CyclicError::BadTruncation { m, k: self.k() });
            }
        }
        let reduced = self.reduce_mod_p(f);
        Ok(WeightSummary {
            wt_tilde: hamming_weight(&f.coeffs),
            wt: hamming_weight(&reduced),
            wt_r: m.map(|m| prefix_weight(&reduced, m)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldDesc;
    use crate::poly;
    use crate::rng::XorShift64Star;

    fn ring(q: u64, e: u32, kprime: usize) -> CyclicRing {
        CyclicRing::new(FieldDesc::new(q, e).unwrap(), kprime).unwrap()
    }

    #[test]
    fn monomial_product_wraps() {
        // x^10 * (x^4 + x^5 + x^7) = x^14 + x^15 + x^17 = x^3 + x^4 + x^6
        let r = ring(2, 1, 11);
        let f = r.monomial(10);
        let g = r.from_support(&[4, 5, 7]).unwrap();
        let prod = r.mul(&f, &g).unwrap();
        assert_eq!(prod.support(), vec![3, 4, 6]);
    }

    #[test]
    fn multiplicative_identity_and_zero() {
        let r = ring(3, 1, 7);
        let f = r.element(vec![2, 0, 1, 1, 0, 2, 1]).unwrap();
        assert_eq!(r.mul(&f, &r.one()).unwrap(), f);
        assert_eq!(r.mul(&f, &r.zero()).unwrap(), r.zero());
    }

    #[test]
    fn reduction_subtracts_top_coefficient() {
        let r = ring(2, 1, 11);
        let f = r.from_support(&[0, 2, 10]).unwrap();
        let reduced = r.reduce_mod_p(&f);
        assert_eq!(reduced, vec![0, 1, 0, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(hamming_weight(&reduced), 8);

        // top coefficient zero leaves the prefix unchanged
        let g = r.from_support(&[1, 4]).unwrap();
        assert_eq!(r.reduce_mod_p(&g), g.coeffs()[..10].to_vec());

        // the modulus itself reduces to zero
        let p = r.from_support(&(0..11).collect::<Vec<_>>()).unwrap();
        assert_eq!(r.reduce_mod_p(&p), vec![0; 10]);
    }

    #[test]
    fn weight_summary() {
        let r = ring(2, 1, 11);
        let f = r.from_support(&[0, 2, 10]).unwrap();
        let w = r.weights(&f, None).unwrap();
        assert_eq!((w.wt_tilde, w.wt, w.wt_r), (3, 8, None));

        let w5 = r.weights(&f, Some(5)).unwrap();
        // reduction is x + x^3 + x^4 + ... + x^9; indices 1,3,4 fall below 5
        assert_eq!(w5.wt_r, Some(3));

        assert_eq!(
            r.weights(&r.zero(), Some(5)).unwrap(),
            WeightSummary {
                wt_tilde: 0,
                wt: 0,
                wt_r: Some(0)
            }
        );

        assert_eq!(
            r.weights(&f, Some(0)),
            Err(CyclicError::BadTruncation { m: 0, k: 10 })
        );
        assert_eq!(
            r.weights(&f, Some(11)),
            Err(CyclicError::BadTruncation { m: 11, k: 10 })
        );
    }

    #[test]
    fn context_mismatch_rejected() {
        let r11 = ring(2, 1, 11);
        let r13 = ring(2, 1, 13);
        let f = r11.one();
        let g = r13.one();
        assert_eq!(
            r11.mul(&f, &g),
            Err(CyclicError::ContextMismatch {
                got: 13,
                expected: 11
            })
        );
        assert!(matches!(
            r11.element(vec![0, 5, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            Err(CyclicError::BadCoefficient {
                index: 1,
                value: 5,
                q: 2
            })
        ));
    }

    fn random_element(r: &CyclicRing, rng: &mut XorShift64Star) -> RingElement {
        let q = r.field().order();
        r.element((0..r.kprime()).map(|_| rng.gen_range(q)).collect())
            .unwrap()
    }

    #[test]
    fn weight_relation_exhaustive_small() {
        // wt(f mod p) >= min(wt~(f), k - wt~(f)) over every f, k' in {3, 5}
        for kprime in [3usize, 5] {
            let r = ring(2, 1, kprime);
            for code in 0u64..(1 << kprime) {
                let coeffs: Vec<u64> = (0..kprime).map(|i| (code >> i) & 1).collect();
                let f = r.element(coeffs).unwrap();
                let w = r.weights(&f, None).unwrap();
                let k = r.k();
                assert!(w.wt >= w.wt_tilde.min(k.saturating_sub(w.wt_tilde)));
            }
        }
    }

    #[test]
    fn weight_relations_random_corpus() {
        // both weight relations on 10^4 random elements at k' in {11, 13}
        let mut rng = XorShift64Star::new(2024);
        for kprime in [11usize, 13] {
            for q in [2u64, 3] {
                let r = ring(q, 1, kprime);
                let k = r.k();
                for _ in 0..10_000 {
                    let f = random_element(&r, &mut rng);
                    let m = 1 + (rng.gen_range(k as u64) as usize);
                    let w = r.weights(&f, Some(m)).unwrap();
                    assert!(w.wt >= w.wt_tilde.min(k.saturating_sub(w.wt_tilde)));
                    // truncated relation compares against the raw prefix
                    let raw_prefix = prefix_weight(f.coeffs(), m);
                    assert!(
                        w.wt_r.unwrap() >= raw_prefix.min(m.saturating_sub(raw_prefix)),
                        "q={q} kprime={kprime} m={m} f={:?}",
                        f.coeffs()
                    );
                }
            }
        }
    }

    #[test]
    fn reduction_is_ring_homomorphism() {
        // reduce(f*g) must match schoolbook multiply-then-rem by p(x)
        let mut rng = XorShift64Star::new(99);
        for (q, e, kprime) in [(2u64, 1u32, 11usize), (3, 1, 7), (2, 2, 5)] {
            let r = ring(q, e, kprime);
            let fd = r.field().clone();
            let p_poly = vec![1u64; kprime];
            for _ in 0..1000 {
                let f = random_element(&r, &mut rng);
                let g = random_element(&r, &mut rng);
                let via_ring = r.reduce_mod_p(&r.mul(&f, &g).unwrap());

                let mut oracle =
                    poly::rem(&fd, &poly::mul(&fd, f.coeffs(), g.coeffs()), &p_poly);
                oracle.resize(kprime - 1, 0);
                assert_eq!(via_ring, oracle);
            }
        }
    }

    #[test]
    fn powers_of_x_never_reduce_to_zero() {
        // with p irreducible, x^j mod p is nonzero for 0 < j < k'
        let r = ring(2, 1, 11);
        for j in 1..11 {
            let reduced = r.reduce_mod_p(&r.monomial(j));
            assert!(hamming_weight(&reduced) > 0);
        }
        // and x^k' = 1 in R
        let x = r.monomial(1);
        let mut acc = r.one();
        for _ in 0..11 {
            acc = r.mul(&acc, &x).unwrap();
        }
        assert_eq!(acc, r.one());
    }
}
