//! Encoding: alpha construction, codeword generation, generator-matrix
//! export, puncturing arithmetic, and seeded random-alpha sampling.
//!
//! A codeword for message y is (y, first `kept` coordinates of the
//! reduction of alpha*y), with the product taken in the cyclic ring.
//! kept = k reproduces the rate-1/2 code; smaller kept punctures the check
//! block down to rate k/(k+kept).

use num_rational::Ratio;
use thiserror::Error;

use crate::cyclic::CyclicRing;
use crate::params::{field_from_order, find_artin_prime, CodeParams};
use crate::rng::XorShift64Star;
use crate::sidon::{bose_chowla, largest_prime_below, SidonSet};
use crate::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodecError {
    #[error("Sidon element {max_element} does not fit below k = {k}")]
    DegreeOverflow { max_element: u64, k: usize },
    #[error("message has {got} symbols, expected k = {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("message symbol {value} at index {index} is out of range for q = {q}")]
    SymbolOutOfRange { index: usize, value: u64, q: u64 },
    #[error("rate {0} is outside (1/2, 1)")]
    RateOutOfRange(Ratio<u64>),
}

/// The deterministic alpha: coefficient 1 exactly on the Sidon set.
pub fn build_alpha_star(k: usize, sidon: &SidonSet) -> Result<Vec<u64>, CodecError> {
    let mut alpha = vec![0u64; k];
    for &a in &sidon.elements {
        if a >= k as u64 {
            return Err(CodecError::DegreeOverflow {
                max_element: a,
                k,
            });
        }
        alpha[a as usize] = 1;
    }
    Ok(alpha)
}

fn check_message(params: &CodeParams, message: &[u64]) -> Result<(), CodecError> {
    if message.len() != params.k {
        return Err(CodecError::BadLength {
            got: message.len(),
            expected: params.k,
        });
    }
    for (index, &value) in message.iter().enumerate() {
        if value >= params.q {
            return Err(CodecError::SymbolOutOfRange {
                index,
                value,
                q: params.q,
            });
        }
    }
    Ok(())
}

pub(crate) fn encode_in_ring(
    ring: &CyclicRing,
    alpha: &[u64],
    message: &[u64],
    kept: usize,
) -> Vec<u64> {
    let y = ring.from_prefix(message).expect("message fits the ring");
    let a = ring.from_prefix(alpha).expect("alpha fits the ring");
    let product = ring.mul(&y, &a).expect("same ring context");
    let reduced = ring.reduce_mod_p(&product);
    let mut codeword = message.to_vec();
    codeword.extend_from_slice(&reduced[..kept]);
    codeword
}

/// Codeword of a length-k message: the message followed by the first
/// `kept` coordinates of the reduced ring product with alpha.
pub fn encode(params: &CodeParams, message: &[u64]) -> Result<Vec<u64>, Error> {
    check_message(params, message).map_err(Error::from)?;
    let ring = params.ring()?;
    Ok(encode_in_ring(&ring, &params.alpha, message, params.kept))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub q: u64,
    pub k: usize,
    pub n: usize,
    /// Row i is the codeword of the basis message x^i; the left k columns
    /// form the identity.
    pub rows: Vec<Vec<u64>>,
}

impl GeneratorMatrix {
    /// Text form: `q k n` on the first line, then one row per line.
    pub fn render(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q, self.k, self.n);
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn generator_matrix(params: &CodeParams) -> Result<GeneratorMatrix, Error> {
    let ring = params.ring()?;
    let mut rows = Vec::with_capacity(params.k);
    let mut basis = vec![0u64; params.k];
    for i in 0..params.k {
        basis[i] = 1;
        rows.push(encode_in_ring(&ring, &params.alpha, &basis, params.kept));
        basis[i] = 0;
    }
    Ok(GeneratorMatrix {
        q: params.q,
        k: params.k,
        n: params.k + params.kept,
        rows,
    })
}

/// Number of check coordinates to keep for a target rate r in (1/2, 1):
/// ceil((1/r - 1) * k). Rounding up only adds coordinates, so the distance
/// bounds are preserved; the achieved rate k/(k+kept) is what gets stored.
pub fn puncture_plan(rate: Ratio<u64>, k: usize) -> Result<usize, CodecError> {
    let half = Ratio::new(1, 2);
    let one = Ratio::from_integer(1);
    if rate <= half || rate >= one {
        return Err(CodecError::RateOutOfRange(rate));
    }
    let num = *rate.numer();
    let den = *rate.denom();
    // (1/r - 1) k = k (den - num) / num, rounded up
    let kept = ((k as u64) * (den - num)).div_ceil(num);
    debug_assert!(kept >= 1 && kept <= k as u64);
    Ok(kept as usize)
}

/// Streams uniform nonzero alpha vectors from one seed; used by the
/// ensemble experiment so sample i is reproducible.
#[derive(Debug, Clone)]
pub struct AlphaSampler {
    rng: XorShift64Star,
    q: u64,
    k: usize,
}

impl AlphaSampler {
    pub fn new(q: u64, k: usize, seed: u64) -> Self {
        AlphaSampler {
            rng: XorShift64Star::new(seed),
            q,
            k,
        }
    }

    pub fn next_alpha(&mut self) -> Vec<u64> {
        loop {
            let alpha: Vec<u64> = (0..self.k).map(|_| self.rng.gen_range(self.q)).collect();
            if alpha.iter().any(|&c| c != 0) {
                return alpha;
            }
        }
    }
}

/// One uniform nonzero alpha for the configured field and dimension.
pub fn sample_random_alpha(params: &CodeParams, seed: u64) -> Vec<u64> {
    AlphaSampler::new(params.q, params.k, seed).next_alpha()
}

/// Full rate-1/2 parameter derivation: Artin prime above min_k, Sidon order
/// d below sqrt(k), Bose-Chowla set, alpha*.
pub fn derive_params(q: u64, min_k: u64, cap: Option<u64>) -> Result<CodeParams, Error> {
    let kprime = find_artin_prime(q, min_k, cap)?;
    let k = (kprime - 1) as usize;
    field_from_order(q)?;
    let d = largest_prime_below((k as f64).sqrt())?;
    let sidon = bose_chowla(d)?;
    let alpha = build_alpha_star(k, &sidon)?;
    let params = CodeParams {
        q,
        kprime,
        k,
        d,
        sidon,
        alpha,
        kept: k,
    };
    params.validate()?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::hamming_weight;

    fn rate_half_params() -> CodeParams {
        derive_params(2, 10, None).unwrap()
    }

    #[test]
    fn alpha_star_marks_sidon_support() {
        let sidon = bose_chowla(3).unwrap();
        let alpha = build_alpha_star(10, &sidon).unwrap();
        assert_eq!(alpha, vec![0, 0, 0, 0, 1, 1, 0, 1, 0, 0]);

        let big = bose_chowla(5).unwrap();
        let alpha28 = build_alpha_star(28, &big).unwrap();
        assert_eq!(hamming_weight(&alpha28), 5);

        assert!(matches!(
            build_alpha_star(10, &big),
            Err(CodecError::DegreeOverflow {
                max_element: 19,
                k: 10
            })
        ));
    }

    #[test]
    fn encode_unit_message() {
        // alpha * 1 = alpha, top coefficient 0, so the check block is alpha
        let p = rate_half_params();
        let mut msg = vec![0u64; 10];
        msg[0] = 1;
        let cw = encode(&p, &msg).unwrap();
        assert_eq!(
            cw,
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0]
        );
    }

    #[test]
    fn encode_shifted_message() {
        // y = x^6: alpha*y has support {0, 2, 10}, reducing to weight 8
        let p = rate_half_params();
        let mut msg = vec![0u64; 10];
        msg[6] = 1;
        let cw = encode(&p, &msg).unwrap();
        assert_eq!(hamming_weight(&cw), 9);
        assert_eq!(cw[10..], [0, 1, 0, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn encode_zero_and_errors() {
        let p = rate_half_params();
        assert_eq!(encode(&p, &vec![0; 10]).unwrap(), vec![0; 20]);
        assert!(encode(&p, &vec![0; 9]).is_err());
        let mut bad = vec![0u64; 10];
        bad[2] = 2;
        assert!(encode(&p, &bad).is_err());
    }

    #[test]
    fn encode_is_linear_and_systematic() {
        let p = rate_half_params();
        let mut rng = XorShift64Star::new(5);
        let f = p.field().unwrap();
        for _ in 0..1000 {
            let y1: Vec<u64> = (0..10).map(|_| rng.gen_range(2)).collect();
            let y2: Vec<u64> = (0..10).map(|_| rng.gen_range(2)).collect();
            let sum: Vec<u64> = y1.iter().zip(&y2).map(|(&a, &b)| f.add(a, b)).collect();
            let c1 = encode(&p, &y1).unwrap();
            let c2 = encode(&p, &y2).unwrap();
            let cs = encode(&p, &sum).unwrap();
            let componentwise: Vec<u64> =
                c1.iter().zip(&c2).map(|(&a, &b)| f.add(a, b)).collect();
            assert_eq!(cs, componentwise);
            assert_eq!(&c1[..10], &y1[..]);
        }
    }

    #[test]
    fn identity_alpha_doubles_weight() {
        // alpha = 1: the check block repeats the message
        let mut p = rate_half_params();
        p.alpha = vec![0; 10];
        p.alpha[0] = 1;
        let mut rng = XorShift64Star::new(8);
        for _ in 0..200 {
            let y: Vec<u64> = (0..10).map(|_| rng.gen_range(2)).collect();
            let cw = encode(&p, &y).unwrap();
            assert_eq!(hamming_weight(&cw), 2 * hamming_weight(&y));
        }
    }

    #[test]
    fn matrix_agrees_with_ring_encoding() {
        let mut p = rate_half_params();
        p.kept = 5;
        let g = generator_matrix(&p).unwrap();
        assert_eq!((g.k, g.n), (10, 15));
        let f = p.field().unwrap();
        let mut rng = XorShift64Star::new(21);
        for _ in 0..200 {
            let y: Vec<u64> = (0..10).map(|_| rng.gen_range(2)).collect();
            // vector-matrix product row-by-row
            let mut via_matrix = vec![0u64; g.n];
            for (i, &yi) in y.iter().enumerate() {
                if yi == 0 {
                    continue;
                }
                for (j, &gij) in g.rows[i].iter().enumerate() {
                    via_matrix[j] = f.add(via_matrix[j], f.mul(yi, gij));
                }
            }
            assert_eq!(via_matrix, encode(&p, &y).unwrap());
        }
    }

    #[test]
    fn matrix_has_identity_prefix_and_full_rank() {
        let p = rate_half_params();
        let g = generator_matrix(&p).unwrap();
        for (i, row) in g.rows.iter().enumerate() {
            for j in 0..g.k {
                assert_eq!(row[j], u64::from(i == j));
            }
        }
        // Gaussian elimination over F_2 confirms rank k
        let mut rows: Vec<u64> = g
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &c)| acc | (c << j))
            })
            .collect();
        let mut rank = 0;
        for bit in 0..g.n {
            if let Some(pos) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) {
                rows.swap(rank, pos);
                for i in 0..rows.len() {
                    if i != rank && rows[i] >> bit & 1 == 1 {
                        rows[i] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        assert_eq!(rank, g.k);
    }

    #[test]
    fn render_format() {
        let mut p = rate_half_params();
        p.kept = 5;
        let g = generator_matrix(&p).unwrap();
        let text = g.render();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "2 10 15");
        assert_eq!(text.lines().count(), 11);
        assert!(text
            .lines()
            .skip(1)
            .all(|l| l.split(' ').count() == 15));
    }

    #[test]
    fn puncture_arithmetic() {
        assert_eq!(puncture_plan(Ratio::new(2, 3), 10).unwrap(), 5);
        assert_eq!(puncture_plan(Ratio::new(3, 4), 10).unwrap(), 4);
        assert_eq!(puncture_plan(Ratio::new(9, 10), 28).unwrap(), 4);
        assert!(matches!(
            puncture_plan(Ratio::new(1, 2), 10),
            Err(CodecError::RateOutOfRange(_))
        ));
        assert!(matches!(
            puncture_plan(Ratio::new(1, 1), 10),
            Err(CodecError::RateOutOfRange(_))
        ));
        assert!(matches!(
            puncture_plan(Ratio::new(1, 3), 10),
            Err(CodecError::RateOutOfRange(_))
        ));
    }

    #[test]
    fn sampler_is_reproducible_and_nonzero() {
        let p = rate_half_params();
        assert_eq!(sample_random_alpha(&p, 7), sample_random_alpha(&p, 7));
        let mut s = AlphaSampler::new(2, 10, 3);
        for _ in 0..10_000 {
            let a = s.next_alpha();
            assert_eq!(a.len(), 10);
            assert!(a.iter().any(|&c| c != 0));
            assert!(a.iter().all(|&c| c < 2));
        }
    }

    #[test]
    fn sampler_first_symbol_roughly_uniform() {
        // q = 3: each residue should hit about a third of 9000 draws
        let mut s = AlphaSampler::new(3, 4, 11);
        let mut counts = [0u64; 3];
        for _ in 0..9000 {
            counts[s.next_alpha()[0] as usize] += 1;
        }
        // 3 sigma for a fair trinomial is about 134
        for &c in &counts {
            assert!((c as i64 - 3000).abs() < 450, "counts = {counts:?}");
        }
    }

    #[test]
    fn derive_params_pipeline() {
        let p = derive_params(2, 10, None).unwrap();
        assert_eq!((p.q, p.kprime, p.k, p.d, p.kept), (2, 11, 10, 3, 10));
        assert_eq!(p.sidon.elements, vec![4, 5, 7]);
        assert_eq!(p.alpha, vec![0, 0, 0, 0, 1, 1, 0, 1, 0, 0]);
        assert_eq!(p.rate(), Ratio::new(1, 2));

        let p28 = derive_params(2, 28, None).unwrap();
        assert_eq!((p28.kprime, p28.k, p28.d), (29, 28, 5));
        assert_eq!(p28.sidon.elements, vec![4, 6, 19, 20, 23]);
    }
}
