//! Seeded sampling. Every random draw comes from a `ChaCha8Rng` seeded with
//! the configured 64-bit seed and switched to a per-frame stream, so a frame's
//! data depends only on `(seed, frame index)`.
//!
//! Positive parameters are sampled log-uniformly using integers only: an
//! octave `e` and an 11-bit mantissa `m` give the dyadic `m · 2^(e-10)`, and
//! draws outside `[lo, hi]` are rejected. No floating point is involved, so
//! the samples are identical on every platform.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::exact_linalg::{Rational, SquareMatrix};
use crate::gl_small::GL3Params;
use crate::pinning::{unipotent_from_word, ChevalleyWord, ReducedWord, Sign, TorusElement};

const MANTISSA_BITS: u32 = 10;

/// Generator for one frame of a scan.
pub fn frame_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform integer in `0..k` by rejection, `k >= 1`.
pub fn uniform_below(rng: &mut impl RngCore, k: u64) -> u64 {
    let zone = u64::MAX - (u64::MAX % k);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % k;
        }
    }
}

fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Octaves `e` with `[2^e, 2^(e+1))` meeting `[lo, hi]`, possibly one more on
/// each side.
fn octaves(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Log-uniform dyadic rational in `[lo, hi]`, `0 < lo <= hi`.
pub fn log_uniform(rng: &mut impl RngCore, lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo.is_positive() && lo <= hi, "log_uniform needs 0 < lo <= hi");
    if lo == hi {
        return lo.clone();
    }
    let (e_lo, e_hi) = (octaves(lo) - 1, octaves(hi));
    let span = (e_hi - e_lo + 1) as u64;
    loop {
        let e = e_lo + uniform_below(rng, span) as i64;
        let m = (1u64 << MANTISSA_BITS) + uniform_below(rng, 1u64 << MANTISSA_BITS);
        let x = Rational::from_integer(BigInt::from(m)) * pow2(e - MANTISSA_BITS as i64);
        if &x >= lo && &x <= hi {
            return x;
        }
    }
}

/// Closed positive range `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: Rational,
    pub hi: Rational,
}

impl Range {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if !lo.is_positive() || lo > hi {
            return Err(Error::Precondition(format!("range needs 0 < lo <= hi, got {lo}:{hi}")));
        }
        Ok(Range { lo, hi })
    }

    pub fn sample(&self, rng: &mut impl RngCore) -> Rational {
        log_uniform(rng, &self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// Element of `U-_{>0}` along the standard reduced word, with its parameters.
pub fn positive_lower(rng: &mut impl RngCore, n: usize, range: &Range) -> (SquareMatrix, Vec<Rational>) {
    let word = ReducedWord::standard(n);
    let params: Vec<Rational> = (0..word.len()).map(|_| range.sample(rng)).collect();
    (
        lower_from_params(n, &params).expect("sampled parameters are positive"),
        params,
    )
}

/// Rebuilds an element of `U-_{>0}` from its standard-word parameters.
pub fn lower_from_params(n: usize, params: &[Rational]) -> Result<SquareMatrix> {
    let c = ChevalleyWord::new(ReducedWord::standard(n), params.to_vec(), Sign::Lower)?;
    Ok(unipotent_from_word(&c))
}

/// Diagonal with `t_n = 1` and the other coordinates log-uniform on the grid.
pub fn grid_diagonal(rng: &mut impl RngCore, n: usize, grid: &Range) -> TorusElement {
    let mut d: Vec<Rational> = (0..n - 1).map(|_| grid.sample(rng)).collect();
    d.push(Rational::one());
    TorusElement::new(d).expect("grid values are positive")
}

/// Admissible `GL_3` parameters by rejection on `ac > b` and `a'c' > b'`.
pub fn gl3_params(rng: &mut impl RngCore, range: &Range) -> GL3Params {
    loop {
        let v: Vec<Rational> = (0..6).map(|_| range.sample(rng)).collect();
        if let Ok(p) = GL3Params::new(
            v[0].clone(),
            v[1].clone(),
            v[2].clone(),
            v[3].clone(),
            v[4].clone(),
            v[5].clone(),
        ) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat};
    use crate::pinning::{is_in_u_pos, Sign};

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| frame_rng(42, 3).next_u64()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(frame_rng(42, 3).next_u64(), frame_rng(42, 4).next_u64());
        assert_ne!(frame_rng(42, 3).next_u64(), frame_rng(43, 3).next_u64());
    }

    #[test]
    fn log_uniform_stays_in_range_and_spreads_over_octaves() {
        let mut rng = frame_rng(7, 0);
        let (lo, hi) = (rat(1, 100), int(100));
        let xs: Vec<Rational> = (0..2000).map(|_| log_uniform(&mut rng, &lo, &hi)).collect();
        assert!(xs.iter().all(|x| x >= &lo && x <= &hi));
        let below = xs.iter().filter(|x| **x < rat(1, 10)).count();
        let above = xs.iter().filter(|x| **x > int(10)).count();
        // each end holds about a quarter of the mass on a log scale
        assert!(below > 350 && below < 650, "{below}");
        assert!(above > 350 && above < 650, "{above}");
        assert_eq!(log_uniform(&mut rng, &int(3), &int(3)), int(3));
    }

    #[test]
    fn samplers_produce_admissible_objects() {
        let mut rng = frame_rng(1, 0);
        let range = Range::new(rat(1, 4), int(4)).unwrap();
        for n in 2..=5 {
            let (u, params) = positive_lower(&mut rng, n, &range);
            assert!(is_in_u_pos(&u, Sign::Lower).unwrap().verdict);
            assert_eq!(lower_from_params(n, &params).unwrap(), u);
            let d = grid_diagonal(&mut rng, n, &range);
            assert_eq!(d.diag()[n - 1], int(1));
        }
        let p = gl3_params(&mut rng, &range);
        assert!(&p.a * &p.c > p.b);
        assert!(Range::new(int(2), int(1)).is_err());
        assert!(Range::new(int(0), int(1)).is_err());
    }
}
