//! Dense univariate polynomials over the rationals: characteristic
//! polynomials, Sturm sequences and exact rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, SquareMatrix};

/// Coefficients in ascending degree order, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `x - root`
    pub fn linear(root: &Rational) -> Self {
        Polynomial::new(vec![-root.clone(), Rational::one()])
    }

    /// Ascending coefficients, constant term first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    /// Substitutes a square matrix for the variable (Horner form).
    pub fn eval_matrix(&self, g: &SquareMatrix) -> SquareMatrix {
        let n = g.n();
        self.coeffs.iter().rev().fold(SquareMatrix::zeros(n), |acc, c| {
            &(&acc * g) + &SquareMatrix::identity(n).scale(c)
        })
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Polynomial::zero(), Polynomial::zero());
        };
        if nd < dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Polynomial> {
        let mut seq = vec![self.clone(), self.derivative()];
        while let Some(last) = seq.last().filter(|p| !p.is_zero()) {
            let prev = &seq[seq.len() - 2];
            let r = prev.div_rem(last).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Real roots of the square-free part, each enclosed in a half-open
    /// interval `(lo, hi]` holding exactly one root, in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        let sf = self.square_free();
        if sf.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = integer_sequence(&sf.sturm_sequence());
        let bound = dyadic_above(&sf.cauchy_bound());
        let mut pending = vec![(-bound.clone(), bound)];
        let mut out = Vec::new();
        while let Some((lo, hi)) = pending.pop() {
            match count_roots(&seq, &lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    pending.push((lo, mid.clone()));
                    pending.push((mid, hi));
                }
            }
        }
        out.sort();
        out
    }

    /// Shrinks an isolating interval of the square-free part until it is no
    /// wider than `width`. An exact root found on the way collapses the
    /// interval to that point.
    pub fn refine_root(&self, interval: &(Rational, Rational), width: &Rational) -> (Rational, Rational) {
        let sf = self.square_free();
        let seq = integer_sequence(&sf.sturm_sequence());
        let (mut lo, mut hi) = interval.clone();
        if sign_at(&seq[0], &hi) == 0 {
            return (hi.clone(), hi);
        }
        let two = Rational::from_integer(2.into());
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            if sign_at(&seq[0], &mid) == 0 {
                return (mid.clone(), mid);
            }
            if count_roots(&seq, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// `1 + max |c_k / c_d|`, strictly larger than every root's modulus.
    fn cauchy_bound(&self) -> Rational {
        let lead = self.leading();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }
}

/// Positive multiple of `p` with coprime integer coefficients; it has the
/// same sign as `p` everywhere.
fn primitive_integer(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &content).collect()
    }
}

fn integer_sequence(seq: &[Polynomial]) -> Vec<Vec<BigInt>> {
    seq.iter().map(primitive_integer).collect()
}

/// Sign of `p(x)`, from `den^deg p(num / den)` evaluated in integers.
fn sign_at(p: &[BigInt], x: &Rational) -> i8 {
    let Some((last, rest)) = p.split_last() else {
        return 0;
    };
    let (num, den) = (x.numer(), x.denom());
    let mut acc = last.clone();
    let mut pw = den.clone();
    for c in rest.iter().rev() {
        acc = acc * num + c * &pw;
        pw *= den;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// A power of two that is at least `q >= 1`.
fn dyadic_above(q: &Rational) -> Rational {
    let bits = (q.numer().bits() + 1).saturating_sub(q.denom().bits());
    Rational::from_integer(BigInt::one() << bits)
}

fn sign_changes(seq: &[Vec<BigInt>], x: &Rational) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots in `(lo, hi]`.
fn count_roots(seq: &[Vec<BigInt>], lo: &Rational, hi: &Rational) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// Monic characteristic polynomial `det(x I - g)` by Berkowitz's
/// division-free algorithm.
pub fn char_poly(g: &SquareMatrix) -> Polynomial {
    let n = g.n();
    // Coefficient vector of the trailing principal submatrix, highest degree
    // first.
    let mut v = vec![Rational::one(), -g.get(n - 1, n - 1).clone()];
    for k in (0..n - 1).rev() {
        let m = n - k;
        let a = g.get(k, k);
        let row: Vec<Rational> = (k + 1..n).map(|j| g.get(k, j).clone()).collect();
        // diags = [1, -a, -R C, -R A C, ..., -R A^{m-2} C]
        let mut diags = vec![Rational::one(), -a.clone()];
        let mut col: Vec<Rational> = (k + 1..n).map(|i| g.get(i, k).clone()).collect();
        for step in 0..m - 1 {
            if step > 0 {
                col = (k + 1..n)
                    .map(|i| {
                        (k + 1..n)
                            .zip(&col)
                            .fold(Rational::zero(), |acc, (j, c)| acc + g.get(i, j) * c)
                    })
                    .collect();
            }
            let rc = row.iter().zip(&col).fold(Rational::zero(), |acc, (r, c)| acc + r * c);
            diags.push(-rc);
        }
        // (m+1) x m lower Toeplitz matrix times v (length m).
        v = (0..=m)
            .map(|i| {
                (0..m.min(i + 1))
                    .filter(|&j| i >= j)
                    .fold(Rational::zero(), |acc, j| acc + &diags[i - j] * &v[j])
            })
            .collect();
    }
    v.reverse();
    Polynomial::new(v)
}

/// Every rational root of `p`, repeated by multiplicity, in increasing
/// order.
///
/// The polynomial is rescaled to a monic integer polynomial in `y = D x`,
/// whose rational roots are integers; those are located by Sturm isolation
/// and confirmed by exact evaluation. No integer factoring is involved.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let monic = p.monic();
    let lcm = monic.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = Rational::from_integer(lcm);
    // q(y) = D^d p(y / D)
    let mut power = Rational::one();
    let mut scaled = vec![Rational::zero(); d + 1];
    for k in (0..=d).rev() {
        scaled[k] = &monic.coeffs[k] * &power;
        power *= &scale;
    }
    let q = Polynomial::new(scaled);

    let half = Rational::new(1.into(), 2.into());
    let mut distinct = Vec::new();
    for iv in q.isolate_real_roots() {
        let (lo, hi) = q.refine_root(&iv, &half);
        let mut m = lo.ceil();
        while m <= hi {
            if q.eval(&m).is_zero() {
                distinct.push(&m / &scale);
            }
            m += Rational::one();
        }
    }

    let mut out = Vec::new();
    for r in distinct {
        let lin = Polynomial::linear(&r);
        let mut rest = monic.clone();
        loop {
            let (quot, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            rest = quot;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat};

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&v| int(v)).collect())
    }

    /// Faddeev-LeVerrier: c_{n-k} = -(1/k) tr(g M_k), M_{k+1} = g M_k + c_{n-k} I.
    fn faddeev_leverrier(g: &SquareMatrix) -> Polynomial {
        let n = g.n();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = SquareMatrix::identity(n);
        for k in 1..=n {
            let gm = g * &m;
            let c = -gm.trace() / int(k as i64);
            coeffs[n - k] = c.clone();
            m = &gm + &SquareMatrix::identity(n).scale(&c);
        }
        Polynomial::new(coeffs)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&SquareMatrix::identity(2)), poly(&[1, -2, 1]));
        let (t, s) = (rat(7, 3), rat(-2, 5));
        let d = SquareMatrix::diagonal(&[t.clone(), s.clone()]);
        assert_eq!(char_poly(&d), Polynomial::new(vec![&t * &s, -(&t + &s), int(1)]));
        let g = SquareMatrix::from_i64(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]).unwrap();
        assert_eq!(char_poly(&g), faddeev_leverrier(&g));
        let one = SquareMatrix::from_i64(&[&[5]]).unwrap();
        assert_eq!(char_poly(&one), poly(&[-5, 1]));
    }

    #[test]
    fn cayley_hamilton_on_a_sample() {
        let g = SquareMatrix::from_i64(&[&[1, 2, 0, 1], &[3, -1, 2, 0], &[0, 1, 1, 4], &[2, 0, -3, 1]]).unwrap();
        assert!(char_poly(&g).eval_matrix(&g).is_zero());
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&poly(&[2, -3, 1])), vec![int(1), int(2)]);
        assert!(rational_roots(&poly(&[-2, 0, 1])).is_empty());
        // (x - 1/2)^2 (x + 3)
        let p = Polynomial::linear(&rat(1, 2))
            .mul(&Polynomial::linear(&rat(1, 2)))
            .mul(&Polynomial::linear(&int(-3)));
        assert_eq!(rational_roots(&p), vec![int(-3), rat(1, 2), rat(1, 2)]);
        // x (x^2 + 1): only the zero root
        assert_eq!(rational_roots(&poly(&[0, 1, 0, 1])), vec![int(0)]);
        assert!(rational_roots(&poly(&[5])).is_empty());
    }

    #[test]
    fn similarity_preserves_rational_spectrum() {
        let s = SquareMatrix::from_i64(&[&[1, 2, 0], &[1, 3, 1], &[0, 1, 2]]).unwrap();
        let d = SquareMatrix::diagonal(&[int(4), int(2), int(1)]);
        let g = &(&s * &d) * &s.inverse().unwrap();
        assert_eq!(rational_roots(&char_poly(&g)), vec![int(1), int(2), int(4)]);
    }

    #[test]
    fn isolation_and_refinement() {
        // x^2 - 3x + 1 has roots (3 +- sqrt 5) / 2
        let p = poly(&[1, -3, 1]);
        let ivs = p.isolate_real_roots();
        assert_eq!(ivs.len(), 2);
        let eps = rat(1, 1_000_000_000_000);
        let (lo, hi) = p.refine_root(&ivs[1], &eps);
        let golden = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(crate::exact_linalg::to_f64(&lo) <= golden + 1e-12);
        assert!(crate::exact_linalg::to_f64(&hi) >= golden - 1e-12);
        assert!(poly(&[1, 0, 1]).isolate_real_roots().is_empty());
    }

    #[test]
    fn division_and_gcd() {
        let a = poly(&[-1, 0, 1]);
        let b = poly(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&poly(&[-1, 1]).mul(&poly(&[2, 1]))), poly(&[-1, 1]));
        let sq = poly(&[1, 1]).mul(&poly(&[1, 1])).mul(&poly(&[-2, 1]));
        assert_eq!(sq.square_free(), poly(&[1, 1]).mul(&poly(&[-2, 1])));
    }
}
