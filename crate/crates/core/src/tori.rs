//! Maximal tori as frames: a torus is `{ S d S^{-1} : d diagonal }`, and two
//! frames give the same torus when they differ by a monomial matrix.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::{Rational, SquareMatrix};
use crate::flags::{negative_lower, positive_lower, tilde_map, BorelPoint, FlagPairClass};
use crate::pinning::{is_in_t_p_pos, TorusElement};

/// An invertible matrix whose columns are the common eigenlines of a maximal
/// torus. `provenance` records `(u, v)` in `U-_{>0} × U-_{>0}` when the frame
/// was built from the pair `(u B+ u^{-1}, v^{-1} B+ v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusFrame {
    s: SquareMatrix,
    s_inv: SquareMatrix,
    provenance: Option<(SquareMatrix, SquareMatrix)>,
}

impl TorusFrame {
    pub fn new(s: SquareMatrix) -> Result<Self> {
        let s_inv = s.inverse()?;
        Ok(TorusFrame {
            s,
            s_inv,
            provenance: None,
        })
    }

    pub fn s(&self) -> &SquareMatrix {
        &self.s
    }

    pub fn s_inverse(&self) -> &SquareMatrix {
        &self.s_inv
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn provenance(&self) -> Option<(&SquareMatrix, &SquareMatrix)> {
        self.provenance.as_ref().map(|(u, v)| (u, v))
    }
}

/// `B ∩ B'` for `B = u B+ u^{-1}` positive and `B' = v^{-1} B+ v` negative:
/// the frame `S = u · (u^{-1} v^{-1})~`, which carries `B+` to `B` and `B-` to
/// `B'`.
pub fn intersect_borels(b: &BorelPoint, b_prime: &BorelPoint) -> Result<TorusFrame> {
    intersect_with(b, b_prime, tilde_map)
}

pub(crate) fn intersect_with(
    b: &BorelPoint,
    b_prime: &BorelPoint,
    tilde: impl Fn(&SquareMatrix) -> Result<SquareMatrix>,
) -> Result<TorusFrame> {
    if b.n() != b_prime.n() {
        return Err(Error::Dimension("flags of different sizes".into()));
    }
    let u = positive_lower(b).ok_or_else(|| Error::Precondition("first flag is not in the positive part".into()))?;
    let v =
        negative_lower(b_prime).ok_or_else(|| Error::Precondition("second flag is not in the negative part".into()))?;
    let z = &u.inverse()? * &v.inverse()?;
    let s = &u * &tilde(&z)?;
    let s_inv = s
        .inverse()
        .map_err(|_| Error::InvariantViolation("intersection frame is singular".into()))?;
    let frame = TorusFrame {
        s,
        s_inv,
        provenance: Some((u, v)),
    };
    if !certificate(&frame, b, b_prime) {
        return Err(Error::InvariantViolation(
            "frame does not carry (B+, B-) to (B, B')".into(),
        ));
    }
    Ok(frame)
}

/// The injection `(B, B') -> B ∩ B'`.
pub fn iota(pair: &FlagPairClass) -> Result<TorusFrame> {
    intersect_borels(pair.first(), pair.second())
}

/// `S^{-1} B` is the standard flag and `S^{-1} B'` the anti-standard one.
pub fn certificate(frame: &TorusFrame, b: &BorelPoint, b_prime: &BorelPoint) -> bool {
    let inv = &frame.s_inv;
    let j = SquareMatrix::anti_identity(frame.n());
    (inv * b.basis()).is_upper_triangular() && (&(&j * inv) * b_prime.basis()).is_upper_triangular()
}

/// `S d S^{-1}`.
pub fn torus_element(frame: &TorusFrame, d: &TorusElement) -> Result<SquareMatrix> {
    if d.n() != frame.n() {
        return Err(Error::Dimension(format!(
            "torus element of size {} for a frame of size {}",
            d.n(),
            frame.n()
        )));
    }
    let n = frame.n();
    let diag = d.diag();
    Ok(SquareMatrix::from_fn(n, |i, j| {
        (0..n).fold(Rational::zero(), |acc, k| {
            acc + frame.s.get(i, k) * &diag[k] * frame.s_inv.get(k, j)
        })
    }))
}

/// The diagonal `S^{-1} g S`, or a precondition error when `g` is not in the
/// torus.
pub fn torus_coordinates(frame: &TorusFrame, g: &SquareMatrix) -> Result<TorusElement> {
    let d = &(&frame.s_inv * g) * &frame.s;
    if !d.is_diagonal() {
        return Err(Error::Precondition("matrix is not in the torus of the frame".into()));
    }
    TorusElement::new((0..d.n()).map(|i| d.get(i, i).clone()).collect())
}

/// Equality of tori: `F2^{-1} F1` is monomial.
pub fn same_torus(f1: &TorusFrame, f2: &TorusFrame) -> bool {
    f1.n() == f2.n() && (&f2.s_inv * &f1.s).is_monomial()
}

/// `g in S T^p_{>0} S^{-1}`.
pub fn cone_membership(frame: &TorusFrame, g: &SquareMatrix, p: &Rational) -> Result<bool> {
    Ok(is_in_t_p_pos(&torus_coordinates(frame, g)?, p))
}
