//! Complete flags in `Q^n`, standing for Borel subgroups: the flag of a basis
//! matrix is `span(col_1) ⊂ span(col_1, col_2) ⊂ ...`, and its stabilizer is
//! the Borel subgroup. `B+` is the standard flag, `B-` the anti-standard one.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::{Rational, SquareMatrix};
use crate::pinning::{is_in_u_pos, Sign};

/// A complete flag, with its lower unitriangular representative computed at
/// construction when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelPoint {
    basis: SquareMatrix,
    canonical_lower: Option<SquareMatrix>,
}

impl BorelPoint {
    pub fn new(basis: SquareMatrix) -> Result<Self> {
        if basis.determinant().is_zero() {
            return Err(Error::Singular);
        }
        let canonical_lower = canonical_lower(&basis);
        Ok(BorelPoint { basis, canonical_lower })
    }

    /// The flag fixed by upper triangular matrices.
    pub fn standard(n: usize) -> Self {
        BorelPoint::new(SquareMatrix::identity(n)).expect("identity is invertible")
    }

    /// The flag fixed by lower triangular matrices: `span(e_n) ⊂ span(e_n, e_{n-1}) ⊂ ...`.
    pub fn anti_standard(n: usize) -> Self {
        BorelPoint::new(SquareMatrix::anti_identity(n)).expect("anti-identity is invertible")
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn basis(&self) -> &SquareMatrix {
        &self.basis
    }

    /// The unique lower unitriangular `u` with the same flag, i.e. the flag
    /// is `u B+ u^{-1}`. Absent when the flag is not in the big cell.
    pub fn canonical_lower(&self) -> Option<&SquareMatrix> {
        self.canonical_lower.as_ref()
    }

    /// Image of the flag under `g`.
    pub fn transform(&self, g: &SquareMatrix) -> Result<Self> {
        BorelPoint::new(g * &self.basis)
    }
}

/// Column reduction of `basis` to a lower unitriangular matrix with the same
/// flag: each column is normalized on its diagonal entry and cleared from the
/// later columns. Fails exactly when a leading principal minor vanishes.
fn canonical_lower(basis: &SquareMatrix) -> Option<SquareMatrix> {
    let n = basis.n();
    let mut m = basis.clone();
    for j in 0..n {
        let pivot = m.get(j, j).clone();
        if pivot.is_zero() {
            return None;
        }
        for r in 0..n {
            let v = m.get(r, j) / &pivot;
            m.set(r, j, v);
        }
        for k in j + 1..n {
            let f = m.get(j, k).clone();
            if f.is_zero() {
                continue;
            }
            for r in 0..n {
                let v = m.get(r, k) - &f * m.get(r, j);
                m.set(r, k, v);
            }
        }
    }
    Some(m)
}

/// Flag of `u B+ u^{-1}` for lower unitriangular `u`.
pub fn borel_from_lower(u: &SquareMatrix) -> Result<BorelPoint> {
    if !u.is_lower_unitriangular() {
        return Err(Error::Precondition("matrix is not lower unitriangular".into()));
    }
    BorelPoint::new(u.clone())
}

/// Same flag: `basis_b^{-1} basis_a` is upper triangular.
pub fn flag_equal(a: &BorelPoint, b: &BorelPoint) -> bool {
    a.n() == b.n()
        && b.basis
            .inverse()
            .map(|inv| (&inv * &a.basis).is_upper_triangular())
            .unwrap_or(false)
}

/// `g` maps the flag to itself, i.e. `g` lies in the Borel subgroup.
pub fn stabilizes(g: &SquareMatrix, b: &BorelPoint) -> bool {
    b.basis
        .inverse()
        .map(|inv| (&(&inv * g) * &b.basis).is_upper_triangular())
        .unwrap_or(false)
}

/// Member of `𝔹_{>0} = { u B+ u^{-1} : u in U-_{>0} }`.
pub fn is_in_b_pos(b: &BorelPoint) -> bool {
    positive_lower(b).is_some()
}

/// Member of `𝔹_{<0} = { u^{-1} B+ u : u in U-_{>0} }`.
pub fn is_in_b_neg(b: &BorelPoint) -> bool {
    negative_lower(b).is_some()
}

/// The `u in U-_{>0}` with `b = u B+ u^{-1}`, if any.
pub fn positive_lower(b: &BorelPoint) -> Option<SquareMatrix> {
    let u = b.canonical_lower.as_ref()?;
    is_in_u_pos(u, Sign::Lower).ok()?.verdict.then(|| u.clone())
}

/// The `v in U-_{>0}` with `b = v^{-1} B+ v`, if any.
pub fn negative_lower(b: &BorelPoint) -> Option<SquareMatrix> {
    let v = b.canonical_lower.as_ref()?.inverse().ok()?;
    is_in_u_pos(&v, Sign::Lower).ok()?.verdict.then_some(v)
}

/// Transversality: for every `k`, the first `k` basis vectors of `a` and the
/// first `n-k` of `b` span the whole space.
pub fn are_opposed(a: &BorelPoint, b: &BorelPoint) -> bool {
    let n = a.n();
    if b.n() != n {
        return false;
    }
    (1..n).all(|k| {
        let cols: Vec<Vec<Rational>> = (0..k)
            .map(|j| a.basis.column(j))
            .chain((0..n - k).map(|j| b.basis.column(j)))
            .collect();
        let m = SquareMatrix::from_columns(&cols).expect("n columns of length n");
        !m.determinant().is_zero()
    })
}

/// A pair in `𝔹_{>0} × 𝔹_{<0}`, together with the certificates
/// `first = u B+ u^{-1}` and `second = v^{-1} B+ v`, `u, v in U-_{>0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagPairClass {
    first: BorelPoint,
    second: BorelPoint,
    u: SquareMatrix,
    v: SquareMatrix,
}

impl FlagPairClass {
    pub fn new(first: BorelPoint, second: BorelPoint) -> Result<Self> {
        if first.n() != second.n() {
            return Err(Error::Dimension("flags of different sizes".into()));
        }
        let u = positive_lower(&first)
            .ok_or_else(|| Error::Precondition("first flag is not in the positive part".into()))?;
        let v = negative_lower(&second)
            .ok_or_else(|| Error::Precondition("second flag is not in the negative part".into()))?;
        Ok(FlagPairClass { first, second, u, v })
    }

    /// Builds `(u B+ u^{-1}, v^{-1} B+ v)`.
    pub fn from_unipotents(u: &SquareMatrix, v: &SquareMatrix) -> Result<Self> {
        FlagPairClass::new(borel_from_lower(u)?, borel_from_lower(&v.inverse()?)?)
    }

    pub fn first(&self) -> &BorelPoint {
        &self.first
    }

    pub fn second(&self) -> &BorelPoint {
        &self.second
    }

    pub fn u(&self) -> &SquareMatrix {
        &self.u
    }

    pub fn v(&self) -> &SquareMatrix {
        &self.v
    }
}

/// The map `U-_{<0} -> U+_{<0}` with `u B+ u^{-1} = ũ B- ũ^{-1}`.
///
/// Column `n-k+1` of `ũ` is the vector of the `k`-th subspace of `u`'s flag
/// whose entries below position `n-k+1` vanish and whose entry there is 1.
pub fn tilde_map(u: &SquareMatrix) -> Result<SquareMatrix> {
    if !u.is_lower_unitriangular() {
        return Err(Error::Precondition("matrix is not lower unitriangular".into()));
    }
    if !is_in_u_pos(&u.inverse()?, Sign::Lower)?.verdict {
        return Err(Error::Precondition("matrix is not in U-_{<0}".into()));
    }
    let t = tilde_unchecked(u)?;
    if !(&(&SquareMatrix::anti_identity(u.n()) * &t.inverse()?) * u).is_upper_triangular() {
        return Err(Error::InvariantViolation("tilde map flag check failed".into()));
    }
    Ok(t)
}

/// The column solve of [`tilde_map`] without the positivity precondition
/// and the flag check.
pub(crate) fn tilde_unchecked(u: &SquareMatrix) -> Result<SquareMatrix> {
    let n = u.n();
    let mut t = SquareMatrix::zeros(n);
    for k in 1..=n {
        let j = n - k;
        // rows j..n of the first k columns of u
        let block = SquareMatrix::from_fn(k, |r, c| u.get(j + r, c).clone());
        let mut rhs = vec![Rational::zero(); k];
        rhs[0] = Rational::from_integer(1.into());
        let alpha = block
            .solve(&rhs)
            .map_err(|_| Error::Contradiction(format!("flag is not transverse to B- at step {k}")))?;
        for r in 0..n {
            let v = (0..k).fold(Rational::zero(), |acc, c| acc + u.get(r, c) * &alpha[c]);
            t.set(r, j, v);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat};
    use crate::pinning::y_gen;

    fn lower3(x: Rational, y: Rational, z: Rational) -> SquareMatrix {
        SquareMatrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![x, int(1), int(0)],
            vec![z, y, int(1)],
        ])
        .unwrap()
    }

    fn y121() -> SquareMatrix {
        &(&y_gen(3, 1, &int(1)).unwrap() * &y_gen(3, 2, &int(1)).unwrap()) * &y_gen(3, 1, &int(1)).unwrap()
    }

    #[test]
    fn borel_from_lower_examples() {
        let b = borel_from_lower(&SquareMatrix::identity(3)).unwrap();
        assert!(flag_equal(&b, &BorelPoint::standard(3)));
        let b = borel_from_lower(&y_gen(2, 1, &int(1)).unwrap()).unwrap();
        let line = BorelPoint::new(SquareMatrix::from_i64(&[&[1, 0], &[1, 1]]).unwrap()).unwrap();
        assert!(flag_equal(&b, &line));
        let scaled = BorelPoint::new(SquareMatrix::from_i64(&[&[3, 5], &[3, 0]]).unwrap()).unwrap();
        assert!(flag_equal(&b, &scaled));
        assert!(borel_from_lower(&SquareMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap()).is_err());
    }

    #[test]
    fn canonical_lower_of_rescaled_basis() {
        let u = y121();
        let upper = SquareMatrix::from_i64(&[&[2, 1, -3], &[0, 5, 7], &[0, 0, -1]]).unwrap();
        let b = BorelPoint::new(&u * &upper).unwrap();
        assert_eq!(b.canonical_lower(), Some(&u));
        assert!(BorelPoint::anti_standard(3).canonical_lower().is_none());
    }

    #[test]
    fn positive_and_negative_parts() {
        let u = y121();
        assert!(is_in_b_pos(&borel_from_lower(&u).unwrap()));
        assert!(!is_in_b_pos(&BorelPoint::standard(3)));
        let inv = borel_from_lower(&u.inverse().unwrap()).unwrap();
        assert!(is_in_b_neg(&inv));
        assert!(!is_in_b_pos(&inv));
        assert!(!is_in_b_neg(&borel_from_lower(&u).unwrap()));
        assert!(!is_in_b_neg(&BorelPoint::anti_standard(3)));
    }

    #[test]
    fn tilde_examples() {
        let u = lower3(int(-2), int(-2), int(1));
        let expected = SquareMatrix::from_rows(vec![
            vec![int(1), rat(-2, 3), int(1)],
            vec![int(0), int(1), int(-2)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(tilde_map(&u).unwrap(), expected);

        let x = rat(-3, 5);
        let u2 = y_gen(2, 1, &x).unwrap();
        let expected = SquareMatrix::from_rows(vec![vec![int(1), x.recip()], vec![int(0), int(1)]]).unwrap();
        assert_eq!(tilde_map(&u2).unwrap(), expected);

        // u B+ u^{-1} = ũ B- ũ^{-1} as flags
        let t = tilde_map(&u).unwrap();
        let lhs = BorelPoint::standard(3).transform(&u).unwrap();
        let rhs = BorelPoint::anti_standard(3).transform(&t).unwrap();
        assert!(flag_equal(&lhs, &rhs));

        assert!(matches!(tilde_map(&y121()), Err(Error::Precondition(_))));
        assert!(matches!(
            tilde_map(&SquareMatrix::identity(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tilde_gl3_closed_form_on_a_grid() {
        // x, y < 0, z > 0, xy - z > 0
        for (x, y) in [(-1, -1), (-2, -5), (-7, -3)] {
            for zq in [(1, 3), (1, 2), (2, 3)] {
                let (x, y) = (int(x), int(y));
                let z = rat(zq.0, zq.1) * &x * &y;
                let u = lower3(x.clone(), y.clone(), z.clone());
                let d = &x * &y - &z;
                let closed = SquareMatrix::from_rows(vec![
                    vec![int(1), &y / &d, z.recip()],
                    vec![int(0), int(1), &x / &z],
                    vec![int(0), int(0), int(1)],
                ])
                .unwrap();
                assert_eq!(tilde_map(&u).unwrap(), closed);
            }
        }
    }

    #[test]
    fn opposedness() {
        assert!(are_opposed(&BorelPoint::standard(4), &BorelPoint::anti_standard(4)));
        assert!(!are_opposed(&BorelPoint::standard(3), &BorelPoint::standard(3)));
        let u = y121();
        let pair = FlagPairClass::from_unipotents(&u, &u).unwrap();
        assert!(are_opposed(pair.first(), pair.second()));
        assert_eq!(pair.u(), &u);
        assert_eq!(pair.v(), &u);
        assert!(FlagPairClass::new(pair.second().clone(), pair.first().clone()).is_err());
    }

    #[test]
    fn stabilizer() {
        let upper = SquareMatrix::from_i64(&[&[2, 1], &[0, 3]]).unwrap();
        assert!(stabilizes(&upper, &BorelPoint::standard(2)));
        assert!(!stabilizes(&upper, &BorelPoint::anti_standard(2)));
        assert!(stabilizes(&upper.transpose(), &BorelPoint::anti_standard(2)));
    }
}
