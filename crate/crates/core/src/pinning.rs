//! The standard pinning of `GL_n`: Chevalley generators, reduced words for the
//! longest permutation, Lusztig coordinates on the totally positive unipotent
//! parts, membership tests by minors, and the simple characters of the torus.
//!
//! Generator indices `i` are 1-based (`1 <= i <= n-1`) as in the usual
//! notation; matrix indices are 0-based.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{minor, scan_minors, MinorIndex, Rational, SquareMatrix};

/// Which unipotent radical a word lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// Upper unitriangular, generated by the `x_i`.
    Upper,
    /// Lower unitriangular, generated by the `y_i`.
    Lower,
}

/// Number of positive roots of `GL_n`, the length of the longest permutation.
pub fn longest_length(n: usize) -> usize {
    n * (n - 1) / 2
}

/// One-line notation (0-based) of `s_{i_1} s_{i_2} ... s_{i_k}`, where `s_i`
/// swaps `i-1` and `i`.
pub fn word_permutation(n: usize, letters: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in letters {
        perm.swap(i - 1, i);
    }
    perm
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len())
        .map(|a| (a + 1..perm.len()).filter(|&b| perm[a] > perm[b]).count())
        .sum()
}

/// True iff `letters` has length `n(n-1)/2`, uses only `1..n-1`, and
/// multiplies out to a permutation with that many inversions.
pub fn validate_reduced_word(n: usize, letters: &[usize]) -> bool {
    let nu = longest_length(n);
    letters.len() == nu
        && letters.iter().all(|&i| (1..n).contains(&i))
        && inversions(&word_permutation(n, letters)) == nu
}

/// A reduced word for the longest element of the symmetric group `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("GL_{n} has no simple roots")));
        }
        if !validate_reduced_word(n, &letters) {
            return Err(Error::InvalidWord(format!("{letters:?} for n = {n}")));
        }
        Ok(ReducedWord { n, letters })
    }

    /// `(1, 2, 1, 3, 2, 1, ..., n-1, ..., 1)`.
    pub fn standard(n: usize) -> Self {
        let letters = (1..n).flat_map(|k| (1..=k).rev()).collect();
        ReducedWord::new(n, letters).expect("the standard word is reduced")
    }

    /// Every reduced word of the longest element, in lexicographic order.
    /// There are 1, 1, 2, 16, 768 of them for `n = 1..=5`.
    pub fn all(n: usize) -> Vec<Self> {
        fn extend(n: usize, prefix: &mut Vec<usize>, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == longest_length(n) {
                out.push(prefix.clone());
                return;
            }
            for i in 1..n {
                // right multiplication by s_i lengthens iff no descent at i
                if perm[i - 1] < perm[i] {
                    perm.swap(i - 1, i);
                    prefix.push(i);
                    extend(n, prefix, perm, out);
                    prefix.pop();
                    perm.swap(i - 1, i);
                }
            }
        }
        let mut out = Vec::new();
        extend(n, &mut Vec::new(), &mut (0..n).collect(), &mut out);
        out.into_iter().map(|letters| ReducedWord { n, letters }).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The reversed word, again reduced.
    pub fn reversed(&self) -> Self {
        ReducedWord {
            n: self.n,
            letters: self.letters.iter().rev().copied().collect(),
        }
    }
}

/// A point of `U^+_{>0}` or `U^-_{>0}` in Lusztig coordinates along a reduced
/// word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyWord {
    word: ReducedWord,
    params: Vec<Rational>,
    sign: Sign,
}

impl ChevalleyWord {
    pub fn new(word: ReducedWord, params: Vec<Rational>, sign: Sign) -> Result<Self> {
        if params.len() != word.len() {
            return Err(Error::Dimension(format!(
                "{} parameters for a word of length {}",
                params.len(),
                word.len()
            )));
        }
        if let Some(bad) = params.iter().find(|a| !a.is_positive()) {
            return Err(Error::NonPositive(bad.to_string()));
        }
        Ok(ChevalleyWord { word, params, sign })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
}

/// Nonzero diagonal element `diag(t_1, ..., t_n)` of the maximal torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    diag: Vec<Rational>,
}

impl TorusElement {
    pub fn new(diag: Vec<Rational>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Dimension("empty torus element".into()));
        }
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::Precondition("torus coordinates must be nonzero".into()));
        }
        Ok(TorusElement { diag })
    }

    pub fn diag(&self) -> &[Rational] {
        &self.diag
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Member of `T_{>0}`.
    pub fn is_positive(&self) -> bool {
        self.diag.iter().all(Signed::is_positive)
    }

    pub fn matrix(&self) -> SquareMatrix {
        SquareMatrix::diagonal(&self.diag)
    }

    pub fn inverse(&self) -> TorusElement {
        TorusElement {
            diag: self.diag.iter().map(|t| t.recip()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Result<TorusElement> {
        TorusElement::new(self.diag.iter().map(|t| t * c).collect())
    }
}

/// Outcome of a positivity test, with the first offending minor when the
/// verdict is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub verdict: bool,
    pub witness: Option<(MinorIndex, Rational)>,
}

impl PositivityReport {
    fn from_witness(witness: Option<(MinorIndex, Rational)>) -> Self {
        PositivityReport {
            verdict: witness.is_none(),
            witness,
        }
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if (1..n).contains(&i) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "generator index {i} outside 1..={}",
            n.saturating_sub(1)
        )))
    }
}

/// `x_i(a)`: identity plus `a` in position `(i, i+1)`.
pub fn x_gen(n: usize, i: usize, a: &Rational) -> Result<SquareMatrix> {
    check_generator(n, i)?;
    let mut m = SquareMatrix::identity(n);
    m.set(i - 1, i, a.clone());
    Ok(m)
}

/// `y_i(a)`: identity plus `a` in position `(i+1, i)`.
pub fn y_gen(n: usize, i: usize, a: &Rational) -> Result<SquareMatrix> {
    check_generator(n, i)?;
    let mut m = SquareMatrix::identity(n);
    m.set(i, i - 1, a.clone());
    Ok(m)
}

/// Right-multiplies by a generator in place: a column operation.
fn apply_generator(m: &mut SquareMatrix, sign: Sign, i: usize, a: &Rational) {
    let n = m.n();
    for r in 0..n {
        match sign {
            // col_{i+1} += a col_i
            Sign::Upper => {
                let v = m.get(r, i) + a * m.get(r, i - 1);
                m.set(r, i, v);
            }
            // col_i += a col_{i+1}
            Sign::Lower => {
                let v = m.get(r, i - 1) + a * m.get(r, i);
                m.set(r, i - 1, v);
            }
        }
    }
}

/// Ordered product of generators along the word.
pub fn unipotent_from_word(c: &ChevalleyWord) -> SquareMatrix {
    let mut m = SquareMatrix::identity(c.word.n);
    for (&i, a) in c.word.letters.iter().zip(&c.params) {
        apply_generator(&mut m, c.sign, i, a);
    }
    m
}

/// `u+ t u-`, an element of `G_{>0}`.
pub fn g_pos_from_factors(upper: &ChevalleyWord, t: &TorusElement, lower: &ChevalleyWord) -> Result<SquareMatrix> {
    if upper.sign != Sign::Upper || lower.sign != Sign::Lower {
        return Err(Error::Precondition(
            "expected an upper word, a torus element, then a lower word".into(),
        ));
    }
    if !t.is_positive() {
        return Err(Error::NonPositive("torus element is not in T_{>0}".into()));
    }
    let n = upper.word.n;
    if t.n() != n || lower.word.n != n {
        return Err(Error::Dimension("factors have different sizes".into()));
    }
    Ok(&(&unipotent_from_word(upper) * &t.matrix()) * &unipotent_from_word(lower))
}

/// Exhaustive test of `g in G_{>0}`: every minor of every size is strictly
/// positive. The witness is the first non-positive minor in canonical order.
pub fn is_in_g_pos(g: &SquareMatrix) -> PositivityReport {
    let (witness, _) = scan_minors(g, |_, v| v.is_positive(), false);
    PositivityReport::from_witness(witness)
}

/// Fekete-style shortcut: only minors on consecutive rows and consecutive
/// columns. Must agree with [`is_in_g_pos`].
pub fn is_in_g_pos_solid(g: &SquareMatrix) -> PositivityReport {
    let n = g.n();
    for k in 1..=n {
        for r0 in 0..=n - k {
            for c0 in 0..=n - k {
                let idx = MinorIndex::new((r0..r0 + k).collect(), (c0..c0 + k).collect()).expect("runs are increasing");
                let v = minor(g, &idx).expect("runs are in range");
                if !v.is_positive() {
                    return PositivityReport::from_witness(Some((idx, v)));
                }
            }
        }
    }
    PositivityReport::from_witness(None)
}

/// Minors of a lower unitriangular matrix vanish identically unless, after
/// sorting, every selected column is at most the matching selected row.
pub fn is_structurally_nonzero(idx: &MinorIndex, sign: Sign) -> bool {
    let (big, small) = match sign {
        Sign::Lower => (idx.rows(), idx.cols()),
        Sign::Upper => (idx.cols(), idx.rows()),
    };
    small.iter().zip(big).all(|(s, b)| s <= b)
}

/// Test of `u in U^±_{>0}`: every minor that is not identically zero on the
/// unitriangular group is strictly positive, and the others are exactly zero.
pub fn is_in_u_pos(u: &SquareMatrix, sign: Sign) -> Result<PositivityReport> {
    let ok = match sign {
        Sign::Lower => u.is_lower_unitriangular(),
        Sign::Upper => u.is_upper_unitriangular(),
    };
    if !ok {
        return Err(Error::Precondition(format!("matrix is not {sign:?} unitriangular")));
    }
    let accept = |idx: &MinorIndex, v: &Rational| {
        if is_structurally_nonzero(idx, sign) {
            v.is_positive()
        } else {
            v.is_zero()
        }
    };
    let (witness, _) = scan_minors(u, accept, false);
    Ok(PositivityReport::from_witness(witness))
}

/// Test of `u in U^±_{<0}`, i.e. `u^{-1} in U^±_{>0}`. The witness refers to
/// a minor of the inverse.
pub fn is_in_u_neg(u: &SquareMatrix, sign: Sign) -> Result<PositivityReport> {
    is_in_u_pos(&u.inverse()?, sign)
}

/// Simple character `chi_i(t) = t_i / t_{i+1}`, the scalar with
/// `t x_i(a) t^{-1} = x_i(chi_i(t) a)`.
pub fn chi(i: usize, t: &TorusElement) -> Result<Rational> {
    check_generator(t.n(), i)?;
    Ok(&t.diag[i - 1] / &t.diag[i])
}

/// `t in T^p_{>0}`: positive coordinates and `chi_i(t) > p` for every `i`.
pub fn is_in_t_p_pos(t: &TorusElement, p: &Rational) -> bool {
    t.is_positive() && (1..t.n()).all(|i| &(&t.diag[i - 1] / &t.diag[i]) > p)
}

/// Smallest simple character value, `min_i chi_i(t)`; `None` for `n = 1`.
pub fn min_chi(t: &TorusElement) -> Option<Rational> {
    (1..t.n()).map(|i| &t.diag[i - 1] / &t.diag[i]).min()
}

/// Recovers the coordinates of a unitriangular matrix along `word`, so that
/// the product of generators with the returned parameters is `u` exactly.
///
/// Factors are peeled off from the right. If `u = u' y_i(a)` with `u'` in the
/// cell of the shorter word, the minor on rows `w{1..i}` and columns `{1..i}`
/// vanishes on `u'`, which makes `a` a ratio of two minors of `u`.
pub fn lusztig_coordinates(u: &SquareMatrix, sign: Sign, word: &ReducedWord) -> Result<Vec<Rational>> {
    if word.n != u.n() {
        return Err(Error::Dimension(format!(
            "word is for n = {}, matrix has n = {}",
            word.n,
            u.n()
        )));
    }
    if sign == Sign::Upper {
        // (x_{i1}(a1) ... x_{ik}(ak))^T = y_{ik}(ak) ... y_{i1}(a1)
        let mut params = lusztig_coordinates(&u.transpose(), Sign::Lower, &word.reversed())?;
        params.reverse();
        return Ok(params);
    }
    if !u.is_lower_unitriangular() {
        return Err(Error::Precondition("matrix is not lower unitriangular".into()));
    }
    let n = u.n();
    let mut rest = u.clone();
    let mut letters = word.letters.clone();
    let mut params = Vec::with_capacity(letters.len());
    while let Some(&i) = letters.last() {
        let perm = word_permutation(n, &letters);
        let mut rows: Vec<usize> = perm[..i].to_vec();
        rows.sort_unstable();
        let cols_num: Vec<usize> = (0..i).collect();
        let mut cols_den: Vec<usize> = (0..i - 1).collect();
        cols_den.push(i);
        let num = minor(&rest, &MinorIndex::new(rows.clone(), cols_num)?)?;
        let den = minor(&rest, &MinorIndex::new(rows, cols_den)?)?;
        if den.is_zero() {
            return Err(Error::Precondition(format!(
                "matrix is not in the cell of the word {:?}",
                word.letters
            )));
        }
        let a = num / den;
        apply_generator(&mut rest, Sign::Lower, i, &-a.clone());
        params.push(a);
        letters.pop();
    }
    if !rest.is_identity() {
        return Err(Error::Precondition(format!(
            "matrix is not a product along the word {:?}",
            word.letters
        )));
    }
    params.reverse();
    Ok(params)
}

/// Positive Lusztig coordinates along `word`, or an error when some
/// coordinate is not positive.
pub fn refactor_positive(u: &SquareMatrix, sign: Sign, word: &ReducedWord) -> Result<ChevalleyWord> {
    let params = lusztig_coordinates(u, sign, word)?;
    ChevalleyWord::new(word.clone(), params, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat};
    use num_traits::One;

    fn unit_params(k: usize) -> Vec<Rational> {
        vec![Rational::one(); k]
    }

    fn word(n: usize, letters: &[usize]) -> ReducedWord {
        ReducedWord::new(n, letters.to_vec()).unwrap()
    }

    /// Direct ordered product of explicit generator matrices.
    fn product_oracle(n: usize, letters: &[usize], params: &[Rational], sign: Sign) -> SquareMatrix {
        letters
            .iter()
            .zip(params)
            .fold(SquareMatrix::identity(n), |acc, (&i, a)| {
                let gen = match sign {
                    Sign::Upper => x_gen(n, i, a).unwrap(),
                    Sign::Lower => y_gen(n, i, a).unwrap(),
                };
                &acc * &gen
            })
    }

    #[test]
    fn generators() {
        let a = rat(5, 3);
        assert_eq!(
            x_gen(2, 1, &a).unwrap(),
            SquareMatrix::from_rows(vec![vec![int(1), a.clone()], vec![int(0), int(1)]]).unwrap()
        );
        let x2 = x_gen(3, 2, &a).unwrap();
        assert_eq!(x2.get(1, 2), &a);
        assert_eq!(x2.get(0, 1), &int(0));
        assert!(x_gen(4, 3, &int(0)).unwrap().is_identity());
        assert_eq!(
            y_gen(2, 1, &a).unwrap(),
            SquareMatrix::from_rows(vec![vec![int(1), int(0)], vec![a.clone(), int(1)]]).unwrap()
        );
        assert_eq!(y_gen(3, 1, &a).unwrap().get(1, 0), &a);
        for i in 1..4 {
            assert_eq!(y_gen(4, i, &a).unwrap(), x_gen(4, i, &a).unwrap().transpose());
        }
        assert!(matches!(x_gen(3, 3, &a), Err(Error::OutOfRange(_))));
        assert!(matches!(y_gen(3, 0, &a), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn reduced_word_validation() {
        assert!(validate_reduced_word(2, &[1]));
        assert!(validate_reduced_word(3, &[1, 2, 1]));
        assert!(validate_reduced_word(3, &[2, 1, 2]));
        assert!(!validate_reduced_word(3, &[1, 1, 2]));
        assert!(!validate_reduced_word(3, &[1, 2]));
        assert!(!validate_reduced_word(3, &[1, 3, 1]));
        assert!(ReducedWord::new(3, vec![1, 1, 2]).is_err());
        let counts: Vec<usize> = (1..=5).map(|n| ReducedWord::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 16, 768]);
        for n in 2..=5 {
            assert_eq!(ReducedWord::standard(n).len(), longest_length(n));
            assert!(ReducedWord::all(n)
                .iter()
                .all(|w| validate_reduced_word(n, w.letters())));
        }
        // reversal preserves reducedness
        for w in ReducedWord::all(4) {
            assert!(validate_reduced_word(4, w.reversed().letters()));
        }
    }

    #[test]
    fn unipotent_products_match_direct_multiplication() {
        let (p, q, r) = (rat(2, 3), int(5), rat(1, 7));
        let c = ChevalleyWord::new(word(3, &[1, 2, 1]), vec![p.clone(), q.clone(), r.clone()], Sign::Lower).unwrap();
        let u = unipotent_from_word(&c);
        assert_eq!(u, product_oracle(3, &[1, 2, 1], c.params(), Sign::Lower));
        assert!(u.is_lower_unitriangular());
        assert_eq!(u.get(1, 0), &(&p + &r));
        assert_eq!(u.get(2, 0), &(&q * &r));
        assert_eq!(u.get(2, 1), &q);

        let c = ChevalleyWord::new(word(3, &[2, 1, 2]), unit_params(3), Sign::Upper).unwrap();
        let u = unipotent_from_word(&c);
        assert_eq!(u, product_oracle(3, &[2, 1, 2], c.params(), Sign::Upper));
        assert!(u.is_upper_unitriangular());

        let c = ChevalleyWord::new(word(2, &[1]), vec![rat(3, 4)], Sign::Lower).unwrap();
        assert_eq!(unipotent_from_word(&c), y_gen(2, 1, &rat(3, 4)).unwrap());

        assert!(matches!(
            ChevalleyWord::new(word(2, &[1]), vec![int(0)], Sign::Lower),
            Err(Error::NonPositive(_))
        ));
        assert!(ChevalleyWord::new(word(2, &[1]), vec![int(1), int(1)], Sign::Lower).is_err());
    }

    #[test]
    fn g_pos_examples() {
        let x = ChevalleyWord::new(word(2, &[1]), unit_params(1), Sign::Upper).unwrap();
        let y = ChevalleyWord::new(word(2, &[1]), unit_params(1), Sign::Lower).unwrap();
        let t = TorusElement::new(vec![int(1), int(1)]).unwrap();
        let g = g_pos_from_factors(&x, &t, &y).unwrap();
        assert_eq!(g, SquareMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap());
        assert!(is_in_g_pos(&g).verdict);

        let t = TorusElement::new(vec![int(2), int(1)]).unwrap();
        let g = g_pos_from_factors(&x, &t, &y).unwrap();
        let direct = &(&x_gen(2, 1, &int(1)).unwrap() * &t.matrix()) * &y_gen(2, 1, &int(1)).unwrap();
        assert_eq!(g, direct);
        assert_eq!(g, SquareMatrix::from_i64(&[&[3, 1], &[1, 1]]).unwrap());
        assert!(is_in_g_pos(&g).verdict);

        let w = ReducedWord::standard(3);
        let up = ChevalleyWord::new(w.clone(), vec![int(1), rat(1, 2), int(3)], Sign::Upper).unwrap();
        let lo = ChevalleyWord::new(w, vec![int(2), int(1), rat(1, 3)], Sign::Lower).unwrap();
        let t = TorusElement::new(vec![int(3), int(2), rat(1, 2)]).unwrap();
        let g = g_pos_from_factors(&up, &t, &lo).unwrap();
        assert!(is_in_g_pos(&g).verdict);
        assert!(is_in_g_pos_solid(&g).verdict);

        let bad_t = TorusElement::new(vec![int(-1), int(1)]).unwrap();
        assert!(g_pos_from_factors(&x, &bad_t, &y).is_err());
        assert!(g_pos_from_factors(&y, &t, &x).is_err());
    }

    #[test]
    fn g_pos_membership_examples() {
        let g = SquareMatrix::from_rows(vec![vec![rat(3, 2), rat(1, 2)], vec![rat(1, 2), rat(3, 2)]]).unwrap();
        assert!(is_in_g_pos(&g).verdict);
        let id = is_in_g_pos(&SquareMatrix::identity(3));
        assert!(!id.verdict);
        let (idx, v) = id.witness.unwrap();
        assert_eq!(idx, MinorIndex::new(vec![0], vec![1]).unwrap());
        assert_eq!(v, int(0));

        // perturb g_22 of a positive matrix so that only the solid minor on
        // rows {1,2}, cols {1,2} turns negative
        let mut g = SquareMatrix::from_i64(&[&[3, 2, 1], &[2, 3, 2], &[1, 2, 3]]).unwrap();
        assert!(is_in_g_pos(&g).verdict);
        g.set(1, 1, int(1));
        let report = is_in_g_pos(&g);
        assert!(!report.verdict);
        let (idx, v) = report.witness.unwrap();
        assert_eq!(idx, MinorIndex::new(vec![0, 1], vec![0, 1]).unwrap());
        assert_eq!(v, int(-1));
        assert!(!is_in_g_pos_solid(&g).verdict);
    }

    #[test]
    fn u_pos_examples() {
        let u = &(&y_gen(3, 1, &int(1)).unwrap() * &y_gen(3, 2, &int(1)).unwrap()) * &y_gen(3, 1, &int(1)).unwrap();
        assert!(is_in_u_pos(&u, Sign::Lower).unwrap().verdict);
        assert!(
            !is_in_u_pos(&y_gen(2, 1, &int(-1)).unwrap(), Sign::Lower)
                .unwrap()
                .verdict
        );
        let id = is_in_u_pos(&SquareMatrix::identity(2), Sign::Lower).unwrap();
        assert!(!id.verdict);
        assert_eq!(id.witness.unwrap().0, MinorIndex::new(vec![1], vec![0]).unwrap());
        assert!(matches!(
            is_in_u_pos(&SquareMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap(), Sign::Lower),
            Err(Error::Precondition(_))
        ));
        // a single y_i is not enough: the (3,1) entry of y1(1) y2(1) vanishes
        let short = &y_gen(3, 1, &int(1)).unwrap() * &y_gen(3, 2, &int(1)).unwrap();
        assert!(!is_in_u_pos(&short, Sign::Lower).unwrap().verdict);
        assert!(is_in_u_pos(&u.transpose(), Sign::Upper).unwrap().verdict);
        assert!(is_in_u_neg(&u.inverse().unwrap(), Sign::Lower).unwrap().verdict);
    }

    #[test]
    fn chi_and_cones() {
        let t = |v: &[i64]| TorusElement::new(v.iter().map(|&x| int(x)).collect()).unwrap();
        assert_eq!(chi(1, &t(&[2, 1])).unwrap(), int(2));
        assert_eq!(chi(2, &t(&[4, 2, 1])).unwrap(), int(2));
        for i in 1..4 {
            assert_eq!(chi(i, &t(&[7, 7, 7, 7])).unwrap(), int(1));
        }
        assert!(chi(3, &t(&[4, 2, 1])).is_err());
        // defining relation t x_i(a) t^{-1} = x_i(chi_i(t) a)
        let d = TorusElement::new(vec![int(5), rat(1, 3), int(2)]).unwrap();
        let a = rat(7, 2);
        for i in 1..3 {
            let lhs = &(&d.matrix() * &x_gen(3, i, &a).unwrap()) * &d.inverse().matrix();
            assert_eq!(lhs, x_gen(3, i, &(chi(i, &d).unwrap() * &a)).unwrap());
        }
        assert!(is_in_t_p_pos(&t(&[4, 2, 1]), &int(1)));
        assert!(!is_in_t_p_pos(&t(&[4, 2, 1]), &int(2)));
        assert!(!is_in_t_p_pos(&t(&[1, 2]), &int(1)));
        assert!(!is_in_t_p_pos(&t(&[1, 2]), &int(3)));
        assert!(!is_in_t_p_pos(&t(&[-4, -2]), &int(1)));
        assert_eq!(min_chi(&t(&[8, 2, 1])), Some(int(2)));
    }

    #[test]
    fn lusztig_coordinates_between_words() {
        // y1(p) y2(q) y1(r) = y2(qr/(p+r)) y1(p+r) y2(pq/(p+r))
        let (p, q, r) = (int(2), rat(1, 3), int(5));
        let c = ChevalleyWord::new(word(3, &[1, 2, 1]), vec![p.clone(), q.clone(), r.clone()], Sign::Lower).unwrap();
        let u = unipotent_from_word(&c);
        let s = &p + &r;
        let expected = vec![&q * &r / &s, s.clone(), &p * &q / &s];
        assert_eq!(
            lusztig_coordinates(&u, Sign::Lower, &word(3, &[2, 1, 2])).unwrap(),
            expected
        );
        assert_eq!(
            lusztig_coordinates(&u, Sign::Lower, &word(3, &[1, 2, 1])).unwrap(),
            c.params()
        );

        let up = ChevalleyWord::new(word(3, &[2, 1, 2]), vec![int(1), int(2), int(3)], Sign::Upper).unwrap();
        let v = unipotent_from_word(&up);
        let re = refactor_positive(&v, Sign::Upper, &word(3, &[1, 2, 1])).unwrap();
        assert_eq!(unipotent_from_word(&re), v);

        // y1(1) y2(1) has a zero coordinate along (1,2,1) and none along (2,1,2)
        let short = &y_gen(3, 1, &int(1)).unwrap() * &y_gen(3, 2, &int(1)).unwrap();
        let w121 = word(3, &[1, 2, 1]);
        assert_eq!(
            lusztig_coordinates(&short, Sign::Lower, &w121).unwrap(),
            vec![int(1), int(1), int(0)]
        );
        assert!(matches!(
            refactor_positive(&short, Sign::Lower, &w121),
            Err(Error::NonPositive(_))
        ));
        assert!(lusztig_coordinates(&short, Sign::Lower, &word(3, &[2, 1, 2])).is_err());
    }

    #[test]
    fn all_words_of_gl4_recover_each_other() {
        let words = ReducedWord::all(4);
        let params: Vec<Rational> = (1..=6).map(|k| rat(k, 7 - k)).collect();
        for w1 in &words {
            let u = unipotent_from_word(&ChevalleyWord::new(w1.clone(), params.clone(), Sign::Lower).unwrap());
            for w2 in &words {
                let c = refactor_positive(&u, Sign::Lower, w2).unwrap();
                assert_eq!(unipotent_from_word(&c), u);
            }
        }
    }
}
