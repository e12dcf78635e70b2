use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{to_f64, Rational};
use crate::error::{Error, Result};

/// Dense `n x n` matrix over the rationals, stored row-major.
///
/// Indices are 0-based throughout the Rust API.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl SquareMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {n}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Ok(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        let n = columns.len();
        if n == 0 || columns.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension("columns do not form a square matrix".into()));
        }
        Ok(Self::from_fn(n, |i, j| columns[j][i].clone()))
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Rational::zero())
    }

    /// The permutation matrix of `i -> n-1-i`; its column flag is the
    /// anti-standard flag.
    pub fn anti_identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i + j == n - 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        Self::from_fn(entries.len(), |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Square submatrix on the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::Dimension(format!(
                "submatrix needs equally many rows and columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        if let Some(&bad) = rows.iter().chain(cols).find(|&&k| k >= self.n) {
            return Err(Error::OutOfRange(format!(
                "index {} exceeds dimension {}",
                bad + 1,
                self.n
            )));
        }
        Ok(Self::from_fn(rows.len(), |i, j| self.get(rows[i], cols[j]).clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries_where(|i, j| i != j).all(Zero::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries_where(|i, j| i > j).all(Zero::is_zero)
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries_where(|i, j| i < j).all(Zero::is_zero)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_lower_triangular() && self.entries_where(|i, j| i == j).all(One::is_one)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_upper_triangular() && self.entries_where(|i, j| i == j).all(One::is_one)
    }

    /// True iff every row and every column holds exactly one nonzero entry.
    pub fn is_monomial(&self) -> bool {
        let n = self.n;
        let row_ok = (0..n).all(|i| self.row(i).iter().filter(|v| !v.is_zero()).count() == 1);
        let col_ok = (0..n).all(|j| (0..n).filter(|&i| !self.get(i, j).is_zero()).count() == 1);
        row_ok && col_ok
    }

    fn entries_where(&self, keep: impl Fn(usize, usize) -> bool) -> impl Iterator<Item = &Rational> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(move |(k, _)| keep(k / n, k % n))
            .map(|(_, v)| v)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled by the lcm of its denominators so that the
    /// elimination runs over the integers; the scale factors are divided out at
    /// the end.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                scale *= &l;
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect();

        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let det = Rational::new(a[n - 1][n - 1].clone(), scale);
        if negate {
            -det
        } else {
            det
        }
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, p);
            inv.swap(k, p);
            let piv = a[k][k].clone();
            for j in 0..n {
                a[k][j] /= &piv;
                inv[k][j] /= &piv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let (ak, ik) = (a[k][j].clone(), inv[k][j].clone());
                    a[i][j] -= &f * ak;
                    inv[i][j] -= &f * ik;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Solves `self * x = rhs` for invertible `self`.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if rhs.len() != self.n {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                rhs.len(),
                self.n
            )));
        }
        let n = self.n;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, p);
            let pivot = a[k].clone();
            for row in a.iter_mut().skip(k + 1) {
                if row[k].is_zero() {
                    continue;
                }
                let f = &row[k] / &pivot[k];
                for (x, y) in row[k..].iter_mut().zip(&pivot[k..]) {
                    *x -= &f * y;
                }
            }
        }
        let mut x = vec![Rational::zero(); n];
        for k in (0..n).rev() {
            let s = (k + 1..n).fold(a[k][n].clone(), |acc, j| acc - &a[k][j] * &x[j]);
            x[k] = s / &a[k][k];
        }
        Ok(x)
    }

    /// Reduced row echelon form together with the pivot columns.
    fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let n = self.n;
        let mut a = self.rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].clone();
            for x in &mut a[r][c..] {
                *x /= &piv;
            }
            let pivot = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column; empty iff
    /// the matrix is invertible.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let (a, pivots) = self.rref();
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); n];
                v[free] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][free].clone();
                }
                v
            })
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).iter().map(to_f64).collect()).collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        SquareMatrix::from_fn(n, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..n {
                let (a, b) = (self.get(i, k), rhs.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        })
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix sum");
        SquareMatrix::from_fn(self.n, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix difference");
        SquareMatrix::from_fn(self.n, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

/// Writes the plain-text matrix file format: `n` on the first line, then one
/// whitespace-separated row per line.
impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

impl std::str::FromStr for SquareMatrix {
    type Err = Error;

    /// Parses the matrix file format written by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first token must be the dimension n".into()))?;
        if n == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        let entries = tokens.map(super::parse_rational).collect::<Result<Vec<_>>>()?;
        if entries.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        Ok(SquareMatrix { n, data: entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{int, rat};

    fn m(rows: &[&[i64]]) -> SquareMatrix {
        SquareMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(SquareMatrix::identity(4).determinant(), int(1));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), int(-2));
        assert_eq!(
            SquareMatrix::diagonal(&[int(2), int(1), rat(1, 2)]).determinant(),
            int(1)
        );
        // needs a pivot swap
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), int(0));
        let q = SquareMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 5), rat(1, 7)]]).unwrap();
        assert_eq!(q.determinant(), rat(1, 14) - rat(1, 15));
    }

    #[test]
    fn inverse_and_singularity() {
        let i3 = SquareMatrix::identity(3);
        assert_eq!(i3.inverse().unwrap(), i3);
        let y = m(&[&[1, 0], &[5, 1]]);
        assert_eq!(y.inverse().unwrap(), m(&[&[1, 0], &[-5, 1]]));
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
        let g = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert!((&g * &g.inverse().unwrap()).is_identity());
    }

    #[test]
    fn solve_matches_inverse() {
        let g = m(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        let b = vec![int(1), int(2), int(3)];
        let x = g.solve(&b).unwrap();
        assert_eq!(g.mul_vec(&x), b);
        assert_eq!(x, g.inverse().unwrap().mul_vec(&b));
    }

    #[test]
    fn kernel_cases() {
        assert!(SquareMatrix::identity(3).kernel_basis().is_empty());
        let k = SquareMatrix::zeros(2).kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(SquareMatrix::from_columns(&k).unwrap().rank(), 2);
        let d = SquareMatrix::diagonal(&[int(2), int(1)]);
        let shifted = &d - &SquareMatrix::identity(2).scale(&int(2));
        let k = shifted.kernel_basis();
        assert_eq!(k, vec![vec![int(1), int(0)]]);
        let g = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        for v in g.kernel_basis() {
            assert!(g.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn structural_predicates() {
        assert!(m(&[&[1, 0], &[7, 1]]).is_lower_unitriangular());
        assert!(!m(&[&[2, 0], &[7, 1]]).is_lower_unitriangular());
        assert!(m(&[&[1, 3], &[0, 1]]).is_upper_unitriangular());
        assert!(m(&[&[0, 3], &[-2, 0]]).is_monomial());
        assert!(!m(&[&[1, 3], &[0, 1]]).is_monomial());
        assert!(SquareMatrix::anti_identity(3).is_monomial());
    }

    #[test]
    fn matrix_file_round_trip() {
        let g = SquareMatrix::from_rows(vec![vec![rat(3, 2), int(-1)], vec![int(0), rat(7, 9)]]).unwrap();
        let text = g.to_string();
        assert_eq!(text, "2\n3/2 -1\n0 7/9\n");
        assert_eq!(text.parse::<SquareMatrix>().unwrap(), g);
        assert!("2\n1 2 3".parse::<SquareMatrix>().is_err());
        assert!("0".parse::<SquareMatrix>().is_err());
    }
}
