use std::fmt;

use num_traits::Zero;

use super::{Rational, SquareMatrix};
use crate::error::{Error, Result};

/// Row and column selection of a minor. Indices are 0-based and strictly
/// increasing; `Display` prints them 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::Dimension(format!(
                "minor needs equally many rows and columns (got {} and {})",
                rows.len(),
                cols.len()
            )));
        }
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::Precondition("minor indices must be strictly increasing".into()));
        }
        Ok(MinorIndex { rows, cols })
    }

    /// Whole-matrix index, whose minor is the determinant.
    pub fn full(n: usize) -> Self {
        MinorIndex {
            rows: (0..n).collect(),
            cols: (0..n).collect(),
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Both index sets are runs of consecutive integers.
    pub fn is_solid(&self) -> bool {
        let run = |v: &[usize]| v.windows(2).all(|w| w[1] == w[0] + 1);
        run(&self.rows) && run(&self.cols)
    }

    fn masks(&self) -> (usize, usize) {
        let mask = |v: &[usize]| v.iter().fold(0usize, |m, &k| m | (1 << k));
        (mask(&self.rows), mask(&self.cols))
    }
}

impl fmt::Display for MinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[usize]| v.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "rows {{{}}} cols {{{}}}", show(&self.rows), show(&self.cols))
    }
}

/// Exact value of one minor.
pub fn minor(g: &SquareMatrix, idx: &MinorIndex) -> Result<Rational> {
    Ok(g.submatrix(&idx.rows, &idx.cols)?.determinant())
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Largest dimension for which the bitmask table is used; beyond it every
/// minor is evaluated independently.
const TABLE_MAX_N: usize = 8;

/// Every minor of a matrix, computed size by size with Laplace expansion along
/// the first selected row. A size-`k` minor costs `k` products of entries with
/// already-known size-`k-1` minors, so no division is ever performed.
pub struct MinorTable {
    n: usize,
    values: Vec<Rational>,
}

impl MinorTable {
    pub fn get(&self, idx: &MinorIndex) -> &Rational {
        let (r, c) = idx.masks();
        &self.values[(r << self.n) | c]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Computes the full minor table. Panics for `n > 8`.
pub fn all_minors(g: &SquareMatrix) -> MinorTable {
    assert!(g.n() <= TABLE_MAX_N, "minor table limited to n <= {TABLE_MAX_N}");
    scan_minors(g, |_, _| true, true)
        .1
        .expect("table is filled when the scan is not interrupted")
}

/// Visits every minor in canonical order (size, then rows, then columns, each
/// lexicographic) and stops at the first one for which `accept` is false,
/// returning it. A completed scan also returns the full table when
/// `keep_table` is set.
pub(crate) fn scan_minors(
    g: &SquareMatrix,
    mut accept: impl FnMut(&MinorIndex, &Rational) -> bool,
    keep_table: bool,
) -> (Option<(MinorIndex, Rational)>, Option<MinorTable>) {
    let n = g.n();
    if n > TABLE_MAX_N {
        for k in 1..=n {
            let sets = subsets(n, k);
            for rows in &sets {
                for cols in &sets {
                    let idx = MinorIndex::new(rows.clone(), cols.clone()).expect("subsets are increasing");
                    let v = minor(g, &idx).expect("subsets are in range");
                    if !accept(&idx, &v) {
                        return (Some((idx, v)), None);
                    }
                }
            }
        }
        return (None, None);
    }

    let mut values = vec![Rational::zero(); 1 << (2 * n)];
    let at = |r: usize, c: usize| (r << n) | c;
    for k in 1..=n {
        let sets = subsets(n, k);
        for rows in &sets {
            let rmask = rows.iter().fold(0usize, |m, &i| m | (1 << i));
            let first = rows[0];
            let rest = rmask & !(1 << first);
            for cols in &sets {
                let cmask = cols.iter().fold(0usize, |m, &j| m | (1 << j));
                let v = if k == 1 {
                    g.get(first, cols[0]).clone()
                } else {
                    let mut acc = Rational::zero();
                    for (pos, &c) in cols.iter().enumerate() {
                        let e = g.get(first, c);
                        if e.is_zero() {
                            continue;
                        }
                        let sub = &values[at(rest, cmask & !(1 << c))];
                        if sub.is_zero() {
                            continue;
                        }
                        if pos % 2 == 0 {
                            acc += e * sub;
                        } else {
                            acc -= e * sub;
                        }
                    }
                    acc
                };
                let idx = MinorIndex {
                    rows: rows.clone(),
                    cols: cols.clone(),
                };
                if !accept(&idx, &v) {
                    return (Some((idx, v)), None);
                }
                values[at(rmask, cmask)] = v;
            }
        }
    }
    (None, keep_table.then_some(MinorTable { n, values }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;

    /// Cofactor expansion, written independently of both Bareiss and the
    /// bitmask table.
    fn cofactor_det(rows: &[Vec<Rational>]) -> Rational {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let sub: Vec<Vec<Rational>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][j] * cofactor_det(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn y(n: usize, i: usize) -> SquareMatrix {
        let mut m = SquareMatrix::identity(n);
        m.set(i, i - 1, int(1));
        m
    }

    #[test]
    fn minor_examples() {
        let i3 = SquareMatrix::identity(3);
        assert_eq!(
            minor(&i3, &MinorIndex::new(vec![0, 1], vec![0, 1]).unwrap()).unwrap(),
            int(1)
        );
        let g = SquareMatrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(minor(&g, &MinorIndex::full(2)).unwrap(), int(-2));
        assert!(matches!(
            minor(&i3, &MinorIndex::new(vec![0, 3], vec![0, 1]).unwrap()),
            Err(Error::OutOfRange(_))
        ));
        assert!(MinorIndex::new(vec![1, 0], vec![0, 1]).is_err());
        assert!(MinorIndex::new(vec![0], vec![0, 1]).is_err());
    }

    #[test]
    fn bidiagonal_product_minor_matches_cofactor_oracle() {
        // y1(1) y2(1) y3(1) y1(1) in GL4, rows {2,3}, cols {1,2}
        let g = &(&(&y(4, 1) * &y(4, 2)) * &y(4, 3)) * &y(4, 1);
        let idx = MinorIndex::new(vec![1, 2], vec![0, 1]).unwrap();
        let sub: Vec<Vec<Rational>> = [1, 2]
            .iter()
            .map(|&i| vec![g.get(i, 0).clone(), g.get(i, 1).clone()])
            .collect();
        let expected = cofactor_det(&sub);
        assert_eq!(minor(&g, &idx).unwrap(), expected);
        assert_eq!(all_minors(&g).get(&idx), &expected);
    }

    #[test]
    fn table_agrees_with_cofactor_oracle() {
        let g = SquareMatrix::from_i64(&[&[2, -1, 3, 0], &[1, 4, -2, 5], &[0, 3, 1, -1], &[-3, 2, 2, 1]]).unwrap();
        let table = all_minors(&g);
        for k in 1..=4 {
            for rows in subsets(4, k) {
                for cols in subsets(4, k) {
                    let sub: Vec<Vec<Rational>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| g.get(i, j).clone()).collect())
                        .collect();
                    let idx = MinorIndex::new(rows.clone(), cols).unwrap();
                    assert_eq!(table.get(&idx), &cofactor_det(&sub), "{idx}");
                }
            }
        }
        assert_eq!(table.get(&MinorIndex::full(4)), &g.determinant());
    }

    #[test]
    fn scan_stops_at_first_rejection_in_canonical_order() {
        let g = SquareMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        let (hit, table) = scan_minors(&g, |_, v| *v > Rational::zero(), true);
        assert_eq!(hit.unwrap().0, MinorIndex::new(vec![1], vec![0]).unwrap());
        assert!(table.is_none());
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn solid_indices() {
        assert!(MinorIndex::new(vec![1, 2], vec![0, 1]).unwrap().is_solid());
        assert!(!MinorIndex::new(vec![0, 2], vec![0, 1]).unwrap().is_solid());
        assert_eq!(
            MinorIndex::new(vec![0, 2], vec![1, 2]).unwrap().to_string(),
            "rows {1,3} cols {2,3}"
        );
    }
}
