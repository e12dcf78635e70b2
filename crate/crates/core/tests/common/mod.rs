// Shared test oracles. Each file includes this with `mod common;`.
#![allow(dead_code)]

use num_traits::{One, Zero};
use tptori::exact_linalg::{int, Rational, SquareMatrix};

/// Determinant by the Leibniz expansion over all permutations.
pub fn leibniz_det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = if inversions % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        for (i, &j) in p.iter().enumerate() {
            term *= &rows[i][j];
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Increasing index subsets of `0..n` of every size.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Total positivity from the definition: every minor, each by Leibniz.
pub fn tp_by_definition(g: &SquareMatrix) -> bool {
    let subs = subsets(g.n());
    subs.iter().all(|rows| {
        subs.iter().filter(|c| c.len() == rows.len()).all(|cols| {
            let m: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| g.get(i, j).clone()).collect())
                .collect();
            leibniz_det(&m) > Rational::zero()
        })
    })
}

/// `E + a E_{i+1,i}` written out directly (1-based `i`).
pub fn lower_elementary(n: usize, i: usize, a: &Rational) -> SquareMatrix {
    SquareMatrix::from_fn(n, |r, c| {
        if r == c {
            Rational::one()
        } else if r == i && c == i - 1 {
            a.clone()
        } else {
            Rational::zero()
        }
    })
}

/// Plain left-to-right product of lower elementary matrices.
pub fn lower_product(n: usize, letters: &[usize], params: &[Rational]) -> SquareMatrix {
    letters
        .iter()
        .zip(params)
        .fold(SquareMatrix::identity(n), |acc, (&i, a)| {
            &acc * &lower_elementary(n, i, a)
        })
}

/// Small positive rational from two integers.
pub fn pos(num: u32, den: u32) -> Rational {
    int(i64::from(num) + 1) / int(i64::from(den) + 1)
}
